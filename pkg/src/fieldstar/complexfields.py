"""Complex scalar fields through the conjugate sort pairing.

The bracket and star machinery is parameterized over the (primary,
conjugate) pair, so the complex case is an instantiation, not a second
implementation: the holomorphic sort plays the primary role.  This module
adds the change-of-variables equivalence with a real pair and the cubic
Schrodinger equation example.
"""

from __future__ import annotations

from .jets import FieldExpr, FieldSystem, complex_system, mi_unit, real_system
from .kernels import Kernel
from .poisson import Functional, bracket_fn, bracket_functional_density
from .rationals import GRat, I, ONE
from .tensor import TensorExpr


def real_complex_equivalence(P: Kernel, dim: int,
                             position: str = "phi", momentum: str = "pi") -> list:
    """Residuals of the complex basic brackets realized inside a real pair.

    With psi = phi + i*pi and psibar = phi - i*pi, the real brackets with a
    symmetric kernel give {psi, psibar} = -2i P(x,y) and
    {psi, psi} = {psibar, psibar} = 0.  Returns the three residual
    TensorExprs; the identity is specific to the symmetric class.
    """
    from .kernels import SYMMETRIC

    if P.classify() != SYMMETRIC:
        raise ValueError("the change-of-variables identity needs a symmetric kernel")
    system = real_system(dim, position, momentum)
    u = FieldExpr.jet(position, (0,) * dim)
    xi = FieldExpr.jet(momentum, (0,) * dim)
    psi = u + xi.scale(I)
    psibar = u - xi.scale(I)
    mixed = bracket_fn(psi, psibar, P, system) \
        + TensorExpr.from_kernel(P.scale(I + I), "x", "y")
    holo = bracket_fn(psi, psi, P, system)
    anti = bracket_fn(psibar, psibar, P, system)
    return [mixed, holo, anti]


def nls_hamiltonian(dim: int, system: FieldSystem | None = None,
                    holo: str = "psi", anti: str = "psibar") -> Functional:
    """H = integral of |grad psi|^2 + kappa |psi|^4 as a jet polynomial."""
    if system is None:
        system = complex_system(dim, holo, anti)
    kappa = FieldExpr.const_symbol("kappa", dim)
    z0 = FieldExpr.jet(holo, (0,) * dim)
    zb0 = FieldExpr.jet(anti, (0,) * dim)
    density = kappa * (z0 * zb0) ** 2
    for i in range(1, dim + 1):
        e = mi_unit(dim, i)
        density = density + FieldExpr.jet(holo, e) * FieldExpr.jet(anti, e)
    return Functional(density, system)


def nls_equation_of_motion(dim: int = 3, kappa_only: bool = False,
                           gradient_only: bool = False) -> FieldExpr:
    """Right-hand side of i psi_t = i {H, psi}_{i delta}.

    Returns -laplacian(psi) + 2 kappa |psi|^2 psi for the full Hamiltonian;
    the flags drop the gradient or interaction part for the specializations.
    """
    system = complex_system(dim)
    kappa = FieldExpr.const_symbol("kappa", dim)
    z0 = FieldExpr.jet("psi", (0,) * dim)
    zb0 = FieldExpr.jet("psibar", (0,) * dim)
    density = FieldExpr.zero(dim)
    if not gradient_only:
        density = density + kappa * (z0 * zb0) ** 2
    if not kappa_only:
        for i in range(1, dim + 1):
            e = mi_unit(dim, i)
            density = density + FieldExpr.jet("psi", e) * FieldExpr.jet("psibar", e)
    H = Functional(density, system)
    P = Kernel.delta(dim, I)
    rhs = bracket_functional_density(H, z0, P, system).scale(I)
    return rhs


def conjugation_residual(f: FieldExpr, g: FieldExpr, P: Kernel,
                         system: FieldSystem) -> TensorExpr:
    """Anti-automorphism residual of conjugation: zero on all inputs.

    Conjugation swaps each sort with its partner, conjugates coefficients,
    and reverses the bracket's arguments (with their labels), while the
    kernel transposes and conjugates:

        swap_labels(conj {f@x, g@y}_P) = {conj g @x, conj f @y}_{conj P^t}.
    """
    lhs = _conjugate_tensor(bracket_fn(f, g, P, system), system)
    lhs = lhs.relabel("x", "_t").relabel("y", "x").relabel("_t", "y")
    Q = Kernel(P.dim, {gm: c.conjugate() for gm, c in P.transpose().terms.items()})
    rhs = bracket_fn(g.conjugate(system), f.conjugate(system), Q, system)
    return lhs - rhs


def _conjugate_tensor(T: TensorExpr, system: FieldSystem) -> TensorExpr:
    from .jets import func_atom, jet_atom
    from .tensor import _canon_located, _accumulate

    terms: dict = {}
    for (mon, deltas), c in T.terms.items():
        atoms = []
        for lab, atom in mon:
            if atom[0] == "j":
                atoms.append((lab, jet_atom(system.partner(atom[1]), atom[2])))
            elif atom[0] == "f":
                atoms.append((lab, func_atom(atom[1], system.partner(atom[3]),
                                             atom[2], atom[4])))
            else:
                atoms.append((lab, atom))
        _accumulate(terms, _canon_located(atoms), deltas, c.conjugate())
    return TensorExpr(T.dim, terms)
