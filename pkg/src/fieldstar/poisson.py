"""Poisson brackets of functions, densities, and functionals.

The function-level bracket applies the sort-paired bidifferential operator
once, leaving the kernel explicit in the result.  Density-level brackets
are the same algebra under the substitution reading of jet variables.
Functional levels integrate one or both labels out and come with
independently computed closed forms that are cross-asserted.
"""

from __future__ import annotations

from .euler_lagrange import variational_derivative
from .jets import ConditionBError, FieldExpr, FieldSystem, mi_add, mi_zero
from .kernels import Kernel, bracket_sign
from .rationals import GRat
from .sigma import sigma_terms, _sort_pair
from .tensor import TensorExpr


class LabelCollision(ValueError):
    """Two bracket operands were assigned the same point label."""


class ConditionBViolation(ValueError):
    """A functional's density does not vanish at the jet origin."""


def bracket_fn(f: FieldExpr, g: FieldExpr, P: Kernel, system: FieldSystem,
               a: str = "x", b: str = "y") -> TensorExpr:
    """{f@a, g@b}_P: single application of the paired operator."""
    if a == b:
        raise LabelCollision(f"both operands at label {a!r}")
    T = TensorExpr.from_field(f, a) * TensorExpr.from_field(g, b)
    for term in sigma_terms(T, a, b, P, system):
        return term
    return TensorExpr.zero(f.dim)


# density-level bracket is the same algebra under substitution
bracket_density = bracket_fn


def bracket_tensor(h: FieldExpr, c: str, T: TensorExpr, P: Kernel,
                   system: FieldSystem) -> TensorExpr:
    """{h@c, T}_P: Leibniz sum of pair brackets over T's labels.

    Existing kernel atoms in T are constants for the bracket; the label c
    must not occur in T.
    """
    if c in T.labels():
        raise LabelCollision(f"label {c!r} already occurs in the tensor operand")
    result = TensorExpr.zero(T.dim)
    hT = TensorExpr.from_field(h, c) * T
    for l in sorted(T.labels()):
        for term in sigma_terms(hT, c, l, P, system):
            result = result + term
            break
    return result


def jacobi_residual(f: FieldExpr, g: FieldExpr, h: FieldExpr, P: Kernel,
                    system: FieldSystem,
                    labels: tuple = ("x", "y", "z")) -> TensorExpr:
    """{h,{f,g}} + {g,{h,f}} + {f,{g,h}} with fixed labels f@x, g@y, h@z."""
    x, y, z = labels
    total = bracket_tensor(h, z, bracket_fn(f, g, P, system, x, y), P, system)
    total = total + bracket_tensor(g, y, bracket_fn(h, f, P, system, z, x), P, system)
    total = total + bracket_tensor(f, x, bracket_fn(g, h, P, system, y, z), P, system)
    return total


# ---------------------------------------------------------------------------
# functionals

class Functional:
    """An integrated density; the integration label is implicit.

    Equality is modulo total divergences, decided by the Euler-operator
    criterion: the difference of densities has vanishing variational
    derivative for every sort and vanishes at the jet origin.
    """

    __slots__ = ("density", "system")

    def __init__(self, density: FieldExpr, system: FieldSystem, check: bool = True):
        if check:
            try:
                value = density.eval_at_origin()
            except ConditionBError as exc:
                raise ConditionBViolation(str(exc)) from exc
            if value:
                raise ConditionBViolation(
                    "density does not vanish at the jet origin")
        self.density = density
        self.system = system

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(self.density + other.density, self.system, check=False)

    def __sub__(self, other: "Functional") -> "Functional":
        return Functional(self.density - other.density, self.system, check=False)

    def __neg__(self) -> "Functional":
        return Functional(-self.density, self.system, check=False)

    def scale(self, c) -> "Functional":
        return Functional(self.density.scale(c), self.system, check=False)

    def is_null(self) -> bool:
        """True iff the functional vanishes (density is a total divergence)."""
        return functional_null(self.density, self.system)

    def equivalent(self, other: "Functional") -> bool:
        return functional_null(self.density - other.density, self.system)

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        return self.equivalent(other)

    def __repr__(self):
        from .render import render_field_expr

        return f"Functional({render_field_expr(self.density)!r})"


def functional_null(density: FieldExpr, system: FieldSystem) -> bool:
    """Euler criterion: the density integrates to zero iff every variational
    derivative vanishes and the density vanishes at the jet origin."""
    for sort in system.sort_names():
        if not variational_derivative(density, sort).is_zero():
            return False
    try:
        return not density.eval_at_origin()
    except ConditionBError:
        return False


def _pair_with_kernel(expr: FieldExpr, label: str, P: Kernel, other: str) -> FieldExpr:
    """<P(label, other), expr@label> as a field expression at the other label."""
    T = TensorExpr.from_field(expr, label) * TensorExpr.from_kernel(P, label, other)
    return T.integrate_out(label).to_field_expr(other)


def _related_multi(g: FieldExpr, sorts: list, inner: FieldExpr) -> FieldExpr:
    """Iterated related-operator action: higher jet partials of g as
    coefficients, one combined total derivative applied to ``inner``."""
    dim = g.dim
    total = [FieldExpr.zero(dim)]

    def rec(gc: FieldExpr, acc, remaining):
        if gc.is_zero():
            return
        if not remaining:
            total[0] = total[0] + gc * inner.total_derivative_multi(acc)
            return
        sort = remaining[0]
        for _s, beta in sorted(gc.jet_variables(sort)):
            rec(gc.jet_partial(sort, beta), mi_add(acc, beta), remaining[1:])

    rec(g, mi_zero(dim), sorts)
    return total[0]


def bracket_functional_density(F: Functional, g: FieldExpr, P: Kernel,
                               system: FieldSystem, y: str = "y",
                               cross_check: bool = True) -> FieldExpr:
    """{F, g@y}_P: the function-level bracket with F's density, integrated
    over F's label.  The closed form through variational derivatives is
    computed independently and asserted equal."""
    x = "x" if y != "x" else "x0"
    T = bracket_fn(F.density, g, P, system, x, y)
    result = T.integrate_out(x).to_field_expr(y) if not T.is_zero() \
        else FieldExpr.zero(g.dim)
    if cross_check:
        closed = bracket_functional_density_closed(F, g, P, system, y)
        if result != closed:
            raise AssertionError(
                "definitional and closed-form functional-density brackets differ")
    return result


def bracket_functional_density_closed(F: Functional, g: FieldExpr, P: Kernel,
                                      system: FieldSystem,
                                      y: str = "y") -> FieldExpr:
    """Closed form: related operators of g applied to the kernel pairings of
    F's variational derivatives."""
    sign = bracket_sign(P)
    p, q = _sort_pair(system)
    x = "x" if y != "x" else "x0"
    inner_p = _pair_with_kernel(variational_derivative(F.density, p), x, P, y)
    inner_q = _pair_with_kernel(variational_derivative(F.density, q), x, P, y)
    term_a = _related_multi(g, [q], inner_p)
    term_b = _related_multi(g, [p], inner_q)
    return term_a + term_b.scale(sign)


def bracket_density_functional(h: FieldExpr, z: str, F: Functional, P: Kernel,
                               system: FieldSystem) -> FieldExpr:
    """{h@z, F}_P: integrate the function-level bracket over F's label."""
    x = "x" if z != "x" else "x0"
    T = bracket_fn(h, F.density, P, system, z, x)
    if T.is_zero():
        return FieldExpr.zero(h.dim)
    return T.integrate_out(x).to_field_expr(z)


def bracket_functionals(F: Functional, G: Functional, P: Kernel,
                        system: FieldSystem,
                        cross_check: bool = True) -> Functional:
    """{F, G}_P as a functional; definitional path with the variational
    closed form asserted equivalent modulo total divergence."""
    T = bracket_fn(F.density, G.density, P, system, "x", "y")
    density = T.integrate_out("x").to_field_expr("y") if not T.is_zero() \
        else FieldExpr.zero(F.density.dim)
    result = Functional(density, system, check=False)
    if cross_check:
        closed = bracket_functionals_closed(F, G, P, system)
        if not result.equivalent(closed):
            raise AssertionError(
                "definitional and closed-form functional brackets differ")
    return result


def bracket_functionals_closed(F: Functional, G: Functional, P: Kernel,
                               system: FieldSystem) -> Functional:
    """Closed form: kernel pairing of the two variational derivatives."""
    sign = bracket_sign(P)
    p, q = _sort_pair(system)
    dFp = variational_derivative(F.density, p)
    dFq = variational_derivative(F.density, q)
    dGp = variational_derivative(G.density, p)
    dGq = variational_derivative(G.density, q)
    T = (TensorExpr.from_field(dFp, "x") * TensorExpr.from_field(dGq, "y")
         + (TensorExpr.from_field(dFq, "x")
            * TensorExpr.from_field(dGp, "y")).scale(sign))
    T = T * TensorExpr.from_kernel(P, "x", "y")
    return Functional(T.integrate_out("x").to_field_expr("y"), system, check=False)


def leibniz_module_bracket_density(h: FieldExpr, z: str, g: FieldExpr, y: str,
                                   F: Functional, P: Kernel,
                                   system: FieldSystem):
    """{h@z, g@y * F}_P = g*{h,F} + F*{h,g}.

    Returns (plain, pairs): a TensorExpr for the functional-free part and a
    list of (Functional, TensorExpr) module terms.
    """
    hF = bracket_density_functional(h, z, F, P, system)
    plain = TensorExpr.from_field(g, y) * TensorExpr.from_field(hF, z)
    pairs = [(F, bracket_fn(h, g, P, system, z, y))]
    return plain, pairs


def leibniz_module_bracket_functional(H: Functional, g: FieldExpr, y: str,
                                      F: Functional, P: Kernel,
                                      system: FieldSystem):
    """{H, g@y * F}_P = g*{H,F} + F*{H,g} as (Functional, FieldExpr) pairs."""
    return [
        (bracket_functionals(H, F, P, system, cross_check=False), g),
        (F, bracket_functional_density(H, g, P, system, y, cross_check=False)),
    ]
