"""The bidifferential operator underlying brackets and star products.

For a label pair (a, b) and a pure-parity kernel P, the operator is

    A + s*B,   A = d_{p,a} d_{q,b},   B = d_{q,a} d_{p,b},

where (p, q) is the system's (primary, conjugate) sort pair, s = -1 for
symmetric kernels and +1 for antisymmetric ones, and each d_{s,l} is the
formal sum over jet partials at label l paired with a spatial derivative.
All spatial derivatives produced by one operator instance act on the single
kernel atom that instance inserts; powers of the operator keep accumulating
derivatives on that same atom.

Work terms track the pending kernel atom explicitly as (a, b, gamma) with
gamma counted on the a side; a derivative from the b side folds in with the
parity sign (-1)^|beta|.  The atom is canonicalized only when a power is
finalized into a TensorExpr.
"""

from __future__ import annotations

from .jets import (
    FieldSystem,
    func_atom,
    jet_atom,
    mi_add,
    mi_order,
    mi_zero,
)
from .kernels import Kernel, bracket_sign
from .rationals import GRat, ONE, ZERO
from .tensor import TensorExpr, _canon_located, delta_atom


def _acc(works: dict, key, c: GRat):
    if not c:
        return
    acc = works.get(key, ZERO) + c
    if acc:
        works[key] = acc
    else:
        del works[key]


def _indices_at(mon, label: str, sort: str, dim: int):
    found = set()
    for lab, atom in mon:
        if lab != label:
            continue
        if atom[0] == "j" and atom[1] == sort:
            found.add(atom[2])
        elif atom[0] == "f" and atom[3] == sort:
            found.add(mi_zero(dim))
    return sorted(found)


def _jet_partial_mon(mon, label: str, sort: str, index):
    """Derivative of a located monomial by one jet variable; list of
    (monomial, multiplicity) contributions including the chain rule."""
    out = []
    target = (label, jet_atom(sort, index))
    for pos, latom in enumerate(mon):
        if latom == target:
            mult = mon.count(latom)
            rest = list(mon)
            del rest[pos]
            out.append((tuple(rest), GRat(mult)))
            break
    if mi_order(index) == 0:
        for pos, (lab, atom) in enumerate(mon):
            if lab == label and atom[0] == "f" and atom[3] == sort:
                rest = list(mon)
                rest[pos] = (lab, func_atom(atom[1], atom[3], atom[2] + 1, atom[4]))
                out.append((_canon_located(rest), ONE))
    return out


def _derive(works: dict, label: str, sort: str, side: int, dim: int) -> dict:
    """One paired (jet partial x spatial-on-pending-atom) derivation pass."""
    out: dict = {}
    for (mon, deltas, gamma), c in works.items():
        for index in _indices_at(mon, label, sort, dim):
            cc = -c if (side == 1 and mi_order(index) % 2 == 1) else c
            for new_mon, mult in _jet_partial_mon(mon, label, sort, index):
                _acc(out, (new_mon, deltas, mi_add(gamma, index)), cc * mult)
    return out


def _finalize(works: dict, a: str, b: str, dim: int) -> TensorExpr:
    terms: dict = {}
    for (mon, deltas, gamma), c in works.items():
        atom, sign = delta_atom(a, b, gamma)
        key = (mon, tuple(sorted(deltas + (atom,))))
        acc = terms.get(key, ZERO) + c * sign
        if acc:
            terms[key] = acc
        else:
            del terms[key]
    return TensorExpr(dim, terms)


def _sort_pair(system: FieldSystem) -> tuple[str, str]:
    primaries = system.primary_sorts()
    if len(primaries) != 1:
        raise ValueError("the operator needs exactly one conjugate sort pair")
    p = primaries[0]
    return p, system.partner(p)


def sigma_terms(T: TensorExpr, a: str, b: str, P: Kernel, system: FieldSystem,
                sign: int | None = None):
    """Generate the k-th operator powers applied to T, for k = 1, 2, ...

    Each yielded TensorExpr is the raw k-th power (no 1/k! factor), with the
    inserted kernel atom canonicalized.  The generator stops as soon as a
    power vanishes identically; all higher powers then vanish as well.
    """
    if a == b:
        raise ValueError(f"operator label pair coincides: {a!r}")
    if sign is None:
        sign = bracket_sign(P)
    p, q = _sort_pair(system)
    dim = T.dim
    works: dict = {}
    for (mon, deltas), c in T.terms.items():
        for gamma, cg in P.terms.items():
            _acc(works, (mon, deltas, gamma), c * cg)
    while works:
        part_a = _derive(_derive(works, a, p, 0, dim), b, q, 1, dim)
        part_b = _derive(_derive(works, a, q, 0, dim), b, p, 1, dim)
        works = part_a
        for key, c in part_b.items():
            _acc(works, key, c if sign > 0 else -c)
        if not works:
            return
        yield _finalize(works, a, b, dim)


def sigma_power(T: TensorExpr, a: str, b: str, P: Kernel, system: FieldSystem,
                k: int, sign: int | None = None) -> TensorExpr:
    """The k-th power alone; k = 0 is the bare product (no kernel)."""
    if k < 0:
        raise ValueError("negative operator power")
    if k == 0:
        return T
    last = TensorExpr.zero(T.dim)
    for j, term in enumerate(sigma_terms(T, a, b, P, system, sign), start=1):
        if j == k:
            return term
    return last
