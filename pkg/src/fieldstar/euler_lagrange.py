"""Operator algebras acting on expression/kernel pairs and on densities.

The primal operators pair a jet partial with a matching spatial derivative
that falls on the kernel factors of a tensor expression; the dual operators
act on densities through signed total derivatives.  Their order-one sums
are the variational (Euler) operators.
"""

from __future__ import annotations

from .jets import FieldExpr, mi_add, mi_order, mi_zero
from .rationals import GRat, ONE, ZERO
from .tensor import TensorExpr


class ELOperator:
    """A polynomial in generators (sort, index), attached to one point label.

    Monomials are sorted tuples of (sort, index) generators; multiplication
    is multiset union of generators (the composition rule: jet partials
    compose and spatial derivative exponents add).
    """

    __slots__ = ("dim", "label", "terms")

    def __init__(self, dim: int, label: str, terms: dict | None = None):
        self.dim = dim
        self.label = label
        self.terms = terms if terms is not None else {}

    @classmethod
    def identity(cls, dim: int, label: str) -> "ELOperator":
        return cls(dim, label, {(): ONE})

    @classmethod
    def generator(cls, sort: str, index, label: str, dim: int | None = None) -> "ELOperator":
        index = tuple(index)
        d = len(index) if dim is None else dim
        return cls(d, label, {((sort, index),): ONE})

    def __add__(self, other: "ELOperator") -> "ELOperator":
        if (self.dim, self.label) != (other.dim, other.label):
            raise ValueError("operator label or dimension mismatch")
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            acc = terms.get(mon, ZERO) + c
            if acc:
                terms[mon] = acc
            else:
                terms.pop(mon, None)
        return ELOperator(self.dim, self.label, terms)

    def __neg__(self) -> "ELOperator":
        return self.scale(-1)

    def __sub__(self, other: "ELOperator") -> "ELOperator":
        return self + (-other)

    def scale(self, c) -> "ELOperator":
        c = c if isinstance(c, GRat) else GRat(c)
        if not c:
            return ELOperator(self.dim, self.label, {})
        return ELOperator(self.dim, self.label,
                          {m: v * c for m, v in self.terms.items()})

    def compose(self, other: "ELOperator") -> "ELOperator":
        """Operator product: generator multisets merge, coefficients multiply."""
        if (self.dim, self.label) != (other.dim, other.label):
            raise ValueError("operator label or dimension mismatch")
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = tuple(sorted(m1 + m2))
                acc = terms.get(mon, ZERO) + c1 * c2
                if acc:
                    terms[mon] = acc
                else:
                    terms.pop(mon, None)
        return ELOperator(self.dim, self.label, terms)

    def __eq__(self, other):
        if not isinstance(other, ELOperator):
            return NotImplemented
        return (self.dim, self.label, self.terms) == (other.dim, other.label, other.terms)


def _spatial_on_kernel(T: TensorExpr, label: str, index) -> TensorExpr:
    """Apply d_label^index to the kernel part of every term.

    Terms whose kernel does not carry the label receive the derivative as a
    total derivative on the label's field content instead (the substitution
    semantics for intermediate groupings without a kernel factor).
    """
    result_terms: dict = {}
    out = TensorExpr(T.dim, result_terms)
    kernel_part = TensorExpr.zero(T.dim)
    field_part = TensorExpr.zero(T.dim)
    for (mon, deltas), c in T.terms.items():
        t = TensorExpr(T.dim, {(mon, deltas): c})
        if any(label in (a, b) for a, b, _ in deltas):
            kernel_part = kernel_part + t
        else:
            field_part = field_part + t
    # kernel-carrying terms: differentiate only delta atoms
    done = TensorExpr.zero(T.dim)
    work = kernel_part
    for direction, k in enumerate(index, start=1):
        for _ in range(k):
            work = _delta_derivative(work, label, direction)
    done = work
    if not field_part.is_zero() and mi_order(tuple(index)) > 0:
        done = done + field_part.total_derivative_multi_at(label, index)
    elif mi_order(tuple(index)) == 0:
        done = done + field_part
    return done


def _delta_derivative(T: TensorExpr, label: str, direction: int) -> TensorExpr:
    """Leibniz derivative over the delta atoms carrying the label only."""
    from .jets import mi_unit
    from .tensor import _accumulate

    e = mi_unit(T.dim, direction)
    terms: dict = {}
    for (mon, deltas), c in T.terms.items():
        for pos, (a, b, gamma) in enumerate(deltas):
            if pos > 0 and deltas[pos] == deltas[pos - 1]:
                continue
            if label not in (a, b):
                continue
            mult = deltas.count((a, b, gamma))
            sign = ONE if label == a else -ONE
            rest = list(deltas)
            rest[pos] = (a, b, mi_add(gamma, e))
            _accumulate(terms, mon, tuple(sorted(rest)), c * sign * mult)
    return TensorExpr(T.dim, terms)


def apply_el(op: ELOperator, T: TensorExpr) -> TensorExpr:
    """Action on a tensor expression: mixed jet partials on the label's
    field content, the summed spatial derivative on its kernel factors."""
    result = TensorExpr.zero(T.dim)
    for mon, c in op.terms.items():
        piece = T.scale(c)
        total = mi_zero(T.dim)
        for sort, index in mon:
            piece = piece.jet_partial_at(op.label, sort, index)
            total = mi_add(total, index)
        piece = _spatial_on_kernel(piece, op.label, total)
        result = result + piece
    return result


def el_derivative(T: TensorExpr, sort: str, label: str, power: int = 1) -> TensorExpr:
    """The formal sum over all indices of (jet partial x spatial derivative),
    truncated to the variables actually present, applied ``power`` times."""
    result = T
    for _ in range(power):
        step = TensorExpr.zero(T.dim)
        indices = set()
        for (mon, _deltas) in result.terms:
            for lab, atom in mon:
                if lab != label:
                    continue
                if atom[0] == "j" and atom[1] == sort:
                    indices.add(atom[2])
                elif atom[0] == "f" and atom[3] == sort:
                    indices.add(mi_zero(T.dim))
        for index in sorted(indices):
            piece = result.jet_partial_at(label, sort, index)
            piece = _spatial_on_kernel(piece, label, index)
            step = step + piece
        result = step
    return result


class DualELOperator:
    """Same polynomial data as ELOperator, dual action on densities."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms = terms if terms is not None else {}

    @classmethod
    def from_el(cls, op: ELOperator) -> "DualELOperator":
        """Generator map d_{u,x;a} -> D_{u,x;a} extended multiplicatively."""
        return cls(op.dim, dict(op.terms))


def apply_dual(op: DualELOperator, f: FieldExpr) -> FieldExpr:
    """Mixed jet partials first, then signed total derivatives."""
    result = FieldExpr.zero(f.dim)
    for mon, c in op.terms.items():
        piece = f.scale(c)
        total = mi_zero(f.dim)
        for sort, index in mon:
            piece = piece.jet_partial(sort, index)
            total = mi_add(total, index)
        piece = piece.total_derivative_multi(total, negate=True)
        result = result + piece
    return result


def dual_derivative(f: FieldExpr, sort: str, power: int = 1) -> FieldExpr:
    """The dual Euler-Lagrange derivative: sum of signed total derivatives of
    jet partials over the indices present, applied ``power`` times."""
    result = f
    for _ in range(power):
        step = FieldExpr.zero(f.dim)
        for s, index in sorted(result.jet_variables(sort)):
            step = step + result.jet_partial(s, index).total_derivative_multi(
                index, negate=True)
        result = step
    return result


def variational_derivative(f: FieldExpr, sort: str) -> FieldExpr:
    """Functional derivative of the integral of f with respect to one field."""
    return dual_derivative(f, sort, power=1)


def pointwise_variation(f: FieldExpr, sort: str, label: str, partner: str) -> TensorExpr:
    """Variation of a density at a point: the related operator applied to a
    bare delta, leaving the kernel explicit."""
    from .kernels import Kernel

    T = TensorExpr.from_field(f, label) * TensorExpr.from_kernel(
        Kernel.delta(f.dim), label, partner)
    return el_derivative(T, sort, label)


def duality_residual(op: ELOperator, f: FieldExpr, partner: str) -> FieldExpr:
    """Pairing route minus dual route; identically zero by the duality law."""
    from .kernels import Kernel

    T = TensorExpr.from_field(f, op.label) * TensorExpr.from_kernel(
        Kernel.delta(f.dim), op.label, partner)
    lhs = apply_el(op, T).integrate_out(op.label).to_field_expr(partner)
    rhs = apply_dual(DualELOperator.from_el(op), f)
    return lhs - rhs


def el_power_duality_residual(f: FieldExpr, sort: str, index, power: int,
                              label: str, partner: str) -> FieldExpr:
    """Residual of the duality law for the composed power of one generator:
    (jet partial x spatial derivative)^k against (jet partial x signed total
    derivative)^k."""
    gen = ELOperator.generator(sort, index, label, f.dim)
    op = ELOperator.identity(f.dim, label)
    for _ in range(power):
        op = op.compose(gen)
    return duality_residual(op, f, partner)
