"""Star products: the exponential of the paired bidifferential operator.

Series live over a formal deformation parameter; coefficients are tensor
expressions (function/density level) or functionals.  Polynomial inputs
terminate and the series is exact; function symbols generate infinite
series truncated at the configured order.

The commutator comparison uses the swap convention: in g*f the first
factor g is placed at the second label, so both products are expressions
over the same label pair and subtract directly.  For a pure-parity kernel
the first-order commutator equals the bracket with kernel P + P^t
(symmetric case) or P - P^t (antisymmetric case) -- both are 2P.
"""

from __future__ import annotations

from math import comb, factorial

from .euler_lagrange import dual_derivative, variational_derivative
from .jets import FieldExpr, FieldSystem
from .kernels import Kernel, bracket_sign
from .poisson import (
    Functional,
    LabelCollision,
    _related_multi,
    bracket_fn,
)
from .rationals import GRat, ONE, ZERO
from .sigma import sigma_terms, _sort_pair
from .tensor import NonIntegrableTerm, TensorExpr


class HbarSeries:
    """A truncated formal power series with TensorExpr coefficients.

    ``order`` is the truncation K: coefficients are reliable for k <= K.
    ``exact`` marks detected termination (valid at every order).
    """

    __slots__ = ("dim", "coeffs", "order", "exact")

    def __init__(self, dim: int, coeffs: dict | None = None, order: int = 6,
                 exact: bool = False):
        self.dim = dim
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not v.is_zero()}
        self.order = order
        self.exact = exact

    def coefficient(self, k: int) -> TensorExpr:
        return self.coeffs.get(k, TensorExpr.zero(self.dim))

    def __add__(self, other: "HbarSeries") -> "HbarSeries":
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            acc = coeffs.get(k, TensorExpr.zero(self.dim)) + v
            if acc.is_zero():
                coeffs.pop(k, None)
            else:
                coeffs[k] = acc
        return HbarSeries(self.dim, coeffs, min(self.order, other.order),
                          self.exact and other.exact)

    def __sub__(self, other: "HbarSeries") -> "HbarSeries":
        return self + (-other)

    def __neg__(self) -> "HbarSeries":
        return HbarSeries(self.dim, {k: -v for k, v in self.coeffs.items()},
                          self.order, self.exact)

    def scale(self, c) -> "HbarSeries":
        return HbarSeries(self.dim, {k: v.scale(c) for k, v in self.coeffs.items()},
                          self.order, self.exact)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        return self.dim == other.dim and self.coeffs == other.coeffs

    def at_unit(self) -> TensorExpr:
        """Sum of coefficients: the series with the parameter set to one."""
        total = TensorExpr.zero(self.dim)
        for v in self.coeffs.values():
            total = total + v
        return total

    def __repr__(self):
        ks = sorted(self.coeffs)
        return f"HbarSeries(orders={ks}, K={self.order}, exact={self.exact})"


def to_series(f: FieldExpr, label: str, order: int = 6) -> HbarSeries:
    return HbarSeries(f.dim, {0: TensorExpr.from_field(f, label)}, order, True)


def series_mul(A: HbarSeries, B: HbarSeries) -> HbarSeries:
    order = min(A.order, B.order)
    out = HbarSeries(A.dim, {}, order, A.exact and B.exact)
    coeffs: dict = {}
    for j, Tj in A.coeffs.items():
        for k, Tk in B.coeffs.items():
            if j + k > order and not (A.exact and B.exact):
                continue
            acc = coeffs.get(j + k)
            coeffs[j + k] = Tj * Tk if acc is None else acc + Tj * Tk
    out.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}
    return out


def exp_sigma(S: HbarSeries, a: str, b: str, P: Kernel, system: FieldSystem,
              order: int | None = None) -> HbarSeries:
    """Apply the exponential of one operator instance to a series."""
    K = S.order if order is None else order
    coeffs: dict = {}
    exact = S.exact
    for j, Tj in S.coeffs.items():
        if j > K:
            continue
        coeffs[j] = coeffs.get(j, TensorExpr.zero(S.dim)) + Tj
        gen = sigma_terms(Tj, a, b, P, system)
        k = 0
        terminated = False
        while True:
            k += 1
            if j + k > K:
                break
            try:
                Tk = next(gen)
            except StopIteration:
                terminated = True
                break
            piece = Tk.scale(GRat(1, 0) / GRat(factorial(k)))
            coeffs[j + k] = coeffs.get(j + k, TensorExpr.zero(S.dim)) + piece
        if not terminated and j + k > K:
            # could not prove termination within the order budget
            try:
                next(gen)
                exact = False
            except StopIteration:
                pass
    return HbarSeries(S.dim, coeffs, K, exact)


def star_fn(f: FieldExpr, g: FieldExpr, P: Kernel, system: FieldSystem,
            a: str = "x", b: str = "y", order: int = 6) -> HbarSeries:
    """f@a * g@b: exp of a single operator instance on the bare product."""
    if a == b:
        raise LabelCollision(f"both operands at label {a!r}")
    T = TensorExpr.from_field(f, a) * TensorExpr.from_field(g, b)
    return exp_sigma(HbarSeries(f.dim, {0: T}, order, True), a, b, P, system)


# density-level star is the same algebra under substitution
star_density = star_fn


def sigma_power(f: FieldExpr, g: FieldExpr, P: Kernel, system: FieldSystem,
                k: int, a: str = "x", b: str = "y") -> TensorExpr:
    """The raw k-th operator power on f@a g@b; k = 0 is the bare product."""
    from .sigma import sigma_power as _sp

    T = TensorExpr.from_field(f, a) * TensorExpr.from_field(g, b)
    return _sp(T, a, b, P, system, k)


def star_grouped(A: HbarSeries, labels_a, B: HbarSeries, labels_b, P: Kernel,
                 system: FieldSystem, order: int | None = None,
                 reverse_pairs: bool = False) -> HbarSeries:
    """Star of two groups: every cross pair contributes one exp factor.

    Factors are applied in canonical (sorted) pair order, or reversed when
    requested — the commutation of the exp factors is a theorem the caller
    may verify by comparing the two.
    """
    la, lb = set(labels_a), set(labels_b)
    if la & lb:
        raise LabelCollision(f"groups share labels {sorted(la & lb)}")
    S = series_mul(A, B)
    K = S.order if order is None else order
    pairs = [(x, y) for x in sorted(la) for y in sorted(lb)]
    if reverse_pairs:
        pairs.reverse()
    for x, y in pairs:
        S = exp_sigma(S, x, y, P, system, K)
    return S


def star_chain(factors: list, P: Kernel, system: FieldSystem,
               order: int = 6) -> HbarSeries:
    """Multi-factor star: one exp factor per label pair i < j."""
    labels = [lab for _, lab in factors]
    if len(set(labels)) != len(labels):
        raise LabelCollision("chain labels must be distinct")
    S = None
    for f, lab in factors:
        S = to_series(f, lab, order) if S is None else \
            series_mul(S, to_series(f, lab, order))
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            S = exp_sigma(S, labels[i], labels[j], P, system, order)
    return S


def commutator_semiclassical(f: FieldExpr, g: FieldExpr, P: Kernel,
                             system: FieldSystem, a: str = "x", b: str = "y",
                             order: int = 3) -> HbarSeries:
    """(f*g - g*f) minus the first-order bracket term; O(hbar^2) contract.

    The comparison kernel is P + P^t for a symmetric P and P - P^t for an
    antisymmetric one (both equal 2P in pure parity); the swap places g at
    label b and f at label a in both products.
    """
    fg = star_fn(f, g, P, system, a, b, order)
    gf = star_fn(g, f, P, system, b, a, order)
    if bracket_sign(P) < 0:
        Q = P + P.transpose()
    else:
        Q = P - P.transpose()
    br = bracket_fn(f, g, Q, system, a, b)
    return fg - gf - HbarSeries(f.dim, {1: br}, order, True)


# ---------------------------------------------------------------------------
# functional-level products

class FunctionalDensitySeries:
    """F * g: a formal product term at order zero plus a density tail."""

    __slots__ = ("functional", "density", "tail", "order", "exact")

    def __init__(self, functional: Functional, density: FieldExpr, tail: dict,
                 order: int, exact: bool):
        self.functional = functional
        self.density = density
        self.tail = {k: v for k, v in tail.items() if not v.is_zero()}
        self.order = order
        self.exact = exact


class FunctionalSeries:
    """F * G: a formal product term at order zero plus a Functional tail."""

    __slots__ = ("left", "right", "tail", "order", "exact")

    def __init__(self, left: Functional, right: Functional, tail: dict,
                 order: int, exact: bool):
        self.left = left
        self.right = right
        self.tail = {k: v for k, v in tail.items() if not v.is_null()}
        self.order = order
        self.exact = exact


def star_functional_density(F: Functional, g: FieldExpr, P: Kernel,
                            system: FieldSystem, order: int = 6,
                            cross_check: bool = False) -> FunctionalDensitySeries:
    """F * g@y: function-level star integrated over F's label.

    With a delta kernel the closed form through dual derivatives is
    available and asserted on request.
    """
    S = star_fn(F.density, g, P, system, "x", "y", order)
    tail = {k: T.integrate_out("x").to_field_expr("y")
            for k, T in S.coeffs.items() if k >= 1}
    result = FunctionalDensitySeries(F, g, tail, order, S.exact)
    if cross_check:
        closed = star_functional_density_closed(F, g, P, system, order)
        if {k: v for k, v in result.tail.items() if k <= order} != closed:
            raise AssertionError(
                "definitional and closed-form functional-density stars differ")
    return result


def star_functional_density_closed(F: Functional, g: FieldExpr, P: Kernel,
                                   system: FieldSystem,
                                   order: int = 6) -> dict:
    """Closed form of the tail of F * g@y for a delta-type kernel.

    Order k term: sum over i + j = k of binom(k,i) * sign^j / k! times the
    iterated related operator of g (i conjugate-partials, j primary-partials)
    applied to the kernel pairing of the mixed dual derivatives of f.
    """
    from .poisson import _pair_with_kernel

    sign = bracket_sign(P)
    p, q = _sort_pair(system)
    tail: dict = {}
    for k in range(1, order + 1):
        acc = FieldExpr.zero(g.dim)
        for i in range(k + 1):
            j = k - i
            fi = dual_derivative(dual_derivative(F.density, q, j), p, i)
            if fi.is_zero():
                continue
            inner = _pair_with_kernel(fi, "x", P, "y")
            piece = _related_multi(g, [q] * i + [p] * j, inner)
            c = GRat(comb(k, i)) / GRat(factorial(k))
            if sign < 0 and j % 2 == 1:
                c = -c
            acc = acc + piece.scale(c)
        if not acc.is_zero():
            tail[k] = acc
    return tail


def star_functionals(F: Functional, G: Functional, P: Kernel,
                     system: FieldSystem, order: int = 6,
                     cross_check: bool = False) -> FunctionalSeries:
    """F * G: function-level star integrated over the first label; the tail
    is a Functional per order."""
    S = star_fn(F.density, G.density, P, system, "x", "y", order)
    tail = {k: Functional(T.integrate_out("x").to_field_expr("y"), system,
                          check=False)
            for k, T in S.coeffs.items() if k >= 1}
    result = FunctionalSeries(F, G, tail, order, S.exact)
    if cross_check:
        closed = star_functionals_closed(F, G, P, system, order)
        keys = set(result.tail) | set(closed)
        zero = Functional(FieldExpr.zero(F.density.dim), system, check=False)
        for k in keys:
            if not result.tail.get(k, zero).equivalent(closed.get(k, zero)):
                raise AssertionError(
                    "definitional and closed-form functional stars differ")
    return result


def star_functionals_closed(F: Functional, G: Functional, P: Kernel,
                            system: FieldSystem, order: int = 6) -> dict:
    """Closed form of the tail of F * G: kernel pairings of mixed dual
    derivatives of both densities."""
    sign = bracket_sign(P)
    p, q = _sort_pair(system)
    tail: dict = {}
    for k in range(1, order + 1):
        acc = FieldExpr.zero(F.density.dim)
        for i in range(k + 1):
            j = k - i
            fi = dual_derivative(dual_derivative(F.density, q, j), p, i)
            gi = dual_derivative(dual_derivative(G.density, p, j), q, i)
            if fi.is_zero() or gi.is_zero():
                continue
            T = (TensorExpr.from_field(fi, "x") * TensorExpr.from_field(gi, "y")
                 * TensorExpr.from_kernel(P, "x", "y"))
            piece = T.integrate_out("x").to_field_expr("y")
            c = GRat(comb(k, i)) / GRat(factorial(k))
            if sign < 0 and j % 2 == 1:
                c = -c
            acc = acc + piece.scale(c)
        if not acc.is_zero():
            tail[k] = Functional(acc, system, check=False)
    return tail


# ---------------------------------------------------------------------------
# associativity residuals at the five levels

def _split_integrate(T: TensorExpr, label: str) -> tuple[TensorExpr, TensorExpr]:
    """Integrate the delta-localized part over a label; return the
    non-integrable remainder separately (the formal functional factor)."""
    localized: dict = {}
    formal: dict = {}
    for key, c in T.terms.items():
        _mon, deltas = key
        carriers = [atom for atom in deltas if label in atom[:2]]
        if not carriers:
            formal[key] = c
            continue
        # substitution against the first carrier must not collapse another
        # delta atom onto coinciding labels (a coincidence divergence);
        # such terms stay formal and cancel between groupings
        a, b, _ = carriers[0]
        partner = b if a == label else a
        if sum(1 for a2, b2, _g in deltas if {a2, b2} == {label, partner}) > 1:
            formal[key] = c
        else:
            localized[key] = c
    return (TensorExpr(T.dim, localized).integrate_out(label),
            TensorExpr(T.dim, formal))


def _integrate_series(S: HbarSeries, labels: list) -> list:
    """Per-order (integrated, formal) components after integrating out each
    label in turn wherever a delta atom allows it."""
    out = []
    for k in sorted(S.coeffs):
        pieces = [S.coeffs[k]]
        for label in labels:
            nxt = []
            for T in pieces:
                if label in T.labels():
                    loc, form = _split_integrate(T, label)
                    nxt.extend([loc, form])
                else:
                    nxt.append(T)
            pieces = nxt
        total = TensorExpr.zero(S.dim)
        for T in pieces:
            total = total + T
        out.append((k, total))
    return out


def assoc_residuals(f: FieldExpr, g: FieldExpr, h: FieldExpr, P: Kernel,
                    system: FieldSystem, level: int, order: int = 4) -> list:
    """Residual coefficients of (f*g)*h - f*(g*h) at one of five levels.

    Levels: 1 functions, 2 densities, 3 functional*density*density,
    4 functional*functional*density, 5 three functionals.  Higher levels
    integrate the function-level groupings over the functional labels.
    Returns a list of TensorExprs, all of which must be zero.
    """
    x, y, z = "x", "y", "z"
    left = star_grouped(star_fn(f, g, P, system, x, y, order), [x, y],
                        to_series(h, z, order), [z], P, system, order)
    right = star_grouped(to_series(f, x, order), [x],
                         star_fn(g, h, P, system, y, z, order), [y, z],
                         P, system, order)
    residual = left - right
    if level in (1, 2):
        return [residual.coefficient(k) for k in sorted(residual.coeffs)] \
            or [TensorExpr.zero(f.dim)]
    if level == 3:
        labels = [x]
    elif level == 4:
        labels = [y, x]
    elif level == 5:
        labels = [y, x]
    else:
        raise ValueError(f"unknown associativity level {level}")
    lparts = dict(_integrate_series(left, labels))
    rparts = dict(_integrate_series(right, labels))
    out = []
    for k in sorted(set(lparts) | set(rparts)):
        out.append(lparts.get(k, TensorExpr.zero(f.dim))
                   - rparts.get(k, TensorExpr.zero(f.dim)))
    return out or [TensorExpr.zero(f.dim)]


def exp_order_residual(f: FieldExpr, g: FieldExpr, h: FieldExpr, P: Kernel,
                       system: FieldSystem, order: int = 4) -> HbarSeries:
    """Swap residual of the exp-factor application order on a grouped star."""
    A = star_fn(f, g, P, system, "x", "y", order)
    B = to_series(h, "z", order)
    return (star_grouped(A, ["x", "y"], B, ["z"], P, system, order)
            - star_grouped(A, ["x", "y"], B, ["z"], P, system, order,
                           reverse_pairs=True))


# ---------------------------------------------------------------------------
# equations of motion

class TruncationError(RuntimeError):
    """A star series did not terminate within the configured order."""


def equation_of_motion(H: Functional, field: FieldExpr, P: Kernel,
                       system: FieldSystem, prefactor=None,
                       order: int = 6) -> FieldExpr:
    """Time derivative of a linear field from the star commutator with H.

    The commutator equals the bracket with the doubled kernel, so the
    equation of motion is prefactor * {H, field}_P; the star route is
    computed as well and the factor-two relation asserted exactly.
    """
    from .poisson import bracket_functional_density

    if prefactor is None:
        prefactor = ONE
    Hf = star_fn(H.density, field, P, system, "x", "y", order)
    fH = star_fn(field, H.density, P, system, "y", "x", order)
    comm = Hf - fH
    if not comm.exact:
        raise TruncationError(
            f"star commutator did not terminate within order {order}")
    total = FieldExpr.zero(field.dim)
    for k, T in comm.coeffs.items():
        if k == 0:
            if not T.is_zero():
                raise AssertionError("order-zero commutator term did not cancel")
            continue
        total = total + T.integrate_out("x").to_field_expr("y")
    bracket = bracket_functional_density(H, field, P, system, "y",
                                         cross_check=True)
    if total != bracket + bracket:
        raise AssertionError(
            "star commutator does not equal the bracket with doubled kernel")
    return bracket.scale(prefactor)
