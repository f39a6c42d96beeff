"""Exact arithmetic and calculus on jet-variable expressions.

A jet variable is a field sort together with a spatial multi-index; an
expression is a polynomial over Gaussian rationals in jet variables,
abstract unary function symbols (U, U', U'', ...) and named constants.

Monomial atoms are plain tuples so that expressions hash and compare fast:

    ("c", name)                          constant symbol
    ("f", name, order, arg_sort, vanishes)  function symbol applied to the
                                            order-zero jet of arg_sort
    ("j", sort, index)                   jet variable

Atoms within a monomial are kept in a fixed canonical order (constants,
then function symbols, then jet variables graded-lexicographically).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rationals import GRat, ONE, ZERO

MultiIndex = tuple  # tuple of n naturals


class DimensionMismatch(ValueError):
    pass


class ConditionBError(ValueError):
    """Raised when an unknown function-symbol value at the origin is needed."""


@dataclass(frozen=True)
class FieldSort:
    """One family of jet variables: a name, its role, and its conjugate."""

    name: str
    kind: str  # "position" | "momentum" | "holomorphic" | "antiholomorphic"
    partner: str

    def is_primary(self) -> bool:
        return self.kind in ("position", "holomorphic")


class FieldSystem:
    """The declared sorts of a session, with their conjugate pairing."""

    def __init__(self, dim: int, sorts: list[FieldSort]):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = dim
        self.sorts = {s.name: s for s in sorts}
        for s in sorts:
            if s.partner not in self.sorts:
                raise ValueError(f"sort {s.name} pairs with undeclared {s.partner}")
            if self.sorts[s.partner].partner != s.name:
                raise ValueError(f"pairing of {s.name} is not involutive")

    def partner(self, sort: str) -> str:
        return self.sorts[sort].partner

    def primary_sorts(self) -> list[str]:
        return [n for n, s in sorted(self.sorts.items()) if s.is_primary()]

    def sort_names(self) -> list[str]:
        return sorted(self.sorts)


def real_system(dim: int, position: str = "phi", momentum: str = "pi") -> FieldSystem:
    return FieldSystem(dim, [
        FieldSort(position, "position", momentum),
        FieldSort(momentum, "momentum", position),
    ])


def complex_system(dim: int, holo: str = "psi", anti: str = "psibar") -> FieldSystem:
    return FieldSystem(dim, [
        FieldSort(holo, "holomorphic", anti),
        FieldSort(anti, "antiholomorphic", holo),
    ])


# ---------------------------------------------------------------------------
# multi-index helpers

def mi_zero(dim: int) -> MultiIndex:
    return (0,) * dim


def mi_unit(dim: int, direction: int) -> MultiIndex:
    if not 1 <= direction <= dim:
        raise ValueError(f"direction {direction} out of range 1..{dim}")
    return tuple(1 if i == direction - 1 else 0 for i in range(dim))


def mi_add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def mi_order(a: MultiIndex) -> int:
    return sum(a)


def mi_grlex(a: MultiIndex):
    return (sum(a), a)


# ---------------------------------------------------------------------------
# atoms

def jet_atom(sort: str, index: MultiIndex) -> tuple:
    return ("j", sort, tuple(index))


def const_atom(name: str) -> tuple:
    return ("c", name)


def func_atom(name: str, arg_sort: str, order: int = 0, vanishes: bool = True) -> tuple:
    return ("f", name, order, arg_sort, vanishes)


def atom_key(atom: tuple):
    if atom[0] == "j":
        return (2, atom[1], mi_grlex(atom[2]))
    if atom[0] == "f":
        return (1, atom[1], atom[2])
    return (0, atom[1])


def _canon_monomial(atoms) -> tuple:
    return tuple(sorted(atoms, key=atom_key))


class FieldExpr:
    """A commutative polynomial in jet variables over Q[i].

    Immutable by convention; never mutate ``terms`` after construction.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "FieldExpr":
        return cls(dim, {})

    @classmethod
    def const(cls, value, dim: int) -> "FieldExpr":
        c = value if isinstance(value, GRat) else GRat(value)
        return cls(dim, {(): c} if c else {})

    @classmethod
    def jet(cls, sort: str, index: MultiIndex, dim: int | None = None) -> "FieldExpr":
        index = tuple(index)
        d = len(index) if dim is None else dim
        if len(index) != d:
            raise DimensionMismatch(f"index {index} has length != {d}")
        return cls(d, {(jet_atom(sort, index),): ONE})

    @classmethod
    def const_symbol(cls, name: str, dim: int) -> "FieldExpr":
        return cls(dim, {(const_atom(name),): ONE})

    @classmethod
    def function(cls, name: str, arg_sort: str, dim: int, order: int = 0,
                 vanishes: bool = True) -> "FieldExpr":
        return cls(dim, {(func_atom(name, arg_sort, order, vanishes),): ONE})

    # -- ring structure -----------------------------------------------------

    def _check(self, other: "FieldExpr"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimension {self.dim} != {other.dim}")

    def __add__(self, other: "FieldExpr") -> "FieldExpr":
        self._check(other)
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            acc = terms.get(mon, ZERO) + c
            if acc:
                terms[mon] = acc
            else:
                terms.pop(mon, None)
        return FieldExpr(self.dim, terms)

    def __sub__(self, other: "FieldExpr") -> "FieldExpr":
        return self + (-other)

    def __neg__(self) -> "FieldExpr":
        return FieldExpr(self.dim, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "FieldExpr") -> "FieldExpr":
        self._check(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = _canon_monomial(m1 + m2)
                acc = terms.get(mon, ZERO) + c1 * c2
                if acc:
                    terms[mon] = acc
                else:
                    terms.pop(mon, None)
        return FieldExpr(self.dim, terms)

    def scale(self, c) -> "FieldExpr":
        c = c if isinstance(c, GRat) else GRat(c)
        if not c:
            return FieldExpr.zero(self.dim)
        return FieldExpr(self.dim, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "FieldExpr":
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = FieldExpr.const(1, self.dim)
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FieldExpr):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self):
        from .render import render_field_expr

        return f"FieldExpr({render_field_expr(self)!r})"

    # -- calculus -----------------------------------------------------------

    def jet_partial(self, sort: str, index: MultiIndex) -> "FieldExpr":
        """Formal partial derivative with respect to one jet variable.

        The chain rule promotes U^(k)(s_0) to U^(k+1)(s_0) when
        differentiating by the order-zero jet of its argument sort.
        """
        index = tuple(index)
        target = jet_atom(sort, index)
        at_origin = mi_order(index) == 0
        terms: dict = {}
        for mon, c in self.terms.items():
            for pos, atom in enumerate(mon):
                if atom == target:
                    mult = mon.count(atom)
                    rest = list(mon)
                    del rest[pos]
                    _accumulate(terms, tuple(rest), c * mult)
                    break
            for pos, atom in enumerate(mon):
                if atom[0] == "f" and atom[3] == sort and at_origin:
                    rest = list(mon)
                    rest[pos] = func_atom(atom[1], atom[3], atom[2] + 1, atom[4])
                    _accumulate(terms, _canon_monomial(rest), c)
        return FieldExpr(self.dim, terms)

    def total_derivative(self, direction: int) -> "FieldExpr":
        """Total spatial derivative: prolongation plus Leibniz over products."""
        e = mi_unit(self.dim, direction)
        terms: dict = {}
        for mon, c in self.terms.items():
            for pos, atom in enumerate(mon):
                if pos > 0 and mon[pos] == mon[pos - 1]:
                    # identical factors contribute equal terms; scale once below
                    continue
                mult = mon.count(atom)
                if atom[0] == "j":
                    rest = list(mon)
                    rest[pos] = jet_atom(atom[1], mi_add(atom[2], e))
                    _accumulate(terms, _canon_monomial(rest), c * mult)
                elif atom[0] == "f":
                    rest = list(mon)
                    rest[pos] = func_atom(atom[1], atom[3], atom[2] + 1, atom[4])
                    rest.append(jet_atom(atom[3], e))
                    _accumulate(terms, _canon_monomial(rest), c * mult)
                # constants differentiate to zero
        return FieldExpr(self.dim, terms)

    def total_derivative_multi(self, index: MultiIndex, negate: bool = False) -> "FieldExpr":
        """Apply D^index, or (-D)^index when ``negate`` is set."""
        result = self
        for direction, k in enumerate(index, start=1):
            for _ in range(k):
                result = result.total_derivative(direction)
                if negate:
                    result = -result
        return result

    def eval_at_origin(self) -> GRat:
        """Value with all jet variables set to zero; condition B holds iff 0.

        Function symbols flagged as vanishing at the origin contribute zero
        through derivative order two (the o(s^2) growth assumption); an
        unflagged symbol, or a higher derivative, has unknown value and
        raises ConditionBError.
        """
        total = ZERO
        for mon, c in self.terms.items():
            vanishes = False
            for atom in mon:
                if atom[0] == "j":
                    vanishes = True
                    break
                if atom[0] == "f":
                    if atom[4] and atom[2] <= 2:
                        vanishes = True
                        break
                    raise ConditionBError(
                        f"value of {atom[1]} (order {atom[2]}) at the origin is unknown")
            if not vanishes:
                total = total + c
        return total

    def satisfies_condition_b(self) -> bool:
        return not self.eval_at_origin()

    # -- structure queries --------------------------------------------------

    def jet_variables(self, sort: str | None = None) -> set:
        """Distinct (sort, index) pairs appearing in the expression."""
        found = set()
        for mon in self.terms:
            for atom in mon:
                if atom[0] == "j" and (sort is None or atom[1] == sort):
                    found.add((atom[1], atom[2]))
                elif atom[0] == "f" and (sort is None or atom[3] == sort):
                    found.add((atom[3], mi_zero(self.dim)))
        return found

    def conjugate(self, system: FieldSystem) -> "FieldExpr":
        """Complex conjugation: swap paired sorts, conjugate coefficients."""
        terms: dict = {}
        for mon, c in self.terms.items():
            atoms = []
            for atom in mon:
                if atom[0] == "j":
                    atoms.append(jet_atom(system.partner(atom[1]), atom[2]))
                elif atom[0] == "f":
                    atoms.append(func_atom(atom[1], system.partner(atom[3]),
                                           atom[2], atom[4]))
                else:
                    atoms.append(atom)
            _accumulate(terms, _canon_monomial(atoms), c.conjugate())
        return FieldExpr(self.dim, terms)


def _accumulate(terms: dict, mon: tuple, c: GRat):
    if not c:
        return
    acc = terms.get(mon, ZERO) + c
    if acc:
        terms[mon] = acc
    else:
        del terms[mon]


def canonical_equal(a: FieldExpr, b: FieldExpr) -> bool:
    """Decidable equality: a - b normalizes to the empty expression."""
    return a == b


def gaussian(re=0, im=0) -> GRat:
    return GRat(Fraction(re), Fraction(im))
