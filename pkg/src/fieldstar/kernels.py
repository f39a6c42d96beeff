"""Constant-coefficient derivative-of-delta kernels and their symmetry.

A kernel P(a, b) is a finite sum over multi-indices gamma of
c_gamma * d_a^gamma delta(a - b).  Only constant coefficients are
supported; symmetry is then decided by the parity of |gamma|.
"""

from __future__ import annotations

from .jets import DimensionMismatch, mi_order, mi_zero
from .rationals import GRat, ONE, ZERO

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
MIXED = "mixed"


class Kernel:
    """P(a,b) = sum_gamma c_gamma d_a^gamma delta(a-b), labels implicit.

    A kernel is label-free: the labels are supplied when it is inserted
    into a tensor expression.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms = terms if terms is not None else {}

    @classmethod
    def delta(cls, dim: int, coeff=1) -> "Kernel":
        c = coeff if isinstance(coeff, GRat) else GRat(coeff)
        return cls(dim, {mi_zero(dim): c} if c else {})

    @classmethod
    def derivative_delta(cls, dim: int, gamma, coeff=1) -> "Kernel":
        gamma = tuple(gamma)
        if len(gamma) != dim:
            raise DimensionMismatch(f"index {gamma} has length != {dim}")
        c = coeff if isinstance(coeff, GRat) else GRat(coeff)
        return cls(dim, {gamma: c} if c else {})

    @classmethod
    def zero(cls, dim: int) -> "Kernel":
        return cls(dim, {})

    def __add__(self, other: "Kernel") -> "Kernel":
        if self.dim != other.dim:
            raise DimensionMismatch("kernel dimension mismatch")
        terms = dict(self.terms)
        for g, c in other.terms.items():
            acc = terms.get(g, ZERO) + c
            if acc:
                terms[g] = acc
            else:
                terms.pop(g, None)
        return Kernel(self.dim, terms)

    def __sub__(self, other: "Kernel") -> "Kernel":
        return self + other.scale(-1)

    def __neg__(self) -> "Kernel":
        return self.scale(-1)

    def scale(self, c) -> "Kernel":
        c = c if isinstance(c, GRat) else GRat(c)
        if not c:
            return Kernel.zero(self.dim)
        return Kernel(self.dim, {g: v * c for g, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Kernel):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self):
        from .render import render_kernel

        return f"Kernel({render_kernel(self)!r})"

    def classify(self) -> str:
        """Symmetry class by derivative parity; the zero kernel is symmetric."""
        has_even = any(mi_order(g) % 2 == 0 for g in self.terms)
        has_odd = any(mi_order(g) % 2 == 1 for g in self.terms)
        if has_even and has_odd:
            return MIXED
        if has_odd:
            return ANTISYMMETRIC
        return SYMMETRIC

    def split(self) -> tuple["Kernel", "Kernel"]:
        """Parity split P = P_sym + P_anti."""
        sym = {g: c for g, c in self.terms.items() if mi_order(g) % 2 == 0}
        anti = {g: c for g, c in self.terms.items() if mi_order(g) % 2 == 1}
        return Kernel(self.dim, sym), Kernel(self.dim, anti)

    def transpose(self) -> "Kernel":
        """P(b,a) expressed on the original label order: c_gamma -> (-1)^|gamma| c_gamma."""
        return Kernel(self.dim, {
            g: (c if mi_order(g) % 2 == 0 else -c) for g, c in self.terms.items()
        })


class MixedKernelError(ValueError):
    """A bracket or star product was requested with a mixed-parity kernel."""


def bracket_sign(kernel: Kernel) -> int:
    """Sign branch selection: -1 for symmetric kernels, +1 for antisymmetric."""
    cls = kernel.classify()
    if cls == SYMMETRIC:
        return -1
    if cls == ANTISYMMETRIC:
        return +1
    raise MixedKernelError(
        "mixed-parity kernel: split into symmetric and antisymmetric parts first")
