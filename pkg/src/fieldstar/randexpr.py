"""Random jet polynomials for the property-verification suites."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .jets import FieldExpr, FieldSystem
from .rationals import GRat


def multi_indices(dim: int, max_order: int):
    """All multi-indices of length dim with |index| <= max_order."""
    out = []
    for total in range(max_order + 1):
        for cuts in itertools.combinations_with_replacement(range(dim), total):
            index = [0] * dim
            for axis in cuts:
                index[axis] += 1
            out.append(tuple(index))
    return sorted(set(out))


def random_coeff(rng: random.Random, complex_ok: bool = True) -> GRat:
    def part():
        num = rng.randint(-4, 4)
        den = rng.choice((1, 1, 2, 3))
        return Fraction(num, den)

    re = part()
    im = part() if complex_ok and rng.random() < 0.4 else Fraction(0)
    if not re and not im:
        re = Fraction(1)
    return GRat(re, im)


def random_expr(system: FieldSystem, rng: random.Random,
                max_degree: int = 3, max_jet_order: int = 1,
                terms: int = 3, constants: tuple = (),
                functions: tuple = (), complex_ok: bool = True) -> FieldExpr:
    """A random jet polynomial: `terms` monomials of degree <= max_degree
    over jets with |index| <= max_jet_order, optional constants and
    vanishing function symbols."""
    dim = system.dim
    atoms = [FieldExpr.jet(s, idx, dim)
             for s in system.sort_names()
             for idx in multi_indices(dim, max_jet_order)]
    atoms += [FieldExpr.const_symbol(name, dim) for name in constants]
    atoms += [FieldExpr.function(name, arg, dim, 0, True)
              for name, arg in functions]
    result = FieldExpr.zero(dim)
    for _ in range(terms):
        term = FieldExpr.const(random_coeff(rng, complex_ok), dim)
        for _ in range(rng.randint(1, max_degree)):
            term = term * rng.choice(atoms)
        result = result + term
    return result


def random_density(system: FieldSystem, rng: random.Random, **kw) -> FieldExpr:
    """As random_expr but guaranteed to satisfy condition B (no constant
    term; function symbols vanish at the origin by construction)."""
    expr = random_expr(system, rng, **kw)
    kept = {mon: c for mon, c in expr.terms.items()
            if any(a[0] in ("j", "f") for a in mon)}
    return FieldExpr(expr.dim, kept)
