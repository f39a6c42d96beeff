import random

import pytest

from fieldstar.jets import FieldExpr, complex_system, real_system
from fieldstar.kernels import MIXED, Kernel
from fieldstar.parser import (
    ParseContext,
    ParseError,
    default_context,
    parse,
    parse_expr,
    parse_functional,
    parse_kernel,
)
from fieldstar.randexpr import random_expr
from fieldstar.rationals import GRat, I
from fieldstar.render import (
    dumps_canonical,
    render_field_expr,
    render_kernel,
    to_json,
)

CTX1 = default_context(1)
CTX3 = default_context(3)


def test_jet_shorthand_and_indexed_forms():
    assert parse_expr("phi", CTX3) == FieldExpr.jet("phi", (0, 0, 0))
    assert parse_expr("phi[0,0,1]", CTX3) == FieldExpr.jet("phi", (0, 0, 1))


def test_kg_density_parses():
    f = parse("1/2*(pi^2 + d1(phi)^2 + m^2*phi^2) + U(phi)", "density", CTX1)
    assert f.satisfies_condition_b()
    assert ("phi", (1,)) in f.jet_variables("phi")


def test_derivative_and_laplacian_sugar():
    assert parse_expr("d1(phi)", CTX1) == FieldExpr.jet("phi", (1,))
    lap = parse_expr("laplacian(phi)", CTX3)
    expected = sum((FieldExpr.jet("phi", idx)
                    for idx in ((2, 0, 0), (0, 2, 0), (0, 0, 2))),
                   FieldExpr.zero(3))
    assert lap == expected


def test_function_symbols_with_primes():
    assert parse_expr("U'(phi)", CTX1) \
        == FieldExpr.function("U", "phi", 1, order=1)
    assert parse_expr("U''(phi)", CTX1) \
        == FieldExpr.function("U", "phi", 1, order=2)


def test_imaginary_unit_and_rationals():
    e = parse_expr("i*phi + 3/2", CTX1)
    assert e == FieldExpr.jet("phi", (0,)).scale(I) \
        + FieldExpr.const(GRat(3) / GRat(2), 1)


def test_kernel_grammar():
    assert parse_kernel("delta", CTX1) == Kernel.delta(1)
    assert parse_kernel("d1 delta", CTX1) == Kernel.derivative_delta(1, (1,))
    mixed = parse_kernel("delta + 2*d1 delta", CTX1)
    assert mixed.classify() == MIXED
    assert parse_kernel("i*delta", CTX1) == Kernel.delta(1, I)
    assert parse_kernel("d1^2 d3 delta", CTX3) \
        == Kernel.derivative_delta(3, (2, 0, 1))


def test_functional_grammar_enforces_condition_b():
    F = parse("int{x}: phi*pi", "functional", CTX1)
    assert F.density == FieldExpr.jet("phi", (0,)) * FieldExpr.jet("pi", (0,))
    from fieldstar.poisson import ConditionBViolation

    with pytest.raises(ConditionBViolation):
        parse("int{x}: phi + 1", "functional", CTX1)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError):
        parse_expr("phi +", CTX1)
    with pytest.raises(ParseError):
        parse_expr("unknown_name", CTX1)
    with pytest.raises(ParseError):
        parse_expr("phi[0", CTX1)
    with pytest.raises(ParseError):
        parse_expr("d9(phi)", CTX1)


def test_render_parse_round_trip_on_random_corpus():
    rng = random.Random(23)
    for dim, ctx in ((1, CTX1), (3, CTX3)):
        system = real_system(dim)
        for _ in range(50):
            expr = random_expr(system, rng, max_degree=3, max_jet_order=2,
                               terms=4, constants=("m", "kappa"),
                               functions=(("U", "phi"),))
            text = render_field_expr(expr)
            assert parse_expr(text, ctx) == expr


def test_render_parse_round_trip_complex_sorts():
    rng = random.Random(29)
    system = complex_system(2)
    ctx = ParseContext(system)
    for _ in range(30):
        expr = random_expr(system, rng, max_degree=3, max_jet_order=1, terms=3)
        assert parse_expr(render_field_expr(expr), ctx) == expr


def test_kernel_render_round_trip():
    rng = random.Random(31)
    from fieldstar.randexpr import multi_indices, random_coeff

    for _ in range(30):
        P = Kernel.zero(2)
        for _ in range(rng.randint(1, 3)):
            P = P + Kernel.derivative_delta(2, rng.choice(multi_indices(2, 3)),
                                            random_coeff(rng))
        if P.is_zero():
            continue
        assert parse_kernel(render_kernel(P), ParseContext(real_system(2))) == P


def test_canonical_json_is_deterministic():
    f = parse_expr("i*phi^2 + 1/2*pi", CTX1)
    g = parse_expr("1/2*pi + i*phi^2", CTX1)
    assert dumps_canonical(to_json(f)) == dumps_canonical(to_json(g))
    assert '"kind":"expr"' in dumps_canonical(to_json(f))


def test_zero_renders_as_zero():
    assert render_field_expr(FieldExpr.zero(1)) == "0"
    assert render_kernel(Kernel.zero(1)) == "0"
