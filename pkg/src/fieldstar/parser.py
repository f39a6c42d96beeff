"""Recursive-descent parser for the expression grammar.

Expressions:
    phi[0,0,1]        jet variable (index length = session dimension)
    phi               shorthand for the order-zero jet
    m, kappa          declared constant symbols
    U(phi), U'(phi)   function symbols; primes count derivative order
    d1(e) .. dn(e)    total derivatives
    laplacian(e)      sum of the second total derivatives
    i                 imaginary unit
    3, 1/2            rationals
    + - * ^ ( )       ring operations, integer powers

Kernels:
    delta, d1 delta, d1^2 d2 delta, i*delta + 2*d1 delta, ...

Functionals:
    int{x}: <density>
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .jets import FieldExpr, FieldSystem, mi_unit, mi_zero, real_system
from .kernels import Kernel
from .rationals import GRat, I, ONE


class ParseError(ValueError):
    """Syntax or symbol-resolution failure; carries the source position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass
class ParseContext:
    """Symbol environment: session dimension, sorts, declared names."""

    system: FieldSystem
    constants: frozenset = frozenset({"m", "kappa"})
    functions: dict = field(default_factory=lambda: {"U": True})

    @property
    def dim(self) -> int:
        return self.system.dim


def default_context(dim: int = 3) -> ParseContext:
    return ParseContext(real_system(dim))


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<sym>[-+*^/()\[\]{},:])
""", re.VERBOSE)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


_DERIV = re.compile(r"^d([1-9][0-9]*)$")


class _Parser:
    def __init__(self, text: str, ctx: ParseContext):
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    # -- token plumbing -----------------------------------------------------

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.next()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def at_end(self) -> bool:
        return self.peek()[0] == "end"

    # -- expression grammar -------------------------------------------------

    def parse_sum(self) -> FieldExpr:
        kind, text, _ = self.peek()
        negate = False
        if text in ("+", "-"):
            self.next()
            negate = text == "-"
        result = self.parse_product()
        if negate:
            result = -result
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            term = self.parse_product()
            result = result - term if op == "-" else result + term
        return result

    def parse_product(self) -> FieldExpr:
        result = self.parse_power()
        while self.peek()[1] == "*":
            self.next()
            result = result * self.parse_power()
        return result

    def parse_power(self) -> FieldExpr:
        base = self.parse_primary()
        if self.peek()[1] == "^":
            self.next()
            kind, text, pos = self.next()
            if kind != "num":
                raise ParseError("exponent must be a natural number", pos)
            return base ** int(text)
        return base

    def parse_primary(self) -> FieldExpr:
        kind, text, pos = self.next()
        dim = self.ctx.dim
        if text == "(":
            inner = self.parse_sum()
            self.expect(")")
            return inner
        if kind == "num":
            value = Fraction(int(text))
            if self.peek()[1] == "/":
                self.next()
                k2, t2, p2 = self.next()
                if k2 != "num":
                    raise ParseError("denominator must be a natural number", p2)
                value /= int(t2)
            return FieldExpr.const(GRat(value), dim)
        if kind == "name":
            return self.parse_name(text, pos)
        raise ParseError(f"unexpected token {text!r}", pos)

    def parse_name(self, name: str, pos: int) -> FieldExpr:
        ctx = self.ctx
        dim = ctx.dim
        if name == "i":
            return FieldExpr.const(I, dim)
        deriv = _DERIV.match(name)
        if deriv and self.peek()[1] == "(":
            direction = int(deriv.group(1))
            if not 1 <= direction <= dim:
                raise ParseError(f"derivative direction {direction} exceeds "
                                 f"dimension {dim}", pos)
            self.next()
            inner = self.parse_sum()
            self.expect(")")
            return inner.total_derivative(direction)
        if name == "laplacian" and self.peek()[1] == "(":
            self.next()
            inner = self.parse_sum()
            self.expect(")")
            result = FieldExpr.zero(dim)
            for direction in range(1, dim + 1):
                result = result + inner.total_derivative(direction).total_derivative(direction)
            return result
        order = len(name) - len(name.rstrip("'"))
        base = name.rstrip("'")
        if base in ctx.functions or (order > 0 and self.peek()[1] == "("):
            if self.peek()[1] != "(":
                raise ParseError(f"function symbol {base!r} needs an argument", pos)
            self.next()
            k2, arg, p2 = self.next()
            if k2 != "name" or arg not in ctx.system.sort_names():
                raise ParseError(f"function argument must be a field sort, "
                                 f"found {arg!r}", p2)
            self.expect(")")
            vanishes = ctx.functions.get(base, True)
            return FieldExpr.function(base, arg, dim, order, vanishes)
        if order:
            raise ParseError(f"primes are only valid on function symbols", pos)
        if name in ctx.system.sort_names():
            if self.peek()[1] == "[":
                self.next()
                index = self.parse_index()
                return FieldExpr.jet(name, index, dim)
            return FieldExpr.jet(name, mi_zero(dim), dim)
        if name in ctx.constants:
            return FieldExpr.const_symbol(name, dim)
        raise ParseError(f"unknown symbol {name!r}", pos)

    def parse_index(self):
        entries = []
        while True:
            kind, text, pos = self.next()
            if kind != "num":
                raise ParseError("multi-index entries must be naturals", pos)
            entries.append(int(text))
            kind, text, pos = self.next()
            if text == "]":
                break
            if text != ",":
                raise ParseError("expected ',' or ']' in multi-index", pos)
        if len(entries) != self.ctx.dim:
            raise ParseError(f"multi-index length {len(entries)} != session "
                             f"dimension {self.ctx.dim}", pos)
        return tuple(entries)

    # -- kernel grammar -----------------------------------------------------

    def parse_kernel(self) -> Kernel:
        dim = self.ctx.dim
        result = Kernel.zero(dim)
        negate = False
        if self.peek()[1] in ("+", "-"):
            negate = self.next()[1] == "-"
        while True:
            term = self.parse_kernel_term()
            result = result - term if negate else result + term
            kind, text, _ = self.peek()
            if text in ("+", "-"):
                negate = self.next()[1] == "-"
                continue
            break
        return result

    def parse_kernel_term(self) -> Kernel:
        dim = self.ctx.dim
        coeff = ONE
        gamma = list(mi_zero(dim))
        saw_delta = False
        while True:
            kind, text, pos = self.peek()
            deriv = _DERIV.match(text) if kind == "name" else None
            if deriv and self.tokens[self.i + 1][1] != "(":
                self.next()
                direction = int(deriv.group(1))
                if not 1 <= direction <= dim:
                    raise ParseError(f"derivative direction {direction} exceeds "
                                     f"dimension {dim}", pos)
                power = 1
                if self.peek()[1] == "^":
                    self.next()
                    k2, t2, p2 = self.next()
                    if k2 != "num":
                        raise ParseError("exponent must be a natural number", p2)
                    power = int(t2)
                gamma[direction - 1] += power
                continue
            if text == "delta":
                self.next()
                saw_delta = True
                break
            # anything else is a scalar factor
            scalar = self.parse_power()
            value = _as_scalar(scalar, pos)
            coeff = coeff * value
            if self.peek()[1] == "*":
                self.next()
            continue
        if not saw_delta:
            raise ParseError("kernel term must end in 'delta'", self.peek()[2])
        return Kernel.derivative_delta(dim, tuple(gamma), coeff)


def _as_scalar(expr: FieldExpr, pos: int) -> GRat:
    if expr.is_zero():
        return GRat(0)
    if set(expr.terms) != {()}:
        raise ParseError("kernel coefficients must be scalars", pos)
    return expr.terms[()]


def parse_expr(text: str, ctx: ParseContext) -> FieldExpr:
    p = _Parser(text, ctx)
    result = p.parse_sum()
    if not p.at_end():
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    return result


parse_density = parse_expr


def parse_functional(text: str, ctx: ParseContext):
    from .poisson import Functional

    p = _Parser(text, ctx)
    kind, tok, pos = p.next()
    if tok != "int":
        raise ParseError("functional must start with 'int{label}:'", pos)
    p.expect("{")
    k2, label, p2 = p.next()
    if k2 != "name":
        raise ParseError("integration label must be an identifier", p2)
    p.expect("}")
    p.expect(":")
    density = p.parse_sum()
    if not p.at_end():
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    return Functional(density, ctx.system)


def parse_kernel(text: str, ctx: ParseContext) -> Kernel:
    p = _Parser(text, ctx)
    result = p.parse_kernel()
    if not p.at_end():
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    return result


def parse(text: str, kind: str, ctx: ParseContext):
    """Typed entry point: kind is expr | density | functional | kernel."""
    if kind in ("expr", "density"):
        return parse_expr(text, ctx)
    if kind == "functional":
        return parse_functional(text, ctx)
    if kind == "kernel":
        return parse_kernel(text, ctx)
    raise ValueError(f"unknown parse kind {kind!r}")
