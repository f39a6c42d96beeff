"""Pretty-printing and canonical JSON serialization.

Text output uses the same grammar the parser reads, so rendered field
expressions, densities, functionals, and kernels round-trip.  Tensor
expressions render with explicit point labels (``phi{x}``, ``delta{x,y}``)
for diagnostics; they are not part of the input grammar.

Canonical JSON is byte-stable: term arrays are emitted in canonical order,
rationals as "p/q" strings, Gaussian rationals as {"re", "im"} objects,
and all object keys sorted.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .jets import FieldExpr, mi_order, mi_unit
from .kernels import Kernel
from .rationals import GRat
from .tensor import TensorExpr


# ---------------------------------------------------------------------------
# coefficient rendering

def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_grat(c: GRat) -> str:
    """A Gaussian rational in grammar form: `p/q`, `i`, `3/2*i`, `(1 + 2*i)`."""
    re, im = c.re, c.im
    if not im:
        return _frac(re)
    if im == 1:
        im_part = "i"
    elif im == -1:
        im_part = "-i"
    else:
        im_part = f"{_frac(im)}*i"
    if not re:
        return im_part
    joiner = " - " if im_part.startswith("-") else " + "
    return f"({_frac(re)}{joiner}{im_part.lstrip('-')})"


def _coeff_prefix(c: GRat, has_factors: bool) -> tuple[str, str]:
    """(sign, magnitude-with-star) for use at the head of a term."""
    if not c.im and c.re < 0:
        sign, c = "-", -c
    elif not c.re and c.im < 0:
        sign, c = "-", -c
    else:
        sign = "+"
    if has_factors and c == 1:
        return sign, ""
    body = render_grat(c)
    return sign, body + ("*" if has_factors else "")


# ---------------------------------------------------------------------------
# field expressions

def _index_str(index) -> str:
    return ",".join(str(k) for k in index)


def _atom_str(atom, dim: int) -> str:
    kind = atom[0]
    if kind == "c":
        return atom[1]
    if kind == "f":
        _, name, order, arg_sort, _vanishes = atom
        return f"{name}{chr(39) * order}({arg_sort})"
    _, sort, index = atom
    if mi_order(index) == 0:
        return sort
    return f"{sort}[{_index_str(index)}]"


def _monomial_str(mon, dim: int) -> str:
    parts = []
    i = 0
    while i < len(mon):
        j = i
        while j < len(mon) and mon[j] == mon[i]:
            j += 1
        base = _atom_str(mon[i], dim)
        parts.append(base if j - i == 1 else f"{base}^{j - i}")
        i = j
    return "*".join(parts)


def _laplacian_groups(expr: FieldExpr):
    """Split terms into laplacian-sugar groups and a remainder.

    A group is a set of monomials differing only in one jet factor of the
    form 2*e_i with equal coefficients across every spatial direction; it
    renders as ``laplacian(sort)`` times the common cofactor.
    """
    dim = expr.dim
    terms = dict(expr.terms)
    groups = []
    if dim >= 1:
        candidates: dict = {}
        for mon, c in terms.items():
            for pos, atom in enumerate(mon):
                if atom[0] != "j":
                    continue
                index = atom[2]
                if mi_order(index) != 2 or max(index) != 2:
                    continue
                direction = index.index(2) + 1
                rest = mon[:pos] + mon[pos + 1:]
                candidates.setdefault((rest, atom[1]), {})[direction] = (mon, c)
        for (rest, sort), hits in candidates.items():
            if len(hits) != dim:
                continue
            coeffs = {c for _m, c in hits.values()}
            if len(coeffs) != 1:
                continue
            mons = [m for m, _c in hits.values()]
            if any(m not in terms for m in mons):
                continue
            c = coeffs.pop()
            for m in mons:
                del terms[m]
            groups.append((rest, sort, c))
    return groups, terms


def _term_sort_key(mon):
    order = max((mi_order(a[2]) for a in mon if a[0] == "j"), default=0)
    return (-order, mon)


def render_field_expr(expr: FieldExpr, laplacian: bool = True) -> str:
    """Grammar-form text; laplacian sugar folds matched second-order sums."""
    if expr.is_zero():
        return "0"
    dim = expr.dim
    if laplacian:
        groups, rest = _laplacian_groups(expr)
    else:
        groups, rest = [], dict(expr.terms)
    entries = []
    for cofactor, sort, c in sorted(groups, key=lambda g: (g[1], g[0])):
        body = f"laplacian({sort})"
        if cofactor:
            body = f"{_monomial_str(cofactor, dim)}*{body}"
        entries.append(((-3, cofactor), c, body))
    for mon, c in rest.items():
        entries.append((_term_sort_key(mon), c,
                        _monomial_str(mon, dim) if mon else ""))
    entries.sort(key=lambda e: e[0])
    out = []
    for _key, c, body in entries:
        sign, mag = _coeff_prefix(c, bool(body))
        piece = (mag + body) if body else mag
        if not out:
            out.append(piece if sign == "+" else f"-{piece}")
        else:
            out.append(f"{'+' if sign == '+' else '-'} {piece}")
    return " ".join(out)


def render_functional(density: FieldExpr, label: str = "x") -> str:
    return f"int{{{label}}}: {render_field_expr(density)}"


# ---------------------------------------------------------------------------
# kernels

def _gamma_str(gamma) -> str:
    parts = []
    for direction, k in enumerate(gamma, start=1):
        if k == 1:
            parts.append(f"d{direction}")
        elif k > 1:
            parts.append(f"d{direction}^{k}")
    parts.append("delta")
    return " ".join(parts)


def render_kernel(P: Kernel) -> str:
    if P.is_zero():
        return "0"
    out = []
    for gamma in sorted(P.terms, key=lambda g: (mi_order(g), g)):
        c = P.terms[gamma]
        sign, mag = _coeff_prefix(c, True)
        piece = mag + _gamma_str(gamma)
        if not out:
            out.append(piece if sign == "+" else f"-{piece}")
        else:
            out.append(f"{'+' if sign == '+' else '-'} {piece}")
    return " ".join(out)


# ---------------------------------------------------------------------------
# tensor expressions

def _located_atom_str(lab: str, atom, dim: int) -> str:
    kind = atom[0]
    if kind == "c":
        return atom[1]
    if kind == "f":
        _, name, order, arg_sort, _v = atom
        return f"{name}{chr(39) * order}({arg_sort}{{{lab}}})"
    _, sort, index = atom
    if mi_order(index) == 0:
        return f"{sort}{{{lab}}}"
    return f"{sort}{{{lab}}}[{_index_str(index)}]"


def _delta_str(a: str, b: str, gamma) -> str:
    parts = []
    for direction, k in enumerate(gamma, start=1):
        if k == 1:
            parts.append(f"d{direction}")
        elif k > 1:
            parts.append(f"d{direction}^{k}")
    parts.append(f"delta{{{a},{b}}}")
    return " ".join(parts)


def render_tensor_expr(T: TensorExpr) -> str:
    if T.is_zero():
        return "0"
    out = []
    for (mon, deltas) in sorted(T.terms):
        c = T.terms[(mon, deltas)]
        factors = [_located_atom_str(lab, atom, T.dim) for lab, atom in mon]
        factors += [_delta_str(a, b, g) for a, b, g in deltas]
        body = "*".join(factors)
        sign, mag = _coeff_prefix(c, bool(body))
        piece = (mag + body) if body else mag
        if not out:
            out.append(piece if sign == "+" else f"-{piece}")
        else:
            out.append(f"{'+' if sign == '+' else '-'} {piece}")
    return " ".join(out)


# ---------------------------------------------------------------------------
# canonical JSON

def _grat_json(c: GRat):
    return {"re": _frac(c.re), "im": _frac(c.im)}


def _atom_json(atom):
    if atom[0] == "c":
        return ["c", atom[1]]
    if atom[0] == "f":
        return ["f", atom[1], atom[2], atom[3], bool(atom[4])]
    return ["j", atom[1], list(atom[2])]


def field_expr_json(expr: FieldExpr, kind: str = "expr") -> dict:
    data = [[_grat_json(expr.terms[mon]), [_atom_json(a) for a in mon], []]
            for mon in sorted(expr.terms)]
    return {"kind": kind, "dim": expr.dim, "data": data}


def kernel_json(P: Kernel) -> dict:
    data = [[_grat_json(P.terms[g]), list(g)]
            for g in sorted(P.terms, key=lambda g: (mi_order(g), g))]
    return {"kind": "kernel", "dim": P.dim, "data": data}


def tensor_expr_json(T: TensorExpr) -> dict:
    data = []
    for (mon, deltas) in sorted(T.terms):
        data.append([
            _grat_json(T.terms[(mon, deltas)]),
            [[lab, _atom_json(a)] for lab, a in mon],
            [[a, b, list(g)] for a, b, g in deltas],
        ])
    return {"kind": "tensor", "dim": T.dim, "data": data}


def series_json(coeffs: dict, dim: int, order: int, exact: bool) -> dict:
    data = {str(k): tensor_expr_json(v)["data"] for k, v in sorted(coeffs.items())}
    return {"kind": "series", "dim": dim, "order": order,
            "exact": exact, "data": data}


def to_json(value) -> dict:
    from .poisson import Functional
    from .star import HbarSeries

    if isinstance(value, FieldExpr):
        return field_expr_json(value)
    if isinstance(value, Kernel):
        return kernel_json(value)
    if isinstance(value, TensorExpr):
        return tensor_expr_json(value)
    if isinstance(value, Functional):
        out = field_expr_json(value.density, kind="functional")
        return out
    if isinstance(value, HbarSeries):
        return series_json(value.coeffs, value.dim, value.order, value.exact)
    raise TypeError(f"no canonical JSON form for {type(value).__name__}")


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
