"""Command-line surface.

Exit codes: 0 success (and zero residual for verify), 1 nonzero residual,
2 usage, parse, or configuration error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .jets import FieldExpr, complex_system, mi_zero
from .kernels import MixedKernelError
from .parser import ParseError, parse_expr, parse_functional, parse_kernel
from .poisson import ConditionBViolation, Functional, bracket_fn
from .rationals import I
from .render import (
    dumps_canonical,
    render_field_expr,
    render_kernel,
    render_tensor_expr,
    to_json,
)
from .session import ConfigError, SessionConfig, load_config_file
from .star import equation_of_motion, star_fn
from .euler_lagrange import variational_derivative


def _session(args) -> SessionConfig:
    cfg = load_config_file(args.config) if args.config else SessionConfig()
    if getattr(args, "dim", None):
        cfg = SessionConfig(dim=args.dim, constants=cfg.constants,
                            functions=cfg.functions, kernel_text=cfg.kernel_text,
                            order=cfg.order, tolerance=cfg.tolerance,
                            seed=cfg.seed, hamiltonian_text=cfg.hamiltonian_text)
    if getattr(args, "kernel", None):
        cfg.kernel_text = args.kernel
    if getattr(args, "order", None):
        cfg.order = args.order
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    return cfg


def _emit(value, args) -> None:
    if getattr(args, "json", False):
        print(dumps_canonical(to_json(value)))
    else:
        from .tensor import TensorExpr

        if isinstance(value, FieldExpr):
            print(render_field_expr(value))
        elif isinstance(value, TensorExpr):
            print(render_tensor_expr(value))
        else:
            print(value)


def cmd_bracket(args) -> int:
    cfg = _session(args)
    ctx = cfg.context()
    f = parse_expr(args.f, ctx)
    g = parse_expr(args.g, ctx)
    result = bracket_fn(f, g, cfg.kernel(), cfg.system)
    _emit(result, args)
    return 0


def cmd_star(args) -> int:
    cfg = _session(args)
    ctx = cfg.context()
    f = parse_expr(args.f, ctx)
    g = parse_expr(args.g, ctx)
    series = star_fn(f, g, cfg.kernel(), cfg.system, order=cfg.order)
    if args.json:
        print(dumps_canonical(to_json(series)))
    else:
        for k in sorted(series.coeffs):
            print(f"hbar^{k}: {render_tensor_expr(series.coefficient(k))}")
        if not series.exact:
            print(f"(truncated at order {series.order})")
    return 0


def cmd_eom(args) -> int:
    cfg = _session(args)
    H = cfg.hamiltonian()
    sort = args.field
    if sort not in cfg.system.sort_names():
        print(f"error: unknown field {sort!r}", file=sys.stderr)
        return 2
    field = FieldExpr.jet(sort, mi_zero(cfg.dim), cfg.dim)
    result = equation_of_motion(H, field, cfg.kernel(), cfg.system, prefactor=I)
    _emit(result, args)
    return 0


def cmd_vardiff(args) -> int:
    cfg = _session(args)
    f = parse_expr(args.density, cfg.context())
    if args.field not in cfg.system.sort_names():
        print(f"error: unknown field {args.field!r}", file=sys.stderr)
        return 2
    _emit(variational_derivative(f, args.field), args)
    return 0


def cmd_classify(args) -> int:
    cfg = _session(args)
    print(cfg.kernel().classify())
    return 0


def cmd_verify(args) -> int:
    from . import verify as V

    cfg = _session(args)
    rng = random.Random(cfg.seed)
    trials = args.trials
    system = complex_system(cfg.dim) if args.pairing == "complex" \
        else cfg.system
    kernels = [parse_kernel(args.kernel, cfg.context())] if args.kernel \
        else V.default_kernels(cfg.dim)
    reports = []
    suite = args.suite
    if suite == "jacobi":
        reports = [V.verify_jacobi(system, P, trials, rng) for P in kernels]
    elif suite == "assoc":
        reports = [V.verify_assoc(system, P, max(1, trials // 5), rng)
                   for P in kernels]
    elif suite == "duality":
        reports = [V.verify_duality(system, trials, rng)]
    elif suite == "semiclassical":
        reports = [V.verify_semiclassical(system, P, trials, rng)
                   for P in kernels]
    elif suite == "closed-forms":
        reports = [V.verify_closed_forms(system, P, max(1, trials // 4), rng)
                   for P in kernels]
    elif suite == "complex-equiv":
        reports = [V.verify_complex_equiv(cfg.dim, trials, rng)]
    elif suite == "peierls":
        reports = [V.verify_peierls(drift_tol=max(cfg.tolerance, 1e-10))]
    else:
        print(f"error: unknown suite {suite!r}", file=sys.stderr)
        return 2
    ok = True
    for report in reports:
        print(report.line())
        ok = ok and report.ok
    return 0 if ok else 1


def cmd_peierls_eval(args) -> int:
    import numpy as np

    from .peierls import green_eval

    field = green_eval(args.mass, args.time, args.modes)
    if args.json:
        data = {"kind": "spectral", "cutoff": args.modes,
                "data": [[int(k), field.mode(int(k)).real]
                         for k in field.wavenumbers()]}
        print(dumps_canonical(data))
    else:
        for k in field.wavenumbers():
            print(f"{int(k):+d}: {field.mode(int(k)).real:.15g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="fieldstar",
        description="Exact symbolic brackets and star products of scalar fields")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, order=False):
        p.add_argument("--config", help="session config (canonical JSON)")
        p.add_argument("--dim", type=int, help="session dimension")
        p.add_argument("--kernel", help="kernel text, e.g. 'i*delta'")
        p.add_argument("--seed", type=int, help="random seed")
        p.add_argument("--json", action="store_true",
                       help="emit canonical JSON")
        if order:
            p.add_argument("--order", type=int, help="series truncation order")

    p = sub.add_parser("bracket", help="Poisson bracket of two expressions")
    p.add_argument("f")
    p.add_argument("g")
    common(p)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("star", help="star product of two expressions")
    p.add_argument("f")
    p.add_argument("g")
    common(p, order=True)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("eom", help="Hamiltonian equation of motion")
    p.add_argument("--field", required=True, help="field sort to evolve")
    common(p)
    p.set_defaults(func=cmd_eom)

    p = sub.add_parser("vardiff", help="variational derivative of a density")
    p.add_argument("density")
    p.add_argument("--field", required=True)
    common(p)
    p.set_defaults(func=cmd_vardiff)

    p = sub.add_parser("classify", help="classify a kernel's parity")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a zero-residual verification suite")
    p.add_argument("suite", choices=["jacobi", "assoc", "duality",
                                     "semiclassical", "closed-forms",
                                     "complex-equiv", "peierls"])
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--pairing", choices=["real", "complex"], default="real")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("peierls", help="Green-function numerics")
    psub = p.add_subparsers(dest="peierls_command", required=True)
    pe = psub.add_parser("eval", help="evaluate Green-function modes")
    pe.add_argument("--mass", type=float, default=0.0)
    pe.add_argument("--time", type=float, default=1.0)
    pe.add_argument("--modes", type=int, default=8)
    pe.add_argument("--json", action="store_true")
    pe.set_defaults(func=cmd_peierls_eval)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigError, ConditionBViolation,
            MixedKernelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
