"""Command-line interface: ``tiltstab <command> [options]``.

Exit status is 0 on success, 1 on invalid input and 2 when ``verify-paper``
finds a failing check.  All output is deterministic.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .chow import ThreefoldModel, load_model, model_to_dict, validate_model
from .fano import gamma_for, get_model, model_names
from .parse import parse_class, parse_curve, parse_divisor, parse_scalar
from .plot import render_svg, walls_csv
from .rr import euler_char, euler_pair, frobenius_chi_polynomial, todd
from .scalar import Scalar
from .tilt import (
    EmptyWallError,
    GammaClass,
    ProportionalClassesError,
    beta_bar,
    beta_pm,
    contract,
    discriminant,
    gamma_inequality,
    li_bound_check,
    li_threshold,
    mu,
    nu,
    q_form,
    wall_between,
)
from .toric import frobenius_decompose, toric_threefold, validate_toric
from .verify import run_all


class UsageError(Exception):
    pass


def _model(spec: str) -> ThreefoldModel:
    if spec in model_names():
        return get_model(spec)
    if os.path.exists(spec):
        try:
            return load_model(spec)
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read model file {spec}: {exc}") from None
    raise UsageError(f"unknown model {spec!r} (known: {', '.join(model_names())})")


def _emit(data, fmt: str = "json") -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    elif fmt == "csv":
        keys = list(data)
        print(",".join(keys))
        print(",".join(f'"{data[k]}"' for k in keys))
    else:
        for k, v in data.items():
            print(f"{k}: {v}")


def _gamma(model: ThreefoldModel, text: str | None) -> GammaClass:
    if text is None:
        return gamma_for(model)
    if text.strip() == "0":
        return GammaClass.zero(model)
    return GammaClass(parse_curve(model, text))


# -- commands -------------------------------------------------------------


def cmd_model(args) -> int:
    if args.action == "list":
        for name in model_names():
            m = get_model(name)
            print(f"{name:<20} rank {m.r}  H^3 = {m.H3}  index {m.fano_index}  (-K)^3 = {m.anticanonical_degree()}")
        return 0
    if not args.target:
        raise UsageError(f"model {args.action} needs a model name or path")
    m = _model(args.target)
    if args.action == "show":
        data = model_to_dict(m)
        td = todd(m)
        data["derived"] = {
            "H^3": str(m.H3),
            "(-K)^3": str(m.anticanonical_degree()),
            "td2": str(td.td2),
            "td3": str(td.td3),
            "gamma": str(gamma_for(m)) if m.fano_index else None,
        }
        _emit(data, "json")
        return 0
    problems = validate_model(m)
    if m.toric and not problems:
        problems += validate_toric(toric_threefold(m))
    if problems:
        for p in problems:
            print(f"violation: {p}")
        return 1
    print(f"{m.name}: valid")
    return 0


def cmd_nu(args) -> int:
    m = _model(args.model)
    ch = parse_class(m, args.cls)
    alpha, beta = parse_scalar(args.alpha), parse_scalar(args.beta)
    _emit({"nu": str(nu(ch, alpha, beta)), "alpha": str(alpha), "beta": str(beta)}, args.format)
    return 0


def cmd_wall(args) -> int:
    m = _model(args.model)
    w = wall_between(parse_class(m, args.v), parse_class(m, args.w))
    _emit(w.to_dict(), args.format)
    return 0


def cmd_beta_bar(args) -> int:
    m = _model(args.model)
    ch = parse_class(m, args.cls)
    v = contract(ch)
    out = {
        "contracted": [str(x) for x in v],
        "mu": str(mu(ch)),
        "discriminant": str(discriminant(ch)),
        "beta_bar": str(beta_bar(ch)),
    }
    if v.v0 != 0:
        lo, hi = beta_pm(ch)
        out["beta_minus"], out["beta_plus"] = str(lo), str(hi)
    _emit(out, args.format)
    return 0


def cmd_check_bmt(args) -> int:
    m = _model(args.model)
    ch = parse_class(m, args.cls)
    gamma = _gamma(m, args.gamma)
    if args.grid:
        n = args.grid
        print("alpha,beta,gamma_inequality,q_form")
        for i, j in itertools.product(range(n + 1), range(-n, n + 1)):
            a, b = Fraction(i, n), Fraction(3 * j, n)
            print(f"{a},{b},{gamma_inequality(ch, a, b, gamma)},{q_form(ch, a, b, gamma)}")
        return 0
    alpha = parse_scalar(args.alpha) if args.alpha is not None else Scalar(0)
    beta = parse_scalar(args.beta) if args.beta is not None else beta_bar(ch)
    value = gamma_inequality(ch, alpha, beta, gamma)
    _emit(
        {
            "gamma": str(gamma),
            "alpha": str(alpha),
            "beta": str(beta),
            "gamma_inequality": str(value),
            "holds": value.sign() <= 0,
            "q_form": str(q_form(ch, alpha, beta, gamma)),
        },
        args.format,
    )
    return 0


def cmd_li_check(args) -> int:
    m = _model(args.model)
    ch = parse_class(m, args.cls)
    v = contract(ch)
    status = li_bound_check(ch, m)
    ratio = discriminant(ch) / (v.v0 * v.v0) if v.v0 != 0 else None
    _emit(
        {"status": status.value, "ratio": str(ratio), "threshold": str(li_threshold(m))},
        args.format,
    )
    return 0


def cmd_chi(args) -> int:
    m = _model(args.model)
    ch = parse_class(m, args.cls)
    out = {"chi": str(euler_char(m, ch))}
    if args.pair:
        out["chi_pair"] = str(euler_pair(m, parse_class(m, args.pair), ch))
    out["frobenius_polynomial"] = [str(c) for c in frobenius_chi_polynomial(m, ch)]
    _emit(out, args.format)
    return 0


def cmd_frobenius(args) -> int:
    m = _model(args.model)
    if args.m < 1:
        raise UsageError("--m must be positive")
    d = parse_divisor(m, args.divisor)
    dec = frobenius_decompose(toric_threefold(m), d, args.m, method=args.method)
    print(",".join(m.divisor_basis) + ",eta")
    for cls, eta in dec.summands:
        print(",".join(str(x) for x in cls) + f",{eta}")
    return 0


def cmd_verify(args) -> int:
    checks = run_all(args.model)
    for c in checks:
        print(c.row())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 2 if failed else 0


def cmd_plot(args) -> int:
    m = _model(args.model)
    ch = parse_class(m, args.v)
    targets = args.w or [f"O({d})" for d in _default_divisors(m)]
    rows = []
    for t in targets:
        try:
            rows.append((t, wall_between(ch, parse_class(m, t))))
        except (EmptyWallError, ProportionalClassesError):
            continue
    svg = render_svg(ch, [w for _, w in rows], title=f"{m.name}: {args.v}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    csv = walls_csv(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(csv)
    if not args.out or args.format == "csv":
        sys.stdout.write(csv if args.format == "csv" or args.out else svg)
    return 0


def _default_divisors(m: ThreefoldModel) -> list[str]:
    out = []
    for coeffs in itertools.product(range(-2, 3), repeat=m.r):
        if not any(coeffs):
            continue
        terms = "+".join(f"({c}){n}" for c, n in zip(coeffs, m.divisor_basis) if c)
        out.append(terms.replace("(", "").replace(")", "").replace("+-", "-"))
    return out


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tiltstab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"tiltstab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, cls=True):
        sp.add_argument("--model", required=True, help="built-in model name or JSON path")
        if cls:
            sp.add_argument("--class", dest="cls", required=True, help='class, e.g. "O(2h-e)"')
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")

    sp = sub.add_parser("model", help="list, show or validate models")
    sp.add_argument("action", choices=["list", "show", "validate"])
    sp.add_argument("target", nargs="?")
    sp.set_defaults(func=cmd_model)

    sp = sub.add_parser("nu", help="tilt slope at (alpha, beta)")
    common(sp)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    sp.set_defaults(func=cmd_nu)

    sp = sub.add_parser("wall", help="numerical wall between two classes")
    common(sp, cls=False)
    sp.add_argument("--v", required=True)
    sp.add_argument("--w", required=True)
    sp.set_defaults(func=cmd_wall)

    sp = sub.add_parser("beta-bar", help="mu, discriminant, beta-bar and beta+-")
    common(sp)
    sp.set_defaults(func=cmd_beta_bar)

    sp = sub.add_parser("check-bmt", help="Gamma-modified inequality and Q form")
    common(sp)
    sp.add_argument("--gamma", help='curve class such as "1/48(h^2+2e^2)"; default: built-in Gamma')
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--grid", type=int, help="evaluate on an (n+1) x (2n+1) grid, CSV output")
    sp.set_defaults(func=cmd_check_bmt)

    sp = sub.add_parser("li-check", help="compare the discriminant with the Li bound")
    common(sp)
    sp.set_defaults(func=cmd_li_check)

    sp = sub.add_parser("chi", help="Euler characteristic by Riemann-Roch")
    common(sp)
    sp.add_argument("--pair", help="first argument F of chi(F, E)")
    sp.set_defaults(func=cmd_chi)

    sp = sub.add_parser("frobenius-decompose", help="toric Frobenius pushforward, CSV")
    sp.add_argument("--model", required=True)
    sp.add_argument("--divisor", default="0")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--method", choices=["convolve", "enumerate"], default="convolve")
    sp.set_defaults(func=cmd_frobenius)

    sp = sub.add_parser("verify-paper", help="run the reproduction suite")
    sp.add_argument("--model")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("plot-walls", help="SVG of walls and the nu = 0 curve")
    sp.add_argument("--model", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--w", action="append")
    sp.add_argument("--out", help="SVG path")
    sp.add_argument("--csv", help="CSV path for the wall descriptors")
    sp.add_argument("--format", choices=["svg", "csv"], default="svg")
    sp.set_defaults(func=cmd_plot)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
