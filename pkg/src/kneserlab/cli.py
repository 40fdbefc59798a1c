"""Command-line entry point exposing the verification pipelines.

Every subcommand emits a JSON report (schema_version 1) and exits 0
when all of its assertions pass, 1 on assertion failure, 2 on config
errors and 3 on resource-budget errors.  Reports carry no timestamps,
so identical configuration and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import catalog
from .counterexample import machine_report
from .density import (banach_density, density_along, folner_defect,
                      default_generators, dihedral_family, positive_family,
                      solvable_box_family, symmetric_family)
from .errors import KneserLabError, PreconditionError, ResourceLimitError
from .finitegrp import verify_kemperman, verify_kneser_abelian
from .groups import DihedralInf, IntLine, SolvablePK, set_max_box_elements
from .kneser_suite import run_suite
from .quadirr import QuadIrr, golden_rotation, sqrt_rotation
from .scenarios import run_scenario
from .setexpr import from_json, materialize
from .structure import spread_out_witness_z
from .sturmian import equidistribution_check, sturmian_members
from .torus import TorusInterval
from .windows import IntWindow

SCHEMA_VERSION = 1


def _parse_alpha(text: str) -> QuadIrr:
    if text == "golden":
        return golden_rotation()
    if text.startswith("sqrt"):
        return sqrt_rotation(int(text[4:]))
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 4:
        raise PreconditionError(
            "alpha must be 'golden', 'sqrtD', or 'p,q,r,d' integers")
    return QuadIrr(*parts)


def _parse_expr(text: str):
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            return from_json(json.load(fh))
    return from_json(json.loads(text))


def _family(name: str):
    return {"sym": symmetric_family, "pos": positive_family}[name]()


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows, header, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(x) for x in row) + "\n")


# -- subcommand handlers: each returns (results dict, passed bool) ------


def _cmd_density(args):
    expr = _parse_expr(args.expr)
    upper, lower = density_along(expr, _family(args.family), args.n)
    if args.csv:
        counts = upper.params["counts"]
        _emit_csv([(n, size, cnt, cnt / size) for n, size, cnt in counts],
                  ["n", "window_size", "count", "ratio"], args.csv)
    return {"upper": upper.to_json(), "lower": lower.to_json()}, True


def _cmd_banach(args):
    expr = _parse_expr(args.expr)
    est = banach_density(expr, args.mode, args.L, (args.lo, args.hi))
    if args.csv:
        _emit_csv([(L, v) for L, v in est.series], ["L", "value"], args.csv)
    return {"estimate": est.to_json()}, True


def _cmd_sturmian(args):
    alpha = _parse_alpha(args.alpha)
    interval = TorusInterval(Fraction(args.lo), Fraction(args.hi))
    ratio, err = equidistribution_check(alpha, interval, args.n)
    from .sturmian import SturmianSpec
    import numpy as np
    spec = SturmianSpec(alpha, interval)
    ws = sturmian_members(spec, IntWindow(0, min(args.n, 5000)))
    members = ws.members()
    gaps = sorted(set(int(g) for g in np.diff(members))) if len(members) > 1 else []
    ok = float(err) <= args.tol and len(gaps) <= 3
    return {
        "alpha": {"p": alpha.p, "q": alpha.q, "r": alpha.r, "d": alpha.d},
        "interval": [str(interval.lo), str(interval.hi)],
        "n": args.n, "ratio": float(ratio), "discrepancy": float(err),
        "tol": args.tol, "distinct_gaps": gaps,
        "first_members": [int(x) for x in members[:20]],
    }, ok


def _cmd_kneser_z(args):
    rep = run_suite(n=args.n, tol=args.tol)
    return rep, rep["pass"]


def _cmd_kemperman(args):
    groups = [g for g in catalog.exhaustive_stable() if g.order <= args.order_max]
    reports = [verify_kemperman(g) for g in groups]
    if args.sample > 0:
        for g in catalog.sampled_stable():
            if g.order <= args.order_max:
                reports.append(verify_kemperman(g, sample=args.sample, seed=args.seed))
    ok = all(r["pass"] for r in reports)
    return {"groups": reports, "seed": args.seed, "violations":
            sum(r["violations"] for r in reports)}, ok


def _cmd_kneser_abelian(args):
    reports = [verify_kneser_abelian(g) for g in catalog.abelian_stable(args.order_max)]
    ok = all(r["pass"] for r in reports)
    return {"groups": reports,
            "violations": sum(r["violations"] for r in reports)}, ok


def _cmd_structure(args):
    expr = _parse_expr(args.expr)
    verdict = spread_out_witness_z(expr, IntWindow(args.lo, args.hi), args.m_max)
    return {"spread_out": verdict}, True


def _cmd_cxmachine(args):
    rep = machine_report(args.p, Fraction(args.epsilon), _parse_alpha(args.alpha),
                         args.scale)
    return rep, rep["pass"]


def _cmd_appendix(args):
    alpha = _parse_alpha(args.alpha)
    mi = Fraction(args.mI)
    interval = TorusInterval(0, mi)
    rep = run_scenario(args.scenario, alpha, interval, args.n)
    doc = rep.to_json()
    if args.csv:
        rows = []
        for name, series in doc["series"].items():
            rows += [(name, n, v) for n, v in series]
        _emit_csv(rows, ["quantity", "n", "value"], args.csv)
    return doc, rep.passed


def _cmd_folner_defect(args):
    if args.group == "int-line":
        fam, group = symmetric_family(), IntLine()
    elif args.group == "dihedral":
        fam, group = dihedral_family(), DihedralInf()
    elif args.group.startswith("solvable:"):
        p = int(args.group.split(":")[1])
        fam, group = solvable_box_family(p), SolvablePK(p)
    else:
        raise PreconditionError(f"unknown group spec {args.group!r}")
    gens = default_generators(group)
    series = {}
    ok = True
    for i, g in enumerate(gens):
        vals = [(n, folner_defect(fam, n, g)) for n in range(args.n_min, args.n_max + 1)]
        series[f"generator_{i}"] = [[n, str(v), float(v)] for n, v in vals]
        ok &= all(vals[j][1] >= vals[j + 1][1] for j in range(len(vals) - 1))
        if isinstance(group, IntLine):
            ok &= all(v == Fraction(2, 2 * n + 1) for n, v in vals)
    if args.csv:
        rows = []
        for name, vals in series.items():
            rows += [(name, n, f) for n, _, f in vals]
        _emit_csv(rows, ["generator", "n", "defect"], args.csv)
    return {"family": fam.name, "defects": series,
            "monotone_nonincreasing": ok}, ok


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kneserlab",
        description="Density combinatorics of product sets: exact set "
                    "machinery, density estimation, finite-group theorem "
                    "verification, and solvable-group counterexamples.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled scans")
    common.add_argument("--max-box", type=int, default=None,
                        help="element budget for windows/boxes "
                             "(default from KNESERLAB_MAX_BOX or 2e7)")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", parents=[common],
                       help="asymptotic density along a Folner family")
    d.add_argument("--expr", required=True, help="SetExpr JSON (inline or path)")
    d.add_argument("--family", choices=["sym", "pos"], default="sym")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--csv", help="write the counting series as CSV")
    d.set_defaults(fn=_cmd_density)

    b = sub.add_parser("banach", parents=[common], help="extremal window-count density")
    b.add_argument("--expr", required=True)
    b.add_argument("--mode", choices=["upper", "lower"], default="upper")
    b.add_argument("--L", type=int, required=True)
    b.add_argument("--lo", type=int, required=True)
    b.add_argument("--hi", type=int, required=True)
    b.add_argument("--csv")
    b.set_defaults(fn=_cmd_banach)

    s = sub.add_parser("sturmian", parents=[common], help="rotation orbit equidistribution check")
    s.add_argument("--alpha", default="golden")
    s.add_argument("--lo", default="0")
    s.add_argument("--hi", default="3/10")
    s.add_argument("--n", type=int, default=10 ** 5)
    s.add_argument("--tol", type=float, default=5e-3)
    s.set_defaults(fn=_cmd_sturmian)

    kz = sub.add_parser("kneser-z", parents=[common], help="superadditivity suite on the integers")
    kz.add_argument("--n", type=int, default=10 ** 6)
    kz.add_argument("--tol", type=float, default=0.02)
    kz.set_defaults(fn=_cmd_kneser_z)

    km = sub.add_parser("kemperman", parents=[common], help="finite-group product-set structure scan")
    km.add_argument("--order-max", type=int, default=8)
    km.add_argument("--sample", type=int, default=0,
                    help="random pairs per group of order 9..16 (0 = skip)")
    km.set_defaults(fn=_cmd_kemperman)

    ka = sub.add_parser("kneser-abelian", parents=[common], help="exact equality scan on abelian groups")
    ka.add_argument("--order-max", type=int, default=10)
    ka.set_defaults(fn=_cmd_kneser_abelian)

    st = sub.add_parser("structure", parents=[common], help="periodic-superset / spread-out detection")
    st.add_argument("--expr", required=True)
    st.add_argument("--lo", type=int, required=True)
    st.add_argument("--hi", type=int, required=True)
    st.add_argument("--m-max", type=int, default=50)
    st.set_defaults(fn=_cmd_structure)

    cx = sub.add_parser("cxmachine", parents=[common], help="solvable-group machine report")
    cx.add_argument("--p", type=int, default=2)
    cx.add_argument("--epsilon", default="1/5")
    cx.add_argument("--alpha", default="golden")
    cx.add_argument("--scale", type=int, default=8)
    cx.set_defaults(fn=_cmd_cxmachine)

    axp = sub.add_parser("appendix", parents=[common], help="half-line scenario reproductions")
    axp.add_argument("--scenario", choices=["base", "e1", "e2", "e3"], required=True)
    axp.add_argument("--mI", default="3/10", help="arc measure as a fraction")
    axp.add_argument("--alpha", default="golden")
    axp.add_argument("--n", type=int, default=10 ** 6)
    axp.add_argument("--csv")
    axp.set_defaults(fn=_cmd_appendix)

    fd = sub.add_parser("folner-defect", parents=[common], help="exact box defect series")
    fd.add_argument("--group", default="int-line",
                    help="int-line | dihedral | solvable:P")
    fd.add_argument("--n-min", type=int, default=2)
    fd.add_argument("--n-max", type=int, default=8)
    fd.add_argument("--csv")
    fd.set_defaults(fn=_cmd_folner_defect)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    budget = args.max_box or os.environ.get("KNESERLAB_MAX_BOX")
    try:
        if budget is not None:
            set_max_box_elements(int(budget))
        results, passed = args.fn(args)
    except ResourceLimitError as exc:
        _emit({"schema_version": SCHEMA_VERSION, "command": args.command,
               "error": str(exc), "pass": False}, args)
        return 3
    except (KneserLabError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _emit({"schema_version": SCHEMA_VERSION, "command": args.command,
               "error": f"{type(exc).__name__}: {exc}", "pass": False}, args)
        return 2
    config = {k: v for k, v in vars(args).items()
              if k not in ("fn", "out") and not callable(v)}
    report = {"schema_version": SCHEMA_VERSION, "command": args.command,
              "config": config, "results": results, "pass": bool(passed)}
    _emit(report, args)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
