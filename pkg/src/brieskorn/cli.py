"""Command line entry point: ``brieskorn <command> ...``.

Every report is a JSON object (sorted keys, no timestamps) with a
``provenance`` block echoing the parsed arguments.  ``--format csv`` and
``--format table`` render degree tables as two columns.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys

from . import __version__
from .algebra import (
    GradedPresentation,
    bundled_presentation,
    bundled_presentation_names,
    compare_to_module,
    hilbert_function,
)
from .core import new_exponent_tuple
from .errors import BrieskornError, MissingBettiError, NotConvergedError
from .grading import (
    check_index_positivity,
    covering_max_L,
    generator_table,
    s_class,
    virtual_dimension,
)
from .laurent import (
    DiffStatus,
    detect_vanishing_differential,
    dims_in_window,
    homology_table,
    period_module,
    positive_part,
)
from .strata import BettiTable, enumerate_strata

FORMATS = ("json", "csv", "table")


def _provenance(args: argparse.Namespace) -> dict:
    echoed = {
        k: v for k, v in sorted(vars(args).items()) if k not in ("func",) and v is not None
    }
    return {"tool": "brieskorn", "version": __version__, "args": echoed}


def _betti(args) -> BettiTable:
    return BettiTable.default(args.betti or ())


def _dims_json(dims: dict[int, int]) -> dict[str, int]:
    return {str(d): v for d, v in sorted(dims.items())}


def cmd_info(args) -> tuple[dict, dict | None]:
    t = new_exponent_tuple(args.exponents)
    return t.as_dict(), None


def cmd_strata(args):
    t = new_exponent_tuple(args.exponents)
    max_L = t.L_P if args.max_L is None else args.max_L
    strata = enumerate_strata(t, max_L, _betti(args))
    return {"exponents": list(t.a), "L_P": t.L_P, "max_L": max_L,
            "strata": [s.as_dict() for s in strata]}, None


def cmd_generators(args):
    t = new_exponent_tuple(args.exponents)
    window = tuple(args.window) if args.window else None
    if args.max_L is not None:
        max_L = args.max_L
    elif window is not None:
        max_L = covering_max_L(t, *window)
    else:
        max_L = t.L_P - 1
    table = generator_table(t, enumerate_strata(t, max_L, _betti(args)), window, max_L=max_L)
    report = table.as_dict()
    report["s_class"] = s_class(t).as_dict()
    return report, table.degree_counts()


def cmd_module(args):
    t = new_exponent_tuple(args.exponents)
    betti = _betti(args)
    m = period_module(t, betti=betti)
    report = {"exponents": list(t.a), "module": m.as_dict()}
    status = detect_vanishing_differential(t, override=args.override_vanishing, betti=betti)
    report["differential"] = status.as_dict()
    if m.mu_P == 0:
        report["note"] = (
            "mu_P = 0: vector space over Z2[s][[s^-1]]; per-degree dimensions are infinite"
        )
        return report, None
    lo, hi = args.window
    report["residue_ranks"] = {str(k): v for k, v in m.residue_counts().items()}
    chain = dims_in_window(m, lo, hi)
    report["chain_dims"] = _dims_json(chain)
    report["positive_part"] = _dims_json(positive_part(m, lo, hi))
    table = chain
    if status.status is not DiffStatus.UNKNOWN:
        hom = homology_table(m, status, lo, hi)
        report["homology"] = hom.as_dict()
        table = hom.dims
    if args.positive:
        table = positive_part(m, lo, hi)
    return report, table


def cmd_check_index(args):
    t = new_exponent_tuple(args.exponents)
    return check_index_positivity(t, filling_assumed=args.filling).as_dict(), None


def _presentation(args) -> GradedPresentation:
    if args.file:
        return GradedPresentation.load(args.file)
    return bundled_presentation(args.preset)


def cmd_algebra(args):
    p = _presentation(args)
    lo, hi = args.window
    report = {"presentation": p.to_json()}
    if args.compare:
        t = new_exponent_tuple(args.compare)
        m = period_module(t, betti=_betti(args))
        expected = positive_part(m, lo, hi) if args.positive else m
        cmp = compare_to_module(p, expected, lo, hi, args.cap, max_cap=args.max_cap,
                                workers=args.workers)
        report["comparison"] = cmp.as_dict()
        report["hilbert"] = cmp.algebra.as_dict()
        return report, cmp.algebra.dims
    result = hilbert_function(p, lo, hi, args.cap, max_cap=args.max_cap, workers=args.workers)
    report["hilbert"] = result.as_dict()
    if not result.converged:
        raise NotConvergedError(
            f"not converged at cap {result.cap}; unstable degrees {list(result.unstable_degrees)}",
            result.unstable_degrees,
        )
    return report, result.dims


def cmd_virtual_dim(args):
    value = virtual_dimension(args.plus, args.minus, args.reeb, args.n)
    return {"gamma_plus": args.plus, "gamma_minus": args.minus, "reeb_cz": args.reeb,
            "n": args.n, "virtual_dimension": value}, None


def cmd_verify(args):
    from .verify import run

    results = run(args.example)
    report = {
        "passed": all(r.passed for r in results),
        "checks": [r.as_dict() for r in results],
    }
    return report, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brieskorn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"brieskorn {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--betti", action="append", metavar="FILE",
                        help="JSON Betti table; overrides built-ins key by key (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    def exps(p):
        p.add_argument("exponents", type=int, nargs="+", metavar="A")

    p = sub.add_parser("info", parents=[common], help="derived constants of an exponent tuple")
    exps(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("strata", parents=[common], help="nonempty orbit strata up to --max-L")
    exps(p)
    p.add_argument("--max-L", dest="max_L", type=int)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("generators", parents=[common], help="chain generators and degrees")
    exps(p)
    p.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--max-L", dest="max_L", type=int)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("module", parents=[common], help="Laurent-module analysis")
    exps(p)
    p.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"), default=[-10, 10])
    p.add_argument("--override-vanishing", metavar="SOURCE",
                   help="assert differentials vanish, citing an external computation")
    p.add_argument("--positive", action="store_true", help="emit the positive part table")
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("check-index", parents=[common], help="index-positivity classification")
    exps(p)
    p.add_argument("--filling", action="store_true",
                   help="assume a Liouville filling with vanishing first Chern class")
    p.set_defaults(func=cmd_check_index)

    p = sub.add_parser("algebra", parents=[common], help="Hilbert function of a GF(2) presentation")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=bundled_presentation_names())
    src.add_argument("--file")
    p.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"), default=[-8, 8])
    p.add_argument("--cap", type=int, default=4)
    p.add_argument("--max-cap", dest="max_cap", type=int, default=40)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--compare", type=int, nargs="+", metavar="A",
                   help="compare against the module of this exponent tuple")
    p.add_argument("--positive", action="store_true", help="compare against the positive part")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("virtual-dim", parents=[common], help="virtual dimension of broken curves")
    p.add_argument("--plus", type=int, nargs="*", default=[])
    p.add_argument("--minus", type=int, nargs="*", default=[])
    p.add_argument("--reeb", type=int, nargs="*", default=[])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_virtual_dim)

    p = sub.add_parser("verify", parents=[common], help="replay the worked-example checks")
    p.add_argument("example", nargs="?", default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def _render(report: dict, table: dict | None, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    if table is not None:
        rows = [("degree", "dim"), *sorted(table.items())]
    else:
        rows = [("key", "value")] + [
            (k, json.dumps(v, sort_keys=True)) for k, v in sorted(report.items())
        ]
    if fmt == "csv":
        csv.writer(buf, lineterminator="\n").writerows(rows)
    else:
        width = max(len(str(r[0])) for r in rows)
        for a, b in rows:
            buf.write(f"{str(a):>{width}}  {b}\n")
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, table = args.func(args)
    except MissingBettiError as exc:
        stub = json.dumps({exc.key: []})
        print(f"error: {exc}\nconfig stub: {stub}", file=sys.stderr)
        return exc.exit_code
    except BrieskornError as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return exc.exit_code
    report["provenance"] = _provenance(args)
    sys.stdout.write(_render(report, table, args.format))
    if args.command == "verify" and not report["passed"]:
        return 1
    return 0


def run_captured(argv) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(list(argv))
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
