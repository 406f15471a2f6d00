"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 golden mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from . import catalog, localmodel
from .braid import BraidParseError, alexander_from_braid, parse_braid
from .cover import DataInconsistencyError, criterion, family_order, homology_order, link_determinant
from .laurent import InexactDivisionError, LaurentPoly, PolyParseError, normalize, parse_poly

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_MISMATCH = 0, 1, 2, 3

_T_MINUS_1 = LaurentPoly({1: 1, 0: -1})


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _delta(args):
    p = parse_poly(args.poly)
    if args.form == "quotient":
        p = p * _T_MINUS_1
    return normalize(p)


def _k_list(text: str) -> list[int]:
    try:
        ks = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --k list {text!r}") from None
    if not ks or any(k < 2 for k in ks):
        raise UsageError("--k needs one or more integers >= 2")
    return ks


def cmd_alex(args):
    print(alexander_from_braid(parse_braid(args.braid)))


def cmd_det(args):
    print(link_determinant(_delta(args)))


def cmd_cover(args):
    print(homology_order(_delta(args), args.k))


def cmd_criterion(args):
    delta = _delta(args)
    out = {"delta": str(delta), **criterion(delta, args.components).to_dict()}
    print(json.dumps(out, indent=2))


def cmd_family(args):
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    print(family_order(_delta(args), args.n, args.k))


def cmd_scan(args):
    ks = _k_list(args.k)
    errors: list = []
    with open(args.table, encoding="utf-8", newline="") as f:
        records = catalog.parse_table(f, skip_bad=args.skip_bad, errors=errors)
    rows = catalog.scan(records, ks, jobs=args.jobs)
    catalog.write_scan(rows, args.out, ks)
    for e in errors:
        print(f"skipped: {e}", file=sys.stderr)
    failed = sum(r.error is not None for r in rows)
    print(f"{len(rows)} rows written to {args.out} ({failed} errors)", file=sys.stderr)


def cmd_appendix(args):
    if args.golden:
        with open(args.golden, encoding="utf-8", newline="") as f:
            golden = catalog.load_golden(f)
    else:
        golden = catalog.load_golden()
    diff = catalog.reproduce_appendix(golden)
    report = [asdict(m) for m in diff]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2)
            f.write("\n")
    for m in diff:
        print(f"MISMATCH {m.name}: got {m.got}, expected {m.expected}")
    print(f"{len(golden) - len(diff)}/{len(golden)} rows match")
    return EXIT_MISMATCH if diff else EXIT_OK


def cmd_local_check(args):
    try:
        grid = localmodel.PolarGrid(args.r0, args.r1, args.nr, args.ntheta)
    except localmodel.LocalModelError as exc:
        raise UsageError(str(exc)) from None
    d, dstar = localmodel.harmonic_residual(localmodel.sample_vk(args.k, grid))
    print(json.dumps({"residual_d": d, "residual_dstar": dstar}))


def cmd_local_extract(args):
    with open(args.input, encoding="utf-8", newline="") as f:
        form = localmodel.read_samples_csv(f)
    exp = localmodel.extract_modes(form, nu_max=args.numax, k_max=args.kmax)
    print(json.dumps(exp.to_dict(), indent=2))


def _add_poly_args(p):
    p.add_argument("--poly", required=True, help="polynomial text, e.g. 1-t+t^2")
    p.add_argument("--form", choices=["alexander", "quotient"], default="alexander",
                   help="'quotient' means the text is Delta/(t-1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="branchcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("alex", help="normalized Alexander polynomial of a braid closure")
    p.add_argument("--braid", required=True, help='e.g. "3: 1,-2,1,-2"')
    p.set_defaults(func=cmd_alex)

    p = sub.add_parser("det", help="link determinant |Delta(-1)|")
    _add_poly_args(p)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("cover", help="order of H_1 of the k-fold cyclic branched cover")
    _add_poly_args(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("criterion", help="existence verdict as JSON")
    _add_poly_args(p)
    p.add_argument("--components", type=int)
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("family", help="cover order after adding n trefoil summands")
    _add_poly_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("scan", help="evaluate every link in a CSV table")
    p.add_argument("table")
    p.add_argument("--k", default="2,3", help="comma-separated cover degrees")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--skip-bad", action="store_true")
    p.add_argument("--out", required=True, help="output path ending in .json or .csv")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("appendix", help="check cover orders against a golden table")
    p.add_argument("--golden", help="CSV with name,quotient,order3 (default: bundled table)")
    p.add_argument("--out", help="write the diff as JSON")
    p.set_defaults(func=cmd_appendix)

    lm = sub.add_parser("localmodel", help="numerical checks near the branch locus")
    lsub = lm.add_subparsers(dest="lm_command", required=True, parser_class=_Parser)
    c = lsub.add_parser("check", help="finite-difference harmonicity residuals of v_k")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--r0", type=float, default=0.5)
    c.add_argument("--r1", type=float, default=1.0)
    c.add_argument("--nr", type=int, default=64)
    c.add_argument("--ntheta", type=int, default=384)
    c.set_defaults(func=cmd_local_check)
    e = lsub.add_parser("extract", help="expansion coefficients of sampled forms")
    e.add_argument("--input", required=True)
    e.add_argument("--numax", type=int, default=3)
    e.add_argument("--kmax", type=int, default=2)
    e.set_defaults(func=cmd_local_extract)
    return parser


DATA_ERRORS = (
    PolyParseError,
    BraidParseError,
    InexactDivisionError,
    DataInconsistencyError,
    catalog.TableError,
    catalog.CrossCheckError,
    localmodel.LocalModelError,
    OSError,
)


_TEXT_OPTIONS = ("--poly", "--braid")


def _glue_text_options(argv: list[str]) -> list[str]:
    # polynomial text such as "-t+t^2" would otherwise be read as a flag
    out = []
    it = iter(argv)
    for a in it:
        if a in _TEXT_OPTIONS:
            value = next(it, None)
            out.append(a if value is None else f"{a}={value}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_text_options(argv))
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"branchcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DATA_ERRORS as exc:
        print(f"branchcover: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        # remaining ValueErrors are out-of-range arguments (k, n, grid sizes)
        print(f"branchcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
