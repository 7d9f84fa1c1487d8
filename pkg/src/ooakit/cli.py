"""Command-line surface: verify, bounds, construct, search, klp-certify.

Exit codes: 0 on pass/success, 1 on a failed verification or an unproductive
search, 2 on parse or parameter errors. Reports print as readable text by
default and as deterministic JSON with --json. Every constructed array is
re-verified before it is written; nothing is emitted on failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .arrayfile import format_array, read_array_file, read_points_file, write_array_file
from .bounds import bound_report
from .construct import full_factorial, hermite_ooa, oa_to_ooa, points_to_array
from .core import SymbolArray
from .errors import InvalidParams, OoakitError, ParseError
from .gf import field_make
from .klp import certify, dual_matrix, indicator_matrix
from .search import anneal_search, find_min_size
from .verifier import VerifyReport, verify_oa, verify_ooa

_CONSTANT_CAVEAT = (
    "note: the constants c and C in the upper bounds are user-supplied "
    "parameters (default 1), not derived values"
)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _emit(doc: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))


def _failure_doc(f) -> dict:
    return {
        "shape": list(f.shape) if f.shape is not None else None,
        "columns": list(f.columns),
        "tuple": list(f.symbols),
        "observed": f.observed,
        "expected": f.expected,
    }


def _verify_doc(report: VerifyReport, array: SymbolArray, path: str) -> dict:
    return {
        "command": "verify",
        "file": path,
        "kind": report.kind,
        "pass": report.passed,
        "q": array.q,
        "n": array.n,
        "r": array.r,
        "t": report.strength,
        "rows": array.num_rows,
        "lambda": report.lambda_observed,
        "selections_checked": report.selections_checked,
        "reason": report.reason,
        "truncated": report.truncated,
        "failures": [_failure_doc(f) for f in report.failures],
    }


def _verify_lines(report: VerifyReport, array: SymbolArray, path: str) -> list[str]:
    head = "PASS" if report.passed else "FAIL"
    lines = [
        f"{head}: {path} as {report.kind.upper()} at strength {report.strength} "
        f"({array.num_rows} rows, {report.selections_checked} selections)"
    ]
    if report.lambda_observed is not None:
        lines.append(f"lambda = {report.lambda_observed}")
    if report.reason:
        lines.append(f"reason: {report.reason}")
    for f in report.failures:
        where = f"shape {f.shape}" if f.shape is not None else "columns"
        lines.append(
            f"  {where} {{{', '.join(map(str, f.columns))}}}: tuple "
            f"{''.join(map(str, f.symbols))} observed {f.observed}, expected {f.expected}"
        )
    if report.truncated:
        lines.append("  (failure list truncated)")
    return lines


def _cmd_verify(args) -> int:
    array = read_array_file(args.path)
    t = args.t if args.t is not None else array.t
    if args.oa:
        report = verify_oa(array, t=t, strict_set=args.strict_set,
                           max_failures=args.max_failures, threads=args.threads)
    else:
        report = verify_ooa(array, t=t, strict_set=args.strict_set,
                            max_failures=args.max_failures, threads=args.threads)
    _emit(_verify_doc(report, array, args.path), args.json,
          _verify_lines(report, array, args.path))
    if args.figures:
        from . import figures

        figdir = Path(args.figures)
        figdir.mkdir(parents=True, exist_ok=True)
        out = figures.render_array(
            array, figdir / f"{Path(args.path).stem}_array.png",
            title=f"{Path(args.path).name}: {report.kind.upper()} "
                  f"{'PASS' if report.passed else 'FAIL'} at t={report.strength}",
        )
        print(f"figure written: {out}", file=sys.stderr)
    return 0 if report.passed else 1


def _frac_str(f: Fraction) -> str:
    return str(f)


def _cmd_bounds(args) -> int:
    rep = bound_report(args.q, args.n, args.r, args.t, c=args.c, C=args.C)
    d = rep.dims
    doc = {
        "command": "bounds",
        "q": rep.q, "n": rep.n, "r": rep.r, "t": rep.t,
        "lower": {
            "trivial": rep.lower_trivial,
            "rao": rep.lower_rao,
            "best": rep.lower_best,
        },
        "upper": {"c": _frac_str(rep.upper_c), "value": rep.upper_value},
        "klp": {
            "C": _frac_str(rep.klp_C),
            "raw_threshold": rep.klp_raw_threshold,
            "threshold": rep.klp_threshold,
            "num_points": d.num_points,
        },
        "dims": {
            "num_points": d.num_points,
            "num_shapes": d.num_shapes,
            "num_full_assignments": d.num_full_assignments,
            "num_reduced_assignments": d.num_reduced_assignments,
            "basis_size": d.basis_size,
            "c1": d.c1, "c2": d.c2, "c3": d.c3,
        },
        "caveats": rep.caveats,
    }
    lines = [
        f"bounds for q={rep.q} n={rep.n} r={rep.r} t={rep.t}",
        f"  lower bound: {rep.lower_best} (trivial {rep.lower_trivial}, "
        f"Rao {rep.lower_rao if rep.lower_rao is not None else 'n/a'})",
        f"  parametric upper bound (c={rep.upper_c}): {rep.upper_value}",
        f"  size threshold (C={rep.klp_C}): "
        + (str(rep.klp_threshold) if rep.klp_threshold is not None
           else f"None (raw threshold {rep.klp_raw_threshold} exceeds "
                f"num_points={d.num_points})"),
        f"  dims: num_points={d.num_points} num_shapes={d.num_shapes} "
        f"num_full={d.num_full_assignments} num_reduced={d.num_reduced_assignments} "
        f"c1={d.c1} c2={d.c2} c3={d.c3}",
        _CONSTANT_CAVEAT,
    ]
    _emit(doc, args.json, lines)
    if args.figures:
        from . import figures

        figdir = Path(args.figures)
        figdir.mkdir(parents=True, exist_ok=True)
        out = figures.render_bounds(
            args.q, args.n, args.r,
            figdir / f"bounds_q{args.q}_n{args.n}_r{args.r}.png",
            c=args.c, title=f"size bounds, q={args.q} n={args.n} r={args.r}",
        )
        print(f"figure written: {out}", file=sys.stderr)
    return 0


def _write_verified(array: SymbolArray, out: Path, as_json: bool,
                    label: str, figdir: str | None) -> int:
    """Re-verify then write; nothing is emitted when verification fails."""
    report = verify_ooa(array, t=array.t)
    if not report.passed:
        doc = _verify_doc(report, array, str(out))
        doc["command"] = "construct"
        doc["written"] = None
        _emit(doc, as_json, [f"FAIL: {label} did not verify; nothing written"]
              + _verify_lines(report, array, str(out))[1:])
        return 1
    write_array_file(out, array)
    doc = {
        "command": "construct",
        "construction": label,
        "q": array.q, "n": array.n, "r": array.r, "t": array.t,
        "rows": array.num_rows,
        "lambda": report.lambda_observed,
        "written": str(out),
    }
    lines = [
        f"{label}: wrote {array.num_rows} x {array.num_cols} array to {out} "
        f"(lambda = {report.lambda_observed})"
    ]
    _emit(doc, as_json, lines)
    if figdir:
        from . import figures

        fd = Path(figdir)
        fd.mkdir(parents=True, exist_ok=True)
        fig = figures.render_array(array, fd / f"{out.stem}_array.png",
                                   title=f"{label} ({array.num_rows} rows)")
        print(f"figure written: {fig}", file=sys.stderr)
    return 0


def _cmd_construct(args) -> int:
    if args.construction == "full":
        array = full_factorial(args.q, args.n, args.r)
        array.t = args.t
        default = f"full_q{args.q}_n{args.n}_r{args.r}_t{args.t}.ooa"
        label = "full factorial"
    elif args.construction == "hermite":
        modulus = None
        if args.modulus:
            modulus = [int(c) for c in args.modulus.split(",")]
        p, k = _prime_power(args.q)
        fld = field_make(p, k, modulus if k > 1 else None)
        points = None
        if args.points:
            points = [int(v) for v in args.points.split(",")]
        array = hermite_ooa(fld, args.n, args.r, args.t, points)
        default = f"hermite_q{args.q}_n{args.n}_r{args.r}_t{args.t}.ooa"
        label = "hermite"
    elif args.construction == "from-oa":
        src = read_array_file(args.path)
        array = oa_to_ooa(src, args.n, args.r)
        default = f"{Path(args.path).stem}_n{args.n}_r{args.r}.ooa"
        label = "regrouped array"
    else:  # from-points
        ps = read_points_file(args.path, args.q, args.m)
        array = points_to_array(ps, args.digits)
        array.t = args.t
        default = f"{Path(args.path).stem}_digits{args.digits}.ooa"
        label = "digit extraction"
    out = Path(args.out) if args.out else Path(default)
    return _write_verified(array, out, args.json, label, args.figures)


def _prime_power(q: int) -> tuple[int, int]:
    """Factor q as p**k with p prime; rejects non-prime-powers."""
    if q < 2:
        raise InvalidParams("q must be >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise InvalidParams(f"{q} is not a prime power")
            return p, k
    raise InvalidParams(f"{q} is not a prime power")


def _cmd_search(args) -> int:
    if args.anneal:
        result = anneal_search(args.q, args.n, args.r, args.t, args.lam,
                               seed=args.seed, budget=args.budget)
    else:
        result = find_min_size(args.q, args.n, args.r, args.t, mode=args.mode,
                               budget=args.budget, seed=args.seed)
    doc = {
        "command": "search",
        "q": args.q, "n": args.n, "r": args.r, "t": args.t,
        "algorithm": "anneal" if args.anneal else "exhaustive",
        "mode": result.mode,
        "seed": result.seed,
        "status": result.status,
        "size": result.size,
        "nodes_explored": result.nodes_explored,
        "violations": result.violations,
        "witness": format_array(result.witness) if result.witness is not None else None,
    }
    lines = [
        f"search q={args.q} n={args.n} r={args.r} t={args.t} "
        f"[{doc['algorithm']}, mode={result.mode}, seed={result.seed}]",
        f"  status: {result.status}"
        + (f", size {result.size}" if result.size is not None else ""),
        f"  nodes explored: {result.nodes_explored}",
    ]
    if result.status == "exact_minimum":
        lines.insert(1, f"  exact minimum {result.size}")
    written = None
    if result.witness is not None and args.out:
        written = write_array_file(args.out, result.witness)
        lines.append(f"  witness written to {written}")
    doc["written"] = str(written) if written else None
    _emit(doc, args.json, lines)
    return 0 if result.witness is not None else 1


def _cmd_klp_certify(args) -> int:
    report = certify(args.q, args.n, args.r, args.t, scale_cap=args.scale_cap,
                     spanning_samples=args.samples, seed=args.seed)
    order = ["C1", "C2", "C3", "C4", "C5", "lattice", "spanning"]
    doc = {
        "command": "klp-certify",
        "q": args.q, "n": args.n, "r": args.r, "t": args.t,
        "pass": report.passed,
        "constants": report.constants,
        "checks": {
            name: {
                "pass": report.checks[name].passed,
                "witness": report.checks[name].witness,
                "detail": report.checks[name].detail,
            }
            for name in order
        },
    }
    lines = [f"certify q={args.q} n={args.n} r={args.r} t={args.t}"]
    for name in order:
        chk = report.checks[name]
        lines.append(f"  {name}: {'PASS' if chk.passed else 'FAIL'}")
        if chk.witness:
            lines.append(f"    witness: {chk.witness}")
    lines.append(
        "  constants: "
        + " ".join(f"{k}={v}" for k, v in report.constants.items())
    )
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    _emit(doc, args.json, lines)
    if args.figures:
        from . import figures

        figdir = Path(args.figures)
        figdir.mkdir(parents=True, exist_ok=True)
        ind = indicator_matrix(args.q, args.n, args.r, args.t,
                               scale_cap=args.scale_cap)
        dual = dual_matrix(args.q, args.n, args.r, args.t,
                           scale_cap=args.scale_cap)
        out = figures.render_certificate(
            ind, dual,
            figdir / f"certify_q{args.q}_n{args.n}_r{args.r}_t{args.t}.png",
            title=f"basis certificate, q={args.q} n={args.n} r={args.r} t={args.t}",
        )
        print(f"figure written: {out}", file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ooakit",
        description="Ordered orthogonal array toolkit: verify, bound, "
                    "construct, search, certify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify an array file")
    p.add_argument("path")
    p.add_argument("--oa", action="store_true",
                   help="check all column subsets instead of prefix shapes")
    p.add_argument("--strict-set", action="store_true", dest="strict_set",
                   help="reject duplicate rows")
    p.add_argument("--max-failures", type=int, default=100, dest="max_failures")
    p.add_argument("--t", type=int, default=None,
                   help="override the strength declared in the file header")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--figures", default=None, metavar="DIR")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bounds", help="exact lower and parametric upper bounds")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--c", type=_fraction, default=Fraction(1),
                   help="constant in the parametric upper bound (default 1)")
    p.add_argument("--C", type=_fraction, default=Fraction(1), dest="C",
                   help="constant in the size threshold (default 1)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--figures", default=None, metavar="DIR")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("construct", help="build arrays and write verified files")
    csub = p.add_subparsers(dest="construction", required=True)

    c = csub.add_parser("full", help="complete factorial grid")
    for flag in ("--q", "--n", "--r", "--t"):
        c.add_argument(flag, type=int, required=True)
    c.add_argument("-o", "--out", default=None)
    c.add_argument("--json", action="store_true")
    c.add_argument("--figures", default=None, metavar="DIR")
    c.set_defaults(func=_cmd_construct)

    c = csub.add_parser("hermite", help="size-q**t derivative evaluation array")
    for flag in ("--q", "--n", "--r", "--t"):
        c.add_argument(flag, type=int, required=True)
    c.add_argument("--modulus", default=None,
                   help="comma-separated modulus coefficients, lowest degree "
                        "first, e.g. '1,1,1'")
    c.add_argument("--points", default=None,
                   help="comma-separated element indices to evaluate at")
    c.add_argument("-o", "--out", default=None)
    c.add_argument("--json", action="store_true")
    c.add_argument("--figures", default=None, metavar="DIR")
    c.set_defaults(func=_cmd_construct)

    c = csub.add_parser("from-oa", help="regroup a plain array into blocks")
    c.add_argument("path")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("-o", "--out", default=None)
    c.add_argument("--json", action="store_true")
    c.add_argument("--figures", default=None, metavar="DIR")
    c.set_defaults(func=_cmd_construct)

    c = csub.add_parser("from-points", help="digit extraction from a point file")
    c.add_argument("path")
    c.add_argument("--q", type=int, required=True, help="base")
    c.add_argument("--m", type=int, required=True, help="digit precision")
    c.add_argument("--digits", type=int, required=True)
    c.add_argument("--t", type=int, required=True,
                   help="strength to verify and record")
    c.add_argument("-o", "--out", default=None)
    c.add_argument("--json", action="store_true")
    c.add_argument("--figures", default=None, metavar="DIR")
    c.set_defaults(func=_cmd_construct)

    p = sub.add_parser("search", help="exact minimum size or annealing search")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", choices=["multiset", "set"], default="multiset")
    p.add_argument("--budget", type=int, default=5_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--anneal", action="store_true")
    p.add_argument("--lambda", type=int, default=1, dest="lam",
                   help="multiplicity for annealing")
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("klp-certify", help="certify the basis conditions")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--scale-cap", type=int, default=1 << 16, dest="scale_cap")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--figures", default=None, metavar="DIR")
    p.set_defaults(func=_cmd_klp_certify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OoakitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
