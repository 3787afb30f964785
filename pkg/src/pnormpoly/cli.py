"""Command-line entry point: compute, verify, fuzz, explore-schur.

Exit codes: 0 when every check passes, 1 on a check failure, 2 on a usage or
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from fractions import Fraction

from . import __version__
from .algebra import render
from .combinatorics import DEFAULT_PERMUTATION_CAP, EnumerationCapError, Partition
from .matrixforms import family_from_entries, family_from_traces, read_matrix
from .norms import DEFAULT_K_MAX, DEFAULT_P_STEP, DEFAULT_RTOL, PAIR_GENERATORS, fuzz_theorem
from .schur import DEFAULT_SCHUR_CAP, schur_expand
from .suites import SUITES, SuiteConfig, run_suite, summarize
from .sympoly import (
    ROUTES, FamilyError, compute_F, compute_G, compute_H, cycle_index_p, elementary,
    elementary_p,
)

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """"3" -> [3], "1-4" -> [1, 2, 3, 4], "1,3,5-6" -> [1, 3, 5, 6]."""
    out: list[int] = []
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if "-" in chunk[1:]:
                lo, hi = chunk.split("-", 1) if chunk[0] != "-" else (chunk, "")
                lo_i, hi_i = int(lo), int(hi)
                if hi_i < lo_i:
                    raise argparse.ArgumentTypeError(f"empty range {chunk!r}")
                out.extend(range(lo_i, hi_i + 1))
            else:
                out.append(int(chunk))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    return out


# ---------------------------------------------------------------------------
# serialization

def rat_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def jsonable(obj):
    """Fractions become "num/den"; floats use the shortest round-trip repr."""
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def dump_json(payload: dict) -> str:
    return json.dumps(jsonable({"schema": SCHEMA, **payload}), indent=2, sort_keys=False) + "\n"


def dump_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (rat_str(v) if isinstance(v, Fraction) else v)
                    for v in row])
    return buf.getvalue()


def emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# compute

def _compute_poly(family: str, k: int, r: int | None, n: int | None, args):
    if family == "e":
        if args.basis == "p":
            return elementary_p(k)
        if n is None:
            raise UsageError("--n is required for x-basis output")
        return elementary(k, n)
    if r is None:
        raise UsageError(f"--r is required for family {family}")
    if family == "F":
        if args.basis != "x" or n is None:
            raise UsageError("family F is computed in the x-basis only; give --n")
        return compute_F(k, r, n)
    fn = compute_G if family == "G" else compute_H
    return fn(k, r, n, route=args.route, basis=args.basis, explicit=args.explicit,
              cap=args.cap)


def cmd_compute(args) -> int:
    r_values = args.r or [None]
    n_values = args.n or [None]
    if args.matrix:
        return _compute_matrix(args, r_values)
    results = []
    for k in args.k:
        for r in r_values:
            for n in n_values if args.basis == "x" else [None]:
                f = _compute_poly(args.family, k, r, n, args)
                results.append({"family": args.family, "k": k, "r": r, "n": n,
                                "basis": args.basis, "route": args.route,
                                "polynomial": render(f)})
    if args.format == "json":
        emit(dump_json({"command": "compute", "results": results}), args.output)
    elif args.format == "csv":
        emit(dump_csv(["family", "k", "r", "n", "basis", "route", "polynomial"],
                      [[d[h] for h in ("family", "k", "r", "n", "basis", "route", "polynomial")]
                       for d in results]), args.output)
    elif len(results) == 1:
        emit(results[0]["polynomial"] + "\n", args.output)
    else:
        lines = []
        for d in results:
            label = f"{d['family']}[k={d['k']}" + (f", r={d['r']}" if d["r"] is not None else "")
            label += (f", n={d['n']}" if d["n"] is not None else "") + "]"
            lines.append(f"{label} = {d['polynomial']}")
        emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _compute_matrix(args, r_values) -> int:
    try:
        A = read_matrix(args.matrix)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read matrix: {exc}") from None
    family = args.family
    if family not in ("e", "G", "H"):
        raise UsageError("matrix input supports families e, G and H")
    results = []
    for k in args.k:
        for r in r_values:
            fam, rr = ("G", 1) if family == "e" else (family, r)
            if rr is None:
                raise UsageError(f"--r is required for family {family}")
            if args.matrix_route == "traces":
                value = family_from_traces(fam, k, rr, A)
            else:
                value = family_from_entries(fam, k, rr, A, cap=args.cap)
            results.append({"family": family, "k": k, "r": None if family == "e" else r,
                            "route": args.matrix_route, "value": value})
            if family == "e":
                break
    if args.format == "json":
        emit(dump_json({"command": "compute", "matrix": args.matrix, "results": results}),
             args.output)
    elif args.format == "csv":
        emit(dump_csv(["family", "k", "r", "route", "value"],
                      [[d["family"], d["k"], d["r"], d["route"], d["value"]] for d in results]),
             args.output)
    elif len(results) == 1:
        emit(f"{results[0]['value']}\n", args.output)
    else:
        emit("".join(f"{d['family']}[k={d['k']}"
                     + (f", r={d['r']}" if d["r"] is not None else "")
                     + f"] = {d['value']}\n" for d in results), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _suite_job(name: str, cfg: SuiteConfig):
    return name, summarize(name, run_suite(name, cfg))


def cmd_verify(args) -> int:
    names = list(SUITES) if not args.suite or "all" in args.suite else args.suite
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {list(SUITES)}")
    cfg = SuiteConfig(seed=args.seed, cap=args.cap, matrices=args.matrices,
                      so_samples=args.samples)
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            done = dict(pool.map(_suite_job, names, [cfg] * len(names)))
    else:
        done = dict(_suite_job(n, cfg) for n in names)
    # assemble by suite key, independent of completion order
    report = {name: done[name] for name in names}
    ok = all(s["failed"] == 0 for s in report.values())
    if args.format == "json":
        emit(dump_json({"command": "verify", "seed": args.seed, "cap": args.cap,
                        "passed": ok, "suites": report}), args.output)
    elif args.format == "csv":
        rows = [[c["suite"], c["name"], json.dumps(c["params"], sort_keys=True),
                 c["passed"], c["detail"]]
                for s in report.values() for c in s["checks"]]
        emit(dump_csv(["suite", "name", "params", "passed", "detail"], rows), args.output)
    else:
        lines = []
        for name, s in report.items():
            extra = ""
            if "max_relative_error" in s:
                extra = f"  max relative error {s['max_relative_error']:.3e}"
            lines.append(f"{name:<16} {'PASS' if not s['failed'] else 'FAIL'}  "
                         f"{s['passed']} passed, {s['failed']} failed{extra}")
            if s["first_failure"]:
                ff = s["first_failure"]
                lines.append(f"    first failure: {ff['name']} {ff['params']} {ff['detail']}")
        lines.append("all checks passed" if ok else "some checks FAILED")
        emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# fuzz

def cmd_fuzz(args) -> int:
    r = args.r
    rep = fuzz_theorem(args.family, r, args.n, args.samples, seed=args.seed,
                       k_max=args.k_max, p_step=args.p_step, rtol=args.rtol,
                       pairs=args.pairs)
    data = asdict(rep)
    rows = data.pop("rows")
    if args.format == "json":
        emit(dump_json({"command": "fuzz", "passed": rep.passed, **data}), args.output)
    elif args.format == "csv":
        emit(dump_csv(["index", "hypothesis", "sum_equal", "min_margin", "counterexample"],
                      [[row["index"], row["hypothesis"], row["sum_equal"],
                        None if row["min_margin"] is None else f"{row['min_margin']:.17g}",
                        row["counterexample"]] for row in rows]), args.output)
    else:
        lines = [f"family {rep.family}, r={rep.r}, n={rep.n}, {rep.samples} {rep.pairs} pairs,"
                 f" seed {rep.seed}, K_max {rep.k_max}, p step {rep.p_step}, rtol {rep.rtol:g}",
                 f"hypothesis satisfied: {rep.hypothesis_satisfied}",
                 f"equal sums: {rep.sum_satisfied}",
                 f"conclusions checked: {rep.checked}",
                 f"minimum margin: {rep.min_margin:.3e}",
                 "margin histogram:"]
        lines += [f"  {label:<22} {count}" for label, count in rep.margin_histogram.items()]
        if rep.resolved_by_larger_k:
            lines.append(f"resolved by larger K_max: {len(rep.resolved_by_larger_k)}")
        lines.append(f"counterexamples: {len(rep.counterexamples)}")
        for c in rep.counterexamples:
            lines.append(f"  x={c['x']} y={c['y']} p={c['p']} margin={c['margin']:.3e}")
        emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# explore-schur

def _sign(c: Fraction) -> str:
    return "+" if c > 0 else "-" if c < 0 else "0"


def cmd_explore_schur(args) -> int:
    cap = args.cap if args.cap is not None else DEFAULT_SCHUR_CAP
    top_r = max(args.r) if "H" in args.family else 1
    if max(args.k) * top_r > cap:
        raise UsageError(f"degree {max(args.k) * top_r} exceeds the explorer cap {cap}")
    rows = []
    e_ok = True
    for family in args.family:
        for k in args.k:
            r_values = [None] if family == "e" else args.r
            for r in r_values:
                if family == "e":
                    f = elementary_p(k)
                else:
                    if family == "H" and r < 1:
                        continue
                    f = cycle_index_p(family, k, r)
                degree = k * r if family == "H" else k
                coeffs = schur_expand(f, degree, cap=cap)
                if family == "e":
                    column = Partition([1] * k)
                    e_ok &= all(c == (1 if lam == column else 0) for lam, c in coeffs.items())
                for lam, c in coeffs.items():
                    rows.append({"family": family, "k": k, "r": r, "lambda": str(lam),
                                 "coefficient": c, "sign": _sign(c)})
    negative = [row for row in rows if row["coefficient"] < 0]
    summary = {"rows": len(rows), "negative": len(negative),
               "any_negative": bool(negative), "elementary_rows_exact": e_ok,
               "note": "evidence, not proof"}
    if args.format == "json":
        emit(dump_json({"command": "explore-schur", "summary": summary, "table": rows}),
             args.output)
    elif args.format == "csv":
        emit(dump_csv(["family", "k", "r", "lambda", "coefficient", "sign"],
                      [[d["family"], d["k"], d["r"], d["lambda"], d["coefficient"], d["sign"]]
                       for d in rows]), args.output)
    else:
        lines = ["Schur expansion signs (evidence, not proof)",
                 f"{'family':<7}{'k':>3}{'r':>4}  {'lambda':<14}{'coefficient':>14}  sign"]
        for d in rows:
            r = "-" if d["r"] is None else d["r"]
            lines.append(f"{d['family']:<7}{d['k']:>3}{r:>4}  {d['lambda']:<14}"
                         f"{str(d['coefficient']):>14}  {d['sign']}")
        lines.append(f"negative coefficients found: {len(negative)}"
                     + (" (" + ", ".join(f"{d['family']}[{d['k']},{d['r']}] {d['lambda']}"
                                         for d in negative[:5]) + ")" if negative else ""))
        lines.append("e_k rows equal s_(1^k): " + ("yes" if e_ok else "NO"))
        emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if e_ok else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=42)

    p = argparse.ArgumentParser(prog="pnormpoly",
                                description="Exact symmetric-polynomial families and p-norm checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="print G, H, F or e polynomials")
    c.add_argument("--family", choices=("e", "F", "G", "H"), required=True)
    c.add_argument("--k", type=parse_range, required=True)
    c.add_argument("--r", type=parse_range)
    c.add_argument("--n", type=parse_range)
    c.add_argument("--basis", choices=("x", "p"), default="x")
    c.add_argument("--route", choices=ROUTES, default="cycle-index")
    c.add_argument("--explicit", action="store_true",
                   help="brute-force route enumerates permutations one by one")
    c.add_argument("--cap", type=int, default=DEFAULT_PERMUTATION_CAP)
    c.add_argument("--matrix", help="evaluate at the eigenvalues of the matrix in FILE")
    c.add_argument("--matrix-route", choices=("traces", "entries"), default="traces")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", parents=[common], help="run cross-route verification suites")
    v.add_argument("--suite", action="append", choices=list(SUITES) + ["all"],
                   help="repeatable; default all")
    v.add_argument("--cap", type=int, default=DEFAULT_PERMUTATION_CAP)
    v.add_argument("--matrices", type=int, default=20)
    v.add_argument("--samples", type=int, default=100, help="Schur-Ostrowski points per case")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fuzz", parents=[common], help="fuzz the p-norm comparison theorems")
    f.add_argument("--family", choices=("F", "G", "H"), required=True)
    f.add_argument("--r", type=int, required=True)
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--samples", type=int, default=10_000)
    f.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    f.add_argument("--p-step", type=float, default=DEFAULT_P_STEP)
    f.add_argument("--rtol", type=float, default=DEFAULT_RTOL)
    f.add_argument("--pairs", choices=tuple(PAIR_GENERATORS), default="majorization")
    f.set_defaults(func=cmd_fuzz)

    e = sub.add_parser("explore-schur", parents=[common],
                       help="signs of Schur coefficients (evidence, not proof)")
    e.add_argument("--family", action="append", choices=("H", "G", "e"))
    e.add_argument("--k", type=parse_range, default=parse_range("1-4"))
    e.add_argument("--r", type=parse_range, default=parse_range("1-3"))
    e.add_argument("--cap", type=int, default=None)
    e.set_defaults(func=cmd_explore_schur)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "explore-schur" and not args.family:
        args.family = ["H", "G", "e"]
    try:
        return args.func(args)
    except (UsageError, FamilyError, EnumerationCapError, ValueError) as exc:
        print(f"pnormpoly {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
