"""Command-line interface: ``subcubic-wvc {solve,gen,bound,audit}``.

Exit codes: 0 ok, 2 bad input or arguments, 3 graph not subcubic,
4 witness-pair property missing in strict mode, 5 oracle mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import wgr
from .cover import ALPHA, BETA
from .engine import ROBUST, STRICT, SolverConfig, WVCSolver
from .errors import FPropertyViolation, GenFailure, NonSubcubic, WgrParseError
from .instgen import MODELS, WEIGHT_MODELS, GenSpec, generate
from .instrumentation import DERIVED, PAPER, branching_number, global_bound_check
from .oracle import DEFAULT_MAX_N, exact_min_weight_vc

EXIT_OK, EXIT_USAGE, EXIT_NONSUBCUBIC, EXIT_FPROPERTY, EXIT_MISMATCH = 0, 2, 3, 4, 5

DEFAULT_CORPUS = [(model, n, seed, wm)
                  for model in ("cubic-pairing", "subcubic-erdos", "triangle-gadget", "k4-cluster")
                  for n in (12, 16, 20)
                  for seed in range(3)
                  for wm in ("unit", "uniform-int")]


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_solve(args) -> int:
    try:
        g, w = wgr.load(args.path)
    except OSError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except WgrParseError as exc:
        _err(f"{args.path}: {exc}")
        return EXIT_USAGE
    if args.check_oracle and len(g.alive) > DEFAULT_MAX_N:
        _err(f"--check-oracle supports at most {DEFAULT_MAX_N} vertices")
        return EXIT_USAGE
    config = SolverConfig(mode=args.mode, alpha=args.alpha, beta=args.beta)
    try:
        outcome, report = WVCSolver(config).solve(g, w)
    except NonSubcubic as exc:
        _err(str(exc))
        return EXIT_NONSUBCUBIC
    except FPropertyViolation as exc:
        _err(str(exc))
        return EXIT_FPROPERTY
    print("cover:", " ".join(str(v + 1) for v in sorted(outcome.cover)))
    print("weight:", wgr.format_weight(outcome.weight))
    print("t:", report.t)
    print("leaves:", report.leaves)
    if args.stats:
        with open(args.stats, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_json() + "\n")
    if args.check_oracle:
        _, ow = exact_min_weight_vc(g, w)
        if ow != outcome.weight:
            _err(f"oracle weight {wgr.format_weight(ow)} differs from solver weight")
            return EXIT_MISMATCH
        print("oracle: ok")
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.model, args.n, args.seed, args.weights, args.max_weight)
        g, w = generate(spec)
    except (ValueError, GenFailure) as exc:
        _err(str(exc))
        return EXIT_USAGE
    comments = [f"model={spec.model} n={spec.n} seed={spec.seed} "
                f"weights={spec.weights} max_weight={spec.max_weight}"]
    text = wgr.dumps(g, w, comments)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bound(args) -> int:
    vec = []
    for tok in args.vector:
        try:
            d = Fraction(tok)
        except (ValueError, ZeroDivisionError):
            _err(f"not a number: {tok!r}")
            return EXIT_USAGE
        if d <= 0:
            _err("branch decreases must be positive")
            return EXIT_USAGE
        vec.append(d)
    print(f"{branching_number(vec):.6f}")
    return EXIT_OK


def audit_instance(name: str, g, w, mode: str = STRICT) -> dict:
    """Solve with auditing and compare against the oracle when it is small enough."""
    row = {"name": name, "n": len(g.alive)}
    try:
        outcome, report = WVCSolver(SolverConfig(mode=mode, audit=True)).solve(g, w)
    except NonSubcubic:
        return row | {"status": "nonsubcubic"}
    except FPropertyViolation:
        return row | {"status": "unsatisfied"}
    ok, ratio = global_bound_check(report)
    oracle = "-"
    if len(g.alive) <= DEFAULT_MAX_N:
        oracle = "ok" if exact_min_weight_vc(g, w)[1] == outcome.weight else "MISMATCH"
    fails = report.audit_failures
    return row | {
        "status": "solved",
        "weight": wgr.format_weight(outcome.weight),
        "leaves": report.leaves,
        "ratio": f"{ratio:.6f}",
        "paper_violations": sum(f["tag"] == PAPER for f in fails),
        "derived_violations": sum(f["tag"] == DERIVED for f in fails),
        "oracle": oracle,
    }


def _audit_file(path: str) -> dict:
    try:
        g, w = wgr.load(path)
    except WgrParseError:
        return {"name": os.path.basename(path), "n": "-", "status": "parse-error"}
    return audit_instance(os.path.basename(path), g, w)


def _audit_generated(key) -> dict:
    model, n, seed, wm = key
    g, w = generate(GenSpec(model, n, seed, wm))
    return audit_instance(f"{model}-n{n}-s{seed}-{wm}", g, w)


AUDIT_COLUMNS = ("name", "n", "status", "weight", "leaves", "ratio",
                 "paper_violations", "derived_violations", "oracle")


def cmd_audit(args) -> int:
    if args.corpus is None:
        work, jobs = _audit_generated, DEFAULT_CORPUS
    else:
        if not os.path.isdir(args.corpus):
            _err(f"{args.corpus} is not a directory")
            return EXIT_USAGE
        jobs = sorted(os.path.join(args.corpus, f) for f in os.listdir(args.corpus)
                      if f.endswith(".wgr"))
        work = _audit_file
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(work, jobs))
    else:
        rows = [work(j) for j in jobs]
    rows.sort(key=lambda r: r["name"])
    print("\t".join(AUDIT_COLUMNS))
    for r in rows:
        print("\t".join(str(r.get(c, "-")) for c in AUDIT_COLUMNS))
    mismatches = sum(r.get("oracle") == "MISMATCH" for r in rows)
    solved = [r for r in rows if r["status"] == "solved"]
    print(f"# instances={len(rows)} solved={len(solved)} oracle_mismatches={mismatches} "
          f"paper_violations={sum(r['paper_violations'] for r in solved)} "
          f"derived_violations={sum(r['derived_violations'] for r in solved)}")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subcubic-wvc",
                                description="Exact weighted vertex cover on graphs of degree at most 3.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a .wgr instance")
    s.add_argument("path")
    s.add_argument("--mode", choices=(STRICT, ROBUST), default=ROBUST)
    s.add_argument("--stats", metavar="OUT.json", help="write the branching report as JSON")
    s.add_argument("--check-oracle", action="store_true",
                   help=f"compare with brute force (n <= {DEFAULT_MAX_N})")
    s.add_argument("--alpha", type=_fraction_arg, default=ALPHA)
    s.add_argument("--beta", type=_fraction_arg, default=BETA)
    s.set_defaults(func=cmd_solve)

    gn = sub.add_parser("gen", help="generate a .wgr instance")
    gn.add_argument("model", choices=MODELS)
    gn.add_argument("n", type=int)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--weights", choices=WEIGHT_MODELS, default="unit")
    gn.add_argument("--max-weight", type=int, default=10)
    gn.add_argument("-o", "--output")
    gn.set_defaults(func=cmd_gen)

    b = sub.add_parser("bound", help="branching number of a vector of decreases")
    b.add_argument("vector", nargs="+")
    b.set_defaults(func=cmd_bound)

    a = sub.add_parser("audit", help="solve and audit every .wgr file in a directory")
    a.add_argument("corpus", nargs="?", help="directory of .wgr files (default: built-in corpus)")
    a.add_argument("--jobs", type=int, default=1)
    a.set_defaults(func=cmd_audit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
