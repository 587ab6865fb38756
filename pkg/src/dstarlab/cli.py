"""Batch command surface over the tree, series and conjecture modules.

Every subcommand prints one JSON document to stdout: schema tag, the
effective configuration, cache traffic, and the result.  Exit status is 0
on success, 1 when a checked claim fails (oracle mismatch, conjecture
violation), 2 for usage errors.  With --no-timestamp the output of a fixed
configuration is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from fractions import Fraction

from . import cache as _cache
from .pattern_gf import (
    PatternError,
    PatternSpec,
    occurrence_distribution,
    moment_sums,
    solve_pattern,
    write_distribution_csv,
)

SCHEMA = 1


def _pattern_arg(text):
    try:
        return PatternSpec.of(text)
    except PatternError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rat(q) -> dict:
    q = Fraction(q)
    return {"decimal": repr(float(q)), "num": str(q.numerator), "den": str(q.denominator)}


def _est(e) -> dict:
    out = {"value": e.value, "error": e.error, "method": e.method}
    if e.warnings:
        out["warnings"] = list(e.warnings)
    return out


def cmd_counts(args):
    from .pseries import free_series, planted_series

    t = free_series(args.max_n)
    p = planted_series(args.max_n)
    rows = []
    ok = True
    for n in range(1, args.max_n + 1):
        row = {"n": n, "t": int(t[n]), "r": int(p[n]), "p": int(p[n])}
        rows.append(row)
    if args.method in ("enumerate", "both"):
        from .treelab import count_free_trees, count_rooted_trees

        for row in rows:
            row["t_enum"] = count_free_trees(row["n"], method="enumerate")
            row["r_enum"] = count_rooted_trees(row["n"], method="enumerate")
            if row["t_enum"] != row["t"] or row["r_enum"] != row["r"]:
                ok = False
    result = {"max_n": args.max_n, "rows": rows, "note": "r and p coincide at u = 1"}
    if args.method in ("enumerate", "both"):
        result["series_matches_enumeration"] = ok
    return result, 0 if ok else 1


def cmd_enumerate(args):
    from . import treelab

    if args.rooted:
        seqs = [tuple(s) for s in treelab.gen_rooted_seqs(args.n)]
    else:
        seqs = [t.level_seq for t in treelab.gen_free_trees(args.n)]
    result = {"n": args.n, "rooted": args.rooted, "count": len(seqs)}
    if args.out:
        with open(args.out, "w") as fh:
            for s in seqs:
                fh.write(" ".join(map(str, s)) + "\n")
        result["out"] = args.out
    else:
        result["level_seqs"] = [list(s) for s in seqs]
    return result, 0


def cmd_dist(args):
    order = args.order or args.n
    if order < args.n:
        raise PatternError("--order must be at least --n")
    sol = solve_pattern(args.pattern, order, variant=args.variant, check=False,
                        cache=args.cache_dir)
    from .distlab import summarize

    s = summarize(args.pattern, args.n, solution=sol)
    dist = occurrence_distribution(args.pattern, args.n, solution=sol)
    result = {
        "pattern": list(s.pattern),
        "n": args.n,
        "variant": args.variant,
        "trees": s.count,
        "histogram": {str(k): dist[k] for k in sorted(dist)},
        "mean": _rat(s.mean),
        "variance": _rat(s.variance),
        "degenerate": s.degenerate,
    }
    if not s.degenerate:
        result["skewness"] = s.skewness
        result["kolmogorov_to_normal"] = s.kolmogorov_to_normal
    if args.csv:
        write_distribution_csv(args.csv, args.pattern, {args.n: dist})
        result["csv"] = args.csv
    return result, 0


def cmd_moments(args):
    sums = moment_sums(args.pattern, args.n, args.upto, variant=args.variant)
    pat = args.pattern
    result = {
        "pattern": [pat.i, pat.j],
        "n": args.n,
        "binomial_moment_sums": [_rat(s) for s in sums],
    }
    if args.upto >= 1 and sums[0]:
        mean = sums[1] / sums[0]
        result["mean"] = _rat(mean)
        if args.upto >= 2:
            result["variance"] = _rat(2 * sums[2] / sums[0] + mean - mean * mean)
    return result, 0


def cmd_singularity(args):
    from .asymptotics import constants_report

    return constants_report(args.order), 0


def cmd_mu(args):
    from .asymptotics import compute_mu

    est = compute_mu(args.pattern, method=args.method, N=args.order,
                     Nu=args.jet_order, N_ext=args.ext_order)
    result = {"pattern": [args.pattern.i, args.pattern.j], **_est(est)}
    if "extrapolation" in est.detail:
        v, e = est.detail["extrapolation"]
        result["extrapolation"] = {"value": v, "error": e}
    return result, 0


def cmd_sigma(args):
    from .asymptotics import sigma_estimate

    est = sigma_estimate(args.pattern, N_ext=args.order)
    return {"pattern": [args.pattern.i, args.pattern.j], **_est(est)}, 0


def cmd_lambda(args):
    from .asymptotics import lambda_bracket

    return lambda_bracket(args.K, args.alpha, N=args.order, Nu=args.jet_order), 0


def cmd_conjecture(args):
    from .randic_app import conjecture_scan

    rep = conjecture_scan(args.min_n, args.max_n)
    result = {
        "n_lo": rep.n_lo,
        "n_hi": rep.n_hi,
        "checked": rep.checked,
        "totals": {str(n): c for n, c in sorted(rep.totals.items())},
        "violations": [
            {"n": n, "level_seq": list(s), "margin": m} for n, s, m in rep.violations
        ],
        "equalities": [{"n": n, "level_seq": list(s)} for n, s in rep.equalities],
        "escalations": rep.escalations,
        "holds": rep.holds,
        "min_margin": rep.min_margin,
    }
    if rep.min_margin_tree:
        result["min_margin_tree"] = {
            "n": rep.min_margin_tree[0],
            "level_seq": list(rep.min_margin_tree[1]),
        }
    return result, 0 if rep.holds else 1


def cmd_gnp(args):
    from .randic_app import gnp_conjecture_check

    out = gnp_conjecture_check(args.n, args.p, args.trials, args.seed)
    return out, 0 if out["all_hold"] else 1


def cmd_verify(args):
    from .treelab import pattern_histograms

    patterns = [
        (i, j)
        for i in range(1, args.jmax + 1)
        for j in range(i, args.jmax + 1)
        if (i, j) != (1, 1)
    ]
    oracle = pattern_histograms(args.max_n, patterns)
    mismatches = []
    for pat in patterns:
        sol = solve_pattern(pat, args.max_n, variant=args.variant, check=False,
                            cache=args.cache_dir)
        for n in range(1, args.max_n + 1):
            got = occurrence_distribution(pat, n, solution=sol)
            if got != oracle[pat][n]:
                mismatches.append({"pattern": list(pat), "n": n})
    result = {
        "max_n": args.max_n,
        "patterns": len(patterns),
        "variant": args.variant,
        "mismatches": mismatches,
        "status": "all distributions match oracle" if not mismatches else "MISMATCH",
    }
    return result, 0 if not mismatches else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp for byte-identical reruns")
    common.add_argument("--cache-dir", default=None,
                        help="series cache directory (also: DSTARLAB_CACHE)")

    parser = argparse.ArgumentParser(
        prog="dstarlab",
        description="double-star pattern statistics on random trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("counts", parents=[common],
                       help="free/rooted tree count tables")
    p.add_argument("--max-n", type=int, default=16)
    p.add_argument("--method", choices=("series", "enumerate", "both"), default="series")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("enumerate", parents=[common],
                       help="level sequences of all trees on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rooted", action="store_true")
    p.add_argument("--out", default=None, help="write one sequence per line here")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dist", parents=[common],
                       help="exact occurrence histogram of a pattern")
    p.add_argument("--pattern", type=_pattern_arg, required=True, metavar="i,j")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", type=int, default=None, help="series order (default n)")
    p.add_argument("--variant", choices=("std", "literal"), default="std")
    p.add_argument("--csv", default=None, help="also write n,occurrences,trees rows")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("moments", parents=[common],
                       help="binomial moment sums S_m(n)")
    p.add_argument("--pattern", type=_pattern_arg, required=True, metavar="i,j")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--upto", type=int, default=2)
    p.add_argument("--variant", choices=("std", "literal"), default="std")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("singularity", parents=[common],
                       help="dominant singularity x0 and amplitude b")
    p.add_argument("--order", type=int, default=400)
    p.set_defaults(func=cmd_singularity)

    p = sub.add_parser("mu", parents=[common],
                       help="linear growth rate of the expected count")
    p.add_argument("--pattern", type=_pattern_arg, required=True, metavar="i,j")
    p.add_argument("--method", choices=("singularity", "extrapolation", "both"),
                   default="both")
    p.add_argument("--order", type=int, default=400)
    p.add_argument("--jet-order", type=int, default=48)
    p.add_argument("--ext-order", type=int, default=500)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("sigma", parents=[common],
                       help="square-root growth rate of the variance")
    p.add_argument("--pattern", type=_pattern_arg, required=True, metavar="i,j")
    p.add_argument("--order", type=int, default=400)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("lambda", parents=[common],
                       help="bracket for the Randic index growth constant")
    p.add_argument("--K", type=int, default=12)
    p.add_argument("--alpha", type=float, default=-0.5)
    p.add_argument("--order", type=int, default=200)
    p.add_argument("--jet-order", type=int, default=48)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("conjecture", parents=[common],
                       help="exhaustive R >= D scan over free trees")
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=16)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("gnp", parents=[common],
                       help="R versus D on random G(n, p) draws")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=20260823)
    p.set_defaults(func=cmd_gnp)

    p = sub.add_parser("verify", parents=[common],
                       help="generating functions versus enumeration oracle")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--jmax", type=int, default=6)
    p.add_argument("--variant", choices=("std", "literal"), default="std")
    p.set_defaults(func=cmd_verify)

    return parser


def _config_echo(args) -> dict:
    skip = {"command", "func", "no_timestamp"}
    out = {}
    for k, v in vars(args).items():
        if k in skip:
            continue
        if isinstance(v, PatternSpec):
            v = [v.i, v.j]
        out[k] = v
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    before = dict(_cache.stats)
    try:
        result, code = args.func(args)
    except PatternError as exc:
        print(f"dstarlab: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"dstarlab: {exc}", file=sys.stderr)
        return 2
    directory = _cache.cache_dir(args.cache_dir)
    doc = {
        "schema": SCHEMA,
        "command": args.command,
        "config": _config_echo(args),
        "cache": {
            "dir": str(directory) if directory else None,
            "hits": _cache.stats["hits"] - before["hits"],
            "misses": _cache.stats["misses"] - before["misses"],
        },
        "result": result,
    }
    if not args.no_timestamp:
        doc["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat(
            timespec="seconds"
        )
    print(json.dumps(doc, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
