"""Randic index versus average distance on trees and random graphs.

The conjecture under test: for every connected graph the Randic index
(alpha = -1/2) is at least the average distance.  Trees are its tight
regime, so the scan is exhaustive over free trees up to a size cap, with
high-precision re-checks near equality.  A sparse-random-graph probe and
the growth-rate comparison round out the picture.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .treelab import gen_free_trees, gnp_sample

# floats carry ~1e-15 relative error; anything this close gets re-done
# in 50-digit arithmetic before it may count as a violation or equality
ESCALATE_BELOW = 1e-6
EQUAL_BELOW = 1e-40


@dataclass
class ConjectureReport:
    n_lo: int
    n_hi: int
    checked: int
    totals: dict
    violations: list = field(default_factory=list)
    equalities: list = field(default_factory=list)
    escalations: int = 0
    min_margin: float = math.inf
    min_margin_tree: tuple | None = None

    @property
    def holds(self) -> bool:
        return not self.violations


def _exact_margin(tree, d_exact: Fraction, dps: int = 50):
    import mpmath

    r = tree.to_graph().randic_exact(dps=dps)
    with mpmath.workdps(dps):
        return r - mpmath.mpf(d_exact.numerator) / d_exact.denominator


def conjecture_scan(n_lo: int = 2, n_hi: int = 16) -> ConjectureReport:
    """Check R >= D on every free tree with n_lo <= n <= n_hi.

    Margins within ESCALATE_BELOW of zero are recomputed at 50 digits;
    the single expected equality is the two-vertex tree (R = D = 1).
    min_margin tracks the tightest strict win and its witness.
    """
    if n_lo < 2:
        raise ValueError("average distance needs n >= 2")
    rep = ConjectureReport(n_lo, n_hi, 0, {})
    for n in range(n_lo, n_hi + 1):
        count = 0
        for tree in gen_free_trees(n):
            count += 1
            d = tree.avg_distance_exact()
            margin = tree.randic() - float(d)
            if abs(margin) < ESCALATE_BELOW:
                rep.escalations += 1
                exact = _exact_margin(tree, d)
                if abs(exact) < EQUAL_BELOW:
                    rep.equalities.append((n, tree.level_seq))
                    continue
                margin = float(exact)
            if margin <= 0:
                rep.violations.append((n, tree.level_seq, margin))
            elif margin < rep.min_margin:
                rep.min_margin = margin
                rep.min_margin_tree = (n, tree.level_seq)
        rep.totals[n] = count
        rep.checked += count
    return rep


def gnp_conjecture_check(n: int = 2000, p: float = 0.5, trials: int = 5, seed=20260823) -> dict:
    """R versus D on dense G(n, p) draws.

    Each trial reports connectivity, R, R/n and D.  For p = 1/2 the degrees
    concentrate near n/2, so R/n should sit near 1/2 and D just under 2.
    Disconnected draws are excluded from the distance comparison (and
    counted), not resampled.
    """
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    rows = []
    excluded = 0
    for child in ss.spawn(trials):
        g = gnp_sample(n, p, child)
        row = {"n": n, "p": p, "connected": g.is_connected()}
        if row["connected"]:
            r = g.randic()
            d = g.avg_distance()
            row.update(randic=r, randic_over_n=r / n, avg_distance=d, holds=r > d)
        else:
            excluded += 1
        rows.append(row)
    return {
        "n": n,
        "p": p,
        "trials": rows,
        "excluded": excluded,
        "all_hold": all(row["holds"] for row in rows if row["connected"]),
    }


def _loglog_slope(pairs) -> float:
    xs = [math.log(a) for a, _ in pairs]
    ys = [math.log(b) for _, b in pairs]
    m = len(xs)
    xbar, ybar = sum(xs) / m, sum(ys) / m
    return sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
        (x - xbar) ** 2 for x in xs
    )


def tree_metric_means(n_lo: int, n_hi: int) -> dict:
    """Mean Randic index and mean average-distance over free trees per n."""
    out = {}
    for n in range(n_lo, n_hi + 1):
        rs, ds, count = 0.0, Fraction(0), 0
        for tree in gen_free_trees(n):
            rs += tree.randic()
            ds += tree.avg_distance_exact()
            count += 1
        out[n] = {"trees": count, "mean_randic": rs / count, "mean_avg_distance": ds / count}
    return out


def asymptotic_statement(n_lo: int = 10, n_hi: int = 16, *, bracket=None, means=None) -> dict:
    """Growth-rate comparison behind the conjecture on large random trees.

    The mean Randic index grows linearly (slope of R-bar(n)/n tends to the
    edge-pattern limit lambda), while the mean average distance grows like a
    power of n below 1, so R - D diverges along random trees.  ``bracket``
    may carry a precomputed (lower, upper) enclosure of lambda.
    """
    if means is None:
        means = tree_metric_means(n_lo, n_hi)
    ratio = {n: means[n]["mean_randic"] / n for n in means}
    dist_slope = _loglog_slope(
        [(n, float(means[n]["mean_avg_distance"])) for n in means]
    )
    out = {
        "randic_over_n": ratio,
        "avg_distance_loglog_slope": dist_slope,
        "distance_sublinear": dist_slope < 1.0,
    }
    if bracket is not None:
        out["lambda_bracket"] = tuple(bracket)
    return out


__all__ = [
    "ConjectureReport",
    "conjecture_scan",
    "gnp_conjecture_check",
    "tree_metric_means",
    "asymptotic_statement",
]
