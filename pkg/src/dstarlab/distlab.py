"""Distribution summaries for pattern occurrence counts at finite n.

Occurrence histograms are exact integers, so means, variances and central
moments are computed as Fractions and only collapse to float for the
normal-comparison statistics (skewness, Kolmogorov distance) at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .pattern_gf import PatternSpec, occurrence_distribution, solve_pattern
from .treelab import tree_wiener_mean


@dataclass
class DistSummary:
    pattern: tuple
    n: int
    count: int
    mean: Fraction
    variance: Fraction
    skewness: float | None
    kolmogorov_to_normal: float | None
    degenerate: bool


def _phi(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def summarize(pattern, n: int, *, solution=None) -> DistSummary:
    """Exact moments plus the sup-distance to the fitted normal."""
    pat = PatternSpec.of(pattern)
    dist = occurrence_distribution(pat, n, solution=solution)
    total = sum(dist.values())
    mean = Fraction(sum(k * c for k, c in dist.items()), total)
    var = Fraction(sum(c * (Fraction(k) - mean) ** 2 for k, c in dist.items()), total)
    if var == 0:
        return DistSummary((pat.i, pat.j), n, total, mean, var, None, None, True)
    m3 = Fraction(sum(c * (Fraction(k) - mean) ** 3 for k, c in dist.items()), total)
    sd = math.sqrt(float(var))
    skew = float(m3) / sd**3
    # sup over the CDF jump points, with continuity correction
    ks = 0.0
    acc = 0
    fm = float(mean)
    for k in sorted(dist):
        lo = Fraction(acc, total)
        acc += dist[k]
        hi = Fraction(acc, total)
        z = (k + 0.5 - fm) / sd
        ph = _phi(z)
        ks = max(ks, abs(ph - float(lo)), abs(ph - float(hi)))
    return DistSummary((pat.i, pat.j), n, total, mean, var, skew, ks, False)


def normality_trend(pattern, ns=(25, 50, 100), *, solution=None) -> dict:
    """|skewness| and Kolmogorov distance along a grid of sizes.

    One polynomial-track solution of order >= max(ns) serves every grid
    point; pass it to avoid re-solving per n.
    """
    pat = PatternSpec.of(pattern)
    if solution is None:
        solution = solve_pattern(pat, max(ns), check=False)
    rows = [summarize(pat, n, solution=solution) for n in ns]
    skews = [abs(r.skewness) for r in rows]
    kss = [r.kolmogorov_to_normal for r in rows]
    return {
        "pattern": (pat.i, pat.j),
        "ns": list(ns),
        "abs_skewness": skews,
        "kolmogorov": kss,
        "skewness_decreasing": all(a > b for a, b in zip(skews, skews[1:])),
        "kolmogorov_decreasing": all(a > b for a, b in zip(kss, kss[1:])),
    }


def chebyshev_tail(pattern, n: int, *, solution=None) -> Fraction:
    """P(|X - E X| > n^(3/4)) over trees on n vertices, exactly.

    The comparison |k - mean| > n^(3/4) is run as (k - mean)^4 > n^3 in
    rational arithmetic, so no root is ever taken.
    """
    pat = PatternSpec.of(pattern)
    dist = occurrence_distribution(pat, n, solution=solution)
    total = sum(dist.values())
    mean = Fraction(sum(k * c for k, c in dist.items()), total)
    cube = n**3
    bad = sum(c for k, c in dist.items() if (Fraction(k) - mean) ** 4 > cube)
    return Fraction(bad, total)


def wiener_scaling(n_lo: int = 10, n_hi: int = 16) -> dict:
    """Mean Wiener index over free trees per n, and its log-log slope.

    The average-distance scaling of random trees makes the mean Wiener index
    grow like n^(5/2); the least-squares slope over the window is returned
    for comparison against that exponent.
    """
    if not (2 <= n_lo < n_hi):
        raise ValueError("need 2 <= n_lo < n_hi")
    means = {n: tree_wiener_mean(n) for n in range(n_lo, n_hi + 1)}
    xs = [math.log(n) for n in means]
    ys = [math.log(float(v)) for v in means.values()]
    m = len(xs)
    xbar = sum(xs) / m
    ybar = sum(ys) / m
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
        (x - xbar) ** 2 for x in xs
    )
    return {"window": (n_lo, n_hi), "means": means, "loglog_slope": slope}


__all__ = [
    "DistSummary",
    "summarize",
    "normality_trend",
    "chebyshev_tail",
    "wiener_scaling",
]
