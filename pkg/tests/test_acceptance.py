"""Acceptance gate: ten criteria, one PASS/FAIL line each.

Heavyweight artifacts (the order-200 bivariate solution, the K = 12 growth
table, the n = 14 enumeration oracle) are session fixtures shared across
criteria.  Every tolerance is stated inline next to its check.
"""

import time
from fractions import Fraction

import pytest

from dstarlab.asymptotics import (
    _RowCache,
    compute_mu,
    constants_report,
    lambda_bracket,
    mu_table,
)
from dstarlab.distlab import chebyshev_tail, normality_trend, wiener_scaling
from dstarlab.pattern_gf import occurrence_distribution, solve_pattern
from dstarlab.pseries import free_series
from dstarlab.randic_app import conjecture_scan, gnp_conjecture_check
from dstarlab.treelab import count_free_trees, pattern_histograms

PATTERNS_6 = [
    (i, j) for i in range(1, 7) for j in range(i, 7) if (i, j) != (1, 1)
]  # 20 patterns


def check(log, num, ok, text):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} - {text}"
    log.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="session")
def sol12_200():
    return solve_pattern((1, 2), 200, check=False)


@pytest.fixture(scope="session")
def sols100():
    return {p: solve_pattern(p, 100, check=False) for p in ((1, 3), (2, 2))}


@pytest.fixture(scope="session")
def mu_tab():
    return mu_table(12, N=200, Nu=48)


@pytest.fixture(scope="session")
def oracle14():
    return pattern_histograms(14, PATTERNS_6)


def test_criterion_01_oracle_equivalence(acceptance_log, oracle14):
    bad = []
    for pat in PATTERNS_6:
        sol = solve_pattern(pat, 14, check=False)
        for n in range(2, 15):
            if occurrence_distribution(pat, n, solution=sol) != oracle14[pat][n]:
                bad.append((pat, n))
    check(
        acceptance_log, 1, not bad,
        f"GF distributions equal enumeration histograms exactly, 20 patterns, n <= 14"
        f" (tolerance zero){'; mismatches ' + repr(bad) if bad else ''}",
    )


def test_criterion_02_tree_counts(acceptance_log):
    t = free_series(200)
    ok = True
    for pat in ((2, 3), (1, 2), (2, 2)):  # one system per case
        sol = solve_pattern(pat, 200, jets=1, check=False)
        ok = ok and sol.t.jet_component(0) == t
    for n in range(1, 17):
        ok = ok and count_free_trees(n, method="enumerate") == int(t[n])
    check(
        acceptance_log, 2, ok,
        "u = 1 collapse of all three case systems reproduces the free-tree counts"
        " to n = 200 and enumeration to n = 16 (tolerance zero)",
    )


def test_criterion_03_singularity_constants(acceptance_log):
    t0 = time.time()
    rep = constants_report(400)
    elapsed = time.time() - t0
    x0_ok = abs(rep["x0"]["value"] - 0.3383219) <= 1e-5
    b_ok = abs(rep["b"]["value"] - 2.68112266) / 2.68112266 <= 0.005
    fx = rep["fx_identity"]
    fx_ok = fx["gap"] <= fx["budget"]
    ok = x0_ok and b_ok and fx_ok and elapsed < 60
    check(
        acceptance_log, 3, ok,
        f"x0 = {rep['x0']['value']:.7f} (ref 0.3383219 +- 1e-5: {x0_ok}), "
        f"b = {rep['b']['value']:.6f} (ref 2.68112266 +- 0.5%: {b_ok}), "
        f"p_x identity gap {fx['gap']:.2e} within {fx['budget']:.2e} ({fx_ok}), "
        f"{elapsed:.0f}s < 60s at N = 400",
    )


def test_criterion_04_mu_cross_validation(acceptance_log):
    rows = _RowCache(400)
    worst = 0.0
    details = []
    for pat in ((1, 2), (1, 3), (2, 2), (2, 3)):
        sing = compute_mu(pat, N=400, Nu=48, rows=rows)
        ext = compute_mu(pat, method="extrapolation", N_ext=500)
        rel = abs(sing.value - ext.value) / sing.value
        worst = max(worst, rel)
        details.append(f"{pat}: {sing.value:.5f}")
    check(
        acceptance_log, 4, worst <= 0.01,
        f"singularity vs extrapolated mu within 1% for (1,2),(1,3),(2,2),(2,3); "
        f"worst relative gap {worst:.2e} [{', '.join(details)}]",
    )


def test_criterion_05_edge_partition(acceptance_log, mu_tab):
    sums, errs = [], []
    for K in range(2, 13):
        sub = [e for (i, j), e in mu_tab.items() if j <= K]
        sums.append(sum(e.value for e in sub))
        errs.append(sum(e.error for e in sub))
    monotone = all(a < b for a, b in zip(sums, sums[1:]))
    bounded = all(s <= 1 + e for s, e in zip(sums, errs))
    big = sums[-1] > 0.9
    check(
        acceptance_log, 5, monotone and bounded and big,
        f"sum of mu monotone in K (={monotone}), <= 1 + error (={bounded}), "
        f"K = 12 sum {sums[-1]:.6f} > 0.9",
    )


def test_criterion_06_lambda_bracket(acceptance_log, mu_tab):
    br = lambda_bracket(12, -0.5, table=mu_tab)
    inside = 0.1 < br["lower"] and br["upper"] < 1.0
    narrow = br["width"] < 0.15
    tab6 = {p: e for p, e in mu_tab.items() if max(p) <= 6}
    br6 = lambda_bracket(6, -0.5, table=tab6)
    shrinks = br["width"] < br6["width"]
    others = {a: lambda_bracket(12, a, table=mu_tab) for a in (-1.0, -0.25)}
    sane = all(b["lower"] <= b["upper"] for b in others.values())
    # alpha = -1/2 is the Randic case itself: same call, same bracket
    same = lambda_bracket(12, -0.5, table=mu_tab) == br
    ok = inside and narrow and shrinks and sane and same
    check(
        acceptance_log, 6, ok,
        f"lambda in [{br['lower']:.4f}, {br['upper']:.4f}] subset of (0.1, 1), "
        f"width {br['width']:.4f} < 0.15 and < K=6 width {br6['width']:.4f}; "
        f"alpha=-1: [{others[-1.0]['lower']:.4f}, {others[-1.0]['upper']:.4f}], "
        f"alpha=-1/4: [{others[-0.25]['lower']:.4f}, {others[-0.25]['upper']:.4f}]",
    )


def test_criterion_07_normality_diagnostics(acceptance_log, sol12_200, sols100):
    grids = {(1, 2): sol12_200, **sols100}
    trend_ok = True
    for pat, sol in grids.items():
        tr = normality_trend(pat, (25, 50, 100), solution=sol)
        trend_ok = trend_ok and tr["skewness_decreasing"] and tr["kolmogorov_decreasing"]
    tail = chebyshev_tail((1, 2), 200, solution=sol12_200)
    tail_ok = tail < Fraction(1, 20)
    check(
        acceptance_log, 7, trend_ok and tail_ok,
        f"|skewness| and Kolmogorov distance decrease on n in {{25,50,100}} for "
        f"(1,2),(1,3),(2,2) (={trend_ok}); exact tail P[|X - E| > n^0.75] at "
        f"n = 200 is {float(tail):.2e} < 0.05",
    )


def test_criterion_08_conjecture_scan(acceptance_log):
    rep = conjecture_scan(2, 16)
    count_ok = rep.totals[16] == 19320 == count_free_trees(16)
    eq_ok = rep.equalities == [(2, (0, 1))]
    ok = rep.holds and count_ok and eq_ok
    check(
        acceptance_log, 8, ok,
        f"R >= D on all {rep.checked} trees, 2 <= n <= 16, zero violations; "
        f"equality only at P2; n = 16 count {rep.totals[16]} cross-checked; "
        f"tightest strict margin {rep.min_margin:.4f}",
    )


def test_criterion_09_gnp_probe(acceptance_log):
    out = gnp_conjecture_check(2000, 0.5, 5, seed=20260823)
    rows = out["trials"]
    conn = all(r["connected"] for r in rows)
    ratio = all(0.45 < r["randic_over_n"] < 0.55 for r in rows if r["connected"])
    diam = all(r["avg_distance"] <= 2.2 for r in rows if r["connected"])
    ok = conn and ratio and diam and out["all_hold"]
    check(
        acceptance_log, 9, ok,
        f"G(2000, 1/2) x 5: all connected (={conn}), R/n in (0.45, 0.55) (={ratio}), "
        f"D <= 2.2 (={diam}), R > D in every trial (={out['all_hold']})",
    )


def test_criterion_10_wiener_scaling(acceptance_log):
    w = wiener_scaling(10, 16)
    slope = w["loglog_slope"]
    ok = 2.2 <= slope <= 2.8
    check(
        acceptance_log, 10, ok,
        f"log-log slope of mean Wiener index over n in [10, 16] is {slope:.3f},"
        f" inside [2.2, 2.8]",
    )
