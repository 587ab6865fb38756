"""Exact finite-n distribution summaries and trend diagnostics."""

from fractions import Fraction

import pytest

from dstarlab.distlab import chebyshev_tail, normality_trend, summarize, wiener_scaling
from dstarlab.pattern_gf import solve_pattern


def test_summary_examples():
    s = summarize((1, 2), 4)
    assert s.mean == 1 and s.variance == 1
    assert s.skewness == pytest.approx(0.0, abs=1e-12)  # {0, 2} half-half
    s = summarize((2, 2), 5)
    assert s.mean == Fraction(2, 3) and s.variance == Fraction(8, 9)


def test_degenerate_summary():
    # (3, 4) cannot occur on 5 vertices; the distribution is a point mass
    s = summarize((3, 4), 5)
    assert s.degenerate
    assert s.variance == 0
    assert s.skewness is None and s.kolmogorov_to_normal is None


def test_kolmogorov_is_a_distance():
    s = summarize((1, 2), 30)
    assert 0.0 < s.kolmogorov_to_normal < 1.0


def test_chebyshev_bound_holds_exactly():
    sol = solve_pattern((1, 2), 100, check=False)
    tail = chebyshev_tail((1, 2), 100, solution=sol)
    var = summarize((1, 2), 100, solution=sol).variance
    assert tail <= var / 1000  # Var / n^(3/2) at n = 100
    assert tail >= 0


def test_normality_trend_decreasing():
    sol = solve_pattern((1, 2), 100, check=False)
    tr = normality_trend((1, 2), solution=sol)
    assert tr["skewness_decreasing"]
    assert tr["kolmogorov_decreasing"]
    assert len(tr["abs_skewness"]) == 3


def test_wiener_scaling_window():
    w = wiener_scaling(10, 14)
    means = list(w["means"].values())
    assert all(a < b for a, b in zip(means, means[1:]))
    assert 2.2 < w["loglog_slope"] < 2.8


def test_wiener_scaling_bad_window():
    with pytest.raises(ValueError):
        wiener_scaling(9, 9)
