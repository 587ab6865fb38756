"""Randic versus average distance: exhaustive scan and random-graph probe."""

import pytest

from dstarlab.randic_app import (
    asymptotic_statement,
    conjecture_scan,
    gnp_conjecture_check,
    tree_metric_means,
)

FREE = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]


def test_scan_to_ten():
    rep = conjecture_scan(2, 10)
    assert rep.holds
    assert rep.violations == []
    assert rep.equalities == [(2, (0, 1))]  # the two-vertex path, R = D = 1
    assert rep.escalations == 1
    for n in range(2, 11):
        assert rep.totals[n] == FREE[n - 1]
    assert rep.min_margin == pytest.approx(0.0808802, abs=1e-6)
    assert rep.min_margin_tree == (3, (0, 1, 1))


def test_scan_rejects_n1():
    with pytest.raises(ValueError):
        conjecture_scan(1, 5)


def test_gnp_dense_small():
    out = gnp_conjecture_check(n=300, p=0.5, trials=2, seed=11)
    assert out["excluded"] == 0
    assert out["all_hold"]
    for row in out["trials"]:
        assert row["connected"]
        assert row["randic"] > row["avg_distance"]
        assert 0.4 < row["randic_over_n"] < 0.6


def test_gnp_sparse_reports_exclusions():
    out = gnp_conjecture_check(n=60, p=0.002, trials=2, seed=5)
    assert out["excluded"] >= 1
    for row in out["trials"]:
        if not row["connected"]:
            assert "avg_distance" not in row


def test_tree_metric_means():
    means = tree_metric_means(8, 9)
    assert means[8]["trees"] == FREE[7]
    assert means[8]["mean_randic"] > float(means[8]["mean_avg_distance"])


def test_asymptotic_statement_trends():
    means = tree_metric_means(10, 13)
    st = asymptotic_statement(10, 13, means=means, bracket=(0.44, 0.47))
    ratios = [st["randic_over_n"][n] for n in sorted(st["randic_over_n"])]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert st["distance_sublinear"]
    assert 0.0 < st["avg_distance_loglog_slope"] < 1.0
    assert st["lambda_bracket"] == (0.44, 0.47)
