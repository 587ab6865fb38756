"""Singularity constants and growth rates, with cross-route checks."""

import pytest

from dstarlab.asymptotics import (
    Estimate,
    _mu_extrapolated,
    _root_sum,
    _RowCache,
    compute_b,
    compute_mu,
    compute_w,
    find_x0,
    lambda_bracket,
    mu_table,
    sigma_estimate,
)
from dstarlab.pattern_gf import PatternError, PatternSpec

X0_REF = 0.3383219  # 7-digit published value
B_REF = 2.68112266


def test_x0_against_reference():
    est = find_x0(400)
    assert abs(est.value - X0_REF) < 1e-5
    # the ladder's own error bar must cover the full-precision value
    assert abs(est.value - 0.3383218568992077) <= est.error
    assert est.error < 1e-7


def test_x0_orders_agree():
    a, b = find_x0(200), find_x0(400)
    assert abs(a.value - b.value) <= a.error + b.error


def test_x0_consistency_diagnostic():
    est = find_x0(400)
    p_at, p_err = est.detail["p_at_x0"]
    assert abs(p_at - 1.0) <= 50 * (est.error + 1e-9) + p_err
    assert not est.warnings


def test_b_against_reference():
    est = compute_b(400)
    assert abs(est.value - B_REF) / B_REF < 0.005
    assert abs(0.5 * est.value**2 - 3.5942) < 0.04
    # the direct route (route A) is the sharper of the two
    ra, ra_err = est.detail["route_a"]
    assert abs(ra - B_REF) / B_REF < 0.005
    assert est.detail["identity_gap"] <= est.detail["identity_budget"]


def test_case2_j2_root_sum_is_x0():
    rows = _RowCache(200)
    rs, err = _root_sum(PatternSpec.of((1, 2)), rows)
    assert rs == pytest.approx(rows.x0.value, abs=1e-12 + err)


def test_w_positive():
    rows = _RowCache(120)
    for pat in ((1, 2), (2, 2), (2, 3), (1, 4)):
        est = compute_w(pat, 120, 32, rows)
        assert est.value > 0


def test_mu_both_routes_close():
    est = compute_mu((1, 2), method="both", N=200, Nu=48, N_ext=300)
    ext, _ = est.detail["extrapolation"]
    assert abs(est.value - ext) / est.value < 0.01
    assert not est.warnings


def test_mu_rejects_bad_inputs():
    with pytest.raises(PatternError):
        compute_mu((1, 1))
    with pytest.raises(ValueError):
        compute_mu((1, 2), method="nonsense")


def test_mu_extrapolation_self_consistent():
    pat = PatternSpec.of((1, 2))
    a = _mu_extrapolated(pat, 400)
    b = _mu_extrapolated(pat, 800)
    assert abs(a.value - b.value) <= a.error + b.error


def test_sigma_positive_and_stable():
    a = sigma_estimate((1, 2), 400)
    assert a.value > 0
    b = sigma_estimate((1, 2), 800)
    assert abs(a.value - b.value) <= a.error + b.error


def test_variance_slope_settled():
    from dstarlab.pattern_gf import solve_pattern

    sol = solve_pattern((1, 2), 400, jets=3, check=False)
    s0, s1, s2 = (sol.t.jet_component(m) for m in range(3))

    def var_over_n(n):
        m = s1[n] / s0[n]
        return float(2 * s2[n] / s0[n] + m - m * m) / n

    assert abs(var_over_n(300) - var_over_n(400)) / var_over_n(400) < 0.02


def test_mu_table_small():
    tab = mu_table(3, N=100, Nu=32)
    assert set(tab) == {(1, 2), (1, 3), (2, 2), (2, 3), (3, 3)}
    assert all(est.value > 0 for est in tab.values())
    assert sum(est.value for est in tab.values()) < 1


def test_lambda_bracket_guards():
    with pytest.raises(ValueError):
        lambda_bracket(K=12, alpha=0.5)
    with pytest.raises(ValueError):
        mu_table(1)


def test_lambda_bracket_orders_contain_value():
    tab = mu_table(4, N=100, Nu=32)
    br = lambda_bracket(4, -0.5, table=tab)
    assert br["lower"] <= br["upper"]
    assert br["width"] > 0
    assert br["sum_mu"] < 1


def test_estimate_float_conversion():
    est = Estimate(1.5, 0.1, "test", {})
    assert float(est) == 1.5
