"""Asymptotic constants for double-star occurrences in large random trees.

Everything flows from the square-root singularity of the planted-tree series
p(x) at x0 = 0.33832...: p(x0) = 1 and 1 - p(x) ~ b * sqrt(x0 - x) with
b = 2.6811....  For a pattern (i, j), the expected occurrence count in a
uniform random free tree on n vertices grows like mu * n with

    mu = 2 w / (x0 * b^2),

where w collects the u-derivative of the pattern system at u = 1, x = x0:
a chain part sum_{k>=2} p_u(x0^k, 1) (marks created inside substituted
levels of the Polya composition) plus x0 times root sums that weight each
cycle-index split of the special stem degrees by its pattern-forming
child count.  The root sums only involve u = 1 series, which all reduce to
the pattern-free p via d_k(x) = x * Z(S_{k-1}; p), the planted trees of stem
degree k.

Each routine returns an Estimate carrying an error bar that is propagated,
not guessed: series truncation via eval_tail's fitted-tail spread, plus
sensitivity to the x0 error.  A second, independent route (finite-n moment
extrapolation) is available for mu and sigma and is cross-checked in the
acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .pattern_gf import PatternSpec, solve_pattern
from .pseries import (
    Series,
    cycle_index_rows,
    eval_series,
    eval_tail,
    planted_series,
    x_derivative,
)


@dataclass
class Estimate:
    value: float
    error: float
    method: str = ""
    detail: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def __float__(self):
        return float(self.value)


# -- the singularity of the planted series ---------------------------


@lru_cache(maxsize=8)
def find_x0(N: int = 400) -> Estimate:
    """Radius of convergence of the tree series from coefficient ratios.

    With p_n ~ x0^-n (c0 n^-3/2 + c1 n^-5/2 + ...), the corrected ratio
    x_n = (p_{n-1}/p_n) / (1 + 3/(2n)) equals x0 (1 + a2/n^2 + a3/n^3 + ...)
    with integer powers only, so a Richardson ladder over n = N, N/2, N/4,
    N/8 removes term after term.  (Subdominant singularities of p lie at
    strictly larger modulus and only add exponentially small noise.)

    The tail-corrected evaluation p(x0) = 1 is reported as an independent
    consistency check; it is not used to place the root, because evaluating
    the truncated series just above the true singularity stays biased low
    and would drag a self-consistent bisection upward.
    """
    p = planted_series(N)

    def xn(n):
        return float(p[n - 1] / p[n]) / (1.0 + 1.5 / n)

    ys = [xn(N >> m) for m in range(4)]  # finest first
    work = list(ys)
    tops = [work[0]]
    for k in range(1, 4):
        fac = 2.0 ** (k + 1)
        work = [(fac * work[m] - work[m + 1]) / (fac - 1.0) for m in range(len(work) - 1)]
        tops.append(work[0])
    # after the ladder only the j >= 5 terms and float noise remain
    value = tops[-1]
    err = max(3.0 * abs(tops[-1] - tops[-2]), 1e-12)

    out = Estimate(value, err, "ratio-richardson", {"ladder": ys})
    pv = eval_tail(p, value, value)
    out.detail["p_at_x0"] = (pv.value, pv.error)
    if abs(pv.value - 1.0) > 50.0 * (pv.error + 1e-9):
        out.warnings.append(f"p(x0) = {pv.value!r} is off 1 beyond the evaluation budget")
    return out


def _richardson_sqrt(sample, h0=0.02, levels=4):
    """Limit of F(h) = L + c1 sqrt(h) + c2 h + ... as h -> 0.

    Samples at h0 * 4^-m so sqrt(h) halves per step; the standard Richardson
    tableau in powers of 1/2 then eliminates term after term.  Returns
    (limit, error) with the error taken from the last tableau correction plus
    the propagated sample errors.
    """
    vals, errs = [], []
    for m in range(levels + 1):
        v, e = sample(h0 * 4.0**-m)
        vals.append(v)
        errs.append(e)
    tab = list(vals)
    width = len(tab)
    last_corr = 0.0
    for k in range(1, width):
        q = 0.5**k
        for m in range(width - k):
            tab[m] = (tab[m + 1] - q * tab[m]) / (1.0 - q)
        last_corr = abs(tab[0] - tab[1]) if width - k >= 2 else last_corr
    # crude amplification bound for the sample errors through the tableau
    amp = 3.0**min(levels, 4)
    return tab[0], last_corr + amp * max(errs)


@lru_cache(maxsize=8)
def compute_b(N: int = 400) -> Estimate:
    """The constant b in 1 - p(x) ~ b sqrt(x0 - x), by two routes.

    Route A evaluates g = p'(x) (1 - p(x)) right at x0 (the product is
    finite there and equals b^2/2 * p(x0)).  Route B extrapolates
    (1 - p(x)) / sqrt(x0 - x) to x0 by Richardson in sqrt(h).  The returned
    value is route B's; route A and the b^2/2 identity live in the detail.
    """
    x0e = find_x0(N)
    x0 = x0e.value
    p = planted_series(N)
    g = x_derivative(p)
    prod = g - g * p  # p'(1 - p)

    ev = eval_tail(prod, x0, x0)
    pv = eval_tail(p, x0, x0)
    fx = ev.value / pv.value
    fx_err = (ev.error + abs(fx) * pv.error) / abs(pv.value)
    # sensitivity of the evaluation to the x0 uncertainty, measured directly
    dx = 10.0 * x0e.error
    ev_lo = eval_tail(prod, x0 - dx, x0 - dx)
    fx_err += abs(ev.value - ev_lo.value) / math.sqrt(10.0)
    b_a = math.sqrt(2.0 * fx)

    def sample(h):
        te = eval_tail(p, x0 - h, x0)
        v = (1.0 - te.value) / math.sqrt(h)
        e = te.error / math.sqrt(h) + 0.5 * abs(1.0 - te.value) * x0e.error / h ** 1.5
        return v, e

    b_b, b_b_err = _richardson_sqrt(sample)
    b_a_err = fx_err / b_a  # b = sqrt(2 fx) => db = dfx / b
    gap = abs(fx - 0.5 * b_b * b_b)
    gap_budget = fx_err + b_b * b_b_err
    out = Estimate(
        b_b,
        b_b_err,
        "richardson-sqrt",
        {
            "route_a": (b_a, b_a_err),
            "route_b": (b_b, b_b_err),
            "fx_at_x0": (fx, fx_err),
            "identity_gap": gap,
            "identity_budget": gap_budget,
            "x0": (x0, x0e.error),
        },
    )
    if gap > gap_budget:
        out.warnings.append(
            f"p'(1-p)/p at x0 = {fx:.6f} vs b^2/2 = {0.5*b_b*b_b:.6f}: gap beyond budget"
        )
    return out


# -- pattern constants -----------------------------------------------


class _RowCache:
    """Z-row values at x0 for the u = 1 reductions, shared across patterns.

    For each special degree k it holds Z(S_l; p - d_k)(x0) and
    Z(S_l; d_k)(x0) as (value, error) pairs, l = 0..lmax.
    """

    def __init__(self, N: int, x0: Estimate | None = None):
        self.N = N
        self.x0 = x0 if x0 is not None else find_x0(N)
        self.p = planted_series(N)
        self._prow = {}  # cycle-index rows of p, for the d_k
        self._evals = {}

    def _p_rows(self, kmax):
        have = max(self._prow, default=-1)
        if kmax > have:
            self._prow = dict(enumerate(cycle_index_rows(kmax, self.p)))
        return self._prow

    def d_series(self, k) -> Series:
        return self._p_rows(k - 1)[k - 1].shift_x(1)

    def rows_at_x0(self, which: str, k: int, lmax: int):
        """which: 'minus' for p - d_k, 'd' for d_k; returns [(value, error)]."""
        key = (which, k, lmax)
        got = self._evals.get(key)
        if got is not None:
            return got
        base = self.d_series(k)
        f = (self.p - base) if which == "minus" else base
        x0 = self.x0.value
        rows = cycle_index_rows(lmax, f)
        out = []
        for l, row in enumerate(rows):
            if l == 0:
                out.append((1.0, 0.0))
                continue
            te = eval_tail(row, x0, x0)
            out.append((te.value, te.error))
        self._evals[key] = out
        return out


def _root_sum(pat: PatternSpec, rows: _RowCache):
    """sum over cycle-index splits of the special stem degrees, each split
    weighted by its count of pattern-forming children; at u = 1, x = x0."""
    total, err = 0.0, 0.0

    def one_sum(side_k, c):
        nonlocal total, err
        za = rows.rows_at_x0("minus", side_k, c)
        zb = rows.rows_at_x0("d", side_k, c)
        for l2 in range(1, c + 1):
            va, ea = za[c - l2]
            vb, eb = zb[l2]
            total += l2 * va * vb
            err += l2 * (abs(va) * eb + abs(vb) * ea)

    one_sum(pat.i, pat.j - 1)  # degree-j stems, marked children of class d_i
    if pat.case == 1:
        one_sum(pat.j, pat.i - 1)  # degree-i stems, marked children of class d_j
    return total, err


def _chain_sum(pat: PatternSpec, Nu: int, x0: float, variant="std"):
    """sum_{k>=2} p_u(x0^k, 1): marks arising inside substituted levels."""
    sol = solve_pattern(pat, Nu, jets=2, variant=variant, check=False)
    pu = sol.p.jet_component(1)
    growth = 1.0 / x0
    total, err = 0.0, 0.0
    k = 2
    while True:
        xk = x0**k
        v, e = eval_series(pu, xk, growth)
        total += v
        err += e
        if abs(v) + e < 1e-17 or k > 60:
            # geometric continuation bound for the rest of the k-sum
            err += (abs(v) + e) * xk / (1.0 - xk)
            break
        k += 1
    return total, err


def compute_w(pattern, N: int = 400, Nu: int = 48, rows: _RowCache | None = None) -> Estimate:
    """w(i, j): the u-derivative weight entering mu = 2 w / (x0 b^2)."""
    pat = PatternSpec.of(pattern)
    if rows is None:
        rows = _RowCache(N)
    x0 = rows.x0.value
    rs, rs_err = _root_sum(pat, rows)
    ch, ch_err = _chain_sum(pat, Nu, x0)
    w = ch + x0 * rs
    err = ch_err + x0 * rs_err + abs(rs) * rows.x0.error
    return Estimate(w, err, "singularity", {"chain": ch, "root_sum": rs})


def compute_mu(
    pattern,
    method: str = "singularity",
    N: int = 400,
    Nu: int = 48,
    N_ext: int = 500,
    rows: _RowCache | None = None,
) -> Estimate:
    """Linear growth rate of the expected occurrence count, E[X_n] ~ mu n.

    method 'singularity' uses mu = 2 w / (x0 b^2); 'extrapolation' fits the
    increments of exact finite-n means; 'both' returns the singularity value
    and cross-checks the other route in detail/warnings.
    """
    pat = PatternSpec.of(pattern)
    if method not in ("singularity", "extrapolation", "both"):
        raise ValueError(f"unknown method {method!r}")
    if method == "extrapolation":
        return _mu_extrapolated(pat, N_ext)
    if rows is None:
        rows = _RowCache(N)
    w = compute_w(pat, N, Nu, rows)
    b = compute_b(N)
    x0 = rows.x0
    mu = 2.0 * w.value / (x0.value * b.value**2)
    rel = (
        w.error / abs(w.value)
        + 2.0 * b.error / b.value
        + x0.error / x0.value
    )
    out = Estimate(mu, abs(mu) * rel, "singularity", {"w": (w.value, w.error)})
    if method == "both":
        ext = _mu_extrapolated(pat, N_ext)
        out.detail["extrapolation"] = (ext.value, ext.error)
        gap = abs(ext.value - mu)
        if gap > out.error + ext.error:
            out.warnings.append(
                f"extrapolated mu {ext.value:.8f} vs singularity {mu:.8f}: gap {gap:.2e}"
            )
    return out


def _fit_tail_sequence(ns, ys, exponents):
    """Least squares y ~ sum_k c_k n^(-e_k); returns intercept and residual."""
    import numpy as np

    A = np.vstack([np.asarray(ns, dtype=float) ** -e for e in exponents]).T
    coef, *_ = np.linalg.lstsq(A, np.asarray(ys, dtype=float), rcond=None)
    resid = float(np.max(np.abs(A @ coef - ys)))
    return float(coef[0]), resid


def _increment_limit(values, window=120):
    """Limit of first differences d_n = v_n - v_{n-1} with d_n - L ~ n^-3/2."""
    N = len(values) - 1
    lo = max(2, N - window)
    ns = list(range(lo, N + 1))
    ds = [values[n] - values[n - 1] for n in ns]
    v2, _ = _fit_tail_sequence(ns, ds, (0.0, 1.5))
    v3, r3 = _fit_tail_sequence(ns, ds, (0.0, 1.5, 2.5))
    return v3, abs(v3 - v2) + r3


def _mu_extrapolated(pat: PatternSpec, N_ext: int) -> Estimate:
    sol = solve_pattern(pat, N_ext, jets=2, check=False)
    s0 = sol.t.jet_component(0)
    s1 = sol.t.jet_component(1)
    means = [0.0] * (N_ext + 1)
    for n in range(1, N_ext + 1):
        means[n] = float(s1[n] / s0[n])
    v, e = _increment_limit(means)
    return Estimate(v, e, "extrapolation", {"N": N_ext, "last_mean": means[-1]})


def sigma_estimate(pattern, N_ext: int = 400) -> Estimate:
    """sigma in Var[X_n] ~ sigma^2 n, from exact finite-n variances."""
    pat = PatternSpec.of(pattern)
    sol = solve_pattern(pat, N_ext, jets=3, check=False)
    s0 = sol.t.jet_component(0)
    s1 = sol.t.jet_component(1)
    s2 = sol.t.jet_component(2)
    var = [0.0] * (N_ext + 1)
    for n in range(1, N_ext + 1):
        m = s1[n] / s0[n]
        var[n] = float(2 * s2[n] / s0[n] + m - m * m)
    v, e = _increment_limit(var)
    if v <= 0:
        raise ArithmeticError("variance slope did not come out positive")
    s = math.sqrt(v)
    return Estimate(s, 0.5 * e / s, "extrapolation", {"N": N_ext, "slope": (v, e)})


def mu_table(K: int = 12, N: int = 200, Nu: int = 48) -> dict:
    """{(i, j): Estimate} for all patterns with 1 <= i <= j <= K."""
    if K < 2:
        raise ValueError("need K >= 2")
    rows = _RowCache(N)
    out = {}
    for i in range(1, K + 1):
        for j in range(i, K + 1):
            if (i, j) == (1, 1):
                continue
            out[(i, j)] = compute_mu((i, j), N=N, Nu=Nu, rows=rows)
    return out


def lambda_bracket(K: int = 12, alpha: float = -0.5, N: int = 200, Nu: int = 48, table=None) -> dict:
    """Bracket for the limit of the generalized Randic index R_alpha / n.

    R_alpha/n -> sum over patterns of mu(i,j) (ij)^alpha.  Patterns up to K
    give the lower end; the unseen mass 1 - sum mu (every edge is exactly one
    pattern, so the mu sum to 1) is worth at most K^alpha each, which caps
    the upper end.  Needs alpha < 0 for that cap to hold.
    """
    if alpha >= 0:
        raise ValueError("the tail cap needs alpha < 0")
    if table is None:
        table = mu_table(K, N, Nu)
    lower = 0.0
    err = 0.0
    mass = 0.0
    mass_err = 0.0
    for (i, j), est in sorted(table.items()):
        wgt = float(i * j) ** alpha
        lower += est.value * wgt
        err += est.error * wgt
        mass += est.value
        mass_err += est.error
    tail = max(0.0, 1.0 - mass) * float(K) ** alpha
    upper = lower + tail + mass_err * float(K) ** alpha
    return {
        "alpha": alpha,
        "K": K,
        "lower": lower,
        "upper": upper,
        "width": upper - lower,
        "error": err,
        "sum_mu": mass,
        "sum_mu_error": mass_err,
    }


def constants_report(N: int = 400) -> dict:
    x0 = find_x0(N)
    b = compute_b(N)
    return {
        "N": N,
        "x0": {"value": x0.value, "error": x0.error},
        "b": {"value": b.value, "error": b.error},
        "fx_identity": {
            "p_x(1-p)/p_at_x0": b.detail["fx_at_x0"][0],
            "half_b_squared": 0.5 * b.value**2,
            "gap": b.detail["identity_gap"],
            "budget": b.detail["identity_budget"],
        },
        "warnings": list(b.warnings),
    }


__all__ = [
    "Estimate",
    "find_x0",
    "compute_b",
    "compute_w",
    "compute_mu",
    "sigma_estimate",
    "mu_table",
    "lambda_bracket",
    "constants_report",
]
