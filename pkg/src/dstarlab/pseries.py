"""Exact truncated power series over the coefficient rings in :mod:`rings`.

The objects here are plain dense arrays of ring elements indexed by the power
of x, truncated at a fixed order.  Everything is exact rational arithmetic;
floating point enters only through the evaluation helpers at the bottom.

Besides ring-agnostic arithmetic the module provides the three operations the
tree generating functions are built from:

* ``substitute_power(f, m)``  -- the plethystic substitution
  f(x, u) -> f(x^m, u^m);
* ``cycle_index_apply(k, f)`` -- Z(S_k; f), the symmetric-group cycle index
  with s_i := f(x^i, u^i), via the Newton-style recurrence
  k Z_k = sum_{m=1..k} f(x^m, u^m) Z_{k-m}.  An independent partition-sum
  implementation is kept alongside as a cross-check;
* ``sym_exp(f)``              -- the multiset ("Euler") exponential
  exp(sum_{k>=1} f(x^k, u^k)/k) = sum_k Z(S_k; f), computed by the
  log-derivative recurrence.

``eval_tail`` sums a univariate series at a point in (0, x0] and corrects the
truncation with a fitted c * x0^{-n} * n^alpha tail, the shape dictated by a
square-root singularity at x0.  It returns the correction's spread as an
honest error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._rat import Q, QONE, QZERO, as_fraction
from .rings import JetRing, RAT, UPolyRing, ring_signature, upoly_to_jet


class SeriesError(ValueError):
    pass


class EvalDomainError(ValueError):
    pass


class Series:
    """Immutable truncated series: coefficients for x^0 .. x^order."""

    __slots__ = ("ring", "order", "c")

    def __init__(self, ring, coeffs, order=None):
        coeffs = tuple(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if len(coeffs) != order + 1:
            raise SeriesError("coefficient count does not match order")
        self.ring = ring
        self.order = order
        self.c = coeffs

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, ring, order):
        return cls(ring, (ring.zero,) * (order + 1))

    @classmethod
    def x(cls, ring, order):
        if order < 1:
            raise SeriesError("order must be >= 1 for the x series")
        c = [ring.zero] * (order + 1)
        c[1] = ring.one
        return cls(ring, c)

    @classmethod
    def from_rationals(cls, ring, coeffs, order=None):
        return cls(ring, [ring.from_rational(q) for q in coeffs], order)

    # -- basics -------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Series)
            and ring_signature(self.ring) == ring_signature(other.ring)
            and self.c == other.c
        )

    def __hash__(self):
        return hash((ring_signature(self.ring), self.c))

    def __getitem__(self, n):
        return self.c[n]

    def __repr__(self):
        return f"Series<{ring_signature(self.ring)}, order={self.order}>"

    def truncate(self, order):
        if order >= self.order:
            return self
        return Series(self.ring, self.c[: order + 1])

    # -- ring-agnostic arithmetic ------------------------------------
    # Order mismatches are resolved by truncating to the shorter operand;
    # we never pad, so a result's order always states what is actually known.

    def _align(self, other):
        n = min(self.order, other.order)
        return n, self.truncate(n), other.truncate(n)

    def __add__(self, other):
        n, a, b = self._align(other)
        add = self.ring.add
        return Series(self.ring, [add(x, y) for x, y in zip(a.c, b.c)])

    def __sub__(self, other):
        n, a, b = self._align(other)
        sub = self.ring.sub
        return Series(self.ring, [sub(x, y) for x, y in zip(a.c, b.c)])

    def __neg__(self):
        return Series(self.ring, [self.ring.neg(x) for x in self.c])

    def __mul__(self, other):
        n, a, b = self._align(other)
        ring = self.ring
        mul, add, is_zero = ring.mul, ring.add, ring.is_zero
        out = [ring.zero] * (n + 1)
        for i, ai in enumerate(a.c):
            if is_zero(ai):
                continue
            for j in range(n + 1 - i):
                bj = b.c[j]
                if not is_zero(bj):
                    out[i + j] = add(out[i + j], mul(ai, bj))
        return Series(ring, out)

    def scale(self, q):
        q = Q(q)
        return Series(self.ring, [self.ring.scale(x, q) for x in self.c])

    def shift_x(self, s):
        """Multiply by x^s (coefficients above the order fall off)."""
        if s == 0:
            return self
        c = (self.ring.zero,) * s + self.c[: self.order + 1 - s]
        return Series(self.ring, c)

    def mul_u_power(self, k):
        up = self.ring.u_power(k)
        mul = self.ring.mul
        return Series(self.ring, [mul(x, up) for x in self.c])

    def mul_elem(self, elem):
        mul = self.ring.mul
        return Series(self.ring, [mul(x, elem) for x in self.c])

    # -- collapses between tracks ------------------------------------

    def u1_series(self):
        """Evaluate u = 1 coefficient-wise; lands in the rational ring."""
        u1 = self.ring.u1
        return Series(RAT, [u1(x) for x in self.c])

    def jet_component(self, m):
        """The m-th (u-1)-jet component as a rational series."""
        if isinstance(self.ring, JetRing):
            if m >= self.ring.J:
                raise SeriesError(f"jet component {m} beyond jet length {self.ring.J}")
            return Series(RAT, [x[m] for x in self.c])
        if isinstance(self.ring, UPolyRing):
            out = []
            for a in self.c:
                s = QZERO
                for k, q in enumerate(a):
                    if q and k >= m:
                        s += q * math.comb(k, m)
                out.append(s)
            return Series(RAT, out)
        if m == 0:
            return Series(RAT, self.c)
        return Series.zeros(RAT, self.order)

    def to_jets(self, J):
        ring = JetRing(J)
        if isinstance(self.ring, UPolyRing):
            return Series(ring, [upoly_to_jet(a, J) for a in self.c])
        if isinstance(self.ring, JetRing):
            if self.ring.J < J:
                raise SeriesError("cannot widen a jet series")
            return Series(ring, [a[:J] for a in self.c])
        return Series(ring, [ring.from_rational(a) for a in self.c])


# -- structural operations -------------------------------------------


def substitute_power(f: Series, m: int) -> Series:
    """f(x, u) -> f(x^m, u^m) at the same truncation order."""
    if m < 1:
        raise SeriesError("substitution power must be >= 1")
    if m == 1:
        return f
    ring = f.ring
    out = [ring.zero] * (f.order + 1)
    for n in range(f.order // m + 1):
        a = f.c[n]
        if not ring.is_zero(a):
            out[n * m] = ring.u_substitute(a, m)
    return Series(ring, out)


def x_derivative(f: Series) -> Series:
    ring = f.ring
    out = [ring.scale(f.c[n + 1], n + 1) for n in range(f.order)]
    return Series(ring, out)


def _check_no_constant(f):
    if not f.ring.is_zero(f.c[0]):
        raise SeriesError("series must have zero constant term")


def cycle_index_rows(kmax: int, f: Series) -> list:
    """[Z(S_0; f), ..., Z(S_kmax; f)] with s_i = f(x^i, u^i).

    Newton-style recurrence: k Z_k = sum_{m=1..k} f(x^m, u^m) Z_{k-m}.
    """
    if kmax < 0:
        raise SeriesError("negative symmetric-group index")
    _check_no_constant(f)
    subs = [None] + [substitute_power(f, m) for m in range(1, kmax + 1)]
    one = Series(f.ring, (f.ring.one,) + (f.ring.zero,) * f.order)
    rows = [one]
    for kk in range(1, kmax + 1):
        acc = Series.zeros(f.ring, f.order)
        for m in range(1, kk + 1):
            acc = acc + subs[m] * rows[kk - m]
        rows.append(acc.scale(Q(1, kk)))
    return rows


def cycle_index_apply(k: int, f: Series) -> Series:
    """Z(S_k; f); see cycle_index_rows."""
    return cycle_index_rows(k, f)[k]


def _partitions(k, max_part=None):
    if k == 0:
        yield {}
        return
    if max_part is None:
        max_part = k
    for m in range(min(k, max_part), 0, -1):
        for rest in _partitions(k - m, m):
            d = dict(rest)
            d[m] = d.get(m, 0) + 1
            yield d


def cycle_index_partition_sum(k: int, f: Series) -> Series:
    """Z(S_k; f) summed over partitions; independent of the recurrence.

    Z(S_k) = sum_{lambda |- k} prod_m s_m^{c_m} / (m^{c_m} c_m!), kept as a
    cross-check for :func:`cycle_index_apply` (cheap only for small k).
    """
    _check_no_constant(f)
    subs = {m: substitute_power(f, m) for m in range(1, k + 1)}
    total = Series.zeros(f.ring, f.order)
    for part in _partitions(k):
        z = 1
        term = Series(f.ring, (f.ring.one,) + (f.ring.zero,) * f.order)
        for m, cnt in part.items():
            z *= m**cnt * math.factorial(cnt)
            for _ in range(cnt):
                term = term * subs[m]
        total = total + term.scale(Q(1, z))
    return total


def sym_exp(f: Series) -> Series:
    """exp(sum_{k>=1} f(x^k, u^k)/k), the multiset construction.

    Computed by the log-derivative (generalized Euler-transform) recurrence
    n g_n = sum_{m=1..n} hhat_m g_{n-m},  hhat_m = sum_{d|m} d f_d(u^{m/d}),
    which needs one pass and no divisions except by n.
    """
    _check_no_constant(f)
    ring = f.ring
    N = f.order
    add, mul, scale, usub = ring.add, ring.mul, ring.scale, ring.u_substitute
    g = [ring.one] + [ring.zero] * N
    hhat = [ring.zero] * (N + 1)
    for n in range(1, N + 1):
        s = ring.zero
        for d in range(1, n + 1):
            if n % d == 0:
                fd = f.c[d]
                if not ring.is_zero(fd):
                    s = add(s, scale(usub(fd, n // d), Q(d)))
        hhat[n] = s
        acc = ring.zero
        for m in range(1, n + 1):
            if not ring.is_zero(hhat[m]):
                acc = add(acc, mul(hhat[m], g[n - m]))
        g[n] = scale(acc, Q(1, n))
    return Series(ring, g)


def assert_integral(f: Series, what="series"):
    """Counting series must come out with denominator 1; check, don't assume."""
    for n, a in enumerate(f.c):
        if not f.ring.is_integral(a):
            raise SeriesError(f"{what}: non-integer coefficient at x^{n}: {a!r}")
    return f


# -- pattern-free counting series ------------------------------------

_PLANTED_CACHE: dict[int, Series] = {}


def planted_series(N: int) -> Series:
    """Univariate planted/rooted tree counting series p(x) to order N.

    p = x * exp(sum_k p(x^k)/k); solved degree by degree.  The planted and
    rooted counts coincide term by term (attaching or removing the plant is a
    bijection), so this one series serves both roles.
    """
    best = max((m for m in _PLANTED_CACHE if m >= N), default=None)
    if best is not None:
        return _PLANTED_CACHE[best].truncate(N)
    p = [QZERO] * (N + 1)
    g = [QONE] + [QZERO] * N  # exp node
    hhat = [QZERO] * (N + 1)
    for n in range(1, N + 1):
        p[n] = g[n - 1]
        s = QZERO
        for d in range(1, n + 1):
            if n % d == 0 and p[d]:
                s += d * p[d]
        hhat[n] = s
        acc = QZERO
        for m in range(1, n + 1):
            acc += hhat[m] * g[n - m]
        g[n] = acc / n if acc else QZERO
    out = Series(RAT, p)
    _PLANTED_CACHE[N] = out
    return out


def free_series(N: int) -> Series:
    """Univariate free (unrooted) tree counting series t(x) to order N.

    Otter's dissymmetry: t = r - p^2/2 + p(x^2)/2 with r = p.
    """
    p = planted_series(N)
    return p - (p * p).scale(Q(1, 2)) + substitute_power(p, 2).scale(Q(1, 2))


# -- numeric evaluation ----------------------------------------------


def _term_float(q, logx_n: float) -> float:
    """float(q * e^{logx_n}) via logs; immune to overflow of huge integers."""
    num = int(q.numerator)
    den = int(q.denominator)
    if num == 0:
        return 0.0
    mag = math.log(abs(num)) - math.log(den) + logx_n
    val = math.exp(mag)
    return -val if num < 0 else val


def eval_series(f: Series, x: float, growth: float | None = None):
    """Plain partial sum at 0 < x; returns (value, remainder_bound).

    ``growth``: known bound on limsup |c_n|^{1/n} (e.g. 1/x0 for the tree
    series); with it the geometric remainder past the truncation is bounded.
    """
    if x <= 0:
        raise EvalDomainError("evaluation point must be positive")
    logx = math.log(x)
    terms = [_term_float(f.c[n], n * logx) for n in range(f.order + 1)]
    value = math.fsum(terms)
    err = 0.0
    if growth is not None:
        rho = x * growth
        if rho < 1.0:
            err = abs(terms[f.order]) * rho / (1.0 - rho)
        else:
            err = math.inf
    return value, err


@dataclass
class TailEval:
    value: float
    error: float
    c_fit: float = 0.0
    c_slope: float = 0.0
    resid: float = 0.0
    tail: float = 0.0
    warnings: list = field(default_factory=list)


def _tail_sum(z: float, s: float, a: int) -> float:
    """sum_{n >= a} z^n n^{-s} via the Lerch transcendent."""
    import mpmath

    with mpmath.workdps(30):
        return float(mpmath.power(z, a) * mpmath.lerchphi(z, s, a))


def eval_tail(
    f: Series,
    x: float,
    x0: float,
    asymptotic_exponent: float = -1.5,
    window_frac: float = 0.25,
) -> TailEval:
    """Evaluate a rational univariate series at x in (0, x0] with a fitted tail.

    The coefficients are assumed to follow
    c_n ~ (c + a/n) * x0^{-n} * n^alpha  (alpha = ``asymptotic_exponent``,
    -3/2 for a square-root singularity).  c and a come from a least-squares
    fit in 1/n over the last ``window_frac`` of the coefficient range; the
    partial sum is then completed with the corresponding exact tail sums.
    The maximum fit residual times the tail weight bounds what the unmodeled
    O(1/n^2) drift can contribute; that is the reported error.
    """
    if x <= 0:
        raise EvalDomainError("evaluation point must be positive")
    if x > x0 * (1 + 1e-12):
        raise EvalDomainError(f"evaluation point {x} beyond the singularity {x0}")
    x = min(x, x0)
    N = f.order
    logx = math.log(x)
    value = math.fsum(_term_float(f.c[n], n * logx) for n in range(N + 1))

    logx0 = math.log(x0)
    alpha = asymptotic_exponent
    wlen = max(8, int(N * window_frac))
    pts = []
    for n in range(max(1, N - wlen + 1), N + 1):
        if f.c[n]:
            pts.append((n, _term_float(f.c[n], n * logx0 - alpha * math.log(n))))
    out = TailEval(value, 0.0)
    if len(pts) < 5:
        out.warnings.append("too few nonzero coefficients in tail window; no correction")
        return out

    import numpy as np

    ns = np.array([n for n, _ in pts], dtype=float)
    ys = np.array([y for _, y in pts], dtype=float)

    def fit(deg):
        A = np.vstack([(1.0 / ns) ** k for k in range(deg + 1)]).T
        coef, *_ = np.linalg.lstsq(A, ys, rcond=None)
        return coef, float(np.max(np.abs(A @ coef - ys)))

    coef2, _ = fit(1)
    coef3, resid = fit(2)

    z = x / x0
    s = -alpha
    if z >= 1.0 and s <= 1.0:
        raise EvalDomainError("tail sum diverges at the singularity for this exponent")
    tails = [_tail_sum(z, s + k, N + 1) for k in range(3)]
    val2 = sum(float(c) * t for c, t in zip(coef2, tails))
    val3 = sum(float(c) * t for c, t in zip(coef3, tails))
    out.tail = val3
    out.value = value + val3
    # successive fit orders bracket the model error; residuals decay ~ n^-3
    # past the window so tails[0] bounds their weight comfortably
    out.error = abs(val3 - val2) + resid * tails[0]
    out.c_fit = float(coef3[0])
    out.c_slope = float(coef3[1])
    out.resid = resid
    return out


__all__ = [
    "Series",
    "SeriesError",
    "EvalDomainError",
    "TailEval",
    "substitute_power",
    "x_derivative",
    "cycle_index_apply",
    "cycle_index_rows",
    "cycle_index_partition_sum",
    "sym_exp",
    "assert_integral",
    "planted_series",
    "free_series",
    "eval_series",
    "eval_tail",
    "as_fraction",
]
