"""Bivariate generating functions for double-star occurrences in trees.

A double-star pattern (i, j) is an edge whose endpoints have degrees i and j.
For each pattern we track t(x, u) = sum over free trees of x^n u^(number of
occurrences), built from planted-tree series by Polya composition.

Planted trees (root carrying a half-edge toward an absent parent, so the stem
degree counts that half-edge) are classified by stem degree:

* a0 -- stem degree outside {i, j},
* ai -- stem degree i  (absent when i = 1: that class is just x),
* aj -- stem degree j.

A stem with d children contributes x * Z(S_d; p) where Z(S_d; .) is the cycle
index of the symmetric group and p = sum of the classes.  An occurrence is
scored by u the moment both endpoint degrees become final, which happens when
the deeper endpoint's subtree is attached; so the ai / aj equations split the
children multiset by class and weight the pattern-forming ones with u.  Three
shapes of system arise:

* case 1, 1 < i < j: ai and aj feed each other;
* case 2, i = 1 < j:  the small class is the single vertex x;
* case 3, i = j >= 2: aj feeds itself.

Rooted trees r(x, u) repair the pattern marks for the root (which has no
half-edge), and the dissymmetry identity with mark corrections for the
distinguished edge turns r into t:

    t = r - p^2/2 + p(x^2, u^2)/2 + (edge corrections) * (1 - u).

All of it is exact arithmetic over any of the coefficient rings: u-polynomial
coefficients give whole occurrence distributions, (u-1)-jets give moment sums,
jet length 1 is the plain u = 1 counting track.

The ``variant`` switch in case 1 exists because two published forms of the
root repair circulate: "std" splits the degree-j root over (a0 + aj, ai) as
the aj equation does; "literal" reuses (a0 + ai, aj) there.  They disagree for
the first time at the (2, 3) pattern on 5 vertices; the enumeration oracle in
the tests adjudicates for "std".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._rat import Q, QONE, QZERO
from .rings import JetRing, RAT, UPolyRing, ring_signature
from .pseries import (
    Series,
    SeriesError,
    assert_integral,
    cycle_index_apply,
    free_series,
    substitute_power,
    sym_exp,
)


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class PatternSpec:
    """Unordered degree pair (i, j), 1 <= i <= j, excluding (1, 1)."""

    i: int
    j: int

    def __post_init__(self):
        i, j = self.i, self.j
        if not (isinstance(i, int) and isinstance(j, int)):
            raise PatternError("pattern degrees must be integers")
        if i > j:
            raise PatternError(f"pattern ({i}, {j}) must be ordered i <= j")
        if i < 1:
            raise PatternError("pattern degrees must be >= 1")
        if (i, j) == (1, 1):
            raise PatternError(
                "pattern (1, 1) occurs only in the two-vertex tree; not supported"
            )

    @classmethod
    def of(cls, i, j=None):
        if j is None:
            if isinstance(i, PatternSpec):
                return i
            if isinstance(i, str):
                parts = i.replace(",", " ").split()
                if len(parts) != 2:
                    raise PatternError(f"cannot parse pattern {i!r}")
                a, b = (int(v) for v in parts)
            else:
                a, b = i
            i, j = a, b
        if i > j:
            i, j = j, i
        return cls(int(i), int(j))

    @property
    def case(self) -> int:
        if self.i == 1:
            return 2
        return 3 if self.i == self.j else 1

    def __str__(self):
        return f"({self.i},{self.j})"


# -- incremental nodes -----------------------------------------------


class _Exp:
    """sym_exp of a series revealed coefficient by coefficient.

    g[n] is valid once push(n, .) has been called for all degrees <= n.
    """

    def __init__(self, ring, N):
        self.ring = ring
        self.N = N
        self.f = [ring.zero] * (N + 1)
        self.hhat = [ring.zero] * (N + 1)
        self.g = [ring.one] + [ring.zero] * N

    def push(self, n, val):
        ring = self.ring
        self.f[n] = val
        s = ring.zero
        for d in range(1, n + 1):
            if n % d == 0:
                fd = self.f[d]
                if not ring.is_zero(fd):
                    s = ring.add(s, ring.scale(ring.u_substitute(fd, n // d), Q(d)))
        self.hhat[n] = s
        acc = ring.zero
        for m in range(1, n + 1):
            hm = self.hhat[m]
            if not ring.is_zero(hm):
                acc = ring.add(acc, ring.mul(hm, self.g[n - m]))
        self.g[n] = ring.scale(acc, Q(1, n))


class _ZRows:
    """Cycle-index rows Z(S_0..S_kmax; f) for an incrementally revealed f.

    Degree n of every row only needs f through degree n and lower rows through
    degree n - 1, so rows stay in lockstep with the fixed-point loop.
    """

    def __init__(self, ring, N, kmax):
        self.ring = ring
        self.N = N
        self.kmax = kmax
        self.f = [ring.zero] * (N + 1)
        self.subs = {}  # (m, e) -> u_substitute(f[e], m), built on demand
        self.rows = [[ring.zero] * (N + 1) for _ in range(kmax + 1)]
        self.rows[0][0] = ring.one

    def push(self, n, val):
        ring = self.ring
        self.f[n] = val
        if n == 0:
            return
        for k in range(1, self.kmax + 1):
            acc = ring.zero
            for m in range(1, k + 1):
                row = self.rows[k - m]
                for e in range(1, n // m + 1):
                    fe = self.f[e]
                    if ring.is_zero(fe):
                        continue
                    rv = row[n - m * e]
                    if ring.is_zero(rv):
                        continue
                    key = (m, e)
                    sub = self.subs.get(key)
                    if sub is None:
                        sub = ring.u_substitute(fe, m)
                        self.subs[key] = sub
                    acc = ring.add(acc, ring.mul(sub, rv))
            self.rows[k][n] = ring.scale(acc, Q(1, k))


def _pair(ring, TA, TB, c, nn):
    """[x^nn] of sum_{l1+l2=c} Z(S_l1; A) Z(S_l2; B) u^l2."""
    acc = ring.zero
    for l2 in range(c + 1):
        rowa = TA.rows[c - l2]
        rowb = TB.rows[l2]
        conv = ring.zero
        for d in range(nn + 1):
            av = rowa[d]
            if ring.is_zero(av):
                continue
            bv = rowb[nn - d]
            if not ring.is_zero(bv):
                conv = ring.add(conv, ring.mul(av, bv))
        if not ring.is_zero(conv):
            if l2:
                conv = ring.mul(conv, ring.u_power(l2))
            acc = ring.add(acc, conv)
    return acc


def _pair_x(ring, TQ, c, nn):
    """[x^nn] of sum_{m1+m2=c} Z(S_m1; q) x^m2 u^m2 (leaf-children split)."""
    acc = ring.zero
    for m2 in range(min(c, nn) + 1):
        rv = TQ.rows[c - m2][nn - m2]
        if ring.is_zero(rv):
            continue
        if m2:
            rv = ring.mul(rv, ring.u_power(m2))
        acc = ring.add(acc, rv)
    return acc


# -- the three systems -----------------------------------------------


@dataclass
class SystemSolution:
    """Solved planted classes plus rooted and free series for one pattern."""

    pattern: PatternSpec
    order: int
    variant: str
    p: Series
    a0: Series
    ai: Series  # the x series itself in case 2; equal to aj in case 3
    aj: Series
    r: Series
    t: Series

    @property
    def ring(self):
        return self.p.ring


def _one_minus_u(ring):
    return ring.sub(ring.one, ring.u_power(1))


def _solve_case1(ring, N, i, j, variant):
    a0 = [ring.zero] * (N + 1)
    ai = [ring.zero] * (N + 1)
    aj = [ring.zero] * (N + 1)
    p = [ring.zero] * (N + 1)
    r = [ring.zero] * (N + 1)
    E = _Exp(ring, N)
    Zp = _ZRows(ring, N, j)
    kab = j if variant == "literal" else i
    ZA = _ZRows(ring, N, kab)  # a0 + ai
    ZB = _ZRows(ring, N, kab)  # aj
    ZC = _ZRows(ring, N, j)  # a0 + aj
    ZD = _ZRows(ring, N, j)  # ai
    add, sub = ring.add, ring.sub
    for n in range(1, N + 1):
        nn = n - 1
        a0[n] = sub(E.g[nn], add(Zp.rows[i - 1][nn], Zp.rows[j - 1][nn]))
        ai[n] = _pair(ring, ZA, ZB, i - 1, nn)
        aj[n] = _pair(ring, ZC, ZD, j - 1, nn)
        p[n] = add(a0[n], add(ai[n], aj[n]))
        rn = sub(E.g[nn], add(Zp.rows[i][nn], Zp.rows[j][nn]))
        rn = add(rn, _pair(ring, ZA, ZB, i, nn))
        if variant == "literal":
            rn = add(rn, _pair(ring, ZA, ZB, j, nn))
        else:
            rn = add(rn, _pair(ring, ZC, ZD, j, nn))
        r[n] = rn
        E.push(n, p[n])
        Zp.push(n, p[n])
        ZA.push(n, add(a0[n], ai[n]))
        ZB.push(n, aj[n])
        ZC.push(n, add(a0[n], aj[n]))
        ZD.push(n, ai[n])
    s = {k: Series(ring, v) for k, v in
         [("a0", a0), ("ai", ai), ("aj", aj), ("p", p), ("r", r)]}
    t = (
        s["r"]
        - (s["p"] * s["p"]).scale(Q(1, 2))
        + substitute_power(s["p"], 2).scale(Q(1, 2))
        + (s["ai"] * s["aj"]).mul_elem(_one_minus_u(ring))
    )
    return s, t


def _solve_case2(ring, N, j):
    a0 = [ring.zero] * (N + 1)
    aj = [ring.zero] * (N + 1)
    p = [ring.zero] * (N + 1)
    r = [ring.zero] * (N + 1)
    E = _Exp(ring, N)
    Zp = _ZRows(ring, N, j - 1)  # over p
    Zq = _ZRows(ring, N, j - 1)  # over q = p - x
    add, sub, mul = ring.add, ring.sub, ring.mul
    omu = _one_minus_u(ring)
    for n in range(1, N + 1):
        nn = n - 1
        v = sub(E.g[nn], Zp.rows[j - 1][nn])
        if n == 1:
            v = sub(v, ring.one)
        a0[n] = v
        aj[n] = _pair_x(ring, Zq, j - 1, nn)
        p[n] = add(a0[n], aj[n])
        if n == 1:
            p[n] = add(p[n], ring.one)
        # root of degree 1 over an aj child, and root of degree j over leaves,
        # each swapped from unmarked to marked
        rn = sub(E.g[nn], mul(aj[nn], omu))
        for m2 in range(1, min(j, nn) + 1):
            rv = Zq.rows[j - m2][nn - m2]
            if not ring.is_zero(rv):
                rn = sub(rn, mul(rv, ring.sub(ring.one, ring.u_power(m2))))
        r[n] = rn
        E.push(n, p[n])
        Zp.push(n, p[n])
        Zq.push(n, sub(p[n], ring.one) if n == 1 else p[n])
    x_series = Series.x(ring, N)
    s = {
        "a0": Series(ring, a0),
        "ai": x_series,
        "aj": Series(ring, aj),
        "p": Series(ring, p),
        "r": Series(ring, r),
    }
    t = (
        s["r"]
        - (s["p"] * s["p"]).scale(Q(1, 2))
        + substitute_power(s["p"], 2).scale(Q(1, 2))
        + (x_series * s["aj"]).mul_elem(omu)
    )
    return s, t


def _solve_case3(ring, N, j):
    a0 = [ring.zero] * (N + 1)
    aj = [ring.zero] * (N + 1)
    p = [ring.zero] * (N + 1)
    r = [ring.zero] * (N + 1)
    E = _Exp(ring, N)
    Zp = _ZRows(ring, N, j)  # over p
    ZA = _ZRows(ring, N, j)  # over a0
    ZB = _ZRows(ring, N, j)  # over aj
    add, sub = ring.add, ring.sub
    for n in range(1, N + 1):
        nn = n - 1
        a0[n] = sub(E.g[nn], Zp.rows[j - 1][nn])
        aj[n] = _pair(ring, ZA, ZB, j - 1, nn)
        p[n] = add(a0[n], aj[n])
        r[n] = add(sub(E.g[nn], Zp.rows[j][nn]), _pair(ring, ZA, ZB, j, nn))
        E.push(n, p[n])
        Zp.push(n, p[n])
        ZA.push(n, a0[n])
        ZB.push(n, aj[n])
    s = {k: Series(ring, v) for k, v in
         [("a0", a0), ("aj", aj), ("p", p), ("r", r)]}
    s["ai"] = s["aj"]
    omu = _one_minus_u(ring)
    ajs = s["aj"]
    t = (
        s["r"]
        - (s["p"] * s["p"]).scale(Q(1, 2))
        + substitute_power(s["p"], 2).scale(Q(1, 2))
        + (ajs * ajs).scale(Q(1, 2)).mul_elem(omu)
        - substitute_power(ajs, 2).scale(Q(1, 2)).mul_elem(omu)
    )
    return s, t


def solve_pattern(
    pattern,
    N: int,
    *,
    jets: int | None = None,
    cap: int | None = None,
    variant: str = "std",
    check="auto",
    cache=None,
) -> SystemSolution:
    """Solve the planted system for a pattern up to x^N.

    jets=None works over u-polynomials (full occurrence distributions);
    jets=J works over (u-1)-jets of length J (J=1 is the u=1 track, J=m+1
    reaches the m-th binomial moment sums).  ``cap`` truncates u-degrees in
    the polynomial track.  ``check`` re-derives every equation with the
    standalone series operations ("auto": only for N <= 64).
    """
    pat = PatternSpec.of(pattern)
    if variant not in ("std", "literal"):
        raise PatternError(f"unknown variant {variant!r}")
    if variant == "literal" and pat.case != 1:
        variant = "std"  # the published forms only differ in case 1
    if jets is not None:
        if cap is not None:
            raise PatternError("jets and cap are mutually exclusive")
        ring = JetRing(jets)
    else:
        ring = UPolyRing(cap)

    sol = _cache_fetch(cache, pat, N, ring, variant)
    if sol is None:
        if pat.case == 1:
            s, t = _solve_case1(ring, N, pat.i, pat.j, variant)
        elif pat.case == 2:
            s, t = _solve_case2(ring, N, pat.j)
        else:
            s, t = _solve_case3(ring, N, pat.j)
        sol = SystemSolution(pat, N, variant, s["p"], s["a0"], s["ai"], s["aj"], s["r"], t)
        if cap is None:
            for name in ("p", "a0", "ai", "aj", "r", "t"):
                assert_integral(getattr(sol, name), f"{pat} {name}")
        _cache_store(cache, sol)
    if check is True or (check == "auto" and N <= 64):
        verify_solution(sol)
    return sol


def _cache_fetch(cache, pat, N, ring, variant):
    from . import cache as _c

    directory = _c.cache_dir(cache) if cache is not None else _c.cache_dir()
    if directory is None:
        return None
    key = _c.cache_key("system", N, ring_signature(ring), variant, (pat.i, pat.j))
    data = _c.fetch(directory, key)
    if data is None:
        return None
    try:
        fields = {k: _c.load_series(ring, data[k]) for k in ("p", "a0", "ai", "aj", "r", "t")}
    except (KeyError, ValueError):
        return None
    return SystemSolution(pat, N, variant, **fields)


def _cache_store(cache, sol):
    from . import cache as _c

    directory = _c.cache_dir(cache) if cache is not None else _c.cache_dir()
    if directory is None:
        return
    key = _c.cache_key(
        "system", sol.order, ring_signature(sol.ring), sol.variant, (sol.pattern.i, sol.pattern.j)
    )
    payload = {
        k: _c.dump_series(getattr(sol, k)) for k in ("p", "a0", "ai", "aj", "r", "t")
    }
    _c.store(directory, key, payload)


def verify_solution(sol: SystemSolution):
    """Recompute every defining equation from sol.p with the standalone
    series operations and compare; raises SeriesError on any mismatch.

    This is a genuinely independent route: the solver builds rows
    incrementally, this builds them whole.
    """
    ring = sol.ring
    N = sol.order
    pat = sol.pattern
    i, j = pat.i, pat.j
    x = Series.x(ring, N)
    omu = _one_minus_u(ring)

    E = sym_exp(sol.p)
    xE = E.shift_x(1)

    def zrow(k, f):
        return cycle_index_apply(k, f)

    def pair_series(A, B, c):
        za = [zrow(l, A) for l in range(c + 1)]
        zb = [zrow(l, B) for l in range(c + 1)]
        acc = Series.zeros(ring, N)
        for l2 in range(c + 1):
            acc = acc + (za[c - l2] * zb[l2]).mul_elem(ring.u_power(l2))
        return acc

    def eq(name, lhs, rhs):
        if lhs != rhs:
            raise SeriesError(f"{pat} {name}: fixed point fails verification")

    if pat.case == 1:
        A = sol.a0 + sol.ai
        B = sol.aj
        C = sol.a0 + sol.aj
        D = sol.ai
        eq("p", sol.p, sol.a0 + sol.ai + sol.aj)
        eq("a0", sol.a0, xE - zrow(i - 1, sol.p).shift_x(1) - zrow(j - 1, sol.p).shift_x(1))
        eq("ai", sol.ai, pair_series(A, B, i - 1).shift_x(1))
        eq("aj", sol.aj, pair_series(C, D, j - 1).shift_x(1))
        second = pair_series(A, B, j) if sol.variant == "literal" else pair_series(C, D, j)
        eq(
            "r",
            sol.r,
            xE
            - zrow(i, sol.p).shift_x(1)
            - zrow(j, sol.p).shift_x(1)
            + pair_series(A, B, i).shift_x(1)
            + second.shift_x(1),
        )
        extra = (sol.ai * sol.aj).mul_elem(omu)
    elif pat.case == 2:
        q = sol.p - x
        eq("p", sol.p, x + sol.a0 + sol.aj)
        eq("a0", sol.a0, xE - x - zrow(j - 1, sol.p).shift_x(1))
        ajr = Series.zeros(ring, N)
        for m2 in range(j):
            ajr = ajr + zrow(j - 1 - m2, q).shift_x(m2).mul_elem(ring.u_power(m2))
        eq("aj", sol.aj, ajr.shift_x(1))
        rr = xE - (x * sol.aj).mul_elem(omu)
        for m2 in range(1, j + 1):
            term = zrow(j - m2, q).shift_x(m2 + 1)
            rr = rr - term.mul_elem(ring.sub(ring.one, ring.u_power(m2)))
        eq("r", sol.r, rr)
        extra = (x * sol.aj).mul_elem(omu)
    else:
        eq("p", sol.p, sol.a0 + sol.aj)
        eq("a0", sol.a0, xE - zrow(j - 1, sol.p).shift_x(1))
        eq("aj", sol.aj, pair_series(sol.a0, sol.aj, j - 1).shift_x(1))
        eq(
            "r",
            sol.r,
            xE - zrow(j, sol.p).shift_x(1) + pair_series(sol.a0, sol.aj, j).shift_x(1),
        )
        extra = ((sol.aj * sol.aj) - substitute_power(sol.aj, 2)).scale(Q(1, 2)).mul_elem(omu)
    eq(
        "t",
        sol.t,
        sol.r
        - (sol.p * sol.p).scale(Q(1, 2))
        + substitute_power(sol.p, 2).scale(Q(1, 2))
        + extra,
    )


# -- extraction ------------------------------------------------------


def occurrence_distribution(pattern, n: int, *, variant="std", solution=None) -> dict:
    """{occurrences: number of free trees} on n vertices, exact.

    Checks the counts are nonnegative integers supported on k <= n - 1 and
    that they total the free-tree count before returning.
    """
    pat = PatternSpec.of(pattern)
    if n < 1:
        raise PatternError("need n >= 1")
    if solution is None:
        solution = solve_pattern(pat, n, variant=variant, check=False)
    elif (
        solution.order < n
        or not isinstance(solution.ring, UPolyRing)
        or solution.ring.cap is not None
    ):
        raise PatternError("supplied solution cannot produce this distribution")
    coeff = solution.t[n]
    dist = {}
    for k, c in enumerate(coeff):
        if c:
            if c < 0 or not _is_int(c):
                raise SeriesError(f"{pat} n={n}: bad count {c} at u^{k}")
            if k > n - 1:
                raise SeriesError(f"{pat} n={n}: occurrences {k} exceed edge count")
            dist[k] = int(c)
    total = sum(dist.values())
    expect = int(free_series(n)[n])
    if total != expect:
        raise SeriesError(f"{pat} n={n}: histogram totals {total}, expected {expect}")
    return dist


def _is_int(q):
    return q.denominator == 1


def moment_sums(pattern, n: int, upto: int, *, variant="std", solution=None) -> list:
    """Binomial moment sums S_m(n) = sum_T C(occ(T), m), m = 0..upto, exact.

    S_0 is the free-tree count; E[C(X, m)] = S_m / S_0 for a uniform random
    tree on n vertices.
    """
    pat = PatternSpec.of(pattern)
    if solution is None:
        solution = solve_pattern(pat, n, jets=upto + 1, variant=variant, check=False)
    ring = solution.ring
    if isinstance(ring, JetRing):
        if ring.J < upto + 1 or solution.order < n:
            raise PatternError("supplied solution is too short for these moments")
        coeff = solution.t[n]
        return [Fraction(coeff[m]) for m in range(upto + 1)]
    if isinstance(ring, UPolyRing):
        if ring.cap is not None or solution.order < n:
            raise PatternError("supplied solution is too short for these moments")
        from .rings import upoly_to_jet

        coeff = upoly_to_jet(solution.t[n], upto + 1)
        return [Fraction(c) for c in coeff]
    raise PatternError("moment sums need a jet or polynomial solution")


def write_distribution_csv(path, pattern, dists: dict):
    """dists: {n: {k: count}}; written as n,k,count rows sorted by (n, k)."""
    pat = PatternSpec.of(pattern)
    with open(path, "w") as fh:
        fh.write(f"# pattern {pat.i},{pat.j}\n")
        fh.write("n,occurrences,trees\n")
        for n in sorted(dists):
            for k in sorted(dists[n]):
                fh.write(f"{n},{k},{dists[n][k]}\n")


__all__ = [
    "PatternError",
    "PatternSpec",
    "SystemSolution",
    "solve_pattern",
    "verify_solution",
    "occurrence_distribution",
    "moment_sums",
    "write_distribution_csv",
]
