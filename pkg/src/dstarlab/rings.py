"""Coefficient rings for the truncated series engine.

A series in x carries one coefficient per power of x; the *ring* decides what
a coefficient is:

* ``RAT``          -- a plain rational.  This is the univariate track, which is
                      also exactly the u = 1 evaluation of the bivariate one.
* ``UPolyRing``    -- a dense polynomial in the marking variable u (tuple of
                      rationals indexed by the u-exponent).  Full bivariate
                      track; feasible up to x-order a few hundred.
* ``JetRing(J)``   -- a truncated Taylor jet of length J in eps = u - 1.
                      Component m of a counting series' coefficient equals
                      sum_k binom(k, m) c_{n,k}, i.e. the m-th binomial-moment
                      sum, which is all that mean/variance/skewness need.  The
                      jet track scales to x-orders around a thousand.

All three expose the same small protocol (add/sub/mul/scale, u -> u^m
substitution, u^k as an element) so the solver and the series ops are written
once.  Elements are immutable; rings are stateless singletons apart from the
UPoly cap and the jet length.
"""

from __future__ import annotations

from math import comb

from ._rat import Q, QONE, QZERO, as_fraction, is_integral


class RatRing:
    """Rationals; the u variable is identified with 1."""

    name = "rat"

    zero = QZERO
    one = QONE

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, a, q):
        return a * q

    def from_rational(self, q):
        return Q(q)

    def u_substitute(self, a, m):
        return a

    def u_power(self, k):
        return QONE

    def is_zero(self, a):
        return not a

    def is_integral(self, a):
        return is_integral(a)

    def u1(self, a):
        return a

    def dump(self, a):
        return str(a)

    def load(self, s):
        from ._rat import parse_rat

        return parse_rat(s)


RAT = RatRing()


def _trim(t):
    n = len(t)
    while n and not t[n - 1]:
        n -= 1
    return t[:n]


class UPolyRing:
    """Dense polynomials in u over the rationals.

    ``cap`` (optional) truncates every result at u-degree <= cap; with
    cap=None nothing is dropped.  The zero element is the empty tuple.
    """

    name = "upoly"

    zero = ()
    one = (QONE,)

    def __init__(self, cap=None):
        self.cap = cap

    def _capped(self, t):
        if self.cap is not None and len(t) > self.cap + 1:
            t = t[: self.cap + 1]
        return _trim(t)

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return _trim(tuple(out))

    def sub(self, a, b):
        out = list(a) + [QZERO] * (len(b) - len(a))
        for k, c in enumerate(b):
            out[k] = out[k] - c
        return _trim(tuple(out))

    def neg(self, a):
        return tuple(-c for c in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [QZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] += ai * bj
        return self._capped(tuple(out))

    def scale(self, a, q):
        if not q:
            return ()
        return _trim(tuple(c * q for c in a))

    def from_rational(self, q):
        q = Q(q)
        return (q,) if q else ()

    def u_substitute(self, a, m):
        """u -> u^m: spreads exponent k to k*m."""
        if m == 1 or not a:
            return a
        out = [QZERO] * ((len(a) - 1) * m + 1)
        for k, c in enumerate(a):
            if c:
                out[k * m] = c
        return self._capped(tuple(out))

    def u_power(self, k):
        return self._capped((QZERO,) * k + (QONE,))

    def is_zero(self, a):
        return not a

    def is_integral(self, a):
        return all(is_integral(c) for c in a)

    def u1(self, a):
        s = QZERO
        for c in a:
            s += c
        return s

    def dump(self, a):
        return [str(c) for c in a]

    def load(self, v):
        from ._rat import parse_rat

        return _trim(tuple(parse_rat(s) for s in v))


class JetRing:
    """Truncated jets in eps = u - 1 of fixed length J (eps^J == 0).

    The basepoint u = 1 makes the bookkeeping for the (1 - u) correction
    terms of the dissymmetry identities exact: (1 - u) is just -eps.
    """

    name = "jet"

    def __init__(self, J):
        if J < 1:
            raise ValueError("jet length must be >= 1")
        self.J = J
        self.zero = (QZERO,) * J
        self.one = (QONE,) + (QZERO,) * (J - 1)
        self._sub_tables = {}

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        J = self.J
        out = [QZERO] * J
        for i in range(J):
            ai = a[i]
            if ai:
                for j in range(J - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        return tuple(out)

    def scale(self, a, q):
        return tuple(c * q for c in a)

    def from_rational(self, q):
        return (Q(q),) + (QZERO,) * (self.J - 1)

    def _table(self, m):
        """Powers of eps_m = (1+eps)^m - 1, for composing jets under u -> u^m."""
        tab = self._sub_tables.get(m)
        if tab is None:
            em = tuple(Q(comb(m, s)) for s in range(self.J))
            em = (QZERO,) + em[1:]  # drop the constant term: (1+eps)^m - 1
            tab = [self.one]
            acc = self.one
            for _ in range(1, self.J):
                acc = self.mul(acc, em)
                tab.append(acc)
            self._sub_tables[m] = tab
        return tab

    def u_substitute(self, a, m):
        if m == 1:
            return a
        tab = self._table(m)
        out = [QZERO] * self.J
        for t, c in enumerate(a):
            if c:
                base = tab[t]
                for s in range(self.J):
                    bs = base[s]
                    if bs:
                        out[s] += c * bs
        return tuple(out)

    def u_power(self, k):
        return tuple(Q(comb(k, s)) for s in range(self.J))

    def is_zero(self, a):
        return not any(a)

    def is_integral(self, a):
        return all(is_integral(c) for c in a)

    def u1(self, a):
        return a[0]

    def dump(self, a):
        return [str(c) for c in a]

    def load(self, v):
        from ._rat import parse_rat

        t = tuple(parse_rat(s) for s in v)
        if len(t) != self.J:
            raise ValueError("jet length mismatch")
        return t


def upoly_to_jet(a, J):
    """Collapse a u-polynomial to a length-J jet at u = 1.

    Component m is sum_k binom(k, m) a_k: substituting u = 1 + eps and
    expanding.  For a counting coefficient this is the m-th binomial-moment
    sum of the occurrence distribution at that x-order.
    """
    out = [QZERO] * J
    for k, c in enumerate(a):
        if c:
            for m in range(min(k, J - 1) + 1):
                out[m] += c * comb(k, m)
    return tuple(out)


def ring_signature(ring) -> str:
    if isinstance(ring, JetRing):
        return f"jet{ring.J}"
    if isinstance(ring, UPolyRing):
        return "upoly" if ring.cap is None else f"upoly_cap{ring.cap}"
    return "rat"


__all__ = [
    "RAT",
    "RatRing",
    "UPolyRing",
    "JetRing",
    "upoly_to_jet",
    "ring_signature",
    "as_fraction",
]
