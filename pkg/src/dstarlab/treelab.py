"""Exhaustive unlabeled-tree enumeration and small-graph metrics.

Trees are handled as canonical level sequences: the root at level 0, each
vertex listed in preorder, children blocks sorted in non-increasing
lexicographic order.  ``gen_rooted_seqs`` walks all canonical sequences in
decreasing lexicographic order by the classic constant-amortized-time
successor step (Beyer-Hedetniemi).  ``gen_free_trees`` filters that walk down
to one representative per free tree by keeping only sequences rooted at a
center, with a deterministic tie-break for bicentral trees
(Wright-Richmond-Odlyzko-McKay style).

Everything here is independent of the generating-function machinery; the two
sides are cross-checked in the tests.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class TreeError(ValueError):
    pass


class DisconnectedGraphError(TreeError):
    pass


# -- canonical level sequences ---------------------------------------


def _bh_successor(seq):
    """Next canonical rooted sequence in decreasing lex order, or None.

    Truncate at the last vertex p of level >= 2, and tile the segment from
    p's parent onward until the length is restored.
    """
    p = len(seq) - 1
    while p >= 0 and seq[p] < 2:
        p -= 1
    if p < 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    n = len(seq)
    out = list(seq[:p])
    block = seq[q:p]
    while len(out) < n:
        out.extend(block[: n - len(out)])
    return out


def _first_block_end(seq):
    i = 2
    n = len(seq)
    while i < n and seq[i] != 1:
        i += 1
    return i


def _is_free_canonical(seq):
    """Is this rooted sequence the canonical representative of its free tree?

    The canonical first subtree is the tallest, so with h1 its height and h2
    the height of the rest: h2 == h1 means the root is the unique center;
    h2 == h1 - 1 means the tree is bicentral (the other center is the first
    child) and the lex comparison of the two halves breaks the tie;
    anything less means the center lies deeper inside the first subtree.
    """
    n = len(seq)
    if n <= 2:
        return True
    i = _first_block_end(seq)
    h1 = max(seq[1:i])
    h2 = max(seq[i:], default=0)
    if h2 == h1:
        return True
    if h2 != h1 - 1:
        return False
    a = tuple(v - 1 for v in seq[1:i])
    b = (0,) + tuple(seq[i:])
    return a <= b


def gen_rooted_seqs(n):
    """All canonical rooted level sequences on n vertices, decreasing lex."""
    if n < 1:
        return
    seq = list(range(n))
    while seq is not None:
        yield tuple(seq)
        seq = _bh_successor(seq)


def gen_free_trees(n):
    """One FreeTree per unlabeled free tree on n vertices.

    Starts from the path rooted at its center (the lex-largest sequence that
    can pass the center filter) rather than the full path.
    """
    if n < 1:
        return
    if n <= 2:
        yield FreeTree(tuple(range(n)))
        return
    seq = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        if _is_free_canonical(seq):
            yield FreeTree(tuple(seq))
        seq = _bh_successor(seq)


def count_rooted_trees(n, method="series"):
    if method == "enumerate":
        return sum(1 for _ in gen_rooted_seqs(n))
    from .pseries import planted_series

    return int(planted_series(n)[n])


def count_free_trees(n, method="series"):
    if method == "enumerate":
        return sum(1 for _ in gen_free_trees(n))
    from .pseries import free_series

    return int(free_series(n)[n])


def _canon_rooted(adj, root, parent):
    blocks = sorted(
        (_canon_rooted(adj, c, root) for c in adj[root] if c != parent), reverse=True
    )
    out = [0]
    for b in blocks:
        out.extend(v + 1 for v in b)
    return tuple(out)


def _centers(n, adj):
    """Leaf peeling; one or two centers."""
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def canonical_free_seq(n, edges):
    """Canonical level sequence of the free tree given by an edge list."""
    if n == 1:
        if list(edges):
            raise TreeError("one vertex admits no edges")
        return (0,)
    edges = list(edges)
    if len(edges) != n - 1:
        raise TreeError(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
    adj = [[] for _ in range(n)]
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise TreeError(f"bad edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise TreeError(f"duplicate edge ({u}, {v})")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    # n-1 edges and no duplicates; connectivity still needs a check
    stack, reached = [0], {0}
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != n:
        raise DisconnectedGraphError("edge list is not connected")
    cands = {_canon_rooted(adj, c, -1) for c in _centers(n, adj)}
    keep = [s for s in cands if _is_free_canonical(list(s))]
    if len(keep) != 1:
        raise TreeError("center filter did not single out a representative")
    return keep[0]


def _validate_seq(seq):
    if not seq or seq[0] != 0:
        raise TreeError("level sequence must start at level 0")
    for k in range(1, len(seq)):
        if seq[k] < 1 or seq[k] > seq[k - 1] + 1:
            raise TreeError(f"level jump at position {k}")


@dataclass(frozen=True)
class FreeTree:
    """A free tree held as its canonical level sequence."""

    level_seq: tuple

    def __post_init__(self):
        _validate_seq(self.level_seq)

    @classmethod
    def from_edges(cls, n, edges):
        return cls(canonical_free_seq(n, edges))

    @property
    def n(self):
        return len(self.level_seq)

    def parents(self):
        """parent[k] for each vertex in sequence order; parent[0] = -1."""
        seq = self.level_seq
        par = [-1] * len(seq)
        stack = [0]
        for k in range(1, len(seq)):
            del stack[seq[k] :]
            par[k] = stack[-1]
            stack.append(k)
        return par

    def edges(self):
        par = self.parents()
        return [(par[k], k) for k in range(1, self.n)]

    def degrees(self):
        deg = [0] * self.n
        for u, v in self.edges():
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree_profile(self) -> Counter:
        """Counter of unordered endpoint-degree pairs over the edges."""
        deg = self.degrees()
        return Counter((min(deg[u], deg[v]), max(deg[u], deg[v])) for u, v in self.edges())

    def pattern_count(self, i, j) -> int:
        """Edges whose endpoints have degrees {i, j}."""
        lo, hi = min(i, j), max(i, j)
        return self.degree_profile().get((lo, hi), 0)

    def adjacency(self):
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges():
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def wiener(self) -> int:
        """Sum of distances over unordered pairs, exactly."""
        adj = self.adjacency()
        n = self.n
        total = 0
        for s in range(n):
            dist = [-1] * n
            dist[s] = 0
            queue = [s]
            for v in queue:
                for w in adj[v]:
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        queue.append(w)
            # later vertices only, so each pair enters once
            total += sum(dist[s + 1 :])
        return total

    def avg_distance_exact(self) -> Fraction:
        if self.n < 2:
            raise TreeError("average distance needs at least two vertices")
        return Fraction(self.wiener(), math.comb(self.n, 2))

    def randic(self, alpha: float = -0.5) -> float:
        deg = self.degrees()
        return math.fsum((deg[u] * deg[v]) ** alpha for u, v in self.edges())

    def to_graph(self) -> "SimpleGraph":
        return SimpleGraph(self.n, self.edges())


def tree_wiener_mean(n) -> Fraction:
    """Mean Wiener index over all free trees on n vertices, exact."""
    total, count = 0, 0
    for t in gen_free_trees(n):
        total += t.wiener()
        count += 1
    return Fraction(total, count)


# -- general simple graphs -------------------------------------------


class SimpleGraph:
    """Undirected simple graph: vertex count plus a sorted (u < v) edge array."""

    def __init__(self, n, edges):
        self.n = int(n)
        arr = np.asarray(list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise TreeError("edges must be pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= self.n):
            raise TreeError("edge endpoint out of range")
        if arr.size and (arr[:, 0] == arr[:, 1]).any():
            raise TreeError("loops are not allowed")
        lo = arr.min(axis=1)
        hi = arr.max(axis=1)
        arr = np.unique(np.stack([lo, hi], axis=1), axis=0)
        self.edges = arr

    @property
    def m(self):
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.edges[:, 0], 1)
        np.add.at(deg, self.edges[:, 1], 1)
        return deg

    def _adjacency_f32(self):
        a = np.zeros((self.n, self.n), dtype=np.float32)
        a[self.edges[:, 0], self.edges[:, 1]] = 1.0
        a[self.edges[:, 1], self.edges[:, 0]] = 1.0
        return a

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        a = self._adjacency_f32()
        reach = np.zeros(self.n, dtype=bool)
        reach[0] = True
        frontier = reach.astype(np.float32)
        while True:
            nxt = (a @ frontier > 0.5) & ~reach
            if not nxt.any():
                break
            reach |= nxt
            frontier = nxt.astype(np.float32)
        return bool(reach.all())

    def avg_distance(self) -> float:
        """Mean distance over unordered pairs; dense matmul reach levels.

        One n^3 multiply per distance level, so this is meant for graphs of
        small diameter (random graphs) or small n.
        """
        n = self.n
        if n < 2:
            raise TreeError("average distance needs at least two vertices")
        a = self._adjacency_f32()
        reach = a > 0.5
        np.fill_diagonal(reach, True)
        dist = a.astype(np.float64)
        d = 1
        while not reach.all():
            d += 1
            if d > n:
                raise DisconnectedGraphError("graph is not connected")
            grown = ((reach.astype(np.float32) @ a) > 0.5)
            new = grown & ~reach
            dist[new] = d
            reach |= new
        return float(dist.sum(dtype=np.float64) / (n * (n - 1)))

    def randic(self, alpha: float = -0.5) -> float:
        deg = self.degrees()
        du = deg[self.edges[:, 0]].astype(np.float64)
        dv = deg[self.edges[:, 1]].astype(np.float64)
        return float(((du * dv) ** alpha).sum())

    def randic_exact(self, dps: int = 50):
        """Randic index (alpha = -1/2) as an mpmath float at dps digits."""
        import mpmath

        deg = self.degrees()
        with mpmath.workdps(dps):
            s = mpmath.mpf(0)
            for u, v in self.edges:
                s += 1 / mpmath.sqrt(int(deg[u]) * int(deg[v]))
            return +s


def gnp_sample(n, p, seed) -> SimpleGraph:
    """Erdos-Renyi G(n, p) draw; seed may be an int, SeedSequence or Generator."""
    if isinstance(seed, np.random.Generator):
        rng = seed
    else:
        rng = np.random.Generator(np.random.PCG64(seed))
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    return SimpleGraph(n, np.stack([iu[keep], ju[keep]], axis=1))


# -- exchange format -------------------------------------------------


def pattern_histograms(n_max: int, patterns) -> dict:
    """Occurrence histograms {(i,j): {n: {k: trees}}} in one enumeration pass.

    Ground truth for the generating-function route: every free tree up to
    n_max is generated once and its degree profile feeds all patterns.
    """
    pats = [(min(p), max(p)) for p in patterns]
    out = {p: {} for p in pats}
    for n in range(1, n_max + 1):
        hists = {p: {} for p in pats}
        for t in gen_free_trees(n):
            prof = t.degree_profile()
            for p in pats:
                k = prof.get(p, 0)
                hists[p][k] = hists[p].get(k, 0) + 1
        for p in pats:
            out[p][n] = hists[p]
    return out


def write_level_seqs(path, trees):
    with open(path, "w") as fh:
        for t in trees:
            fh.write(" ".join(map(str, t.level_seq)) + "\n")


def read_level_seqs(path):
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            out.append(FreeTree(tuple(int(tok) for tok in line.split())))
    return out


def write_edge_list(path, tree: FreeTree):
    with open(path, "w") as fh:
        for u, v in tree.edges():
            fh.write(f"{u} {v}\n")


__all__ = [
    "TreeError",
    "DisconnectedGraphError",
    "FreeTree",
    "SimpleGraph",
    "gen_rooted_seqs",
    "gen_free_trees",
    "count_rooted_trees",
    "count_free_trees",
    "canonical_free_seq",
    "tree_wiener_mean",
    "gnp_sample",
    "pattern_histograms",
    "write_level_seqs",
    "read_level_seqs",
    "write_edge_list",
]
