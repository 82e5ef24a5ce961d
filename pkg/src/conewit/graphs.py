"""Simple undirected graphs on ``{0, ..., n-1}``.

Graphs serve two roles: sparsity patterns of matrices (``graph_of_matrix``)
and labels of faces of the bipartite state cone. Vertices are 0-indexed in
code; ``one_indexed`` renders them 1-indexed for human output.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from conewit.errors import BadVertexSet, InvariantViolation, TooLarge
from conewit.matcore import DEFAULT_TOL, Tolerance, _require_square, as_matrix, scale

MAX_CLIQUE_VERTICES = 64


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise InvariantViolation("vertex count must be non-negative")
        for e in self.edges:
            i, j = e
            if i == j:
                raise InvariantViolation(f"self-loop at {i}")
            if not (0 <= i < j < self.n):
                raise InvariantViolation(f"edge {e} must be (i, j) with 0 <= i < j < n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        canon = set()
        for e in edges:
            i, j = e
            i, j = int(i), int(j)
            if i == j:
                raise InvariantViolation(f"self-loop at {i}")
            canon.add((min(i, j), max(i, j)))
        return cls(n, frozenset(canon))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return nbrs

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1
        return a

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def one_indexed(vertices: Iterable[int]) -> list[int]:
    return [v + 1 for v in vertices]


def graph_of_matrix(x, tol: Tolerance = DEFAULT_TOL) -> Graph:
    """Edge ``{i, j}`` whenever ``|X_ij| |X_ji|`` clears the zero floor."""
    x = as_matrix(x)
    _require_square(x)
    n = x.shape[0]
    thr = (tol.zero_eps * scale(x)) ** 2
    prod = np.abs(x) * np.abs(x.T)
    iu, ju = np.triu_indices(n, k=1)
    mask = prod[iu, ju] > thr
    return Graph(n, frozenset(zip(iu[mask].tolist(), ju[mask].tolist())))


def max_cardinality_search(g: Graph) -> list[int]:
    """Vertices in the order MCS visits them (reverse is a PEO iff chordal)."""
    nbrs = g.neighbors()
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not visited[u]), key=lambda u: (weight[u], -u))
        visited[v] = True
        order.append(v)
        for u in nbrs[v]:
            if not visited[u]:
                weight[u] += 1
    return order


def peo_violation(g: Graph, order: list[int]) -> tuple[int, int, int] | None:
    """First ``(v, u, w)`` where ``u, w`` are later non-adjacent neighbours of ``v``."""
    pos = {v: k for k, v in enumerate(order)}
    nbrs = g.neighbors()
    for v in order:
        later = sorted((u for u in nbrs[v] if pos[u] > pos[v]), key=pos.__getitem__)
        for u, w in combinations(later, 2):
            if not g.has_edge(u, w):
                return v, u, w
    return None


def is_chordal(g: Graph) -> tuple[bool, list[int] | None]:
    """Chordality via maximum-cardinality search; returns the verified elimination order."""
    order = list(reversed(max_cardinality_search(g)))
    if peo_violation(g, order) is None:
        return True, order
    return False, None


def is_triangle_free(g: Graph) -> bool:
    a = g.adjacency()
    return int(np.trace(a @ a @ a)) == 0


def maximal_cliques(g: Graph) -> list[list[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting on bitsets), sorted."""
    if g.n > MAX_CLIQUE_VERTICES:
        raise TooLarge(f"maximal_cliques supports n <= {MAX_CLIQUE_VERTICES}, got {g.n}")
    masks = [0] * g.n
    for i, j in g.edges:
        masks[i] |= 1 << j
        masks[j] |= 1 << i
    out: list[list[int]] = []

    def bits(m: int) -> Iterator[int]:
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(sorted(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: bin(p & masks[u]).count("1"))
        for v in list(bits(p & ~masks[pivot])):
            expand(r | (1 << v), p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, (1 << g.n) - 1, 0)
    return sorted(out)


def is_induced_cycle(g: Graph, cycle: list[int]) -> bool:
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for a in range(k):
        for b in range(a + 1, k):
            consecutive = b == a + 1 or (a == 0 and b == k - 1)
            if g.has_edge(cycle[a], cycle[b]) != consecutive:
                return False
    return True


def _cycle_through(g: Graph, nbrs: list[set[int]], v: int, u: int, w: int) -> list[int] | None:
    # shortest u-w path avoiding v and v's other neighbours closes an induced cycle
    blocked = (nbrs[v] | {v}) - {u, w}
    prev = {u: -1}
    queue = deque([u])
    while queue:
        a = queue.popleft()
        if a == w:
            break
        for b in sorted(nbrs[a]):
            if b not in prev and b not in blocked:
                prev[b] = a
                queue.append(b)
    if w not in prev:
        return None
    path = [w]
    while path[-1] != u:
        path.append(prev[path[-1]])
    return [v] + path[::-1]


def iter_chordless_cycles(g: Graph) -> Iterator[list[int]]:
    """Yield induced cycles of length >= 4, one per distinct vertex set found.

    Every non-chordal graph yields at least one; the search is polynomial and
    not exhaustive.
    """
    nbrs = g.neighbors()
    seen: set[frozenset[int]] = set()
    start = []
    ok, _ = is_chordal(g)
    if ok:
        return
    order = list(reversed(max_cardinality_search(g)))
    hint = peo_violation(g, order)
    if hint is not None:
        start.append(hint)
    triples = start + [
        (v, u, w)
        for v in range(g.n)
        for u, w in combinations(sorted(nbrs[v]), 2)
        if not g.has_edge(u, w)
    ]
    for v, u, w in triples:
        cyc = _cycle_through(g, nbrs, v, u, w)
        if cyc is None:
            continue
        key = frozenset(cyc)
        if key in seen:
            continue
        seen.add(key)
        yield _canonical_cycle(cyc)


def _canonical_cycle(cyc: list[int]) -> list[int]:
    k = cyc.index(min(cyc))
    rot = cyc[k:] + cyc[:k]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    return rot


def find_chordless_cycle(g: Graph) -> list[int] | None:
    """An induced cycle of length >= 4 if ``g`` is not chordal, else ``None``."""
    for cyc in iter_chordless_cycles(g):
        if not is_induced_cycle(g, cyc):
            raise AssertionError(f"internal error: {cyc} is not an induced cycle")
        return cyc
    return None


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on ``vertices``, relabelled to ``0..k-1`` in sorted order."""
    vs = sorted(set(int(v) for v in vertices))
    if any(v < 0 or v >= g.n for v in vs):
        raise BadVertexSet(f"vertex set {vs} not contained in [0, {g.n})")
    pos = {v: k for k, v in enumerate(vs)}
    return Graph(
        len(vs),
        frozenset((pos[i], pos[j]) for i, j in g.edges if i in pos and j in pos),
    )


def is_subgraph(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.edges <= h.edges


def triangle_free_induced_subsets(g: Graph, max_vertices: int = 12) -> Iterator[list[int]]:
    """Every vertex subset (size >= 4) whose induced subgraph is triangle-free and has a cycle.

    Subsets without a cycle induce forests, which are chordal and can never
    witness anything, so they are skipped.
    """
    if g.n > max_vertices:
        raise TooLarge(f"exhaustive subgraph mode is capped at {max_vertices} vertices")
    for k in range(4, g.n + 1):
        for sub in combinations(range(g.n), k):
            h = induced_subgraph(g, sub)
            if is_triangle_free(h) and not is_chordal(h)[0]:
                yield list(sub)
