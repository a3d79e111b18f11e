"""Labeled simple graphs stored as bitrows, plus the vertex-level constructions
used throughout the package: complement, vertex deletion, overgraphs, rooted
splitting, brute-force canonical forms and decks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

MAX_VERTICES = 64
MAX_CANONICAL_VERTICES = 10


@dataclass(frozen=True, order=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Bit ``j`` of ``rows[i]`` is the adjacency entry ``A[i][j]``.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one bitrow per vertex")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r < 0 or r & ~full:
                raise ValueError(f"row {i} has bits outside the vertex range")
            if (r >> i) & 1:
                raise ValueError(f"loop at vertex {i}")
            for j in range(i + 1, self.n):
                if ((r >> j) & 1) != ((self.rows[j] >> i) & 1):
                    raise ValueError(f"asymmetric entry ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_adjacency(cls, adj: Sequence[Sequence[int]]) -> Graph:
        n = len(adj)
        rows = []
        for i, line in enumerate(adj):
            if len(line) != n:
                raise ValueError("adjacency matrix must be square")
            r = 0
            for j, a in enumerate(line):
                if a not in (0, 1):
                    raise ValueError(f"entry ({i}, {j}) is not 0/1")
                if a:
                    r |= 1 << j
            rows.append(r)
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        r = self.rows[v]
        return [j for j in range(self.n) if (r >> j) & 1]

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    @property
    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.has_edge(i, j)]

    def adjacency(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def to_numpy(self):
        import numpy as np

        return np.array(self.adjacency(), dtype=float).reshape(self.n, self.n)

    def permute(self, order: Sequence[int]) -> Graph:
        """Relabel so that new vertex ``i`` is old vertex ``order[i]``."""
        if sorted(order) != list(range(self.n)):
            raise ValueError("order must be a permutation of the vertices")
        pos = {old: new for new, old in enumerate(order)}
        rows = []
        for old in order:
            r = self.rows[old]
            nr = 0
            for j in range(self.n):
                if (r >> j) & 1:
                    nr |= 1 << pos[j]
            rows.append(nr)
        return Graph(self.n, tuple(rows))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise ValueError(f"root {self.root} outside [0, {self.graph.n})")

    def root_last(self) -> RootedGraph:
        """The same rooted graph with the root moved to the highest index."""
        g, r = self.graph, self.root
        order = [v for v in range(g.n) if v != r] + [r]
        return RootedGraph(g.permute(order), g.n - 1)


# small named graphs

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    rows = g.rows + tuple(r << g.n for r in h.rows)
    return Graph(g.n + h.n, rows)


# constructions

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(g.rows)))


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} outside [0, {g.n})")
    low = (1 << v) - 1
    rows = []
    for i, r in enumerate(g.rows):
        if i != v:
            rows.append((r & low) | ((r >> (v + 1)) << v))
    return Graph(g.n - 1, tuple(rows))


def overgraph(g: Graph, b: Sequence[int]) -> Graph:
    """Add vertex ``g.n`` adjacent exactly to ``{i : b[i] = 1}``."""
    if len(b) != g.n:
        raise ValueError(f"neighborhood vector has dimension {len(b)}, expected {g.n}")
    if any(x not in (0, 1) for x in b):
        raise ValueError("neighborhood vector must be 0/1")
    new = g.n
    rows = [r | (int(b[i]) << new) for i, r in enumerate(g.rows)]
    rows.append(sum(1 << i for i, x in enumerate(b) if x))
    return Graph(g.n + 1, tuple(rows))


def cone(g: Graph) -> Graph:
    return overgraph(g, [1] * g.n)


def split_root(rg: RootedGraph) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(G - root, b)`` with ``b`` the root's neighborhood in ``G - root``.

    ``overgraph(*split_root(rg))`` equals ``rg.root_last().graph``.
    """
    g, r = rg.graph, rg.root
    if g.n < 1:
        raise ValueError("cannot split the empty graph")
    b = tuple(int(g.has_edge(r, v)) for v in range(g.n) if v != r)
    return delete_vertex(g, r), b


# isomorphism on small graphs

def _twins(g: Graph, u: int, v: int) -> bool:
    mask = ~((1 << u) | (1 << v))
    return (g.rows[u] & mask) == (g.rows[v] & mask)


@lru_cache(maxsize=None)
def canonical_order(g: Graph) -> tuple[int, ...]:
    """The vertex order whose relabeling gives :func:`canonical_form`.

    Bits are read column by column over the upper triangle (graph6 order) and
    the lexicographically smallest string wins. The search extends every
    partial order that still ties for the smallest prefix; swapping two
    unused twins is an automorphism fixing the prefix, so only the lower
    twin is tried.
    """
    n = g.n
    if n > MAX_CANONICAL_VERTICES:
        raise ValueError(f"brute-force canonical form limited to n <= {MAX_CANONICAL_VERTICES}")
    if n == 0:
        return ()
    rows = g.rows
    frontier: list[tuple[int, ...]] = [()]
    for k in range(n):
        best = None
        nxt: list[tuple[int, ...]] = []
        for part in frontier:
            used = 0
            for p in part:
                used |= 1 << p
            tried: list[int] = []
            for v in range(n):
                if (used >> v) & 1:
                    continue
                if any(_twins(g, u, v) for u in tried):
                    continue
                tried.append(v)
                col = 0
                rv = rows[v]
                for p in part:
                    col = (col << 1) | ((rv >> p) & 1)
                if best is None or col < best:
                    best = col
                    nxt = [part + (v,)]
                elif col == best:
                    nxt.append(part + (v,))
        frontier = nxt
    return frontier[0]


def canonical_form(g: Graph) -> Graph:
    """Canonical representative of the isomorphism class of ``g`` (n <= 10)."""
    return g.permute(canonical_order(g))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges == h.num_edges and canonical_form(g) == canonical_form(h)


def deck(g: Graph) -> Counter:
    """Multiset of canonical vertex-deleted subgraphs."""
    if g.n < 1:
        raise ValueError("the empty graph has no deck")
    if g.n > MAX_CANONICAL_VERTICES:
        raise ValueError(f"decks limited to n <= {MAX_CANONICAL_VERTICES}")
    return Counter(canonical_form(delete_vertex(g, v)) for v in range(g.n))
