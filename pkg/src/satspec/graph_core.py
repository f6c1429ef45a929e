"""Simple undirected graphs on bitset rows, extremal constructors and recognizers.

Vertices are the dense integers ``0..n-1``. Row ``u`` of the adjacency is a
Python ``int`` whose bit ``v`` is set iff ``{u, v}`` is an edge, so common
neighbourhoods, unions and degrees are single ``&``, ``|`` and
``bit_count`` operations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

MAX_ORDER = 1 << 16


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    degrees: tuple[int, ...]
    delta: int
    Delta: int
    connected: bool


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``rows[u]`` is the neighbourhood bitmask of ``u``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_ORDER:
            raise ValueError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match n")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.rows):
            if row & ~full or row >> u & 1:
                raise ValueError(f"row {u} has out-of-range bits or a self-loop")
            for v in bits(row):
                if not self.rows[v] >> u & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << u) for u in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def from_matrix(cls, a: np.ndarray) -> "Graph":
        a = np.asarray(a)
        n = a.shape[0]
        return cls.from_edges(n, ((int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(a, 1)))))

    def add_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``u`` becomes ``perm[u]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced_subgraph(self, vertices: Sequence[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph plus the new->old label map (``labels[i]`` is the old vertex)."""
        labels = tuple(vertices)
        index = {old: new for new, old in enumerate(labels)}
        rows = []
        for old in labels:
            row = 0
            for w in bits(self.rows[old]):
                j = index.get(w)
                if j is not None:
                    row |= 1 << j
            rows.append(row)
        return Graph(len(labels), tuple(rows)), labels

    # -- queries ----------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def neighbors(self, u: int) -> list[int]:
        return list(bits(self.rows[u]))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            for v in bits(row >> (u + 1)):
                yield u, u + 1 + v

    def non_edges(self) -> Iterator[tuple[int, int]]:
        full = self.full_mask
        for u, row in enumerate(self.rows):
            for v in bits((~row & full) >> (u + 1)):
                yield u, u + 1 + v

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def bfs_distances(self, source: int) -> list[int]:
        """Distances from ``source``; unreachable vertices get -1."""
        dist = [-1] * self.n
        dist[source] = 0
        seen = 1 << source
        frontier = 1 << source
        d = 0
        while frontier:
            d += 1
            nxt = 0
            for u in bits(frontier):
                nxt |= self.rows[u]
            nxt &= ~seen
            for v in bits(nxt):
                dist[v] = d
            seen |= nxt
            frontier = nxt
        return dist

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return -1 not in self.bfs_distances(0)

    def components(self) -> list[list[int]]:
        left = self.full_mask
        comps = []
        while left:
            s = (left & -left).bit_length() - 1
            dist = self.bfs_distances(s)
            comp = [v for v in range(self.n) if dist[v] >= 0]
            comps.append(comp)
            for v in comp:
                left &= ~(1 << v)
        return comps

    def diameter(self) -> Optional[int]:
        """Largest distance, or None when the graph is disconnected."""
        best = 0
        for u in range(self.n):
            dist = self.bfs_distances(u)
            if -1 in dist:
                return None
            best = max(best, max(dist))
        return best

    def girth(self) -> Optional[int]:
        """Length of a shortest cycle, or None for forests."""
        best = None
        for s in range(self.n):
            dist = [-1] * self.n
            parent = [-1] * self.n
            dist[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                if best is not None and 2 * dist[u] + 1 >= best:
                    break
                for v in bits(self.rows[u]):
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        q.append(v)
                    elif parent[u] != v:
                        length = dist[u] + dist[v] + 1
                        if best is None or length < best:
                            best = length
        return best

    def is_regular(self) -> bool:
        return len(set(self.degrees)) <= 1

    def stats(self) -> GraphStats:
        deg = self.degrees
        return GraphStats(
            n=self.n,
            m=sum(deg) // 2,
            degrees=deg,
            delta=min(deg, default=0),
            Delta=max(deg, default=0),
            connected=self.is_connected(),
        )

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- extremal families -----------------------------------------------------


def split_star_edge_count(n: int, r: int) -> int:
    return r * (r - 1) // 2 + r * (n - r)


def make_split_star(n: int, r: int) -> Graph:
    """S_{n,r}: vertices ``0..r-1`` form a clique joined to the independent set ``r..n-1``."""
    if not 0 <= r <= n:
        raise ValueError(f"split star needs 0 <= r <= n, got n={n}, r={r}")
    full = (1 << n) - 1
    core = (1 << r) - 1
    rows = tuple(full ^ (1 << u) if u < r else core for u in range(n))
    return Graph(n, rows)


def _hoffman_singleton() -> Graph:
    # pentagons P_h at 5h+i, pentagrams Q_k at 25+5k+j; P_h[i] ~ Q_k[(h*k + i) % 5]
    edges = []
    for h in range(5):
        for i in range(5):
            edges.append((5 * h + i, 5 * h + (i + 1) % 5))
            edges.append((25 + 5 * h + i, 25 + 5 * h + (i + 2) % 5))
    for h in range(5):
        for k in range(5):
            for i in range(5):
                edges.append((5 * h + i, 25 + 5 * k + (h * k + i) % 5))
    return Graph.from_edges(50, edges)


def _petersen() -> Graph:
    pairs = list(combinations(range(1, 6), 2))
    return Graph.from_edges(
        10,
        ((a, b) for a, b in combinations(range(10), 2) if not set(pairs[a]) & set(pairs[b])),
    )


MOORE_KINDS = ("C5", "Petersen", "HoffmanSingleton")


def make_moore(kind: str) -> Graph:
    """One of the three known Moore graphs of diameter 2, validated on construction."""
    if kind == "C5":
        g, k = Graph.cycle(5), 2
    elif kind == "Petersen":
        g, k = _petersen(), 3
    elif kind == "HoffmanSingleton":
        g, k = _hoffman_singleton(), 7
    else:
        raise ValueError(f"unknown Moore graph {kind!r}; expected one of {MOORE_KINDS}")
    if not is_moore_d2(g) or g.degree(0) != k:
        raise AssertionError(f"construction of {kind} failed its invariants")
    return g


def is_moore_d2(g: Graph) -> bool:
    """k-regular, n = k^2 + 1, diameter 2 and girth 5."""
    if g.n < 2 or not g.is_regular():
        return False
    k = g.degree(0)
    return g.n == k * k + 1 and g.diameter() == 2 and g.girth() == 5


# -- recognizers -----------------------------------------------------------


def neighborhood_graph(g: Graph, u: int) -> tuple[Graph, tuple[int, ...]]:
    """G(u), the subgraph induced by N(u), with its new->old label map."""
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} out of range")
    return g.induced_subgraph(list(bits(g.rows[u])))


def is_split_star_shape(g: Graph, r: int) -> bool:
    """Decide g ~= S_{n,r} from dominating vertices, without an isomorphism search."""
    n = g.n
    if not 0 <= r <= n:
        return False
    if n - r <= 1:
        return g.m == n * (n - 1) // 2
    dominating = 0
    for u, row in enumerate(g.rows):
        if row.bit_count() == n - 1:
            dominating |= 1 << u
    if dominating.bit_count() != r:
        return False
    rest = g.full_mask & ~dominating
    return all(g.rows[u] & rest == 0 for u in bits(rest))


def find_induced_k3pp(g: Graph) -> Optional[tuple[int, int, int]]:
    """A triple (u, v, w) with uv the only edge among them, or None.

    None exactly when g is complete multipartite.
    """
    full = g.full_mask
    for u, v in g.edges():
        common_non = ~g.rows[u] & ~g.rows[v] & full & ~(1 << u) & ~(1 << v)
        if common_non:
            return u, v, (common_non & -common_non).bit_length() - 1
    return None
