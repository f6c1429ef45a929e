"""Clique search, K_{r+1}-saturation verdicts with witnesses, and completion."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph_core import Graph, bits, is_split_star_shape, neighborhood_graph

Edge = tuple[int, int]


def _color_classes(rows: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy colouring of ``cand`` in index order; vertices returned by ascending colour."""
    order: list[int] = []
    colors: list[int] = []
    left = cand
    k = 0
    while left:
        k += 1
        q = left
        while q:
            v = (q & -q).bit_length() - 1
            order.append(v)
            colors.append(k)
            left &= ~(1 << v)
            q &= ~rows[v] & ~(1 << v)
    return order, colors


def _find_clique(rows: Sequence[int], need: int, cand: int) -> Optional[list[int]]:
    """Some ``need`` pairwise-adjacent vertices inside ``cand``, by colour-bounded branching."""
    if need <= 0:
        return []
    if cand.bit_count() < need:
        return None
    if need == 1:
        return [(cand & -cand).bit_length() - 1]
    if need == 2:
        for v in bits(cand):
            w = cand & rows[v]
            if w:
                return [v, (w & -w).bit_length() - 1]
        return None
    order, colors = _color_classes(rows, cand)
    for i in range(len(order) - 1, -1, -1):
        if colors[i] < need:
            return None
        v = order[i]
        sub = _find_clique(rows, need - 1, cand & rows[v])
        if sub is not None:
            return [v] + sub
        cand &= ~(1 << v)
    return None


class CliqueSearcher:
    """Branch-and-bound clique finder over a graph relabelled by descending degree.

    Relabelling happens once, so repeated searches (one per non-edge) share it.
    Ties in degree are broken by vertex index, which keeps certificates reproducible.
    """

    def __init__(self, g: Graph):
        self.g = g
        self.order = sorted(range(g.n), key=lambda u: (-g.degree(u), u))
        self.pos = [0] * g.n
        for i, u in enumerate(self.order):
            self.pos[u] = i
        self.rows = [self._to_local(g.rows[u]) for u in self.order]

    def _to_local(self, mask: int) -> int:
        out = 0
        for v in bits(mask):
            out |= 1 << self.pos[v]
        return out

    def find(self, s: int, within: Optional[int] = None) -> Optional[list[int]]:
        cand = self.g.full_mask if within is None else within
        found = _find_clique(self.rows, s, self._to_local(cand))
        if found is None:
            return None
        return sorted(self.order[i] for i in found)


def contains_clique(g: Graph, s: int, within: Optional[int] = None) -> Optional[list[int]]:
    """Return the vertices of some K_s in g (restricted to the ``within`` mask), else None."""
    if s < 1:
        raise ValueError("clique size must be at least 1")
    return CliqueSearcher(g).find(s, within)


def is_clique(g: Graph, vertices: Sequence[int]) -> bool:
    return all(g.has_edge(a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:])


@dataclass
class SaturationVerdict:
    """Outcome of a K_{r+1}-saturation test.

    ``non_edge_witnesses`` maps each non-edge to an (r-1)-clique in the common
    neighbourhood of its ends, or None when no such clique exists.
    """

    r: int
    is_free: bool
    violating_clique: Optional[list[int]]
    non_edge_witnesses: dict[Edge, Optional[list[int]]] = field(default_factory=dict)

    @property
    def is_saturated(self) -> bool:
        return self.is_free and all(w is not None for w in self.non_edge_witnesses.values())

    @property
    def failing_non_edges(self) -> list[Edge]:
        return [e for e, w in self.non_edge_witnesses.items() if w is None]

    def validate(self, g: Graph) -> bool:
        """Re-check every stored certificate against g."""
        if self.violating_clique is not None:
            if len(self.violating_clique) != self.r + 1 or not is_clique(g, self.violating_clique):
                return False
        for (u, v), w in self.non_edge_witnesses.items():
            if g.has_edge(u, v):
                return False
            if w is None:
                continue
            common = g.rows[u] & g.rows[v]
            if len(w) != self.r - 1 or not is_clique(g, w):
                return False
            if any(not common >> x & 1 for x in w):
                return False
        return True


def is_saturated(g: Graph, r: int) -> SaturationVerdict:
    """Test K_{r+1}-saturation, recording a witness K_{r-1} in N(u) & N(v) per non-edge."""
    if r < 2:
        raise ValueError(f"saturation parameter r must be >= 2, got {r}")
    if g.n <= r:
        raise ValueError(f"K_{r + 1}-saturation needs n > r, got n={g.n}")
    searcher = CliqueSearcher(g)
    violating = searcher.find(r + 1)
    witnesses = {}
    for u, v in g.non_edges():
        witnesses[(u, v)] = searcher.find(r - 1, g.rows[u] & g.rows[v])
    return SaturationVerdict(r=r, is_free=violating is None, violating_clique=violating,
                             non_edge_witnesses=witnesses)


def saturate(g: Graph, r: int, order: str = "lexicographic", seed: Optional[int] = None) -> Graph:
    """Add admissible non-edges in the given order until the graph is K_{r+1}-saturated.

    ``order`` is ``"lexicographic"`` or ``"random"`` (shuffled by ``random.Random(seed)``).
    Admissibility only shrinks as edges are added, so one pass over the order
    gives the same result as repeatedly restarting from the first admissible pair.
    """
    if contains_clique(g, r + 1) is not None:
        raise ValueError(f"input already contains K_{r + 1}")
    pairs = list(g.non_edges())
    if order == "random":
        random.Random(seed).shuffle(pairs)
    elif order != "lexicographic":
        raise ValueError(f"unknown edge order {order!r}")
    rows = list(g.rows)
    for u, v in pairs:
        if _find_clique(rows, r - 1, rows[u] & rows[v]) is None:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(g.n, tuple(rows))


def every_edge_in_clique(g: Graph, r: int) -> tuple[bool, Optional[Edge]]:
    """Whether every edge lies in a K_r; returns the first edge that does not."""
    if r < 2:
        raise ValueError("r must be >= 2")
    searcher = CliqueSearcher(g)
    for u, v in g.edges():
        common = g.rows[u] & g.rows[v]
        if common.bit_count() < r - 2 or searcher.find(r - 2, common) is None:
            return False, (u, v)
    return True, None


def min_degree_bound_holds(g: Graph, r: int) -> bool:
    """delta >= r - 1, and every vertex sits in some K_r."""
    if min(g.degrees, default=0) < r - 1:
        return False
    searcher = CliqueSearcher(g)
    return all(searcher.find(r - 1, g.rows[u]) is not None for u in range(g.n))


def neighborhood_equality_condition(g: Graph, r: int) -> tuple[bool, Optional[int]]:
    """Whether each G(u) is S_{d(u), r-2}; returns the first vertex where it fails."""
    if r < 2:
        raise ValueError("r must be >= 2")
    for u in range(g.n):
        sub, _ = neighborhood_graph(g, u)
        if not is_split_star_shape(sub, r - 2):
            return False, u
    return True, None
