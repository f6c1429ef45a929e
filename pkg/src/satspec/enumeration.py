"""Exhaustive and sampled K_{r+1}-saturated graphs, deduplicated up to isomorphism.

Labelled graphs on n <= 8 vertices are handled as integer codes (see
:mod:`satspec.graph6`) in numpy arrays. The labelled space is grown one edge
slot at a time in graph6 column order; a branch that completes a K_{r+1}
inside the already-decided columns is dropped together with all of its
extensions. Survivors are filtered for saturation and grouped into
isomorphism classes by applying all n! vertex permutations to one member.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Optional

import numpy as np

from .cliques import is_saturated, saturate
from .graph_core import Graph, is_moore_d2, is_split_star_shape
from .graph6 import code_of, encode, graph_from_code, pair_count
from .spectral import eig_sym, spectral_radii

EXHAUSTIVE_MAX_N = 7
OPT_IN_MAX_N = 8
SHARD_SLOTS = 6
RHO_TOL = 1e-8


@dataclass
class EnumerationRecord:
    n: int
    r: int
    canonical_g6: str
    rho: float
    is_split_star: bool
    is_moore_d2: bool
    edge_count: int
    source: str = "exhaustive"
    reports: list = field(default_factory=list, repr=False, compare=False)

    @property
    def graph(self):
        from .graph6 import decode
        return decode(self.canonical_g6)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "canonical_g6": self.canonical_g6,
            "rho": self.rho,
            "is_split_star": self.is_split_star,
            "is_moore_d2": self.is_moore_d2,
            "edge_count": self.edge_count,
            "source": self.source,
        }


# -- slot bookkeeping -------------------------------------------------------


@lru_cache(maxsize=None)
def slot_pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for j in range(1, n) for i in range(j))


@lru_cache(maxsize=None)
def _slot_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(slot_pairs(n))}


def _bit(n: int, k: int) -> int:
    return 1 << (pair_count(n) - 1 - k)


def _clique_mask(n: int, vertices) -> int:
    idx = _slot_index(n)
    mask = 0
    for a, b in combinations(sorted(vertices), 2):
        mask |= _bit(n, idx[(a, b)])
    return mask


@lru_cache(maxsize=None)
def _closing_masks(n: int, s: int) -> tuple[tuple[int, ...], ...]:
    """Per slot (i, j): masks of the K_s whose largest slot is (i, j)."""
    out = []
    for i, j in slot_pairs(n):
        others = [x for x in range(j) if x != i]
        out.append(tuple(_clique_mask(n, (i, j) + c) for c in combinations(others, s - 2)))
    return tuple(out)


@lru_cache(maxsize=None)
def _completing_masks(n: int, s: int) -> tuple[tuple[int, ...], ...]:
    """Per slot (i, j): for each K_s through i and j, the mask of its other edges."""
    out = []
    for k, (i, j) in enumerate(slot_pairs(n)):
        others = [x for x in range(n) if x not in (i, j)]
        out.append(tuple(_clique_mask(n, (i, j) + c) & ~_bit(n, k)
                         for c in combinations(others, s - 2)))
    return tuple(out)


@lru_cache(maxsize=None)
def _perm_slot_bits(n: int) -> np.ndarray:
    """(n!, N) table: bit position of slot k after applying each permutation."""
    pairs = slot_pairs(n)
    idx = _slot_index(n)
    total = pair_count(n)
    perms = list(permutations(range(n)))
    table = np.empty((len(perms), total), dtype=np.uint64)
    for p, perm in enumerate(perms):
        for k, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            if a > b:
                a, b = b, a
            table[p, k] = total - 1 - idx[(a, b)]
    return table


def orbit_codes(n: int, code: int) -> np.ndarray:
    """Sorted distinct codes of all relabellings of the graph with this code."""
    total = pair_count(n)
    set_slots = [k for k in range(total) if code >> (total - 1 - k) & 1]
    table = _perm_slot_bits(n)
    if not set_slots:
        return np.zeros(1, dtype=np.uint64)
    shifted = np.left_shift(np.uint64(1), table[:, set_slots])
    return np.unique(np.bitwise_or.reduce(shifted, axis=1))


# -- canonical form for larger orders ----------------------------------------


def _twin_classes(g: Graph) -> list[int]:
    cls = list(range(g.n))
    for u in range(g.n):
        if cls[u] != u:
            continue
        for v in range(u + 1, g.n):
            if cls[v] == v and g.rows[u] & ~(1 << v) == g.rows[v] & ~(1 << u):
                cls[v] = u
    return cls


def canonical_code(g: Graph) -> int:
    """Minimum code over all vertex orderings.

    Positions are filled left to right keeping only the partial orderings whose
    column bits are minimal so far; among candidates that are twins (same
    neighbourhood up to each other) one is kept, since swapping twins is an
    automorphism.
    """
    n = g.n
    if n <= 1:
        return 0
    twins = _twin_classes(g)
    states: list[tuple[int, ...]] = [()]
    code = 0
    for j in range(n):
        best = None
        nxt: list[tuple[int, ...]] = []
        for st in states:
            used = set(st)
            seen_cls = set()
            for w in range(n):
                if w in used or twins[w] in seen_cls:
                    continue
                seen_cls.add(twins[w])
                col = 0
                for x in st:
                    col = (col << 1) | (g.rows[w] >> x & 1)
                if best is None or col < best:
                    best, nxt = col, [st + (w,)]
                elif col == best:
                    nxt.append(st + (w,))
        states = nxt
        code = (code << j) | best
    return code


def canonical_g6(g: Graph) -> str:
    return encode(graph_from_code(g.n, canonical_code(g)))


# -- exhaustive enumeration -------------------------------------------------


def _extend(codes: np.ndarray, n: int, s: int, start: int, stop: int) -> np.ndarray:
    closing = _closing_masks(n, s)
    for k in range(start, stop):
        bit = np.uint64(_bit(n, k))
        with_edge = codes | bit
        keep = np.ones(len(with_edge), dtype=bool)
        for mask in closing[k]:
            mk = np.uint64(mask)
            keep &= (with_edge & mk) != mk
        codes = np.concatenate([codes, with_edge[keep]])
    return codes


def _saturated_filter(codes: np.ndarray, n: int, s: int) -> np.ndarray:
    completing = _completing_masks(n, s)
    for k in range(pair_count(n)):
        bit = np.uint64(_bit(n, k))
        ok = (codes & bit) != 0
        for mask in completing[k]:
            mk = np.uint64(mask)
            ok |= (codes & mk) == mk
        codes = codes[ok]
        if not len(codes):
            break
    return codes


def saturated_labelled_codes(n: int, r: int,
                             progress: Optional[Callable[[int, int], None]] = None) -> np.ndarray:
    """Sorted codes of every labelled K_{r+1}-saturated graph on n vertices."""
    s = r + 1
    total = pair_count(n)
    split = min(SHARD_SLOTS, total)
    roots = _extend(np.zeros(1, dtype=np.uint64), n, s, 0, split)
    out = []
    for i, root in enumerate(roots):
        shard = _extend(np.array([root], dtype=np.uint64), n, s, split, total)
        out.append(_saturated_filter(shard, n, s))
        if progress is not None:
            progress(i + 1, len(roots))
    return np.sort(np.concatenate(out)) if out else np.zeros(0, dtype=np.uint64)


def _check_range(n: int, r: int, allow_n8: bool) -> None:
    if r < 2 or n <= r:
        raise ValueError(f"need n > r >= 2, got n={n}, r={r}")
    limit = OPT_IN_MAX_N if allow_n8 else EXHAUSTIVE_MAX_N
    if n > limit:
        raise ValueError(f"exhaustive mode supports n <= {limit}"
                         + ("" if allow_n8 else " (n = 8 needs allow_n8=True)"))


def saturated_classes(n: int, r: int, allow_n8: bool = False,
                      progress=None) -> list[tuple[int, int]]:
    """(canonical code, labelled class size) for each isomorphism class."""
    _check_range(n, r, allow_n8)
    left = set(int(c) for c in saturated_labelled_codes(n, r, progress))
    classes = []
    while left:
        orbit = orbit_codes(n, min(left))
        members = {int(c) for c in orbit}
        if not members <= left:
            raise AssertionError("orbit left the saturated set")
        left -= members
        classes.append((int(orbit[0]), len(members)))
    return sorted(classes)


def make_record(g: Graph, r: int, source: str = "exhaustive", rho: Optional[float] = None,
                canonical: Optional[str] = None) -> EnumerationRecord:
    return EnumerationRecord(
        n=g.n,
        r=r,
        canonical_g6=canonical if canonical is not None else canonical_g6(g),
        rho=float(rho if rho is not None else eig_sym(g).rho),
        is_split_star=is_split_star_shape(g, r - 1),
        is_moore_d2=is_moore_d2(g),
        edge_count=g.m,
        source=source,
    )


def enum_saturated(n: int, r: int, allow_n8: bool = False,
                   progress: Optional[Callable[[int, int], None]] = None) -> list[EnumerationRecord]:
    """One record per isomorphism class of K_{r+1}-saturated graphs of order n."""
    classes = saturated_classes(n, r, allow_n8, progress)
    graphs = [graph_from_code(n, c) for c, _ in classes]
    rhos = spectral_radii(graphs)
    records = [make_record(g, r, rho=rho, canonical=encode(g)) for g, rho in zip(graphs, rhos)]
    records.sort(key=lambda rec: (rec.edge_count, rec.canonical_g6))
    return records


@dataclass
class MinRho:
    rho_min: float
    minimizers: list[EnumerationRecord]

    def conforms(self, r: int) -> bool:
        """Split star alone for r >= 3; only stars and Moore graphs for r = 2."""
        if r >= 3:
            return len(self.minimizers) == 1 and self.minimizers[0].is_split_star
        return all(rec.is_split_star or rec.is_moore_d2 for rec in self.minimizers)


def min_rho_saturated(n: int, r: int, records: Optional[list[EnumerationRecord]] = None,
                      allow_n8: bool = False) -> MinRho:
    if records is None:
        records = enum_saturated(n, r, allow_n8)
    if not records:
        raise ValueError(f"no K_{r + 1}-saturated graphs of order {n}")
    rho_min = min(rec.rho for rec in records)
    return MinRho(rho_min, [rec for rec in records if rec.rho - rho_min <= RHO_TOL])


# -- sampling ----------------------------------------------------------------


def sample_saturated(n: int, r: int, trials: int, seed: int,
                     with_reports: bool = True) -> list[EnumerationRecord]:
    """Saturate the empty graph under ``trials`` seeded random edge orders.

    Duplicates are dropped by canonical form when n <= 10 and by labelled
    code otherwise.
    """
    from .verify import run_all

    if n > 200:
        raise ValueError("sampling supports n <= 200")
    if not 2 <= r < n:
        raise ValueError(f"need n > r >= 2, got n={n}, r={r}")
    records = []
    seen = set()
    for i in range(trials):
        g = saturate(Graph.empty(n), r, order="random", seed=seed + i)
        key = canonical_code(g) if n <= 10 else code_of(g)
        if key in seen:
            continue
        seen.add(key)
        spectrum = eig_sym(g)
        canon = encode(graph_from_code(n, key)) if n <= 10 else encode(g)
        rec = make_record(g, r, f"sampled({seed + i})", spectrum.rho, canon)
        if with_reports:
            rec.reports = run_all(g, r, is_saturated(g, r), spectrum)
        records.append(rec)
    return records
