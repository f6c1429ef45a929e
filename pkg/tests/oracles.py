"""Brute-force reference implementations, independent of the package internals.

These work on plain ``(n, frozenset_of_edges)`` data with itertools and never
call the bitset code they check.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np


def all_labelled_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)


def adjacent(edges, a, b):
    return (min(a, b), max(a, b)) in edges


def has_clique(n, edges, s):
    return any(all(adjacent(edges, a, b) for a, b in combinations(c, 2))
               for c in combinations(range(n), s))


def naive_saturated(n, edges, r):
    """Definition: K_{r+1}-free, and adding any missing edge creates a K_{r+1}."""
    if has_clique(n, edges, r + 1):
        return False
    for p in combinations(range(n), 2):
        if p not in edges and not has_clique(n, edges | {p}, r + 1):
            return False
    return True


def edge_set(g):
    return frozenset(g.edges())


def relabel(edges, perm):
    return frozenset(tuple(sorted((perm[a], perm[b]))) for a, b in edges)


def _degree_multiset(n, edges):
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return sorted(deg)


def isomorphic(n, e1, e2):
    if len(e1) != len(e2) or _degree_multiset(n, e1) != _degree_multiset(n, e2):
        return False
    return any(relabel(e1, perm) == e2 for perm in permutations(range(n)))


def min_bitstring(n, edges):
    """Lexicographically smallest column-order edge bit string over all relabellings."""
    order = [(i, j) for j in range(1, n) for i in range(j)]
    best = None
    for perm in permutations(range(n)):
        e = relabel(edges, perm)
        s = "".join("1" if p in e else "0" for p in order)
        if best is None or s < best:
            best = s
    return best


def split_star_edges(n, r):
    return frozenset((a, b) for a, b in combinations(range(n), 2) if a < r)


def power_iteration_rho(a, rel_tol=1e-12, max_iter=200_000):
    """Largest eigenvalue of a nonnegative symmetric matrix via power iteration on A + I.

    The shift keeps bipartite graphs from oscillating; the estimate is the
    Rayleigh quotient, stopped at relative change below ``rel_tol``.
    """
    n = a.shape[0]
    m = a + np.eye(n)
    x = np.ones(n) / np.sqrt(n)
    est = float(x @ m @ x)
    for _ in range(max_iter):
        y = m @ x
        x = y / np.linalg.norm(y)
        new = float(x @ m @ x)
        if abs(new - est) <= rel_tol * abs(new):
            est = new
            break
        est = new
    return est - 1.0


def graph6_decode_bits(s):
    """Bit-level graph6 decoder for n <= 62, written directly from the format."""
    n = ord(s[0]) - 63
    bitstr = "".join(format(ord(c) - 63, "06b") for c in s[1:])
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    return n, frozenset(p for k, p in enumerate(pairs) if bitstr[k] == "1")


def power_iteration_rho_batch(mats, rel_tol=1e-12, max_iter=200_000):
    """Vectorised :func:`power_iteration_rho` over a (batch, n, n) stack."""
    b, n, _ = mats.shape
    m = mats + np.eye(n)
    x = np.ones((b, n)) / np.sqrt(n)
    est = np.einsum("bi,bij,bj->b", x, m, x)
    done = np.zeros(b, dtype=bool)
    for _ in range(max_iter):
        y = np.einsum("bij,bj->bi", m, x)
        x = y / np.linalg.norm(y, axis=1, keepdims=True)
        new = np.einsum("bi,bij,bj->b", x, m, x)
        done |= np.abs(new - est) <= rel_tol * np.abs(new)
        est = np.where(done, est, new)
        if done.all():
            break
    return est - 1.0


def graph_class_codes(n):
    """One code per isomorphism class of graphs on n vertices (via full orbits)."""
    from satspec.enumeration import orbit_codes
    from satspec.graph6 import pair_count

    visited = np.zeros(1 << pair_count(n), dtype=bool)
    reps = []
    c = 0
    while c < len(visited):
        reps.append(c)
        visited[orbit_codes(n, c).astype(np.int64)] = True
        rest = np.flatnonzero(~visited[c:])
        if not len(rest):
            break
        c += int(rest[0])
    return reps
