"""Adjacency spectra by cyclic Jacobi rotations, and the closed-form spectral bounds.

Degree-sum quantities are kept in exact integer / ``Fraction`` arithmetic;
only eigenvalues are floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .graph_core import Graph, GraphStats

SOLVER_TOL = 1e-12
ASSERT_TOL = 1e-8
MAX_SWEEPS = 60
# rotations below this are skipped; far under any convergence threshold
TINY = 1e-150


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (off-diagonal norm {residual:.3e})")
        self.residual = residual


def jacobi_eigh(mats: np.ndarray, tol: float = SOLVER_TOL,
                max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decompose a stack of symmetric matrices with cyclic Jacobi sweeps.

    ``mats`` has shape (batch, n, n) or (n, n). Every matrix in the batch is
    rotated at the same (p, q) pivot with its own angle, so the loop cost is
    shared across the batch. Iteration stops once every off-diagonal Frobenius
    norm is below ``tol * n``.

    Returns the eigenvalues in diagonal order (unsorted) and the eigenvectors
    as columns.
    """
    single = mats.ndim == 2
    a = np.array(mats, dtype=np.float64, copy=True)
    if single:
        a = a[None]
    b, n, _ = a.shape
    v = np.broadcast_to(np.eye(n), (b, n, n)).copy()
    if n < 2:
        w = np.diagonal(a, axis1=1, axis2=2).copy()
        return (w[0], v[0]) if single else (w, v)

    if b == 1:
        w, vec = _jacobi_single(a[0], tol * n, max_sweeps)
        return (w, vec) if single else (w[None], vec[None])

    iu = np.triu_indices(n, 1)
    threshold = tol * n
    pivots = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    off = 0.0
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(a[:, iu[0], iu[1]] ** 2, axis=1)).max()
        if off < threshold:
            break
        for p, q in pivots:
            apq = a[:, p, q]
            nz = np.abs(apq) > TINY
            if not nz.any():
                continue
            app = a[:, p, p]
            aqq = a[:, q, q]
            safe = np.where(nz, apq, 1.0)
            tau = (aqq - app) / (2.0 * safe)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(nz, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            c1 = c[:, None]
            s1 = s[:, None]

            colp = a[:, :, p].copy()
            colq = a[:, :, q]
            a[:, :, p] = c1 * colp - s1 * colq
            a[:, :, q] = s1 * colp + c1 * colq
            rowp = a[:, p, :].copy()
            rowq = a[:, q, :]
            a[:, p, :] = c1 * rowp - s1 * rowq
            a[:, q, :] = s1 * rowp + c1 * rowq
            a[:, p, q] = 0.0
            a[:, q, p] = 0.0

            vp = v[:, :, p].copy()
            vq = v[:, :, q]
            v[:, :, p] = c1 * vp - s1 * vq
            v[:, :, q] = s1 * vp + c1 * vq
    else:
        off = np.sqrt(2.0 * np.sum(a[:, iu[0], iu[1]] ** 2, axis=1)).max()
        if off >= threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", off)
    w = np.diagonal(a, axis1=1, axis2=2).copy()
    return (w[0], v[0]) if single else (w, v)


def _jacobi_single(a: np.ndarray, threshold: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    v = np.eye(n)
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps + 1):
        off = math.sqrt(2.0 * float(np.sum(a[iu] ** 2)))
        if off < threshold:
            return np.diagonal(a).copy(), v
        if _ == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= TINY:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                colp = a[:, p].copy()
                a[:, p] = c * colp - s * a[:, q]
                a[:, q] = s * colp + c * a[:, q]
                rowp = a[p].copy()
                a[p] = c * rowp - s * a[q]
                a[q] = s * rowp + c * a[q]
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", off)


def sorted_spectra(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched Jacobi with eigenvalues sorted descending (vectors permuted to match)."""
    w, v = jacobi_eigh(mats)
    idx = np.argsort(-w, axis=-1, kind="stable")
    w = np.take_along_axis(w, idx, axis=-1)
    v = np.take_along_axis(v, idx[..., None, :], axis=-1)
    return w, v


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: tuple[float, ...]
    perron_vector: tuple[float, ...]
    rho: float
    residual: float
    b_rho: Optional[float] = None
    b_nonneg: Optional[bool] = None

    @property
    def lambda_min(self) -> float:
        return self.eigenvalues[-1]


def _perron_vector(g: Graph, a: np.ndarray, vals: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    x = vecs[:, 0].copy()
    if x.sum() < 0:
        x = -x
    if x.min() >= -1e-10:
        return np.clip(x, 0.0, None) / np.linalg.norm(np.clip(x, 0.0, None))
    # repeated top eigenvalue across components: rebuild from one top component
    for comp in g.components():
        sub = a[np.ix_(comp, comp)]
        cw, cv = sorted_spectra(sub)
        if abs(cw[0] - vals[0]) <= 1e-9:
            y = np.abs(cv[:, 0])
            out = np.zeros(g.n)
            out[comp] = y / np.linalg.norm(y)
            return out
    raise AssertionError("no component attains the spectral radius")


def _summarize(g: Graph, a: np.ndarray, vals: np.ndarray, vecs: np.ndarray) -> SpectralSummary:
    residual = float(np.abs(a @ vecs - vecs * vals).max()) if g.n else 0.0
    perron = _perron_vector(g, a, vals, vecs) if g.n else np.zeros(0)
    return SpectralSummary(
        eigenvalues=tuple(float(x) for x in vals),
        perron_vector=tuple(float(x) for x in perron),
        rho=float(vals[0]) if g.n else 0.0,
        residual=residual,
    )


def eig_sym(g: Graph) -> SpectralSummary:
    """Full adjacency spectrum (descending) with a nonnegative Perron vector."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    a = g.adjacency_matrix(np.float64)
    vals, vecs = sorted_spectra(a)
    return _summarize(g, a, vals, vecs)


def eig_sym_many(graphs: Sequence[Graph]) -> list[SpectralSummary]:
    """eig_sym over many graphs, batching those of equal order through one Jacobi run."""
    out: list[Optional[SpectralSummary]] = [None] * len(graphs)
    by_order: dict[int, list[int]] = {}
    for i, g in enumerate(graphs):
        by_order.setdefault(g.n, []).append(i)
    for n, idx in by_order.items():
        mats = np.stack([graphs[i].adjacency_matrix(np.float64) for i in idx])
        vals, vecs = sorted_spectra(mats)
        for j, i in enumerate(idx):
            out[i] = _summarize(graphs[i], mats[j], vals[j], vecs[j])
    return out  # type: ignore[return-value]


def spectral_radii(graphs: Sequence[Graph]) -> np.ndarray:
    """Largest adjacency eigenvalue of each graph (eigenvalues only, batched)."""
    out = np.empty(len(graphs))
    by_order: dict[int, list[int]] = {}
    for i, g in enumerate(graphs):
        by_order.setdefault(g.n, []).append(i)
    for n, idx in by_order.items():
        mats = np.stack([graphs[i].adjacency_matrix(np.float64) for i in idx])
        w, _ = jacobi_eigh(mats)
        out[idx] = w.max(axis=-1)
    return out


def rho_split_star(n: int, k: int) -> float:
    """Spectral radius of S_{n,k}: (k - 1 + sqrt((k - 1)^2 + 4k(n - k))) / 2."""
    if not 1 <= k < n:
        raise ValueError(f"rho_split_star needs 1 <= k < n, got n={n}, k={k}")
    return (k - 1 + math.sqrt((k - 1) ** 2 + 4 * k * (n - k))) / 2


def f_shift(x: float, r: int) -> float:
    """x^2 - (r - 2) x, the map taking eigenvalues of A to those of A^2 - (r-2)A."""
    return x * x - (r - 2) * x


@dataclass(frozen=True)
class BMatrixSummary:
    b_nonneg: bool
    b_rho: float
    f_lambda1: float
    f_lambdan: float
    min_entry: int


def b_matrix(g: Graph, r: int) -> np.ndarray:
    a = g.adjacency_matrix(np.int64)
    return a @ a - (r - 2) * a


def b_matrix_summary(g: Graph, r: int, spectrum: Optional[SpectralSummary] = None) -> BMatrixSummary:
    """Sign check of B = A^2 - (r-2)A and rho(B) from the adjacency spectrum."""
    if r < 2:
        raise ValueError("r must be >= 2")
    spectrum = spectrum or eig_sym(g)
    b = b_matrix(g, r)
    lam = spectrum.eigenvalues
    return BMatrixSummary(
        b_nonneg=bool((b >= 0).all()),
        b_rho=max(abs(f_shift(x, r)) for x in lam),
        f_lambda1=f_shift(lam[0], r),
        f_lambdan=f_shift(lam[-1], r),
        min_entry=int(b.min()),
    )


NOT_APPLICABLE = "not applicable"


def rho_b_identity_check(g: Graph, r: int, spectrum: Optional[SpectralSummary] = None,
                         tol: float = ASSERT_TOL):
    """rho(B) = f(lambda_1) and rho(B) = max(f(lambda_1), f(lambda_n)).

    Returns True/False, or ``NOT_APPLICABLE`` when g is disconnected or some
    edge lies in no K_r (then B need not be nonnegative).
    """
    from .cliques import every_edge_in_clique

    if not g.is_connected() or not every_edge_in_clique(g, r)[0]:
        return NOT_APPLICABLE
    s = b_matrix_summary(g, r, spectrum)
    return (abs(s.b_rho - s.f_lambda1) <= tol
            and abs(s.b_rho - max(s.f_lambda1, s.f_lambdan)) <= tol)


def rayleigh_numerator(g: Graph, r: int) -> int:
    """Sum over vertices of d(u)^2 - (r-2) d(u), i.e. the entry sum of B."""
    return sum(d * d - (r - 2) * d for d in g.degrees)


def rayleigh_lower(g: Graph, r: int) -> Fraction:
    """<Bx, x> for the normalised all-ones vector, as an exact fraction."""
    if r < 2:
        raise ValueError("r must be >= 2")
    return Fraction(rayleigh_numerator(g, r), g.n)


def hsf_upper_bound(stats: GraphStats) -> float:
    """(delta - 1)/2 + sqrt(2m - delta n + (delta + 1)^2 / 4)."""
    d = stats.delta
    radicand = 2 * stats.m - d * stats.n + (d + 1) ** 2 / 4
    return (d - 1) / 2 + math.sqrt(radicand)


def hsf_bound_at(n: int, m: int, delta: int) -> float:
    return (delta - 1) / 2 + math.sqrt(2 * m - delta * n + (delta + 1) ** 2 / 4)


def kkko_lower_bound(n: int, r: int) -> float:
    """sqrt(((n-1)^2 (r-1) + (r-1)^2 (n-r+1)) / n), valid for n > r >= 3."""
    if r < 3:
        raise ValueError("this lower bound is stated for r >= 3")
    if n <= r:
        raise ValueError("needs n > r")
    return math.sqrt(((n - 1) ** 2 * (r - 1) + (r - 1) ** 2 * (n - r + 1)) / n)
