"""Margin-bearing checks of the saturation theorems on concrete graphs.

Every checker takes a graph, the clique parameter ``r`` (K_{r+1}-saturation)
and optionally a precomputed :class:`SaturationVerdict` / spectrum. Margins
are oriented so that ``margin >= 0`` means the inequality holds; integer
statements keep integer margins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

from .cliques import (SaturationVerdict, every_edge_in_clique, is_saturated,
                      min_degree_bound_holds, neighborhood_equality_condition)
from .graph_core import Graph, is_moore_d2, is_split_star_shape, split_star_edge_count
from .graph6 import encode
from .spectral import (ASSERT_TOL, SpectralSummary, eig_sym, f_shift, hsf_upper_bound,
                       rayleigh_lower, rayleigh_numerator, rho_split_star)

THEOREM_IDS = ("EHM", "K3_CHAR", "DEGREE_SQUARE", "LEMMA1", "SPECTRAL_CONJ",
               "HSF_BOUND", "EDGE_COUNT_CHAIN")


class NotSaturatedError(ValueError):
    pass


@dataclass
class TheoremReport:
    theorem_id: str
    holds: bool
    margin: Any
    equality: bool
    exception_class: Optional[str] = None
    certificate: dict = field(default_factory=dict)
    graph6: str = ""
    r: Optional[int] = None
    applicable: bool = True
    suspicious: bool = False

    def to_json(self) -> dict:
        margin = self.margin
        if not isinstance(margin, int):
            margin = float(margin)
        return {
            "theorem_id": self.theorem_id,
            "graph6": self.graph6,
            "r": self.r,
            "holds": self.holds,
            "margin": margin,
            "equality": self.equality,
            "exception_class": self.exception_class,
            "applicable": self.applicable,
            "suspicious": self.suspicious,
            "certificate": self.certificate,
        }


def _require_saturated(g: Graph, r: int, verdict: Optional[SaturationVerdict]) -> SaturationVerdict:
    if verdict is None:
        verdict = is_saturated(g, r)
    elif verdict.r != r:
        raise ValueError(f"verdict is for r={verdict.r}, not r={r}")
    if not verdict.is_saturated:
        raise NotSaturatedError(f"graph {encode(g)} is not K_{r + 1}-saturated")
    return verdict


def _exception_class(g: Graph, r: int) -> Optional[str]:
    if r == 2 and is_split_star_shape(g, 1):
        return "star"
    if is_split_star_shape(g, r - 1):
        return "split_star"
    if r == 2 and is_moore_d2(g):
        return "moore_d2"
    return None


def check_ehm(g: Graph, r: int, verdict: Optional[SaturationVerdict] = None) -> TheoremReport:
    """e(G) >= e(S_{n,r-1}), with equality only at the split star."""
    _require_saturated(g, r, verdict)
    bound = split_star_edge_count(g.n, r - 1)
    margin = g.m - bound
    shape = is_split_star_shape(g, r - 1)
    holds = margin > 0 or (margin == 0 and shape)
    cert = {} if holds else {"edges": g.m, "bound": bound, "split_star": shape}
    return TheoremReport("EHM", holds, margin, margin == 0,
                         "split_star" if margin == 0 and shape else None, cert,
                         encode(g), r)


def check_degree_square(g: Graph, r: int,
                        verdict: Optional[SaturationVerdict] = None) -> TheoremReport:
    """sum d^2 - (r-2) d >= (r-1)(n-r+1) n, with its neighbourhood equality clause."""
    _require_saturated(g, r, verdict)
    n = g.n
    lhs = rayleigh_numerator(g, r)
    rhs = (r - 1) * (n - r + 1) * n
    margin = lhs - rhs
    equality = margin == 0
    holds = margin >= 0
    cert: dict = {"lhs": lhs, "rhs": rhs}
    exc = None
    if equality:
        ok, bad = neighborhood_equality_condition(g, r)
        cert["neighborhoods_split_star"] = ok
        if not ok:
            holds = False
            cert["failing_vertex"] = bad
        if r >= 3:
            shape = is_split_star_shape(g, r - 1)
            cert["split_star"] = shape
            holds = holds and shape
        exc = _exception_class(g, r)
    return TheoremReport("DEGREE_SQUARE", holds, margin, equality, exc, cert, encode(g), r)


def check_lemma1(g: Graph, r: int, verdict: Optional[SaturationVerdict] = None) -> TheoremReport:
    """For r >= 3: equality in the degree-square inequality iff G is S_{n,r-1}."""
    _require_saturated(g, r, verdict)
    margin = rayleigh_numerator(g, r) - (r - 1) * (g.n - r + 1) * g.n
    shape = is_split_star_shape(g, r - 1)
    if r < 3:
        return TheoremReport("LEMMA1", True, margin, margin == 0, _exception_class(g, r),
                             {"split_star": shape}, encode(g), r, applicable=False)
    holds = (margin == 0) == shape
    return TheoremReport("LEMMA1", holds, margin, margin == 0,
                         "split_star" if shape else None,
                         {} if holds else {"degree_square_margin": margin, "split_star": shape},
                         encode(g), r)


def check_k3_characterization(g: Graph, verdict: Optional[SaturationVerdict] = None,
                              spectrum: Optional[SpectralSummary] = None,
                              tol: float = ASSERT_TOL) -> TheoremReport:
    """rho(G) >= sqrt(n-1), equality only for the star or a Moore graph of diameter 2."""
    _require_saturated(g, 2, verdict)
    spectrum = spectrum or eig_sym(g)
    margin = spectrum.rho - math.sqrt(g.n - 1)
    near = abs(margin) <= tol
    exc = None
    if near:
        if is_split_star_shape(g, 1):
            exc = "star"
        elif is_moore_d2(g):
            exc = "moore_d2"
    suspicious = near and exc is None
    holds = margin >= -tol and not suspicious
    cert = {"rho": spectrum.rho, "bound": math.sqrt(g.n - 1)}
    if suspicious:
        cert["suspicious_near_equality"] = True
    return TheoremReport("K3_CHAR", holds, margin, near and exc is not None, exc,
                         cert, encode(g), 2, suspicious=suspicious)


def check_spectral_conjecture(g: Graph, r: int, verdict: Optional[SaturationVerdict] = None,
                              spectrum: Optional[SpectralSummary] = None,
                              tol: float = ASSERT_TOL) -> TheoremReport:
    """rho(G) >= rho(S_{n,r-1}) with equality only at the split star, plus the Rayleigh chain.

    The chain is max(f(l1), f(ln)) >= (1/n) sum(d^2 - (r-2)d) >= (r-1)(n-r+1)
    with f(x) = x^2 - (r-2)x; when every edge lies in a K_r, B is nonnegative
    and the first term must be f(l1) itself.
    """
    verdict = _require_saturated(g, r, verdict)
    spectrum = spectrum or eig_sym(g)
    n = g.n
    lam1, lamn = spectrum.rho, spectrum.lambda_min
    target = rho_split_star(n, r - 1)
    margin = lam1 - target

    f1, fn = f_shift(lam1, r), f_shift(lamn, r)
    ray = rayleigh_lower(g, r)
    floor = (r - 1) * (n - r + 1)
    edge_clique, _ = every_edge_in_clique(g, r)
    chain = {
        "f_lambda1": f1,
        "f_lambdan": fn,
        "rayleigh": float(ray),
        "floor": floor,
        "rho_b_ge_rayleigh": max(f1, fn) >= float(ray) - tol,
        "rayleigh_ge_floor": ray >= floor,
        "every_edge_in_clique": edge_clique,
    }
    if edge_clique:
        chain["f_lambda1_ge_rayleigh"] = f1 >= float(ray) - tol
    chain_ok = (chain["rho_b_ge_rayleigh"] and chain["rayleigh_ge_floor"]
                and chain.get("f_lambda1_ge_rayleigh", True))
    cert: dict = {"rho": lam1, "rho_split_star": target, "chain": chain}

    if r == 2:
        k3 = check_k3_characterization(g, verdict, spectrum, tol)
        return TheoremReport("SPECTRAL_CONJ", k3.holds and chain_ok, margin, k3.equality,
                             k3.exception_class, cert, encode(g), r, suspicious=k3.suspicious)

    near = abs(margin) <= tol
    shape = is_split_star_shape(g, r - 1)
    suspicious = near and not shape
    if suspicious:
        cert["suspicious_near_equality"] = True
    holds = margin >= -tol and not suspicious and chain_ok
    return TheoremReport("SPECTRAL_CONJ", holds, margin, near and shape,
                         "split_star" if near and shape else None, cert, encode(g), r,
                         suspicious=suspicious)


def check_hsf_bound(g: Graph, spectrum: Optional[SpectralSummary] = None,
                    tol: float = ASSERT_TOL) -> TheoremReport:
    """rho(G) <= (delta-1)/2 + sqrt(2m - delta n + (delta+1)^2/4) for any graph."""
    spectrum = spectrum or eig_sym(g)
    bound = hsf_upper_bound(g.stats())
    margin = bound - spectrum.rho
    return TheoremReport("HSF_BOUND", margin >= -tol, margin, abs(margin) <= tol, None,
                         {"rho": spectrum.rho, "bound": bound}, encode(g))


def check_implication_chain(g: Graph, r: int, verdict: Optional[SaturationVerdict] = None,
                            spectrum: Optional[SpectralSummary] = None,
                            tol: float = ASSERT_TOL) -> TheoremReport:
    """Recover the EHM edge bound from the spectral lower and upper bounds.

    With delta >= r-1 the upper bound weakens to
    rho <= (r-2)/2 + sqrt(2m - (r-1)n + r^2/4); squaring against
    rho >= rho(S_{n,r-1}) gives 2m >= 2(r-1)n - r(r-1) = 2 e(S_{n,r-1}).
    """
    _require_saturated(g, r, verdict)
    if not g.is_connected():
        raise ValueError("implication chain needs a connected graph")
    spectrum = spectrum or eig_sym(g)
    stats = g.stats()
    n, m, rho = g.n, stats.m, spectrum.rho
    half = (r - 2) / 2

    delta_ok = stats.delta >= r - 1 and min_degree_bound_holds(g, r)
    upper_delta = hsf_upper_bound(stats)
    upper_r = half + math.sqrt(2 * m - (r - 1) * n + r * r / 4)
    lower = rho_split_star(n, r - 1)
    derived_2m = (lower - half) ** 2 + (r - 1) * n - r * r / 4
    exact_2m = 2 * (r - 1) * n - r * (r - 1)
    margin = 2 * m - exact_2m
    ehm_margin = m - split_star_edge_count(n, r - 1)

    steps = {
        "delta_ge_r_minus_1": delta_ok,
        "rho_le_hsf": rho <= upper_delta + tol,
        "hsf_monotone_in_delta": upper_delta <= upper_r + tol,
        "rho_le_weakened": rho <= upper_r + tol,
        "lower_le_upper": lower <= upper_r + tol,
        "derived_matches_exact": abs(derived_2m - exact_2m) <= tol * max(1.0, exact_2m),
        "edge_bound": margin >= 0,
        "matches_ehm_margin": margin == 2 * ehm_margin,
    }
    holds = all(steps.values())
    cert = {"steps": steps, "two_m": 2 * m, "derived_two_m": derived_2m,
            "upper": upper_r, "lower": lower}
    return TheoremReport("EDGE_COUNT_CHAIN", holds, margin, margin == 0,
                         _exception_class(g, r) if margin == 0 else None, cert, encode(g), r)


def run_all(g: Graph, r: int, verdict: Optional[SaturationVerdict] = None,
            spectrum: Optional[SpectralSummary] = None,
            tol: float = ASSERT_TOL) -> list[TheoremReport]:
    """Every applicable checker on one saturated graph, sharing one verdict and spectrum."""
    verdict = _require_saturated(g, r, verdict)
    spectrum = spectrum or eig_sym(g)
    reports = [
        check_ehm(g, r, verdict),
        check_degree_square(g, r, verdict),
    ]
    if r >= 3:
        reports.append(check_lemma1(g, r, verdict))
    else:
        reports.append(check_k3_characterization(g, verdict, spectrum, tol))
    reports.append(check_spectral_conjecture(g, r, verdict, spectrum, tol))
    reports.append(check_hsf_bound(g, spectrum, tol))
    reports.append(check_implication_chain(g, r, verdict, spectrum, tol))
    hsf = reports[-2]
    hsf.r = r
    return reports
