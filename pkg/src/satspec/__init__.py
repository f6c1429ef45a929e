"""Spectral radius checks for K_{r+1}-saturated graphs."""

__version__ = "0.1.0"

from .graph_core import (Graph, GraphStats, find_induced_k3pp, is_moore_d2,
                         is_split_star_shape, make_moore, make_split_star,
                         neighborhood_graph)
from .cliques import (SaturationVerdict, contains_clique, every_edge_in_clique,
                      is_saturated, min_degree_bound_holds,
                      neighborhood_equality_condition, saturate)
from .spectral import (SpectralSummary, b_matrix_summary, eig_sym, hsf_upper_bound,
                       kkko_lower_bound, rayleigh_lower, rho_b_identity_check,
                       rho_split_star)
from .verify import (TheoremReport, check_degree_square, check_ehm,
                     check_implication_chain, check_k3_characterization,
                     check_spectral_conjecture, run_all)
from .enumeration import EnumerationRecord, enum_saturated, min_rho_saturated, sample_saturated
from .graph6 import decode as graph6_decode, encode as graph6_encode
