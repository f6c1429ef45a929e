import math
import random
from itertools import combinations

import pytest
from hypothesis import given, settings

from satspec.cliques import is_saturated
from satspec.enumeration import (canonical_code, canonical_g6, enum_saturated, min_rho_saturated,
                                 orbit_codes, sample_saturated, saturated_classes,
                                 saturated_labelled_codes)
from satspec.graph6 import code_of, decode, encode, graph_from_code
from satspec.graph_core import Graph, make_moore, make_split_star
from satspec.spectral import eig_sym, rho_split_star

from oracles import all_labelled_graphs, min_bitstring, naive_saturated
from test_graph_core import graphs


def g6_of(n, bitstring):
    return encode(graph_from_code(n, int(bitstring, 2) if bitstring else 0))


class TestCanonical:
    @settings(max_examples=120, deadline=None)
    @given(graphs(max_n=7))
    def test_matches_brute_force_minimum(self, g):
        brute = min_bitstring(g.n, frozenset(g.edges()))
        assert canonical_code(g) == (int(brute, 2) if brute else 0)
        assert int(orbit_codes(g.n, code_of(g))[0]) == canonical_code(g)

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=10))
    def test_invariant_under_relabelling(self, g):
        perm = list(range(g.n))
        random.Random(g.m).shuffle(perm)
        assert canonical_code(g.relabel(perm)) == canonical_code(g)

    def test_symmetric_graphs_are_fast(self):
        for g in (make_split_star(10, 1), Graph.empty(10), Graph.complete(10),
                  make_moore("Petersen"), make_split_star(10, 4)):
            assert canonical_g6(g) == canonical_g6(g.relabel(list(range(g.n))[::-1]))


class TestEnumSaturated:
    def test_k5_saturated_order_five(self):
        recs = enum_saturated(5, 4)
        assert len(recs) == 1 and recs[0].is_split_star
        assert decode(recs[0].canonical_g6).m == 9

    def test_triangle_saturated_order_five(self):
        recs = enum_saturated(5, 2)
        at_two = [rec for rec in recs if abs(rec.rho - 2.0) <= 1e-9]
        assert len(at_two) == 2
        assert {rec.is_split_star for rec in at_two} == {True, False}
        assert any(rec.is_moore_d2 for rec in at_two)

    def test_order_four(self):
        recs = enum_saturated(4, 3)
        assert any(rec.is_split_star for rec in recs)
        assert min(rec.rho for rec in recs) == pytest.approx(rho_split_star(4, 2), abs=1e-9)

    def test_range_checks(self):
        with pytest.raises(ValueError):
            enum_saturated(8, 3)
        with pytest.raises(ValueError):
            enum_saturated(9, 3, allow_n8=True)
        with pytest.raises(ValueError):
            enum_saturated(4, 4)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_agrees_with_naive_generator(self, n):
        for r in range(2, n):
            naive = set()
            labelled = set()
            for edges in all_labelled_graphs(n):
                if naive_saturated(n, edges, r):
                    naive.add(min_bitstring(n, edges))
                    labelled.add(code_of(Graph.from_edges(n, edges)))
            got = {rec.canonical_g6 for rec in enum_saturated(n, r)}
            assert got == {g6_of(n, s) for s in naive}
            assert {int(c) for c in saturated_labelled_codes(n, r)} == labelled
            assert sum(size for _, size in saturated_classes(n, r)) == len(labelled)

    @pytest.mark.parametrize("n", range(3, 8))
    def test_records_are_consistent(self, n):
        for r in range(2, n):
            recs = enum_saturated(n, r)
            assert sum(rec.is_split_star for rec in recs) == 1
            for rec in recs:
                g = decode(rec.canonical_g6)
                assert is_saturated(g, r).is_saturated
                assert abs(eig_sym(g).rho - rec.rho) <= 1e-9
                assert rec.edge_count == g.m
                assert canonical_g6(g) == rec.canonical_g6

    def test_progress_callback(self):
        calls = []
        enum_saturated(5, 2, progress=lambda done, total: calls.append((done, total)))
        assert calls and calls[-1][0] == calls[-1][1]


class TestMinRho:
    def test_five_three(self):
        best = min_rho_saturated(5, 3)
        assert best.rho_min == pytest.approx(3.0, abs=1e-9)
        assert len(best.minimizers) == 1 and best.minimizers[0].is_split_star

    def test_five_two(self):
        best = min_rho_saturated(5, 2)
        assert best.rho_min == pytest.approx(2.0, abs=1e-9)
        assert {rec.canonical_g6 for rec in best.minimizers} == {
            canonical_g6(make_split_star(5, 1)), canonical_g6(make_moore("C5"))}
        assert best.conforms(2)

    def test_boundary_order_r_plus_one(self):
        # the only K_7-saturated graph of order 7 is K_7 minus an edge = S_{7,5}
        best = min_rho_saturated(7, 6)
        assert best.rho_min == pytest.approx(rho_split_star(7, 5), abs=1e-9)
        assert len(best.minimizers) == 1 and best.minimizers[0].is_split_star
        assert best.minimizers[0].edge_count == 20


class TestSample:
    def test_fifteen_three(self):
        recs = sample_saturated(15, 3, 100, 42)
        assert len(recs) == 100
        assert all(rep.holds for rec in recs for rep in rec.reports)

    def test_thirty_two(self):
        recs = sample_saturated(30, 2, 50, 7)
        assert len(recs) == 50
        assert all(rec.rho >= math.sqrt(29) - 1e-8 for rec in recs)
        assert all(rep.holds for rec in recs for rep in rec.reports)

    def test_zero_trials(self):
        assert sample_saturated(12, 3, 0, 1) == []

    def test_small_orders_dedup_by_canonical_form(self):
        recs = sample_saturated(6, 2, 40, 0)
        assert len({rec.canonical_g6 for rec in recs}) == len(recs)
        assert {rec.canonical_g6 for rec in recs} <= {rec.canonical_g6 for rec in enum_saturated(6, 2)}

    def test_deterministic(self):
        a = [rec.to_json() for rec in sample_saturated(12, 3, 10, 5, with_reports=False)]
        b = [rec.to_json() for rec in sample_saturated(12, 3, 10, 5, with_reports=False)]
        assert a == b
        assert [rec.to_json() for rec in enum_saturated(6, 3)] == \
            [rec.to_json() for rec in enum_saturated(6, 3)]

    def test_rejects(self):
        with pytest.raises(ValueError):
            sample_saturated(201, 2, 1, 0)
        with pytest.raises(ValueError):
            sample_saturated(5, 5, 1, 0)


@pytest.mark.slow
def test_opt_in_order_eight_triangle_free():
    recs = enum_saturated(8, 2, allow_n8=True)
    assert len(recs) == 10
    assert sum(rec.is_split_star for rec in recs) == 1
