import json
from pathlib import Path

import networkx as nx
import pytest

from satspec import cli
from satspec.enumeration import enum_saturated
from satspec.graph6 import Graph6Error, decode, encode
from satspec.graph_core import Graph, MOORE_KINDS, make_moore, make_split_star
from satspec.verify import TheoremReport

from oracles import graph6_decode_bits
from test_graph_core import graphs
from hypothesis import given

GOLDEN = Path(__file__).parent / "golden"
STAMP = "2026-01-01T00:00:00+00:00"


class TestGraph6:
    def test_known_string(self):
        g = decode("D?{")
        n, edges = graph6_decode_bits("D?{")
        assert g.n == n == 5
        assert set(g.edges()) == edges == {(0, 4), (1, 4), (2, 4), (3, 4)}
        assert encode(g) == "D?{"

    def test_small_encodings(self):
        assert encode(Graph.complete(2)) == "A_"
        assert encode(Graph.empty(1)) == "@"
        assert encode(Graph.empty(0)) == "?"

    @given(graphs(max_n=20))
    def test_matches_networkx(self, g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        assert encode(g) == nx.to_graph6_bytes(h, header=False).decode().strip()
        assert decode(encode(g)) == g

    def test_long_order_forms(self):
        for n in (62, 63, 100, 300):
            g = Graph.cycle(n)
            s = encode(g)
            assert s[0] == ("~" if n > 62 else chr(n + 63))
            assert s == nx.to_graph6_bytes(nx.cycle_graph(n), header=False).decode().strip()
            assert decode(s) == g

    def test_36_bit_order_header(self):
        from satspec.graph6 import _encode_n
        assert _encode_n(258048).startswith("~~") and len(_encode_n(258048)) == 8

    def test_header_prefix(self):
        assert decode(">>graph6<<A_") == Graph.complete(2)

    def test_errors(self):
        with pytest.raises(Graph6Error) as exc:
            decode("D?")
        assert exc.value.offset == 2
        with pytest.raises(Graph6Error) as exc:
            decode("D?\x7f")
        assert exc.value.offset == 2
        with pytest.raises(Graph6Error):
            decode("A`")  # K_2 with a padding bit set
        with pytest.raises(Graph6Error):
            decode("")
        with pytest.raises(Graph6Error):
            decode("~?")

    def test_round_trip_constructors(self):
        for n in range(1, 51):
            for r in (0, 1, n // 2, n):
                g = make_split_star(n, r)
                assert decode(encode(g)) == g
        for kind in MOORE_KINDS:
            g = make_moore(kind)
            assert decode(encode(g)) == g

    def test_round_trip_enumerated(self):
        for n in range(3, 8):
            for r in range(2, n):
                for rec in enum_saturated(n, r):
                    assert encode(decode(rec.canonical_g6)) == rec.canonical_g6
        for rec in enum_saturated(8, 2, allow_n8=True):
            assert encode(decode(rec.canonical_g6)) == rec.canonical_g6


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCommands:
    def test_construct_split_star(self, capsys):
        code, out, _ = run(capsys, "construct", "--split-star", "5", "2")
        assert code == 0
        g = decode(out.strip())
        assert g == make_split_star(5, 2) and g.m == 7

    def test_construct_moore(self, capsys):
        code, out, _ = run(capsys, "construct", "--moore", "Petersen")
        assert code == 0 and decode(out.strip()) == make_moore("Petersen")

    def test_bounds(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "10", "--r", "2", "--timestamp", STAMP)
        assert code == 0
        bounds = json.loads(out)["summary"]["bounds"]
        assert bounds["rho_split_star"] == 3.0
        assert bounds["kkko_lower_bound"] is None
        assert bounds["split_star_edges"] == 9

    def test_bounds_table(self, capsys):
        code, out, _ = run(capsys, "bounds", "--n", "10", "--r", "3", "--table")
        assert code == 0 and "rho_split_star" in out

    def test_enumerate(self, capsys, tmp_path):
        g6 = tmp_path / "out.g6"
        code, out, _ = run(capsys, "enumerate", "--n", "5", "--r", "2", "--g6-out", str(g6))
        assert code == 0
        summary = json.loads(out)["summary"]
        assert summary["min_rho"] == 2.0 and len(summary["minimizers"]) == 2
        assert summary["counts"]["failed"] == 0
        assert g6.read_text().split() == [rec.canonical_g6 for rec in enum_saturated(5, 2)]

    def test_check_and_spectra(self, capsys, tmp_path):
        f = tmp_path / "in.g6"
        f.write_text("\n".join([encode(make_moore("Petersen")), encode(Graph.path(4)),
                                encode(make_split_star(10, 1))]) + "\n")
        code, out, _ = run(capsys, "check", str(f), "--r", "2")
        report = json.loads(out)
        assert code == 0
        assert report["summary"]["not_saturated"] == [encode(Graph.path(4))]
        assert report["summary"]["counts"]["reports"] == 12
        code, out, _ = run(capsys, "spectra", str(f), "--r", "2")
        spectra = json.loads(out)["summary"]["spectra"]
        assert code == 0 and spectra[0]["rho"] == 3.0 and spectra[0]["b_rho"] == 9.0

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, _, _ = run(capsys, "sample", "--n", "8", "--r", "2", "--trials", "3", "-o", str(out))
        assert code == 0 and json.loads(out.read_text())["summary"]["counts"]["failed"] == 0


class TestExitCodes:
    def test_usage_errors(self, capsys):
        assert run(capsys, "enumerate", "--n", "5")[0] == 2
        assert run(capsys, "bogus")[0] == 2
        assert run(capsys)[0] == 2
        assert run(capsys, "enumerate", "--n", "9", "--r", "3")[0] == 2
        assert run(capsys, "bounds", "--n", "3", "--r", "3")[0] == 2
        assert run(capsys, "construct", "--split-star", "3", "5")[0] == 2
        assert run(capsys, "--version")[0] == 0

    def test_parse_error(self, capsys, tmp_path):
        f = tmp_path / "bad.g6"
        f.write_text("A_\nD?\n")
        code, _, err = run(capsys, "check", str(f), "--r", "2")
        assert code == 2 and "bad.g6:2" in err
        assert run(capsys, "check", str(tmp_path / "missing"), "--r", "2")[0] == 2

    def test_violation_exit(self, capsys, tmp_path, monkeypatch):
        def failing(g, r, verdict=None, spectrum=None, tol=1e-8):
            return [TheoremReport("EHM", False, -1, False, certificate={"edges": g.m},
                                  graph6=encode(g), r=r)]
        monkeypatch.setattr(cli, "run_all", failing)
        f = tmp_path / "in.g6"
        f.write_text(encode(make_moore("C5")) + "\n")
        code, out, _ = run(capsys, "check", str(f), "--r", "2")
        assert code == 1
        violations = json.loads(out)["summary"]["violations"]
        assert violations[0]["certificate"] == {"edges": 5}


class TestGolden:
    @pytest.mark.parametrize("name, argv", [
        ("enumerate_n5_r2.json", ["enumerate", "--n", "5", "--r", "2"]),
        ("sample_n9_r3_seed42.json", ["sample", "--n", "9", "--r", "3", "--trials", "6",
                                      "--seed", "42"]),
        ("bounds_n10_r3.json", ["bounds", "--n", "10", "--r", "3"]),
    ])
    def test_byte_identical(self, capsys, name, argv):
        code, out, _ = run(capsys, *argv, "--timestamp", STAMP)
        assert code == 0
        assert out == (GOLDEN / name).read_text()

    def test_float_formatting(self):
        assert cli.round_floats(1 / 3) == 0.333333333333
        assert cli.round_floats(2.0000000000000004) == 2.0
        assert cli.round_floats({"a": [float("nan"), True, 3]}) == {"a": [None, True, 3]}
