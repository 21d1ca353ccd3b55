import json

import pytest

from posettop.cli import main
from posettop.posets import poset_from_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestFamilies:
    def test_boolean_roundtrip(self, capsys, tmp_path):
        code, out = run_cli(capsys, "family", "boolean", "--n", "3")
        assert code == 0
        P = poset_from_json(out)
        assert len(P) == 8

    def test_chain(self, capsys):
        code, out = run_cli(capsys, "family", "chain", "--n", "4")
        assert code == 0
        assert len(poset_from_json(out)) == 4

    def test_fiber_ideal_defaults_to_full_alphabet(self, capsys):
        code, out = run_cli(capsys, "family", "fiber-ideal", "--n", "3", "--i", "2")
        assert code == 0
        assert len(poset_from_json(out)) == 13

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.json"
        code, _ = run_cli(capsys, "-o", str(target), "family", "subword", "--n", "3")
        assert code == 0
        assert len(poset_from_json(target.read_text())) == 15


class TestConstruct:
    def test_product(self, capsys, tmp_path):
        a = tmp_path / "a.json"
        run_cli(capsys, "-o", str(a), "family", "chain", "--n", "2")
        code, out = run_cli(capsys, "construct", "product", str(a), str(a))
        assert code == 0
        assert len(poset_from_json(out)) == 4

    def test_segre_with_default_rank_maps(self, capsys, tmp_path):
        b = tmp_path / "b.json"
        run_cli(capsys, "-o", str(b), "family", "boolean", "--n", "2")
        code, out = run_cli(capsys, "construct", "segre", str(b), str(b))
        assert code == 0
        assert len(poset_from_json(out)) == 6

    def test_segre_with_explicit_map(self, capsys, tmp_path):
        b = tmp_path / "b.json"
        run_cli(capsys, "-o", str(b), "family", "boolean", "--n", "3")
        c = tmp_path / "c.json"
        run_cli(capsys, "-o", str(c), "family", "chain", "--n", "2")
        g = tmp_path / "g.json"
        g.write_text(json.dumps({"values": {"0": 1, "1": 2}}))
        code, out = run_cli(capsys, "construct", "segre", str(b), str(c),
                            "--g-map", str(g))
        assert code == 0
        assert len(poset_from_json(out)) == 6  # middle two levels of B3

    def test_rees(self, capsys, tmp_path):
        b = tmp_path / "b.json"
        run_cli(capsys, "-o", str(b), "family", "chain", "--n", "3")
        code, out = run_cli(capsys, "construct", "rees", str(b), str(b))
        assert code == 0
        # pairs (i, j) with i >= j in a 3-chain
        assert len(poset_from_json(out)) == 6

    def test_rank_select(self, capsys, tmp_path):
        b = tmp_path / "b.json"
        run_cli(capsys, "-o", str(b), "family", "boolean", "--n", "3")
        code, out = run_cli(capsys, "construct", "rank-select", str(b),
                            "--ranks", "1,2")
        assert code == 0
        assert len(poset_from_json(out)) == 6


class TestComplexAndHomology:
    def test_order_complex_and_homology(self, capsys, tmp_path):
        b = tmp_path / "b.json"
        run_cli(capsys, "-o", str(b), "construct", "rank-select",
                *self._boolean3(capsys, tmp_path), "--ranks", "1,2")
        k = tmp_path / "k.json"
        code, _ = run_cli(capsys, "-o", str(k), "complex", "order-complex", str(b))
        assert code == 0
        code, out = run_cli(capsys, "homology", str(k), "--coefficients", "z")
        assert code == 0
        data = json.loads(out)
        assert data == {"coefficients": "Z", "dims": {"1": {"betti": 1, "torsion": []}}}

    def _boolean3(self, capsys, tmp_path):
        b = tmp_path / "b3.json"
        run_cli(capsys, "-o", str(b), "family", "boolean", "--n", "3")
        return [str(b)]

    def test_subdivision(self, capsys, tmp_path):
        k = tmp_path / "k.json"
        k.write_text('{"vertices": ["a", "b"], "facets": [["a", "b"]]}')
        code, out = run_cli(capsys, "complex", "subdivision", str(k))
        assert code == 0
        data = json.loads(out)
        assert len(data["vertices"]) == 3
        assert len(data["facets"]) == 2

    def test_homology_field_selector(self, capsys, tmp_path):
        k = tmp_path / "k.json"
        k.write_text(json.dumps({
            "vertices": ["1", "2", "3", "4", "5", "6"],
            "facets": [["1", "2", "3"], ["1", "2", "4"], ["1", "3", "5"],
                       ["1", "4", "6"], ["1", "5", "6"], ["2", "3", "6"],
                       ["2", "4", "5"], ["2", "5", "6"], ["3", "4", "5"],
                       ["3", "4", "6"]]}))
        code, out = run_cli(capsys, "homology", str(k))
        assert json.loads(out)["dims"] == {"1": {"betti": 0, "torsion": [2]}}
        code, out = run_cli(capsys, "homology", str(k), "--coefficients", "gf:2")
        assert json.loads(out)["dims"] == {"1": {"betti": 1, "torsion": []},
                                           "2": {"betti": 1, "torsion": []}}


class TestCM:
    def test_cm_verdict_exit_codes(self, capsys, tmp_path):
        b = tmp_path / "b.json"
        run_cli(capsys, "-o", str(b), "family", "boolean", "--n", "3")
        code, out = run_cli(capsys, "cm", str(b), "--field", "q")
        assert code == 0
        assert "Cohen-Macaulay over Q" in out
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({
            "elements": ["a1", "a2", "b1", "b2"],
            "covers": [["a1", "a2"], ["b1", "b2"]]}))
        code, out = run_cli(capsys, "cm", str(bad), "--field", "q")
        assert code == 1
        assert "not Cohen-Macaulay" in out

    def test_cm_json_format(self, capsys, tmp_path):
        b = tmp_path / "b.json"
        run_cli(capsys, "-o", str(b), "family", "boolean", "--n", "2")
        code, out = run_cli(capsys, "cm", str(b), "--format", "json")
        assert code == 0
        assert json.loads(out)["verdict"] is True

    def test_composite_field_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["cm", "--field", "gf:4"])
        assert exc.value.code == 2


class TestSemigroup:
    def test_koszul_test_pipeline(self, capsys, tmp_path):
        s = tmp_path / "s.json"
        code, _ = run_cli(capsys, "-o", str(s), "semigroup", "natural", "--d", "2")
        assert code == 0
        code, out = run_cli(capsys, "semigroup", "koszul-test", str(s),
                            "--max-rank", "3", "--field", "q")
        assert code == 0
        assert "consistent with Koszul up to rank 3" in out

    def test_interval_emission(self, capsys, tmp_path):
        s = tmp_path / "s.json"
        run_cli(capsys, "-o", str(s), "semigroup", "natural", "--d", "2")
        code, out = run_cli(capsys, "semigroup", "interval", str(s),
                            "--element", "1,1")
        assert code == 0
        assert len(poset_from_json(out)) == 4

    def test_veronese_family(self, capsys):
        code, out = run_cli(capsys, "semigroup", "veronese-punctured", "--d", "3")
        assert code == 0
        assert len(json.loads(out)["generators"]) == 9


class TestEnumerate:
    def test_text_and_json(self, capsys):
        code, out = run_cli(capsys, "enumerate", "derangements", "--n", "6")
        assert code == 0 and "265" in out
        code, out = run_cli(capsys, "enumerate", "nca-pairs", "--n", "3",
                            "--format", "json")
        assert json.loads(out)["no_common_ascent_pairs"] == 19
        code, out = run_cli(capsys, "enumerate", "flag-vector", "--n", "3",
                            "--format", "json")
        assert json.loads(out)["alpha_beta_sum"] == 19
        code, out = run_cli(capsys, "enumerate", "falling-chains", "--n", "3",
                            "--format", "json")
        assert json.loads(out)["falling_chains"] == 19


class TestVerifyRunner:
    def test_small_run_passes(self, capsys):
        code, out = run_cli(capsys, "verify-paper", "--table-max-n", "3",
                            "--rees-max-n", "3", "--subword-max-n", "3",
                            "--mobius-max-n", "3", "--oracle-samples", "5")
        assert code == 0
        assert "0 failed" in out

    def test_json_deterministic(self, capsys):
        args = ["verify-paper", "--table-max-n", "2", "--rees-max-n", "2",
                "--subword-max-n", "2", "--mobius-max-n", "2",
                "--oracle-samples", "3", "--format", "json"]
        _, out1 = run_cli(capsys, *args)
        _, out2 = run_cli(capsys, *args)
        assert out1 == out2
        assert json.loads(out1)["all_passed"] is True

    def test_threads_do_not_change_output(self, capsys):
        base = ["verify-paper", "--table-max-n", "3", "--rees-max-n", "2",
                "--subword-max-n", "2", "--mobius-max-n", "2",
                "--oracle-samples", "3", "--format", "json"]
        _, serial = run_cli(capsys, *base, "--threads", "1")
        _, parallel = run_cli(capsys, *base, "--threads", "2")
        assert serial == parallel


class TestErrors:
    def test_malformed_input_is_usage_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _ = run_cli(capsys, "cm", str(bad))
        assert code == 2

    def test_missing_file(self, capsys):
        code, _ = run_cli(capsys, "cm", "/nonexistent/p.json")
        assert code == 2


class TestMaxNCap:
    def test_global_cap(self, capsys):
        code, out = run_cli(capsys, "verify-paper", "--max-n", "3",
                            "--oracle-samples", "3", "--format", "json")
        assert code == 0
        data = json.loads(out)
        names = [c["name"] for c in data["checks"]]
        assert "I(3,3)" in names and "I(4,1)" not in names
        assert "R(3)" in names and "R(4)" not in names
        assert "K(3)" in names and "K(4)" not in names

    def test_individual_flag_wins(self, capsys):
        code, out = run_cli(capsys, "verify-paper", "--max-n", "2",
                            "--subword-max-n", "3",
                            "--oracle-samples", "3", "--format", "json")
        assert code == 0
        names = [c["name"] for c in json.loads(out)["checks"]]
        assert "K(3)" in names
        assert "I(3,1)" not in names


class TestComplexSegreCommand:
    def test_edge_pairing(self, capsys, tmp_path):
        k = tmp_path / "k.json"
        k.write_text('{"vertices": ["1", "2"], "facets": [["1", "2"]]}')
        c = tmp_path / "c.json"
        c.write_text('{"colors": {"1": 1, "2": 2}}')
        code, out = run_cli(capsys, "complex", "segre",
                            str(k), str(c), str(k), str(c))
        assert code == 0
        data = json.loads(out)
        assert data["facets"] == [["(1,1)", "(2,2)"]]

    def test_type_select_command(self, capsys, tmp_path):
        k = tmp_path / "k.json"
        k.write_text('{"vertices": ["a", "b", "c"], "facets": [["a", "b", "c"]]}')
        c = tmp_path / "c.json"
        c.write_text('{"colors": {"a": 1, "b": 2, "c": 3}}')
        code, out = run_cli(capsys, "complex", "type-select", str(k),
                            "--colors", str(c), "--keep", "1,3")
        assert code == 0
        assert json.loads(out)["facets"] == [["a", "c"]]
