import json
import math
import subprocess
import sys

import numpy as np
import pytest

from ergocoef import cli, worked_examples
from ergocoef.matrix import format_matrix
from ergocoef.report import AnalysisReport, canonical_json
from ergocoef.worked_examples import FIXTURES


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, err = run(argv + ["--json"], capsys)
    assert code == 0, err
    return json.loads(out), out


def edge_text(name):
    n, edges = getattr(FIXTURES, name)
    return f"n {n}\n" + "".join(f"{u} {v}\n" for u, v in edges)


class TestCanonicalJson:
    def test_sorted_and_rounded(self):
        text = canonical_json({"b": 1 / 3, "a": [1, 2.0, math.inf], "c": None})
        assert text.index('"a"') < text.index('"b"')
        assert "0.333333333333" in text and "0.3333333333333" not in text
        assert "null" in text

    def test_round_trip(self, rng):
        obj = {"x": rng.normal(size=5).tolist(), "y": {"z": float(rng.normal()) * 1e-20, "w": True}}
        text = canonical_json(obj)
        assert canonical_json(json.loads(text)) == text

    def test_numpy_and_complex(self):
        text = canonical_json({"v": np.float64(2.5), "i": np.int64(3), "c": complex(1, -2)})
        assert json.loads(text) == {"c": {"im": -2, "re": 1}, "i": 3, "v": 2.5}


class TestTau:
    def test_dominant(self, write, capsys):
        path = write("a.txt", format_matrix(np.array(FIXTURES.dominant)))
        data, _ = run_json(["tau", path, "--p", "inf"], capsys)
        r = data["results"]
        assert r["tau"] == {"inf": 8}
        assert r["trivial_eigenvalue"] == 9
        assert r["certificate"]["inf"]["certified_simple"] is True
        assert r["certificate"]["inf"]["gap_lower_bound"] >= 1

    def test_zero(self, write, capsys):
        data, _ = run_json(["tau", write("z.txt", "0 0\n0 0\n")], capsys)
        assert data["results"]["tau"] == {"1": 0, "inf": 0}
        assert data["results"]["certificate"]["1"]["certified_simple"] is False

    def test_laplacian_both(self, write, capsys):
        data, _ = run_json(["tau", write("l.txt", format_matrix(np.array(FIXTURES.laplacian6)))], capsys)
        assert data["results"]["tau"] == {"1": 5, "inf": 6}
        assert data["p"] == "both"

    def test_non_ematrix_warns(self, write, capsys):
        path = write("b.txt", "1 2 1\n1 1 1\n2 1 1\n")
        data, _ = run_json(["tau", path], capsys)
        assert data["results"]["e_matrix"] is False and data["warnings"]
        code, _, err = run(["tau", path, "--certify"], capsys)
        assert code == 2 and "NotConstantRowSum" in err

    def test_stdin(self, monkeypatch, capsys):
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO("2\n1 0\n0 1\n"))
        code, out, _ = run(["tau", "-", "--p", "1"], capsys)
        assert code == 0 and "tau" in out


class TestBounds:
    def test_largest(self, write, capsys):
        path = write("a.txt", format_matrix(np.array(FIXTURES.power_example)))
        data, _ = run_json(["bounds", path, "--p", "inf", "--k", "3", "--oracle"], capsys)
        b = data["results"]["bounds"]["inf"]
        assert b["all_k"][0] == {"alpha": None, "bound": 2, "k": 1}
        assert abs(b["all_k"][2]["bound"] - 1.26) <= 0.01
        assert all("k" in rec and "alpha" in rec for rec in b["all_k"] + b["doubling"])
        assert 1 <= b["estimate"]["value"] <= 1.01
        assert data["results"]["oracle"]["bounds_valid"] is True

    def test_smallest_nonsingular(self, write, capsys):
        m = np.array(FIXTURES.laplacian4) + 1.0
        data, _ = run_json(["bounds", write("m.txt", format_matrix(m)), "--target", "smallest", "--p", "inf"], capsys)
        assert data["results"]["bounds"]["inf"]["all_k"][0]["bound"] == pytest.approx(0.8)
        assert data["results"]["alpha"] is None

    def test_smallest_singular_warns(self, write, capsys):
        path = write("l.txt", format_matrix(np.array(FIXTURES.laplacian4)))
        data, _ = run_json(["bounds", path, "--target", "smallest", "--alpha", "1", "--p", "1"], capsys)
        assert data["warnings"]
        assert data["results"]["bounds"]["1"]["all_k"][0] == {"alpha": 1, "bound": pytest.approx(1), "k": 1}

    def test_singular_nonzero_trivial(self, write, capsys):
        code, _, err = run(["bounds", write("a.txt", format_matrix(np.array(FIXTURES.power_example))), "--target", "smallest"], capsys)
        assert code == 2 and "SingularMatrix" in err

    def test_ones(self, write, capsys):
        data, _ = run_json(["bounds", write("j.txt", "2 2\n2 2\n")], capsys)
        for payload in data["results"]["bounds"].values():
            assert all(rec["bound"] == 0 for rec in payload["all_k"] + payload["doubling"])

    def test_not_ematrix(self, write, capsys):
        code, _, _ = run(["bounds", write("b.txt", "1 2\n3 4\n")], capsys)
        assert code == 2

    def test_table_output(self, write, capsys):
        code, out, _ = run(["bounds", write("a.txt", format_matrix(np.array(FIXTURES.power_example))), "--max-level", "4"], capsys)
        assert code == 0 and "doubling" in out and "1.2599" in out


class TestGraph:
    def test_six_vertex(self, write, capsys):
        data, _ = run_json(["graph", write("g.txt", edge_text("graph6")), "--one-based", "--oracle"], capsys)
        r = data["results"]
        assert (r["tau1"], r["tau_inf"], r["edge_bound"]) == (5, 6, 5)
        assert abs(r["edge_bound_comparison"]["sqrt_tau1_L2"] - 4.69) <= 0.01
        assert abs(r["oracle"]["lambda_max"] - 4.21) <= 0.01

    def test_four_vertex(self, write, capsys):
        data, _ = run_json(["graph", write("g.txt", edge_text("graph4")), "--one-based", "--p", "1", "--k", "1"], capsys)
        rec = data["results"]["connectivity"]["1"]["rank_one_shift"][0]
        assert rec["lower_bound"] == pytest.approx(1) and rec["alpha"] == 1 and rec["k"] == 1

    def test_path(self, write, capsys):
        data, _ = run_json(["graph", write("g.txt", "0 1\n"), "--oracle"], capsys)
        r = data["results"]
        assert r["tau1"] == r["tau_inf"] == 2
        for p in ("1", "inf"):
            for method in ("rank_one_shift", "diagonal_shift_sup"):
                assert all(rec["lower_bound"] <= 2 + 1e-9 for rec in r["connectivity"][p][method])

    def test_disconnected_still_reports(self, write, capsys):
        data, _ = run_json(["graph", write("g.txt", edge_text("triangle_plus_isolate")), "--one-based"], capsys)
        r = data["results"]
        assert r["connected"] is False and r["connectivity"] is None
        assert (r["tau1"], r["tau_inf"]) == (3, 4)
        assert any("GraphDisconnected" in w for w in data["warnings"])

    def test_alpha_grid(self, write, capsys):
        data, _ = run_json(["graph", write("g.txt", edge_text("graph4")), "--one-based", "--alpha-grid", "0.1", "--k", "1", "--p", "inf"], capsys)
        rec = data["results"]["connectivity"]["inf"]["diagonal_shift_sup"][0]
        assert rec["alpha"] == 0.1 and abs(rec["lower_bound"] - 0.78) <= 0.01

    def test_no_edges(self, write, capsys):
        data, _ = run_json(["graph", write("g.txt", "n 3\n")], capsys)
        assert data["results"]["edge_bound"] is None and data["warnings"]

    def test_parse_error(self, write, capsys):
        code, _, err = run(["graph", write("g.txt", "0 0\n")], capsys)
        assert code == 1 and err


class TestProbe:
    def test_constant(self, write, capsys):
        data, _ = run_json(["probe", write("a.txt", format_matrix(np.array(FIXTURES.power_example))), "--p", "inf"], capsys)
        r = data["results"]["inf"]
        assert [v["tau"] for v in r["values"]] == [2] * 10 and r["constant_all"] is True

    def test_permuted(self, write, capsys):
        data, _ = run_json(["probe", write("b.txt", format_matrix(np.array(FIXTURES.permuted))), "--p", "inf", "--k", "2"], capsys)
        r = data["results"]["inf"]
        assert [v["tau"] for v in r["values"]] == [2, 4] and r["constant_all"] is False

    def test_ones(self, write, capsys):
        data, _ = run_json(["probe", write("j.txt", "1 1 1\n1 1 1\n1 1 1\n")], capsys)
        assert all(v["tau"] == 0 for v in data["results"]["1"]["values"])


class TestVerify:
    def test_clean_run(self, capsys):
        code, out, _ = run(["verify-paper"], capsys)
        assert code == 0 and "0 mismatches" in out

    def test_json(self, capsys):
        code, out, _ = run(["verify-paper", "--json"], capsys)
        data = json.loads(out)
        assert code == 0 and data["mismatches"] == 0 and data["groups"] >= 12

    def test_perturbed_fixture_fails(self, monkeypatch, capsys):
        monkeypatch.setattr(worked_examples, "FIXTURES", worked_examples.perturbed("dominant"))
        code, out, _ = run(["verify-paper"], capsys)
        assert code == 3 and "MISMATCH" in out


class TestJsonRoundTrip:
    @pytest.mark.parametrize(
        "argv",
        [
            ["tau", "{a}"],
            ["bounds", "{a}", "--oracle"],
            ["bounds", "{l}", "--target", "smallest"],
            ["graph", "{g}", "--one-based", "--oracle"],
            ["probe", "{a}"],
        ],
    )
    def test_byte_identical(self, argv, write, capsys):
        files = {
            "a": write("a.txt", format_matrix(np.array(FIXTURES.circulant))),
            "l": write("l.txt", format_matrix(np.array(FIXTURES.laplacian6))),
            "g": write("g.txt", edge_text("graph7")),
        }
        _, text = run_json([x.format(**files) for x in argv], capsys)
        assert canonical_json(json.loads(text)) == text

    def test_verify_byte_identical(self, capsys):
        _, out, _ = run(["verify-paper", "--json"], capsys)
        assert canonical_json(json.loads(out)) == out


class TestExitCodes:
    def test_usage(self, capsys):
        assert run([], capsys)[0] == 1
        assert run(["nonsense"], capsys)[0] == 1
        assert run(["tau"], capsys)[0] == 1
        assert run(["tau", "x", "--p", "2"], capsys)[0] == 1

    def test_missing_file(self, tmp_path, capsys):
        assert run(["tau", str(tmp_path / "absent.txt")], capsys)[0] == 1

    def test_bad_matrix(self, write, capsys):
        assert run(["tau", write("x.txt", "1 2\n3\n")], capsys)[0] == 1

    def test_singular(self, write, capsys):
        path = write("l.txt", format_matrix(np.array(FIXTURES.laplacian_disconnected)))
        code, _, err = run(["bounds", path, "--target", "smallest", "--alpha", "1"], capsys)
        assert code == 2 and "SingularMatrix" in err

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "ergocoef", "verify-paper"], capture_output=True, text=True)
        assert proc.returncode == 0


def test_report_table_and_dict():
    rep = AnalysisReport("x", "tau", "both", {"tau": {"1": 1.23456}, "rows": [{"k": 1, "bound": 2.0}]}, ["w"])
    d = rep.to_dict()
    assert "x" in d.values()
    table = rep.to_table()
    assert "1.2346" in table and "warning" in table.lower()
