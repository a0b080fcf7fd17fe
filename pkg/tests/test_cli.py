import json

import pytest

from hyperlap.cli import main
from hyperlap.io import read_native, write_native


def rows_for(text, measure):
    out = {}
    for line in text.splitlines():
        if line.startswith("#") or line.startswith("hyperedge"):
            continue
        sid, verts, name, score, rank = line.split("\t")
        if name == measure:
            out[verts] = (float(score), int(rank))
    return out


class TestVerifyToy:
    def test_passes(self, capsys):
        assert main(["verify-toy"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out and out.count("PASS") == 7

    def test_corrupted_entry_named(self):
        from hyperlap.toy import REFERENCE_L0
        from hyperlap.verify import verify_toy

        bad = REFERENCE_L0.copy()
        bad[1, 2] = 9
        checks = verify_toy(l0=bad)
        assert not checks[0].passed and "(1,2) built 9 expected 0" in checks[0].detail


class TestCentrality:
    def test_degree(self, capsys):
        assert main(["centrality", "--toy", "--measure", "degree"]) == 0
        rows = rows_for(capsys.readouterr().out, "degree")
        assert rows["{1,2}"] == (7.0, 11)
        assert rows["{3,4,5}"][1] == 1

    def test_closeness(self, capsys):
        assert main(["centrality", "--toy", "--measure", "closeness"]) == 0
        rows = rows_for(capsys.readouterr().out, "closeness")
        assert round(rows["{1,2}"][0], 3) == 0.533

    def test_all(self, capsys):
        assert main(["centrality", "--toy"]) == 0
        out = capsys.readouterr().out
        assert all(len(rows_for(out, m)) == 11 for m in ("dff", "degree", "betweenness", "closeness"))
        assert out.startswith("# config ")

    def test_bad_measure(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["centrality", "--toy", "--measure", "eigen"])
        assert exc.value.code == 2


class TestIngest:
    def test_benson(self, tmp_path, capsys):
        (tmp_path / "d-nverts.txt").write_text("2\n3\n1\n2\n")
        (tmp_path / "d-simplices.txt").write_text("1 2\n2 3 4\n9\n2 1\n")
        out = tmp_path / "d.hg"
        code = main(["ingest", "--prefix", str(tmp_path / "d"), "--out", str(out), "--dedup", "multiplicity"])
        assert code == 0
        line = capsys.readouterr().out
        assert line.startswith("5 vertices, 2 hyperedges") and "dedup=multiplicity" in line
        reg = read_native(out)
        assert reg[reg.id_of((1, 2))].weight == 2.0

    def test_missing_file(self, tmp_path, capsys):
        assert main(["ingest", "--prefix", str(tmp_path / "none")]) == 3
        assert "none-nverts.txt" in capsys.readouterr().err

    def test_format_error(self, tmp_path, capsys):
        (tmp_path / "d-nverts.txt").write_text("3\n")
        (tmp_path / "d-simplices.txt").write_text("1 2\n")
        assert main(["ingest", "--prefix", str(tmp_path / "d")]) == 3

    def test_missing_prefix(self, capsys):
        assert main(["ingest"]) == 2


class TestLaplacian:
    def test_l0_dense(self, capsys):
        assert main(["laplacian", "--toy", "--which", "L0"]) == 0
        lines = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("#")]
        assert lines[0] == "{1}\t5\t1\t2\t2\t0\t0"

    def test_graph_file(self, toy, tmp_path, capsys):
        path = tmp_path / "toy.hg"
        write_native(toy, path)
        assert main(["laplacian", "--graph", str(path), "--format", "triplets"]) == 0
        body = [ln for ln in capsys.readouterr().out.splitlines() if not ln.startswith("#")]
        assert body[0].startswith("17 17 ")

    def test_bad_k(self, capsys):
        assert main(["laplacian", "--toy", "--which", "Lk", "--k", "5"]) == 2


class TestSimulationCommands:
    def test_sir_prints_seed(self, capsys):
        assert main(["sir", "--toy", "--trials", "5"]) == 0
        captured = capsys.readouterr()
        assert captured.err.startswith("seed: ")
        assert "# F " in captured.out

    def test_sir_reproducible(self, tmp_path):
        a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
        assert main(["sir", "--toy", "--trials", "10", "--seed", "4", "--out", str(a)]) == 0
        assert main(["sir", "--toy", "--trials", "10", "--seed", "4", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_sir_mu_zero(self, capsys):
        assert main(["sir", "--toy", "--trials", "3", "--seed", "1", "--mu", "0"]) == 0
        assert f"# F {1 / 6!r}" in capsys.readouterr().out

    def test_evaluate_rank_removal(self, tmp_path, capsys):
        args = ["evaluate", "rank-removal", "--toy", "--parts", "11", "--trials", "10", "--seed", "3"]
        assert main(args + ["--measures", "degree,dff", "--out-dir", str(tmp_path)]) == 0
        doc = json.loads((tmp_path / "rank-removal-degree.json").read_text())
        assert doc["config"]["cli"]["seed"] == 3 and len(doc["rows"]) == 11
        assert (tmp_path / "rank-removal-dff.tsv").exists()

    def test_evaluate_sweeps(self, tmp_path):
        base = ["--toy", "--trials", "5", "--seed", "3", "--out-dir", str(tmp_path)]
        assert main(["evaluate", "ratio-sweep", "--ratios", "0.1,0.5"] + base) == 0
        assert main(["evaluate", "infection-sweep", "--mu-ratios", "1,2"] + base) == 0
        assert (tmp_path / "ratio-sweep.tsv").exists() and (tmp_path / "infection-sweep.json").exists()

    @pytest.mark.parametrize(
        "extra",
        [["rank-removal", "--parts", "40"], ["ratio-sweep", "--ratios", "1.5"], ["rank-removal", "--measures", "x"]],
    )
    def test_evaluate_usage_errors(self, tmp_path, extra):
        args = ["evaluate", extra[0], "--toy", "--seed", "1", "--out-dir", str(tmp_path)] + extra[1:]
        assert main(args) == 2
