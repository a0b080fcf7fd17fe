import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from hyperlap import (
    ArgumentError,
    SirParams,
    compute_centralities,
    dataset_report,
    diffusion_index,
    infection_sweep,
    part_removal_experiment,
    ratio_sweep,
    spearman,
)
from hyperlap.centrality import CentralityResult
from hyperlap.experiments import TABLE_COLUMNS, partition, top_fraction


class TestSpearman:
    def test_examples(self):
        assert spearman([1, 2, 3, 4], [1, 2, 3, 4]) == 1.0
        assert spearman([1, 2, 3, 4], [4, 3, 2, 1]) == -1.0
        assert spearman([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5)

    def test_errors(self):
        with pytest.raises(ArgumentError):
            spearman([1, 2], [1, 2, 3])
        with pytest.raises(ArgumentError):
            spearman([1], [1])

    @pytest.mark.filterwarnings("ignore::scipy.stats.ConstantInputWarning")
    @given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=3, max_size=30))
    def test_matches_scipy_with_ties(self, pairs):
        x, y = zip(*pairs)
        ref = stats.spearmanr(x, y).statistic
        ours = spearman(x, y)
        if np.isnan(ref):
            assert np.isnan(ours)
        else:
            assert ours == pytest.approx(ref, abs=1e-12)

    def test_no_tie_formula(self):
        rng = np.random.default_rng(0)
        x, y = rng.permutation(15), rng.permutation(15)
        n = 15
        assert spearman(x, y) == pytest.approx(1 - 6 * np.sum((x - y) ** 2) / (n * (n * n - 1)))


class TestHelpers:
    def test_diffusion_index(self):
        assert diffusion_index(0.5, 0.5) == 0
        assert diffusion_index(0.5, 0.4) == pytest.approx(0.2)
        with pytest.raises(ArgumentError):
            diffusion_index(0.0, 0.1)

    @given(st.integers(1, 200), st.integers(1, 60))
    def test_partition_balanced(self, n, parts):
        parts = min(parts, n)
        chunks = partition(list(range(n)), parts)
        sizes = [len(c) for c in chunks]
        assert len(chunks) == parts and max(sizes) - min(sizes) <= 1
        assert [i for c in chunks for i in c] == list(range(n))

    def test_partition_errors(self):
        with pytest.raises(ArgumentError):
            partition([1, 2], 3)

    def test_top_fraction(self):
        assert top_fraction(list(range(100)), 0.05) == list(range(5))
        assert top_fraction(list(range(11)), 0.05) == [0]
        assert top_fraction(list(range(11)), 1.0) == list(range(11))

    def test_dataset_report_toy(self, toy):
        stats_ = dataset_report(toy)
        assert (stats_.vertices, stats_.hyperedges, stats_.k_max) == (6, 11, 3)
        assert stats_.avg_degree == pytest.approx(34 / 6)


@pytest.fixture(scope="module")
def toy_centralities():
    from hyperlap.toy import toy_registry

    return compute_centralities(toy_registry())


class TestRankRemoval:
    def test_empty_part_gives_zero(self, toy, toy_centralities):
        from hyperlap.experiments import _Evaluator

        ev = _Evaluator(toy, SirParams(trials=30, seed=1))
        mu = ev.mu_for(1.5)
        res = ev.removal([], mu, 1.5)
        assert res["Rs"] == 0.0 and res["F1"] == res["F2"]

    def test_one_hyperedge_per_part(self, toy, toy_centralities):
        report = part_removal_experiment(toy, toy_centralities["degree"], parts=11, params=SirParams(trials=50, seed=3))
        assert len(report.rows) == 11
        assert all(row["removed"] == 1 for row in report.rows)
        assert -1 <= report.summary["rho"] <= 1
        assert {row["F1"] for row in report.rows} == {report.summary["F1"]}

    def test_monotone_rs_gives_rho_one(self, toy):
        # first pass measures each hyperedge's R_s; second ranks by it
        fake = CentralityResult("degree", {sid: 0.0 for sid in toy.hyperedge_ids()}, "descending")
        params = SirParams(trials=300, seed=4)
        report = part_removal_experiment(toy, fake, parts=11, params=params)
        order = sorted(report.rows, key=lambda r: -r["Rs"])
        ids = [toy.hyperedge_ids()[r["step"] - 1] for r in order]
        ranked = CentralityResult("degree", {sid: -i for i, sid in enumerate(ids)}, "descending")
        again = part_removal_experiment(toy, ranked, parts=11, params=params)
        rs = [r["Rs"] for r in again.rows]
        if len(set(rs)) == len(rs):
            assert again.summary["rho"] == pytest.approx(1.0)
        else:
            assert again.summary["rho"] > 0.95

    def test_triangles_lead_diffusion_index(self, toy, toy_centralities):
        report = part_removal_experiment(
            toy, toy_centralities["degree"], parts=11, params=SirParams(trials=2000, seed=2024)
        )
        by_rs = sorted(report.rows, key=lambda r: -r["Rs"])
        ranking = toy_centralities["degree"].ranking
        triangles_in_top4 = sum(toy.simplices[ranking[r["step"] - 1]].dim == 2 for r in by_rs[:4])
        assert triangles_in_top4 == 3

    def test_empty_registry(self):
        from hyperlap import register_hypergraph

        reg = register_hypergraph([1, 2], [])
        fake = CentralityResult("degree", {}, "descending")
        with pytest.raises(ArgumentError):
            part_removal_experiment(reg, fake)


class TestSweeps:
    def test_full_removal(self, toy, toy_centralities):
        report = ratio_sweep(toy, {"degree": toy_centralities["degree"]}, [1.0], SirParams(trials=40, seed=8))
        row = report.rows[0]
        assert row["F2"] == 1 / 6
        assert row["Rs"] == pytest.approx(1 - 1 / (6 * row["F1"]))

    def test_ratio_rows(self, toy, toy_centralities):
        report = ratio_sweep(toy, toy_centralities, [0.1, 0.2, 0.3], SirParams(trials=20, seed=1))
        assert len(report.rows) == 4 * 3
        assert {(r["centrality"], r["x"]) for r in report.rows} == {
            (m, p) for m in toy_centralities for p in (0.1, 0.2, 0.3)
        }

    def test_ratio_validation(self, toy, toy_centralities):
        with pytest.raises(ArgumentError):
            ratio_sweep(toy, toy_centralities, [0.0])

    def test_infection_sweep(self, toy, toy_centralities):
        report = infection_sweep(
            toy, {"dff": toy_centralities["dff"]}, [1.0, 1.5, 2.0], 0.1, SirParams(trials=30, seed=2)
        )
        assert [r["x"] for r in report.rows] == [1.0, 1.5, 2.0]
        assert all(r["removed"] == 2 for r in report.rows)
        assert all(np.isfinite(r["stderr"]) for r in report.rows)

    def test_vanishing_rate(self, toy, toy_centralities):
        report = infection_sweep(toy, {"dff": toy_centralities["dff"]}, [1e-9], 0.1, SirParams(trials=30, seed=2))
        assert report.rows[0]["Rs"] == 0.0

    def test_infection_validation(self, toy, toy_centralities):
        with pytest.raises(ArgumentError):
            infection_sweep(toy, toy_centralities, [0.0])


class TestReportFiles:
    def test_table_and_json(self, toy, toy_centralities, tmp_path):
        params = SirParams(trials=20, seed=6)
        report = ratio_sweep(toy, toy_centralities, [0.1, 0.2], params)
        doc, tab = report.write(tmp_path)
        lines = tab.read_text().splitlines()
        assert lines[0].startswith("# ") and json.loads(lines[0][2:])["sir"]["seed"] == 6
        assert lines[1].split("\t") == list(TABLE_COLUMNS)
        assert len(lines) == 2 + len(report.rows)
        data = json.loads(doc.read_text())
        assert data["config"]["sir"]["trials"] == 20 and len(data["rows"]) == 8

    def test_bit_reproducible(self, toy, toy_centralities, tmp_path):
        params = SirParams(trials=20, seed=6)
        a = ratio_sweep(toy, toy_centralities, [0.1, 0.2], params).write(tmp_path / "a")
        b = ratio_sweep(toy, toy_centralities, [0.1, 0.2], params).write(tmp_path / "b")
        assert a[0].read_bytes() == b[0].read_bytes() and a[1].read_bytes() == b[1].read_bytes()

    def test_workers_do_not_change_report(self, toy, toy_centralities):
        params = SirParams(trials=20, seed=6)
        one = part_removal_experiment(toy, toy_centralities["closeness"], parts=5, params=params)
        two = part_removal_experiment(toy, toy_centralities["closeness"], parts=5, params=params, workers=2)
        assert one.to_json() == two.to_json()
