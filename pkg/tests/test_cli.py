"""Command-line interface: exit codes, artifacts, and reproducibility."""

import csv
import json

import numpy as np
import pytest

from ballmapper import import_graph, ingest_csv
from ballmapper.cli import main


def run_cli(tmp_path, *argv):
    return main(["--output-dir", str(tmp_path), *argv])


def read_error(capsys):
    captured = capsys.readouterr()
    return json.loads(captured.err.strip().splitlines()[-1])["error"]


class TestExitCodes:
    def test_no_subcommand_is_usage_error(self, tmp_path, capsys):
        assert run_cli(tmp_path) == 1
        assert read_error(capsys)["kind"] == "usage"

    def test_unknown_flag_is_usage_error(self, tmp_path, capsys):
        assert run_cli(tmp_path, "run", "--epsilon", "1", "--nope") == 1
        assert read_error(capsys)["kind"] == "usage"

    def test_nonpositive_epsilon_is_usage_error(self, tmp_path, capsys):
        code = run_cli(tmp_path, "run", "--generator", "noise", "--n", "20",
                       "--epsilon", "0")
        assert code == 1
        err = read_error(capsys)
        assert err["kind"] == "usage" and "positive" in err["message"]

    def test_both_input_and_generator_is_usage_error(self, tmp_path, capsys):
        (tmp_path / "c.csv").write_text("x\n1\n")
        code = run_cli(tmp_path, "run", "--epsilon", "1",
                       "--input", str(tmp_path / "c.csv"),
                       "--generator", "noise")
        assert code == 1
        assert "exactly one" in read_error(capsys)["message"]

    def test_missing_file_is_data_error(self, tmp_path, capsys):
        code = run_cli(tmp_path, "run", "--epsilon", "1",
                       "--input", str(tmp_path / "absent.csv"))
        assert code == 2
        assert read_error(capsys)["kind"] == "data"

    def test_malformed_csv_is_data_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("x,y\n1,oops\n")
        code = run_cli(tmp_path, "run", "--epsilon", "1", "--input", str(bad))
        assert code == 2
        err = read_error(capsys)
        assert err["kind"] == "data"
        assert "line 2" in err["message"] and "'y'" in err["message"]

    def test_proportion_without_flag_is_data_error(self, tmp_path, capsys):
        code = run_cli(tmp_path, "run", "--generator", "noise", "--n", "20",
                       "--epsilon", "1", "--color", "proportion")
        assert code == 2
        assert "flag" in read_error(capsys)["message"]


class TestGenerate:
    def test_writes_cloud_and_manifest(self, tmp_path):
        assert run_cli(tmp_path, "generate", "--generator", "five_part",
                       "--n", "50", "--d", "3", "--cloud-seed", "4") == 0
        cloud = ingest_csv(tmp_path / "cloud.csv", outcome_column="Y",
                           id_column="point_id")
        assert cloud.n == 50 and cloud.d == 3
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["command"] == "generate"
        assert manifest["config"]["cloud_seed"] == 4
        assert manifest["outputs"] == ["cloud.csv"]
        assert "timestamp" not in json.dumps(manifest)

    def test_requires_generator(self, tmp_path, capsys):
        assert run_cli(tmp_path, "generate") == 1
        assert read_error(capsys)["kind"] == "usage"

    def test_derived_flag_column(self, tmp_path):
        assert run_cli(tmp_path, "generate", "--generator", "noise",
                       "--n", "30", "--flag", "X1:0:x1_pos") == 0
        cloud = ingest_csv(tmp_path / "cloud.csv", outcome_column="Y",
                           id_column="point_id", flag_columns=["x1_pos"])
        assert set(np.unique(cloud.binary_flags["x1_pos"])) <= {0.0, 1.0}
        assert np.array_equal(cloud.binary_flags["x1_pos"],
                              cloud.points[:, 0] > 0)


class TestRun:
    def test_all_formats_and_metrics(self, tmp_path):
        code = run_cli(tmp_path, "run", "--generator", "noise", "--n", "80",
                       "--epsilon", "1.5", "--formats", "json,dot,csv")
        assert code == 0
        doc = import_graph((tmp_path / "graph.json").read_bytes())
        assert doc.metadata["epsilon"] == 1.5
        assert doc.metadata["order_seed"] is None
        metrics = json.loads((tmp_path / "metrics.json").read_text())
        assert metrics["balls"] == doc.n_balls
        assert doc.metrics().as_dict() == metrics
        dot = (tmp_path / "graph.dot").read_text()
        assert dot.count("shape=circle") == doc.n_balls
        with open(tmp_path / "graph.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == sum(doc.ball_sizes())

    def test_order_seed_recorded_and_changes_graph(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["-o", str(a), "run", "--generator", "noise", "--n", "80",
                     "--epsilon", "1.5", "--order-seed", "5"]) == 0
        assert main(["-o", str(b), "run", "--generator", "noise", "--n", "80",
                     "--epsilon", "1.5", "--order-seed", "6"]) == 0
        da = import_graph((a / "graph.json").read_bytes())
        db = import_graph((b / "graph.json").read_bytes())
        assert da.metadata["order_seed"] == 5
        assert (a / "graph.json").read_bytes() != (b / "graph.json").read_bytes()

    def test_rerun_reproduces_every_byte(self, tmp_path):
        argv = ["-o", str(tmp_path), "run", "--generator", "five_part",
                "--n", "100", "--epsilon", "2", "--order-seed", "3",
                "--formats", "json,dot,csv"]
        assert main(argv) == 0
        names = ["graph.json", "graph.dot", "graph.csv", "metrics.json",
                 "manifest.json"]
        first = {n: (tmp_path / n).read_bytes() for n in names}
        assert main(argv) == 0
        for n in names:
            assert (tmp_path / n).read_bytes() == first[n], n

    def test_ingested_run_with_custom_ids(self, tmp_path):
        src = tmp_path / "firms.csv"
        src.write_text(
            "firm,wc,re,fail\nf1,0.1,0.2,0\nf2,0.15,0.22,1\nf3,5,5,0\n")
        code = run_cli(tmp_path, "run", "--input", str(src),
                       "--id-column", "firm", "--flag-column", "fail",
                       "--epsilon", "0.2", "--color", "proportion")
        assert code == 0
        doc = import_graph((tmp_path / "graph.json").read_bytes())
        assert doc.balls[0]["members"] == ["f1", "f2"]
        assert doc.balls[0]["value"] == 0.5
        assert doc.metadata["flag"] is None  # single flag picked by default


class TestSweep:
    def test_epsilon_sweep_outputs(self, tmp_path):
        code = run_cli(tmp_path, "sweep", "--generator", "noise", "--n", "40",
                       "--d", "3", "--parameter", "epsilon",
                       "--values", "1,2", "--reps", "10")
        assert code == 0
        with open(tmp_path / "sweep_summary.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["epsilon"] for r in rows] == ["1.0", "2.0"]
        assert float(rows[0]["balls_mean"]) >= float(rows[1]["balls_mean"])
        assert rows[0]["repetitions"] == "10"
        series = json.loads((tmp_path / "sweep_series.json").read_text())
        assert series["parameter"] == "epsilon"
        assert series["values"] == [1.0, 2.0]
        assert len(series["fields"]["balls"]["mean"]) == 2
        assert len(series["envelope"]["size_max"]) == 2

    def test_epsilon_sweep_over_input_file(self, tmp_path):
        assert run_cli(tmp_path, "generate", "--generator", "noise",
                       "--n", "40", "--d", "3") == 0
        src = tmp_path / "cloud.csv"
        code = run_cli(tmp_path, "sweep", "--input", str(src),
                       "--outcome-column", "Y", "--id-column", "point_id",
                       "--parameter", "epsilon", "--values", "1,2",
                       "--reps", "5")
        assert code == 0

    def test_n_sweep_requires_generator(self, tmp_path, capsys):
        code = run_cli(tmp_path, "sweep", "--parameter", "n_points",
                       "--values", "10,20", "--reps", "5")
        assert code == 1
        assert "generator" in read_error(capsys)["message"]

    def test_decreasing_values_usage_error(self, tmp_path, capsys):
        code = run_cli(tmp_path, "sweep", "--generator", "noise",
                       "--parameter", "epsilon", "--values", "2,1",
                       "--reps", "5")
        assert code == 1
        assert "increasing" in read_error(capsys)["message"]


class TestStats:
    def test_summary_and_correlations(self, tmp_path):
        code = run_cli(tmp_path, "stats", "--generator", "noise",
                       "--n", "200", "--d", "3")
        assert code == 0
        with open(tmp_path / "summary.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["variable"] for r in rows] == ["X1", "X2", "X3", "Y"]
        with open(tmp_path / "correlations.csv") as fh:
            crows = list(csv.DictReader(fh))
        assert float(crows[0]["X1"]) == 1.0
        assert float(crows[1]["X2"]) == 1.0


class TestKMeans:
    def test_clusters_and_assignments(self, tmp_path):
        code = run_cli(tmp_path, "kmeans", "--generator", "five_part",
                       "--n", "100", "--d", "3", "--k", "5",
                       "--restarts", "10", "--elbow-max", "6")
        assert code == 0
        with open(tmp_path / "kmeans_clusters.csv") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["cluster"] for r in rows] == ["1", "2", "3", "4", "5"]
        means = [float(r["outcome_mean"]) for r in rows]
        assert means == sorted(means)
        with open(tmp_path / "kmeans_assignments.csv") as fh:
            arows = list(csv.DictReader(fh))
        assert len(arows) == 100
        with open(tmp_path / "elbow.csv") as fh:
            erows = list(csv.DictReader(fh))
        wss = [float(r["wss"]) for r in erows]
        assert len(wss) == 6 and (np.diff(wss) <= 1e-9).all()

    def test_bad_k_usage_error(self, tmp_path, capsys):
        code = run_cli(tmp_path, "kmeans", "--generator", "noise",
                       "--n", "10", "--k", "11")
        assert code == 1
        assert read_error(capsys)["kind"] == "usage"


class TestExport:
    def test_reserialize_stored_graph(self, tmp_path):
        assert run_cli(tmp_path, "run", "--generator", "noise", "--n", "50",
                       "--epsilon", "1.5") == 0
        graph_json = tmp_path / "graph.json"
        out = tmp_path / "re"
        code = main(["-o", str(out), "export", "--graph", str(graph_json),
                     "--format", "json"])
        assert code == 0
        assert (out / "graph.json").read_bytes() == graph_json.read_bytes()
        code = main(["-o", str(out), "export", "--graph", str(graph_json),
                     "--format", "dot", "--out", "drawing.dot"])
        assert code == 0
        assert (out / "drawing.dot").read_text().startswith("graph ballmapper")

    def test_corrupt_graph_is_data_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"schema_version": 1}')
        assert run_cli(tmp_path, "export", "--graph", str(bad)) == 2
        assert read_error(capsys)["kind"] == "data"

    def test_missing_graph_is_data_error(self, tmp_path, capsys):
        assert run_cli(tmp_path, "export", "--graph",
                       str(tmp_path / "none.json")) == 2
        assert read_error(capsys)["kind"] == "data"


class TestOutputDirEnv:
    def test_env_var_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv("BALLMAPPER_OUTPUT_DIR", str(tmp_path))
        assert main(["generate", "--generator", "noise", "--n", "10"]) == 0
        assert (tmp_path / "cloud.csv").exists()


class TestServeOptions:
    def test_missing_ui_directory_is_data_error(self, tmp_path, capsys):
        code = run_cli(tmp_path, "serve", "--ui", str(tmp_path / "nowhere"))
        assert code == 2
        assert "index.html" in read_error(capsys)["message"]
