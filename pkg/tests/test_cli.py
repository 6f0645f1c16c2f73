from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from hypernest.cli import main


@pytest.fixture
def plain_file(tmp_path):
    path = tmp_path / "toy.txt"
    path.write_text("1 2 3\n1 2\n1\n2 4\n")
    return path


@pytest.fixture
def simplex_files(tmp_path):
    (tmp_path / "mini-nverts.txt").write_text("2\n3\n2\n")
    (tmp_path / "mini-simplices.txt").write_text("1\n2\n1\n2\n3\n2\n1\n")
    return tmp_path / "mini"


def run_cli(*argv) -> int:
    return main([str(a) for a in argv])


class TestStats:
    def test_plain(self, plain_file, capsys):
        assert run_cli("stats", plain_file) == 0
        out = capsys.readouterr().out
        assert "n=4 m=4" in out
        assert "dag_edges=3" in out

    def test_simplex_format(self, simplex_files, capsys):
        assert run_cli("stats", simplex_files) == 0
        assert "m=2" in capsys.readouterr().out

    def test_lcc_and_max_size(self, tmp_path, capsys):
        path = tmp_path / "two.txt"
        path.write_text("1 2\n2 3\n7 8\n1 2 3 4\n")
        assert run_cli("stats", path, "--lcc", "--max-size", "3") == 0
        assert "n=3 m=2" in capsys.readouterr().out

    def test_json_to_stdout(self, plain_file, capsys):
        assert run_cli("stats", plain_file, "--json") == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["m"] == 4

    def test_json_output_file(self, plain_file, tmp_path, capsys):
        out = tmp_path / "stats.json"
        assert run_cli("stats", plain_file, "--out", out) == 0
        doc = json.loads(out.read_text())
        assert doc["n"] == 4 and doc["dag_edges"] == 3
        manifest = json.loads((tmp_path / "stats.json.manifest.json").read_text())
        assert manifest["command"] == "stats"
        assert str(out) in manifest["outputs"]

    def test_missing_input_is_data_error(self, tmp_path):
        assert run_cli("stats", tmp_path / "absent.txt") == 2

    def test_empty_input_is_data_error(self, tmp_path):
        empty = tmp_path / "empty.txt"
        empty.write_text("")
        assert run_cli("stats", empty) == 2

    def test_usage_error_exit_code(self, plain_file):
        with pytest.raises(SystemExit) as err:
            run_cli("stats", plain_file, "--no-such-flag")
        assert err.value.code == 1


class TestEncapsulation:
    def test_counts_json(self, plain_file, capsys):
        assert run_cli("encapsulation", plain_file, "--normalized", "--histograms") == 0
        doc = json.loads(capsys.readouterr().out)
        pairs = doc["observed"]["pairs"]
        assert pairs["3,2"]["count"] == 1
        assert pairs["3,1"]["count"] == 1
        assert pairs["2,1"]["count"] == 1
        assert pairs["2,1"]["per_size_n_edge"] == 0.5
        assert pairs["3,2"]["histogram"] == [1 / 3]

    def test_randomized_series(self, plain_file, capsys):
        assert run_cli("encapsulation", plain_file, "--randomize", "3", "--seed", "5") == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["randomized"]["samples"] == 3
        assert "3,2" in doc["randomized"]["mean_pair_counts"]


class TestHeights:
    def test_csv_and_summary(self, plain_file, tmp_path, capsys):
        out = tmp_path / "heights.csv"
        summary = tmp_path / "summary.json"
        code = run_cli(
            "heights", plain_file, "--out", out, "--summary-out", summary,
            "--randomize", "2", "--seed", "1",
        )
        assert code == 0
        rows = list(csv.DictReader(open(out)))
        assert {row["root_id"] for row in rows} == {"0"}
        doc = json.loads(summary.read_text())
        assert doc["observed"]["max_height"] == 2
        assert len(doc["randomized"]["per_sample_max_height"]) == 2

    def test_stdout_summary(self, plain_file, capsys):
        assert run_cli("heights", plain_file) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["observed"]["roots"] == 1


class TestRandomize:
    def test_report_and_samples(self, plain_file, tmp_path, capsys):
        report = tmp_path / "report.json"
        samples = tmp_path / "samples"
        code = run_cli(
            "randomize", plain_file, "--samples", "2", "--seed", "3",
            "--out", report, "--emit-samples", samples,
        )
        assert code == 0
        doc = json.loads(report.read_text())
        assert len(doc["samples"]) == 2
        assert doc["seed"] == 3
        assert (samples / "sample_000.txt").exists()
        assert (samples / "sample_001.txt").exists()


class TestRnhm:
    def test_generates_with_manifest(self, tmp_path, capsys):
        out = tmp_path / "nested.txt"
        code = run_cli(
            "rnhm", "--nodes", "20", "--max-size", "4", "--max-edges", "5",
            "--eps", "1,1", "--singletons", "--seed", "7", "--out", out,
        )
        assert code == 0
        manifest = json.loads((tmp_path / "nested.txt.manifest.json").read_text())
        assert manifest["rnhm"]["num_max_edges"] == 5
        assert manifest["rnhm"]["keep_probs"] == {"2": 1.0, "3": 1.0}
        lines = [ln for ln in out.read_text().splitlines() if ln]
        assert any(len(ln.split()) == 4 for ln in lines)

    def test_eps_pairs_syntax(self, tmp_path):
        out = tmp_path / "nested.txt"
        assert run_cli(
            "rnhm", "--nodes", "15", "--max-size", "4", "--max-edges", "3",
            "--eps", "3=0.5,2=1.0", "--seed", "1", "--out", out,
        ) == 0

    def test_bad_eps_length(self, tmp_path):
        code = run_cli(
            "rnhm", "--nodes", "15", "--max-size", "4", "--max-edges", "3",
            "--eps", "1,1,1", "--seed", "1", "--out", tmp_path / "x.txt",
        )
        assert code == 2

    def test_replay_byte_identical(self, tmp_path):
        args = [
            "rnhm", "--nodes", "18", "--max-size", "4", "--max-edges", "4",
            "--eps", "0.5,0.8", "--singletons", "--seed", "11",
        ]
        out1, out2 = tmp_path / "a.txt", tmp_path / "b.txt"
        assert run_cli(*args, "--out", out1) == 0
        assert run_cli(*args, "--out", out2) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestSimulate:
    def test_results_csv(self, plain_file, tmp_path):
        out = tmp_path / "results.csv"
        code = run_cli(
            "simulate", plain_file, "--variant", "strict",
            "--strategy", "smallest-first,uniform", "--seeds", "1,2",
            "--runs", "3", "--seed", "5", "--out", out,
        )
        assert code == 0
        rows = list(csv.DictReader(open(out)))
        assert len(rows) == 2 * 2 * 3
        assert {row["strategy"] for row in rows} == {"smallest-first", "uniform"}

    def test_summary_and_trajectories(self, plain_file, tmp_path):
        out = tmp_path / "results.csv"
        summary = tmp_path / "summary.json"
        traj = tmp_path / "traj.json"
        code = run_cli(
            "simulate", plain_file, "--variant", "non-strict",
            "--strategy", "smallest-first", "--seeds", "2", "--runs", "2",
            "--seed", "0", "--out", out, "--summary-out", summary, "--trajectories", traj,
        )
        assert code == 0
        cells = json.loads(summary.read_text())["cells"]
        assert cells[0]["mean_proportion"] >= 0.0
        dumps = json.loads(traj.read_text())
        assert dumps[0]["steps"][0] != []

    def test_randomized_comparison_summary(self, plain_file, tmp_path):
        out = tmp_path / "results.csv"
        summary = tmp_path / "summary.json"
        code = run_cli(
            "simulate", plain_file, "--variant", "strict",
            "--strategy", "uniform", "--seeds", "1", "--runs", "2",
            "--randomize", "2", "--seed", "1", "--out", out, "--summary-out", summary,
        )
        assert code == 0
        cell = json.loads(summary.read_text())["cells"][0]
        assert "observed_mean" in cell and "difference" in cell

    @pytest.mark.parametrize("variant", ["empirical-adjacent", "threshold"])
    def test_other_variants_run(self, plain_file, tmp_path, variant):
        out = tmp_path / "r.csv"
        code = run_cli(
            "simulate", plain_file, "--variant", variant, "--strategy", "smallest-first",
            "--seeds", "2", "--runs", "2", "--tau", "1", "--seed", "0", "--out", out,
        )
        assert code == 0
        rows = list(csv.DictReader(open(out)))
        assert len(rows) == 2 and rows[0]["variant"] == variant

    def test_jobs_flag_matches_serial(self, plain_file, tmp_path):
        argv = [
            "simulate", plain_file, "--variant", "strict",
            "--strategy", "uniform,smallest-first", "--seeds", "1,2",
            "--runs", "3", "--seed", "8",
        ]
        assert run_cli(*argv, "--jobs", "1", "--out", tmp_path / "serial.csv") == 0
        assert run_cli(*argv, "--jobs", "2", "--out", tmp_path / "parallel.csv") == 0
        assert (tmp_path / "serial.csv").read_bytes() == (tmp_path / "parallel.csv").read_bytes()

    def test_invalid_max_size_is_data_error(self, plain_file, tmp_path):
        assert run_cli("stats", plain_file, "--max-size", "-2") == 2

    def test_too_many_seeds_is_data_error(self, plain_file, tmp_path):
        code = run_cli(
            "simulate", plain_file, "--variant", "strict",
            "--strategy", "uniform", "--seeds", "99", "--runs", "1",
            "--out", tmp_path / "r.csv",
        )
        assert code == 2

    def test_replay_byte_identical(self, plain_file, tmp_path):
        argv = [
            "simulate", plain_file, "--variant", "strict",
            "--strategy", "smallest-first,size-biased", "--seeds", "1,3",
            "--runs", "4", "--seed", "21",
        ]
        out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
        assert run_cli(*argv, "--out", out1) == 0
        assert run_cli(*argv, "--out", out2) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_manifest_records_argv(self, plain_file, tmp_path):
        out = tmp_path / "r.csv"
        assert run_cli(
            "simulate", plain_file, "--variant", "strict", "--strategy", "uniform",
            "--seeds", "1", "--runs", "1", "--out", out,
        ) == 0
        manifest = json.loads((tmp_path / "r.csv.manifest.json").read_text())
        assert manifest["command"] == "simulate"
        assert "--variant" in manifest["argv"]
        assert str(plain_file) in manifest["inputs"]

    def test_manifest_replay_reproduces_checksums(self, plain_file, tmp_path):
        out = tmp_path / "r.csv"
        assert run_cli(
            "simulate", plain_file, "--variant", "non-strict",
            "--strategy", "size-biased", "--seeds", "2", "--runs", "3",
            "--seed", "13", "--out", out,
        ) == 0
        manifest = json.loads((tmp_path / "r.csv.manifest.json").read_text())
        out.unlink()
        assert main(manifest["argv"]) == 0
        from hypernest.cli import _sha256

        for path, checksum in manifest["outputs"].items():
            assert _sha256(Path(path)) == checksum
