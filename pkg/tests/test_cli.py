"""CLI: schemas, exit codes, reproducibility fields, figure rendering."""

import csv
import io
import json

import pytest

from graphsieve.cli import _COLUMNS, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestExitCodes:
    def test_success(self, capsys):
        code, out, err = run_cli(capsys, "bounds", "--family", "simple", "-n", "50", "-p", "0.5")
        assert code == 0 and err == ""

    def test_usage_error_unknown_flag(self, capsys):
        code, out, err = run_cli(capsys, "bounds", "--family", "simple", "-n", "9",
                                 "-p", "0.5", "--frobnicate")
        assert code == 2
        assert err.startswith("error: usage:") and err.count("\n") == 1

    def test_usage_error_missing_required(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--family", "simple", "-n", "9")
        assert code == 2

    def test_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--family", "simple", "-n", "2", "-p", "0.5")
        assert code == 3
        assert err.startswith("error: domain:") and err.count("\n") == 1

    def test_resource_error(self, capsys):
        code, _, err = run_cli(capsys, "exact", "--family", "simple", "-n", "9", "-p", "1/2")
        assert code == 4
        assert err.startswith("error: resource:")


class TestSchemas:
    @pytest.mark.parametrize(
        "argv,sub",
        [
            (("bounds", "--family", "simple", "-n", "30", "-p", "0.5"), "bounds"),
            (("sieve", "--family", "simple", "-n", "4", "-p", "1/2"), "sieve"),
            (("exact", "--family", "simple", "-n", "4", "-p", "1/2"), "exact"),
            (
                ("simulate", "--family", "simple", "-n", "12", "-p", "0.5",
                 "--trials", "50", "--seed", "1"),
                "simulate",
            ),
            (
                ("sweep", "--family", "simple", "--n-list", "10,20",
                 "--p-list", "0.3,0.5"),
                "sweep",
            ),
            (
                ("threshold", "--family", "simple", "--c", "-2", "--n-list", "50,100"),
                "threshold",
            ),
        ],
    )
    def test_csv_column_sets(self, capsys, argv, sub):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        rows = parse_csv(out)
        assert rows, "no rows emitted"
        assert list(rows[0].keys()) == _COLUMNS[sub]

    def test_exact_json_matches_documented_shape(self, capsys):
        code, out, _ = run_cli(
            capsys, "exact", "--family", "simple", "-n", "3", "-p", "1/2",
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["probability"] == "1/2"
        assert doc["float"] == 0.5

    def test_json_rows_mirror_csv(self, capsys):
        code, out_csv, _ = run_cli(
            capsys, "bounds", "--family", "simple", "-n", "30", "-p", "0.5"
        )
        code2, out_json, _ = run_cli(
            capsys, "bounds", "--family", "simple", "-n", "30", "-p", "0.5",
            "--format", "json",
        )
        assert code == code2 == 0
        csv_rows = parse_csv(out_csv)
        json_rows = json.loads(out_json)
        assert len(csv_rows) == len(json_rows)
        assert [r["source"] for r in csv_rows] == [r["source"] for r in json_rows]

    def test_round_trip_fields_present(self, capsys):
        _, out, _ = run_cli(
            capsys, "simulate", "--family", "bipartite", "--shape", "2,3",
            "-p", "0.5", "--trials", "40", "--seed", "9",
        )
        row = parse_csv(out)[0]
        assert row["family"] == "bipartite"
        assert row["shape"] == "(2,3)"
        assert row["p"] == "1/2"
        assert row["seed"] == "9"
        assert row["trials"] == "40"

    def test_simulate_reproducible(self, capsys):
        args = ("simulate", "--family", "simple", "-n", "25", "-p", "0.4",
                "--trials", "60", "--seed", "5")
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        row1, row2 = parse_csv(out1)[0], parse_csv(out2)[0]
        row1.pop("elapsed"), row2.pop("elapsed")
        assert row1 == row2


class TestThresholdFormP:
    def test_bounds_accepts_c_form(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "--family", "simple", "-n", "2000", "-p", "c=-2"
        )
        assert code == 0
        row = parse_csv(out)[0]
        assert float(row["p"]) == pytest.approx(0.0908533, abs=1e-6)

    def test_exact_rejects_c_form(self, capsys):
        code, _, err = run_cli(
            capsys, "exact", "--family", "simple", "-n", "4", "-p", "c=-2"
        )
        assert code == 3 and "rational p" in err

    def test_sieve_rejects_c_form(self, capsys):
        code, _, err = run_cli(
            capsys, "sieve", "--family", "simple", "-n", "4", "-p", "c=0.5"
        )
        assert code == 3


class TestFamilies:
    def test_turan_kpartite(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "--family", "kpartite", "--turan", "-n", "30",
            "-k", "3", "-p", "0.5",
        )
        assert code == 0
        sources = [r["source"] for r in parse_csv(out)]
        assert "kpartite_turan_theorem" in sources
        assert "kpartite_theorem" in sources

    def test_directed_bounds_tagged(self, capsys):
        code, out, _ = run_cli(
            capsys, "bounds", "--family", "directed", "-n", "40", "-p", "0.5"
        )
        assert code == 0
        assert all(r["source"].startswith("directed_") for r in parse_csv(out))

    def test_shape_family(self, capsys):
        code, out, _ = run_cli(
            capsys, "sieve", "--family", "kpartite", "--shape", "2,2,1", "-p", "1/3"
        )
        assert code == 0
        row = parse_csv(out)[0]
        assert row["shape"] == "(1,2,2)"
        assert row["b_count"] == "10"


class TestSweepAndThreshold:
    def test_sweep_grid_size(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--family", "simple", "--n-list", "10,20,30",
            "--p-list", "0.2,0.5",
        )
        assert code == 0
        assert len(parse_csv(out)) == 6

    def test_sweep_with_trials(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--family", "simple", "--n-list", "12",
            "--p-list", "0.5", "--trials", "30", "--seed", "2",
        )
        row = parse_csv(out)[0]
        assert row["successes"] != ""
        assert 0.0 <= float(row["p_hat"]) <= 1.0

    def test_threshold_reports_asymptote(self, capsys):
        code, out, _ = run_cli(
            capsys, "threshold", "--family", "simple", "--c", "-2",
            "--n-list", "100",
        )
        row = parse_csv(out)[0]
        assert float(row["asymptote_lower"]) == pytest.approx(0.864664, abs=1e-5)
        assert row["asymptote_upper"] == ""
        assert float(row["c_observed"]) == pytest.approx(-2.0, abs=1e-8)

    def test_threshold_directed_turan(self, capsys):
        code, out, _ = run_cli(
            capsys, "threshold", "--family", "directed-bipartite", "--turan",
            "--c", "1.0", "--n-list", "40",
        )
        assert code == 0
        row = parse_csv(out)[0]
        assert float(row["c_observed"]) == pytest.approx(1.0, abs=1e-8)

    def test_figures_written(self, capsys, tmp_path):
        fig = tmp_path / "sweep.png"
        out_file = tmp_path / "rows.csv"
        code, _, _ = run_cli(
            capsys, "sweep", "--family", "simple", "--n-list", "10,14",
            "--p-list", "0.4", "--figure", str(fig), "--output", str(out_file),
        )
        assert code == 0
        assert fig.stat().st_size > 0
        assert out_file.read_text().startswith("family,")
        fig2 = tmp_path / "thr.png"
        code, _, _ = run_cli(
            capsys, "threshold", "--family", "simple", "--c", "2",
            "--n-list", "60,90", "--figure", str(fig2),
        )
        assert code == 0
        assert fig2.stat().st_size > 0
