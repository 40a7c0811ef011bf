"""End-to-end CLI behavior: flags, exit codes, output stability."""

from __future__ import annotations

import json
import sys

import pytest

from dmxy import SweepTable
from dmxy import cli


def _run_table(args: list[str], path) -> SweepTable:
    rc = cli.main([*args, "--out", str(path)])
    assert rc == 0
    return SweepTable.from_csv(path.read_text(encoding="utf-8"))


def test_spectrum_flat_case(tmp_path):
    table = _run_table(
        ["spectrum", "--J", "1", "--gamma", "1", "--lambda", "0", "--D", "0", "--N", "4"],
        tmp_path / "spec.csv",
    )
    assert table.n_rows == 4
    assert table.column("lambda_k") == (2.0, 2.0, 2.0, 2.0)
    assert table.metadata["sector"] == "paper"


def test_spectrum_rotations_ignore_dm(tmp_path):
    plain = _run_table(
        ["spectrum", "--N", "12", "--lambda", "0.7", "--D", "0"], tmp_path / "a.csv"
    )
    twisted = _run_table(
        ["spectrum", "--N", "12", "--lambda", "0.7", "--D", "3"], tmp_path / "b.csv"
    )
    assert plain.column("cos_theta") == twisted.column("cos_theta")
    assert plain.column("sin_theta") == twisted.column("sin_theta")
    assert plain.column("lambda_k") != twisted.column("lambda_k")


def test_spectrum_rejects_single_site(capsys):
    assert cli.main(["spectrum", "--N", "1"]) == 2
    assert "at least 2" in capsys.readouterr().err


def test_sweep_derivative_peak_sits_at_the_critical_field(tmp_path):
    table = _run_table(
        [
            "sweep", "--axis", "lambda", "--lo", "0", "--hi", "2", "--steps", "201",
            "--N", "201", "--gamma", "1", "--D", "0", "--observables", "dbeta",
        ],
        tmp_path / "sweep.csv",
    )
    field = table.column("lambda")
    magnitude = [abs(v) for v in table.column("dbeta")]
    peak = field[magnitude.index(max(magnitude))]
    assert 0.9 < peak < 1.1


def test_sweep_over_chain_length(tmp_path):
    table = _run_table(
        [
            "sweep", "--axis", "N", "--lo", "4", "--hi", "16", "--steps", "4",
            "--lambda", "1.0", "--observables", "gap,energy",
        ],
        tmp_path / "n.csv",
    )
    assert table.column("N") == (4.0, 8.0, 12.0, 16.0)
    assert all(g > 0 for g in table.column("gap"))


def test_sweep_rejects_bad_flags(capsys):
    base = ["sweep", "--axis", "lambda", "--lo", "0", "--hi", "2", "--N", "8"]
    assert cli.main([*base, "--steps", "1"]) == 2
    assert cli.main([*base, "--steps", "5", "--observables", "bogus"]) == 2
    assert cli.main(["sweep", "--axis", "lambda", "--lo", "2", "--hi", "0", "--steps", "5"]) == 2
    assert cli.main([*base, "--steps", "5", "--workers", "0"]) == 2
    capsys.readouterr()


def test_sweep_bytes_do_not_depend_on_worker_count(tmp_path):
    args = [
        "sweep", "--axis", "D", "--lo", "0", "--hi", "1", "--steps", "21",
        "--N", "16", "--lambda", "0.5",
    ]
    rc1 = cli.main([*args, "--workers", "1", "--out", str(tmp_path / "w1.csv")])
    rc2 = cli.main([*args, "--workers", "2", "--out", str(tmp_path / "w2.csv")])
    assert rc1 == rc2 == 0
    assert (tmp_path / "w1.csv").read_bytes() == (tmp_path / "w2.csv").read_bytes()


def test_check_small_run_passes(tmp_path, capsys):
    rc = cli.main(
        ["check", "--N", "2,3,4", "--draws", "4", "--seed", "11", "--out", str(tmp_path / "c.csv")]
    )
    assert rc == 0
    assert "PASS" in capsys.readouterr().err
    lines = (tmp_path / "c.csv").read_text(encoding="utf-8").splitlines()
    header = next(line for line in lines if not line.startswith("#"))
    assert header.split(",")[0] == "N"
    assert sum(1 for line in lines if not line.startswith("#")) == 1 + 12


def test_check_is_deterministic(tmp_path, capsys):
    args = ["check", "--N", "4,6", "--draws", "3", "--seed", "42"]
    cli.main([*args, "--out", str(tmp_path / "r1.csv")])
    cli.main([*args, "--out", str(tmp_path / "r2.csv")])
    capsys.readouterr()
    assert (tmp_path / "r1.csv").read_bytes() == (tmp_path / "r2.csv").read_bytes()


def test_check_json_output(tmp_path, capsys):
    rc = cli.main(
        [
            "check", "--N", "3,9", "--draws", "2", "--seed", "5",
            "--format", "json", "--out", str(tmp_path / "c.json"),
        ]
    )
    capsys.readouterr()
    assert rc == 0
    payload = json.loads((tmp_path / "c.json").read_text(encoding="utf-8"))
    assert payload["columns"][0] == "N"
    assert len(payload["rows"]) == 4
    by_n = {row[0]: row for row in payload["rows"]}
    assert isinstance(by_n[3][-1], float)  # small chains get the spectrum check
    assert by_n[9][-1] is None  # large ones only the energy comparison


def test_check_rejects_bad_flags(capsys):
    assert cli.main(["check", "--N", "16", "--draws", "1"]) == 2
    assert cli.main(["check", "--N", "4", "--draws", "0"]) == 2
    assert cli.main(["check", "--N", "4", "--seed", "-1"]) == 2
    assert cli.main(["check", "--N", "4,junk"]) == 2
    capsys.readouterr()


def test_scaling_writes_fit_and_sidecar_table(tmp_path):
    out = tmp_path / "fit.json"
    rc = cli.main(
        [
            "scaling", "--sizes", "5,7,9", "--window", "0.5:1.5",
            "--grid-points", "11", "--out", str(out),
        ]
    )
    assert rc == 0
    fit = json.loads(out.read_text(encoding="utf-8"))
    assert fit["sizes"] == [5, 7, 9]
    assert len(fit["peak_locations"]) == 3
    sidecar = SweepTable.from_csv((tmp_path / "fit.json.csv").read_text(encoding="utf-8"))
    assert sidecar.column("N") == (5.0, 7.0, 9.0)


def test_scaling_stdout_carries_both_documents(capsys):
    rc = cli.main(["scaling", "--sizes", "5,7,9", "--window", "0.5:1.5", "--grid-points", "11"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "log_fit_slope" in out
    assert "N,peak_lambda,peak_height" in out


def test_scaling_rejects_underdetermined_fit(capsys):
    assert cli.main(["scaling", "--sizes", "51,101"]) == 2
    assert cli.main(["scaling", "--sizes", "5,7,9", "--window", "oops"]) == 2
    capsys.readouterr()


def test_ground_json_flat_case(capsys):
    rc = cli.main(["ground", "--N", "6", "--lambda", "0", "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["energy"] == -6.0
    assert payload["filled"] == 0
    assert payload["occupations"] == [0] * 6


def test_ground_flags_negative_mode_regime(capsys):
    rc = cli.main(["ground", "--N", "10", "--lambda", "0", "--D", "2"])
    assert rc == 0
    captured = capsys.readouterr()
    assert "negative quasiparticle" in captured.err
    row = captured.out.strip().splitlines()[-1].split(",")
    assert float(row[2]) < 0.0  # min_lambda column


def test_requires_subcommand():
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == 2


def test_entry_point_wraps_main(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["dmxy", "ground", "--N", "4"])
    with pytest.raises(SystemExit) as excinfo:
        cli.entry()
    assert excinfo.value.code == 0
    capsys.readouterr()
