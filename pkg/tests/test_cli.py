import json
from pathlib import Path

import pytest

from bicm.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, run


def _lines(capsys: pytest.CaptureFixture[str]) -> list[str]:
    return capsys.readouterr().out.strip().splitlines()


def test_tables_report_eight_pam_gap(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["tables"]) == EXIT_OK
    lines = _lines(capsys)
    assert lines[0] == "table,alphabet,labeling,alpha,computed_db,published_db,within_tolerance"
    row = next(line for line in lines if line.startswith("zero-rate-gap,pam:8,brgc,"))
    cells = row.split(",")
    assert float(cells[4]) == pytest.approx(1.18, abs=0.01)
    assert cells[-1] == "true"


def test_alpha_of_bsgc_is_zero(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["alpha", "--alphabet", "pam:8", "--labeling", "bsgc"]) == EXIT_OK
    assert _lines(capsys) == ["alpha,alpha_over_log2e,zero_rate_ebn0,zero_rate_ebn0_db", "0,0,inf,inf"]


def test_alpha_json_flags_infinity(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["alpha", "--alphabet", "pam:8", "--labeling", "bsgc", "--format", "json"]) == EXIT_OK
    body = json.loads(capsys.readouterr().out)
    assert body["manifest"]["subcommand"] == "alpha"
    assert body["manifest"]["config"]["labeling"] == "bsgc"
    assert body["result"]["zero_rate_ebn0"] is None
    assert body["result"]["zero_rate_ebn0_inf"] is True


def test_foo_check_of_eight_psk_fbc(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["foo-check", "--alphabet", "psk:8", "--labeling", "fbc"]) == EXIT_OK
    lines = _lines(capsys)
    assert lines[0] == "is_foo,residual,k,v_0,v_1"
    assert len(lines) == 4
    assert all(line.startswith("false,") for line in lines[1:])


def test_hadamard_spectrum_of_natural_pam(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["ht", "--alphabet", "pam:8"]) == EXIT_OK
    lines = _lines(capsys)
    assert lines[0] == "index,t_0,energy,power_of_two"
    assert lines[1] == "0,0,0,false"
    assert lines[2] == "1,-1,1,true"
    assert lines[5] == "4,-4,16,true"


@pytest.mark.parametrize(
    "argv",
    [
        ["capacity", "--alphabet", "pam:8", "--bogus"],
        ["frobnicate"],
        ["alpha"],
        [],
    ],
)
def test_usage_errors(argv: list[str], capsys: pytest.CaptureFixture[str]) -> None:
    assert run(argv) == EXIT_USAGE
    assert "usage" in capsys.readouterr().err


def test_domain_errors(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["alpha", "--alphabet", "pam:4", "--labeling", "bsgc"]) == EXIT_DOMAIN
    assert "BSGC requires m >= 3" in capsys.readouterr().err
    assert run(["alpha", "--alphabet", "pam:8", "--bits", "0.5,0.5"]) == EXIT_DOMAIN
    assert "--bits needs m=3" in capsys.readouterr().err
    assert run(["alpha", "--alphabet", "pam:8", "--labeling-file", "missing.txt"]) == EXIT_DOMAIN


def test_capacity_is_deterministic(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["capacity", "--alphabet", "pam:4", "--snr-db-min", "-5", "--snr-db-max", "5", "--quad-nodes", "32"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run([*argv, "--workers", "1"]) == EXIT_OK
    assert capsys.readouterr().out == first
    lines = first.strip().splitlines()
    assert lines[0] == "snr_db,rate_bpcu,ebn0_db"
    assert len(lines) == 22
    assert lines[11].startswith("0,")


def test_csv_out_writes_manifest_sidecar(tmp_path: Path) -> None:
    out = tmp_path / "census" / "pam4.csv"
    assert run(["search-labelings", "--alphabet", "pam:4", "--out", str(out)]) == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("alpha,count\n")
    manifest = json.loads((tmp_path / "census" / "pam4.manifest.json").read_text(encoding="utf-8"))
    assert manifest["subcommand"] == "search-labelings"
    assert manifest["config"]["alphabet"] == "pam:4"
    summary = json.loads((tmp_path / "census" / "pam4.summary.json").read_text(encoding="utf-8"))
    assert summary["total"] == 24
    assert summary["foo_count"] == 8


def test_json_out_embeds_manifest(tmp_path: Path) -> None:
    out = tmp_path / "gap.json"
    argv = ["gap", "--alphabet", "pam:8", "--rates", "0", "--format", "json", "--out", str(out)]
    assert run(argv) == EXIT_OK
    body = json.loads(out.read_text(encoding="utf-8"))
    assert body["manifest"]["version"]
    assert body["result"][0]["gap_db"] == pytest.approx(1.18, abs=0.01)
    assert not (tmp_path / "gap.manifest.json").exists()


def test_search_summary_in_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["search-labelings", "--alphabet", "pam:4", "--format", "json"]) == EXIT_OK
    body = json.loads(capsys.readouterr().out)
    summary = body["result"]["summary"]
    assert summary["total"] == 24
    assert summary["foo_count"] == 8
    assert summary["distinct_counts"] >= 1
    assert summary["class_count"] == len(body["result"]["census"]["classes"])


def test_search_summary_next_to_csv_on_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["search-labelings", "--alphabet", "pam:4"]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.startswith("alpha,count\n")
    line = next(line for line in captured.err.splitlines() if line.startswith("summary "))
    summary = json.loads(line.removeprefix("summary "))
    assert summary["total"] == 24
    assert "distinct_counts" in summary
    assert "max_witness" in summary


def test_unsorted_f_curve_rates_are_a_domain_error(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["f-curve", "--alphabet", "pam:8", "--kind", "awgn", "--rates", "1,0.5"]) == EXIT_DOMAIN
    assert "strictly increasing" in capsys.readouterr().err


def test_oversized_quadrature_order_is_a_domain_error(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["capacity", "--alphabet", "pam:8", "--snr-db-min", "0", "--snr-db-max", "0", "--quad-nodes", "5000"]
    assert run(argv) == EXIT_DOMAIN
    assert "nodes" in capsys.readouterr().err
