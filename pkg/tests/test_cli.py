"""Command-line interface: subcommands, output formats, environment
overrides, and the exit-code contract."""

import csv
import io
import json

import pytest

from cbhseries import catalog, cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# list


def test_list_table(capsys):
    code, out, err = run_cli(capsys, "list")
    assert code == cli.EXIT_OK
    lines = out.strip().split("\n")
    assert lines[0].split()[:2] == ["id", "paper_ref"]
    assert len(lines) == 1 + len(catalog.inventory())
    assert lines[1].startswith("E1E")


def test_list_json(capsys):
    code, out, _ = run_cli(capsys, "list", "--format", "json")
    assert code == cli.EXIT_OK
    rows = json.loads(out)
    assert [r["id"] for r in rows] == catalog.identity_ids()
    assert set(rows[0]) == {"id", "paper_ref", "class", "has_closed_form"}


def test_list_csv(capsys):
    code, out, _ = run_cli(capsys, "list", "--format", "csv")
    assert code == cli.EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == len(catalog.inventory())
    assert rows[0]["id"] == "E1E"


# ---------------------------------------------------------------------------
# verify


def test_verify_single_pass(capsys):
    code, out, _ = run_cli(capsys, "verify", "--id", "EQ20",
                           "--digits", "12", "--precision", "32",
                           "--format", "json")
    assert code == cli.EXIT_OK
    rows = json.loads(out)
    assert len(rows) == 1
    row = rows[0]
    assert tuple(row) == catalog.VerificationReport.SCHEMA
    assert row["status"] == "PASS"
    assert row["digits_verified"] >= 12


def test_verify_json_round_trips_byte_identical(capsys):
    code, out, _ = run_cli(capsys, "verify", "--id", "EQ22", "--id", "E1H",
                           "--digits", "12", "--precision", "32",
                           "--format", "json")
    assert code == cli.EXIT_OK
    assert out == json.dumps(json.loads(out), indent=2) + "\n"


def test_verify_inventory_order(capsys):
    # ids given out of order come back in inventory order
    code, out, _ = run_cli(capsys, "verify", "--id", "EQ20", "--id", "E1E",
                           "--digits", "12", "--precision", "32",
                           "--format", "json")
    assert code == cli.EXIT_OK
    assert [r["id"] for r in json.loads(out)] == ["E1E", "EQ20"]


def test_verify_value_digit_count(capsys):
    code, out, _ = run_cli(capsys, "verify", "--id", "EQ20",
                           "--digits", "12", "--precision", "40",
                           "--format", "json")
    assert code == cli.EXIT_OK
    val = json.loads(out)[0]["lhs_value"]
    digits = val.split("e")[0].replace(".", "").lstrip("-").lstrip("0")
    assert len(digits) == 40


def test_verify_requires_id_xor_all(capsys):
    code, _, err = run_cli(capsys, "verify", "--digits", "12")
    assert code == cli.EXIT_USAGE
    assert "choose exactly one" in err
    code, _, err = run_cli(capsys, "verify", "--all", "--id", "EQ20")
    assert code == cli.EXIT_USAGE


def test_verify_unknown_id(capsys):
    code, _, err = run_cli(capsys, "verify", "--id", "BOGUS")
    assert code == cli.EXIT_USAGE
    assert "BOGUS" in err


def test_verify_digits_exceed_precision(capsys):
    code, _, err = run_cli(capsys, "verify", "--id", "EQ20",
                           "--digits", "30", "--precision", "32")
    assert code == cli.EXIT_USAGE
    assert "digits + 10" in err


def test_verify_budget_error_exit_code(capsys):
    code, out, _ = run_cli(capsys, "verify", "--id", "EQ10",
                           "--digits", "12", "--precision", "32",
                           "--budget-terms", "50", "--format", "json")
    assert code == cli.EXIT_COMPUTE
    assert json.loads(out)[0]["status"] == "ERROR"


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("BH_TERM_BUDGET", "50")
    code, out, _ = run_cli(capsys, "verify", "--id", "EQ10",
                           "--digits", "12", "--precision", "32",
                           "--format", "json")
    assert code == cli.EXIT_COMPUTE
    # the explicit flag wins over the environment
    code, out, _ = run_cli(capsys, "verify", "--id", "EQ10",
                           "--digits", "12", "--precision", "32",
                           "--budget-terms", "100000", "--format", "json")
    assert code == cli.EXIT_OK
    monkeypatch.setenv("BH_PRECISION", "not-a-number")
    code, _, err = run_cli(capsys, "verify", "--id", "EQ20", "--digits", "12")
    assert code == cli.EXIT_USAGE


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "verify", "--id", "EQ20",
                           "--digits", "12", "--precision", "32",
                           "--format", "json", "--output", str(dest))
    assert code == cli.EXIT_OK
    assert out == ""
    assert json.loads(dest.read_text())[0]["id"] == "EQ20"


# ---------------------------------------------------------------------------
# eval


def test_eval_series(capsys):
    code, out, _ = run_cli(capsys, "eval", "--series", "EQ20",
                           "--terms", "500", "--precision", "32",
                           "--format", "json")
    assert code == cli.EXIT_OK
    rows = {r["quantity"]: r["value"] for r in json.loads(out)}
    assert "closed form" in rows
    assert rows["closed form - partial"].lstrip("-").startswith("0.0000") or \
        "e-" in rows["closed form - partial"]


def test_eval_genfun(capsys):
    code, out, _ = run_cli(capsys, "eval", "--genfun", "HN_CBC",
                           "--x", "0.1875", "--terms", "400",
                           "--precision", "40", "--format", "json")
    assert code == cli.EXIT_OK
    rows = {r["quantity"]: r["value"] for r in json.loads(out)}
    # 4 log(3/2) = 1.6218604...
    assert rows["closed form"].startswith("1.62186043")


def test_eval_genfun_out_of_domain(capsys):
    code, _, err = run_cli(capsys, "eval", "--genfun", "CBC", "--x", "0.3")
    assert code == cli.EXIT_COMPUTE
    assert "(-0.25, 0.25)" in err


def test_eval_usage_errors(capsys):
    code, _, err = run_cli(capsys, "eval", "--series", "EQ20",
                           "--genfun", "CBC", "--x", "0.1")
    assert code == cli.EXIT_USAGE
    code, _, err = run_cli(capsys, "eval", "--genfun", "NOPE", "--x", "0.1")
    assert code == cli.EXIT_USAGE
    code, _, err = run_cli(capsys, "eval", "--genfun", "CBC")
    assert code == cli.EXIT_USAGE
    code, _, err = run_cli(capsys, "eval", "--series", "EQ20", "--terms", "0")
    assert code == cli.EXIT_USAGE


# ---------------------------------------------------------------------------
# constants


def test_constants(capsys):
    code, out, _ = run_cli(capsys, "constants", "--digits", "12",
                           "--format", "json")
    assert code == cli.EXIT_OK
    rows = {r["name"]: r["value"] for r in json.loads(out)}
    # values are rounded, not truncated, at the 12th significant digit
    assert rows["pi"] == "3.14159265359"
    assert rows["G"] == "0.915965594177"
    assert rows["log2"] == "0.693147180560"
    assert rows["Li2(1/2)"] == "0.582240526465"


def test_constants_digit_margin(capsys):
    code, _, err = run_cli(capsys, "constants", "--digits", "60",
                           "--precision", "64")
    assert code == cli.EXIT_USAGE


# ---------------------------------------------------------------------------
# top level


def test_usage_exit_code_on_bad_args(capsys):
    assert cli.main(["frobnicate"]) == cli.EXIT_USAGE
    assert cli.main([]) == cli.EXIT_USAGE
