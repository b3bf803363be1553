"""End-to-end CLI behavior: file round trips, output formats, exit codes."""

import json
import math

import pytest

from supertrees import to_interchange, single_edge
from supertrees.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_hyperstar(tmp_path, capsys):
    out = tmp_path / "h.json"
    code, stdout, _ = run_cli(capsys, "gen", "hyperstar", "--k", "3", "--m", "4", "--out", str(out))
    assert code == 0
    assert "n=9 m=4 k=3 N2=1" in stdout
    obj = json.loads(out.read_text())
    assert obj["k"] == 3 and obj["n"] == 9 and len(obj["edges"]) == 4


def test_gen_broom_summary(tmp_path, capsys):
    out = tmp_path / "b.json"
    code, stdout, _ = run_cli(capsys, "gen", "broom", "--k", "3", "--t", "1,1,2", "--out", str(out))
    assert code == 0
    assert "m=5" in stdout and "N2=3" in stdout


def test_gen_tree_power_path(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, stdout, _ = run_cli(
        capsys, "gen", "tree-power", "--k", "4", "--tree", "path:5", "--out", str(out)
    )
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["n"] == 13 and len(obj["edges"]) == 4


def test_gen_to_stdout_keeps_summary_on_stderr(capsys):
    code, stdout, stderr = run_cli(capsys, "gen", "hyperstar", "--k", "2", "--m", "3")
    assert code == 0
    assert json.loads(stdout)["k"] == 2
    assert "n=4 m=3 k=2 N2=1" in stderr


def test_gen_parameter_error(capsys):
    code, _, stderr = run_cli(capsys, "gen", "broom", "--k", "2", "--t", "1,1,1")
    assert code == 1
    assert "error" in stderr


def test_rho_single_edge(tmp_path, capsys):
    f = tmp_path / "e.json"
    f.write_text(json.dumps(to_interchange(single_edge(3))))
    code, stdout, _ = run_cli(capsys, "rho", str(f), "--method", "power")
    assert code == 0
    assert "rho = 1" in stdout
    assert "iterations = 1" in stdout


def test_rho_auto_reports_both_and_gap(tmp_path, capsys):
    out = tmp_path / "h.json"
    run_cli(capsys, "gen", "hyperstar", "--k", "3", "--m", "4", "--out", str(out))
    code, stdout, _ = run_cli(capsys, "rho", str(out), "--method", "auto", "--output", "json")
    assert code == 0
    payload = json.loads(stdout)
    assert payload["power"]["rho"] == pytest.approx(4 ** (1 / 3), abs=1e-8)
    assert payload["alpha"]["rho"] == pytest.approx(4 ** (1 / 3), abs=1e-8)
    assert payload["gap"] <= 1e-8


def test_rho_formula_only_for_tree_powers(tmp_path, capsys):
    out = tmp_path / "b.json"
    run_cli(capsys, "gen", "broom", "--k", "3", "--t", "1,1,2", "--out", str(out))
    code, _, stderr = run_cli(capsys, "rho", str(out), "--method", "formula")
    assert code == 1 and "formula" in stderr


def test_rho_round_trip_is_bit_stable(tmp_path, capsys):
    out = tmp_path / "h.json"
    run_cli(capsys, "gen", "double-star-power", "--k", "3", "--t", "2,2", "--out", str(out))
    _, first, _ = run_cli(capsys, "rho", str(out), "--output", "json")
    _, second, _ = run_cli(capsys, "rho", str(out), "--output", "json")
    assert first == second
    assert json.loads(first)["power"]["rho"] == pytest.approx(2 ** (2 / 3), abs=1e-8)


def test_certify_construct_subnormal(tmp_path, capsys):
    out = tmp_path / "b.json"
    run_cli(capsys, "gen", "broom", "--k", "3", "--t", "1,1,2", "--out", str(out))
    code, stdout, _ = run_cli(
        capsys, "certify", str(out), "--construct", "t11m3", "--alpha", "0.25"
    )
    assert code == 0
    assert "strictly-subnormal" in stdout
    assert f"rho < {0.25 ** (-1 / 3):.9g}" in stdout


def test_certify_construct_supernormal(tmp_path, capsys):
    out = tmp_path / "b.json"
    run_cli(capsys, "gen", "broom", "--k", "3", "--t", "1,1,2", "--out", str(out))
    alpha = 2.0 - math.sqrt(3.0)
    code, stdout, _ = run_cli(
        capsys, "certify", str(out), "--construct", "t11m3", "--alpha", f"{alpha!r}"
    )
    assert code == 0
    assert "strictly-supernormal" in stdout
    assert "rho >" in stdout


def test_certify_explicit_certificate_normal(tmp_path, capsys):
    h = single_edge(3)
    hfile = tmp_path / "e.json"
    hfile.write_text(json.dumps(to_interchange(h)))
    cert = dict(to_interchange(h))
    cert["alpha"] = 1.0
    cert["B"] = [{"v": v, "e": 0, "w": 1.0} for v in range(3)]
    cfile = tmp_path / "cert.json"
    cfile.write_text(json.dumps(cert))
    code, stdout, _ = run_cli(capsys, "certify", str(hfile), "--certificate", str(cfile))
    assert code == 0
    assert "class = normal" in stdout
    assert "consistent = True" in stdout


def test_certify_construct_requires_canonical_broom(tmp_path, capsys):
    out = tmp_path / "h.json"
    run_cli(capsys, "gen", "hyperstar", "--k", "3", "--m", "5", "--out", str(out))
    code, _, stderr = run_cli(capsys, "certify", str(out), "--construct", "t11m3", "--alpha", "0.2")
    assert code == 1 and "broom" in stderr


def test_verify_subcommands_pass(capsys):
    assert run_cli(capsys, "verify", "main1", "--k", "3", "--m", "5")[0] == 0
    assert run_cli(capsys, "verify", "main2", "--k", "3", "--m", "5")[0] == 0
    assert run_cli(capsys, "verify", "hofmeister", "--m", "6")[0] == 0
    assert run_cli(capsys, "verify", "partition", "--k", "3", "--m", "6")[0] == 0
    assert run_cli(capsys, "verify", "sandwich", "--k", "3", "--m", "5")[0] == 0
    code, stdout, _ = run_cli(
        capsys, "verify", "moving-edges", "--k", "3", "--m", "5", "--trials", "10", "--seed", "5"
    )
    assert code == 0 and "PASS" in stdout


def test_verify_main1_prints_rank3(capsys):
    code, stdout, _ = run_cli(capsys, "verify", "main1", "--k", "3", "--m", "5")
    assert code == 0
    assert "rank 3: S(2,2) power  rho = 1.58740105" in stdout


def test_verify_main2_rank4_is_broom(capsys):
    code, stdout, _ = run_cli(capsys, "verify", "main2", "--k", "3", "--m", "6")
    assert code == 0
    assert "rank 4: broom(1,1,3)" in stdout


def test_verify_sandwich_prints_interval(capsys):
    code, stdout, _ = run_cli(capsys, "verify", "sandwich", "--k", "3", "--m", "5")
    assert code == 0
    assert "1.55113352 < rho(broom(1,1,2)) = 1.56474683 < 1.58740105" in stdout


def test_rho_auto_on_broom_agrees(tmp_path, capsys):
    out = tmp_path / "b.json"
    run_cli(capsys, "gen", "broom", "--k", "3", "--t", "1,1,2", "--out", str(out))
    code, stdout, _ = run_cli(capsys, "rho", str(out), "--method", "auto", "--output", "json")
    assert code == 0
    payload = json.loads(stdout)
    assert abs(payload["power"]["rho"] - payload["alpha"]["rho"]) <= 1e-8


def test_verify_rejects_bad_usage(capsys):
    code, _, _ = run_cli(capsys, "verify", "hofmeister", "--k", "3", "--m", "5")
    assert code == 1
    code, _, _ = run_cli(capsys, "verify", "main1", "--m", "5")
    assert code == 1


def test_enumerate_counts_and_formats(tmp_path, capsys):
    code, stdout, _ = run_cli(capsys, "enumerate", "--k", "2", "--m", "4", "--output", "csv")
    assert code == 0
    assert len(stdout.strip().split("\n")) == 4  # header + 3 classes
    out = tmp_path / "report.json"
    code, _, _ = run_cli(
        capsys, "enumerate", "--k", "3", "--m", "4", "--output", "json", "--out", str(out)
    )
    assert code == 0
    obj = json.loads(out.read_text())
    assert len(obj["entries"]) == 4
    rhos = [row["rho"] for row in obj["entries"]]
    assert rhos == sorted(rhos, reverse=True)
    assert [row["rank"] for row in obj["entries"]] == [1, 2, 3, 4]


def test_enumerate_output_is_byte_stable(capsys):
    _, first, _ = run_cli(capsys, "enumerate", "--k", "3", "--m", "5", "--output", "csv")
    _, second, _ = run_cli(capsys, "enumerate", "--k", "3", "--m", "5", "--output", "csv")
    assert first == second


def test_enumerate_limit_env_override(monkeypatch, capsys):
    code, _, stderr = run_cli(capsys, "enumerate", "--k", "2", "--m", "8", "--output", "csv")
    assert code == 1 and "limit" in stderr
    monkeypatch.setenv("SUPERTREE_ENUM_LIMIT", "8")
    code, stdout, _ = run_cli(capsys, "enumerate", "--k", "2", "--m", "8", "--output", "csv")
    assert code == 0
    assert len(stdout.strip().split("\n")) == 48  # header + the 47 trees on 9 vertices


def test_missing_file_reports_error(capsys):
    code, _, stderr = run_cli(capsys, "rho", "/nonexistent/file.json")
    assert code == 1 and "error" in stderr
