from __future__ import annotations

import json

import pytest

from qes_tcs import cli
from qes_tcs.service import create_app


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- validate


def test_validate_admissible_exit_zero(capsys):
    code, out, _ = run(capsys, "validate", "--class", "I", "--k", "3", "--tau", "4", "--b", "1")
    assert code == 0
    assert "paper_regular:    yes" in out
    assert "violated:         none" in out


def test_validate_divergent_class_iii(capsys):
    code, out, _ = run(capsys, "validate", "--class", "III", "--k", "2", "--tau", "4", "--b", "1")
    assert code == 2
    assert "normalization-convergence" in out


def test_validate_class_ii_tau_rule(capsys):
    code, out, _ = run(capsys, "validate", "--class", "II", "--k", "3", "--tau", "3", "--b", "1")
    assert code == 2
    assert "tau>=4" in out


def test_validate_json_mode(capsys):
    code, out, _ = run(capsys, "validate", "--json", "--class", "I", "--k", "3",
                       "--tau", "4", "--b", "1")
    assert code == 0
    body = json.loads(out)
    assert body["class"] == "I" and body["paper_regular"] is True


def test_validate_missing_flag_is_usage_error(capsys):
    code, _, err = run(capsys, "validate", "--class", "I", "--k", "3", "--tau", "4")
    assert code == 1
    assert "error" in err


def test_validate_unknown_class_is_usage_error(capsys):
    code, _, err = run(capsys, "validate", "--class", "IV", "--k", "3", "--tau", "4", "--b", "1")
    assert code == 1


def test_validate_bad_k_is_usage_error(capsys):
    # k <= 1/2 cannot build parameters at all
    code, _, err = run(capsys, "validate", "--class", "I", "--k", "0.3", "--tau", "4", "--b", "1")
    assert code == 1
    assert "RepresentationError" in err


def test_unknown_subcommand_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


# ---------------------------------------------------------------- table


def test_table_stdout_csv(capsys):
    code, out, _ = run(capsys, "table", "--class", "II", "--k", "3", "--tau", "4",
                       "--b", "1", "--quantity", "density", "--rho-min", "0.01",
                       "--rho-max", "100", "--points", "20")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "rho,density"
    assert len(lines) == 21


def test_table_deterministic_bytes(capsys):
    argv = ["table", "--class", "I", "--k", "4", "--tau", "5", "--b", "2",
            "--quantity", "potential", "--rho-min", "0.1", "--rho-max", "10",
            "--points", "33"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_table_to_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "--class", "III", "--k", "3", "--tau", "5",
                       "--b", "2", "--quantity", "density", "--rho-min", "0.1",
                       "--rho-max", "10", "--points", "5", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("rho,density\n")


def test_table_io_failure_exits_3(tmp_path, capsys):
    target = tmp_path / "missing" / "t.csv"
    code, _, err = run(capsys, "table", "--class", "III", "--k", "3", "--tau", "5",
                       "--b", "2", "--quantity", "density", "--rho-min", "0.1",
                       "--rho-max", "10", "--points", "5", "--out", str(target))
    assert code == 3
    assert "io" in err


def test_table_wavefunction_off_tower_exits_2(capsys):
    code, _, err = run(capsys, "table", "--class", "I", "--k", "3", "--tau", "4",
                       "--b", "1", "--m", "4", "--quantity", "wavefunction",
                       "--rho-min", "0.1", "--rho-max", "10", "--points", "5")
    assert code == 2
    assert "ConstraintViolation" in err


def test_table_bad_grid_is_usage_error(capsys):
    code, _, err = run(capsys, "table", "--class", "I", "--k", "3", "--tau", "4",
                       "--b", "1", "--quantity", "density", "--rho-min", "10",
                       "--rho-max", "1", "--points", "5")
    assert code == 1
    assert "ValidationError" in err


# ---------------------------------------------------------------- normalize


def test_normalize_value(capsys):
    code, out, _ = run(capsys, "normalize", "--class", "III", "--k", "3", "--tau", "5", "--b", "2")
    assert code == 0
    assert out.startswith("norm = ")
    value = float(out.split()[2])
    assert value == pytest.approx(247.0 / 14.0, rel=1e-8)


def test_normalize_divergent_exits_2(capsys):
    code, out, _ = run(capsys, "normalize", "--class", "III", "--k", "2", "--tau", "4", "--b", "1")
    assert code == 2
    assert out.startswith("diverges (")
    assert "alpha = 1" in out


def test_normalize_weighted_diagnostic(capsys):
    code, out, _ = run(capsys, "normalize", "--class", "III", "--k", "2", "--tau", "5",
                       "--b", "3.5", "--measure", "weighted")
    assert code == 2  # the flat measure diverges at the origin
    lines = out.splitlines()
    assert lines[0].startswith("diverges (")
    assert lines[1].startswith("weighted: norm = ")


# ---------------------------------------------------------------- verify


def test_verify_single_set(capsys):
    code, out, _ = run(capsys, "verify", "--class", "I", "--k", "3", "--tau", "4", "--b", "1")
    assert code == 0
    body = json.loads(out)
    assert body["all_passed"] is True
    assert body["conventions"] == {"I": "C_chain"}


def test_verify_perturbation_self_test(capsys):
    code, out, _ = run(capsys, "verify", "--class", "I", "--k", "3", "--tau", "4",
                       "--b", "1", "--perturb-potential", "0.01")
    assert code == 4
    body = json.loads(out)
    assert body["all_passed"] is False


def test_verify_needs_target(capsys):
    code, _, err = run(capsys, "verify")
    assert code == 1
    code, _, err = run(capsys, "verify", "--all", "--class", "I", "--k", "3",
                       "--tau", "4", "--b", "1")
    assert code == 1


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--all")
    assert code == 0
    body = json.loads(out)
    assert len(body["entries"]) == 9
    assert body["conventions"] == {"I": "C_chain", "II": "C_chain", "III": "C_chain"}


# ---------------------------------------------------------------- tcs


def test_tcs_example(capsys):
    code, out, _ = run(capsys, "tcs", "--N", "3", "--lambda", "1", "--r", "2",
                       "--s", "0", "--k", "5", "--b", "1")
    assert code == 0
    assert "tau = 8" in out
    assert "class I: paper_regular=yes" in out


def test_tcs_small_example(capsys):
    code, out, _ = run(capsys, "tcs", "--N", "2", "--lambda", "1", "--r", "1",
                       "--s", "0", "--k", "2", "--b", "1")
    assert code == 0
    assert "tau = 3" in out
    assert "class I: paper_regular=yes" in out


def test_tcs_r_zero_is_usage_error(capsys):
    code, _, err = run(capsys, "tcs", "--N", "3", "--lambda", "1", "--r", "0",
                       "--s", "0", "--k", "5", "--b", "1")
    assert code == 1
    assert "[1, N-1]" in err


# ---------------------------------------------------------------- presets / figures


def test_presets_listing(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 6
    assert lines[0].startswith("I-k3-t4-b1")


def test_figures_writes_tables(tmp_path, capsys):
    out_dir = tmp_path / "figs"
    code, out, _ = run(capsys, "figures", "--out", str(out_dir))
    assert code == 0
    files = sorted(f.name for f in out_dir.iterdir())
    assert len(files) == 12
    assert "I-k3-t4-b1-density.csv" in files
    assert "III-k4-t6-b3-potential.csv" in files
    sample = (out_dir / "I-k3-t4-b1-density.csv").read_text().splitlines()
    assert sample[0] == "rho,density" and len(sample) == 242


def test_figures_single_preset(tmp_path, capsys):
    out_dir = tmp_path / "figs"
    code, out, _ = run(capsys, "figures", "--out", str(out_dir), "--preset",
                       "II-k3-t4-b1", "--quantity", "density")
    assert code == 0
    assert [f.name for f in out_dir.iterdir()] == ["II-k3-t4-b1-density.csv"]


def test_figures_unknown_preset(tmp_path, capsys):
    code, _, err = run(capsys, "figures", "--out", str(tmp_path), "--preset", "nope")
    assert code == 1
    assert "available" in err


# ---------------------------------------------------------------- remote mode


@pytest.fixture()
def remote(monkeypatch):
    # TestClient is a synchronous httpx.Client wired straight into the
    # ASGI app, so the full wire path runs without a socket
    from fastapi.testclient import TestClient

    http = TestClient(create_app())
    remote_client = cli.HttpClient("http://testserver", client=http)

    def factory(url):
        return remote_client if url else cli.LocalClient()

    monkeypatch.setattr(cli, "_make_client", factory)
    yield
    http.close()


def test_remote_mode_matches_local(remote, capsys):
    argv = ["validate", "--class", "I", "--k", "3", "--tau", "4", "--b", "1"]
    code_l, out_l, _ = run(capsys, *argv)
    code_r, out_r, _ = run(capsys, "--url", "http://testserver", *argv)
    assert code_l == code_r == 0
    assert out_l == out_r


def test_remote_mode_propagates_error_kinds(remote, capsys):
    code, _, err = run(capsys, "--url", "http://testserver", "table", "--class", "I",
                       "--k", "3", "--tau", "4", "--b", "1", "--m", "4",
                       "--quantity", "wavefunction", "--rho-min", "0.1",
                       "--rho-max", "10", "--points", "5")
    assert code == 2
    assert "ConstraintViolation" in err


def test_remote_normalize_round_trip(remote, capsys):
    argv = ["normalize", "--class", "III", "--k", "3", "--tau", "5", "--b", "2"]
    code_l, out_l, _ = run(capsys, *argv)
    code_r, out_r, _ = run(capsys, "--url", "http://testserver", *argv)
    assert code_l == code_r == 0
    assert out_l == out_r
