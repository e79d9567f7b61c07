"""CLI surface: exit codes, JSON reports, CSV tables, presets listing."""

import csv
import json

import pytest

from mtwcheck.cli import CSV_COLUMNS, RunReport, main, resolve_cost


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_neg_cosh_a3s(capsys):
    code, out, _ = run(capsys, "check", "--cost", "neg-cosh", "--K", "-1",
                       "--dim", "3", "--diameter", "2")
    assert code == 0
    assert "A3s" in out


def test_check_sq_weak_only(capsys):
    code, out, _ = run(capsys, "check", "--cost", "sq", "--K", "0",
                       "--dim", "3", "--diameter", "5")
    assert code == 0
    assert "A3w-only" in out


def test_check_not_even_exit_2(capsys):
    code, _, err = run(capsys, "check", "--cost", "z^3", "--K", "0",
                       "--dim", "3", "--diameter", "1")
    assert code == 2
    assert "not-even" in err


def test_check_failing_cost_exit_1(capsys):
    code, out, _ = run(capsys, "check", "--cost", "z^2/2 + 0.05*z^4", "--K", "0",
                       "--dim", "3", "--diameter", "1")
    assert code == 1
    assert "fails" in out


def test_check_json_report(capsys):
    code, out, _ = run(capsys, "check", "--cost", "neg-log1p-cos", "--K", "1",
                       "--dim", "3", "--diameter", "2.5", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert data["verdict"] == "A3s"
    assert data["grid"] == 4096
    assert set(data["min_slacks"]) == {"beta", "gamma", "delta", "combo"}
    assert data["wall_time_ms"] > 0.0


def test_json_report_roundtrip(capsys):
    code, out, _ = run(capsys, "check", "--cost", "neg-cosh", "--K", "-1",
                       "--dim", "2", "--diameter", "2", "--json")
    assert code == 0
    report = RunReport.from_dict(json.loads(out))
    assert RunReport.from_dict(json.loads(json.dumps(report.to_dict()))) == report


def test_check_csv_output(tmp_path, capsys):
    path = tmp_path / "scan.csv"
    code, _, _ = run(capsys, "check", "--cost", "neg-cosh", "--K", "-1",
                     "--dim", "3", "--diameter", "2", "--grid", "512",
                     "--csv", str(path))
    assert code == 0
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 1 + 512
    first = dict(zip(CSV_COLUMNS, map(float, rows[1])))
    assert first["z"] == 0.0
    assert first["A"] == pytest.approx(-1.0)


def test_eval_flat_zero(capsys):
    code, out, _ = run(capsys, "eval", "--cost", "sq", "--K", "0", "--dim", "3",
                       "--u", "1,0,0", "--v", "0,1,0", "--w", "0,0,1",
                       "--method", "closed")
    assert code == 0
    assert float(out.split(":")[1]) == pytest.approx(0.0, abs=1e-12)


def test_eval_all_routes_agree(capsys):
    code, out, _ = run(capsys, "eval", "--cost", "neg-log1p-cosh", "--K", "-1",
                       "--dim", "3", "--u", "1,0,0", "--v", "0,0.5,0",
                       "--w", "0,0,1", "--method", "all", "--json")
    assert code == 0
    data = json.loads(out)
    values = data["values"]
    assert values["closed"] == pytest.approx(1.5, abs=1e-9)
    assert abs(values["closed"] - values["jacobi"]) <= 1e-8
    assert abs(values["closed"] - values["oracle"]) <= 5e-3 * max(1.0, abs(values["closed"]))


def test_eval_zero_w_all_routes(capsys):
    code, out, _ = run(capsys, "eval", "--cost", "neg-cosh", "--K", "-1",
                       "--dim", "3", "--u", "1,0,0", "--v", "0,0.5,0",
                       "--w", "0,0,0", "--method", "all", "--json")
    assert code == 0
    values = json.loads(out)["values"]
    for name in ("closed", "jacobi", "oracle"):
        assert values[name] == pytest.approx(0.0, abs=1e-10)


def test_eval_zero_v_exit_2(capsys):
    code, _, err = run(capsys, "eval", "--cost", "sq", "--K", "0", "--dim", "3",
                       "--u", "1,0,0", "--v", "0,0,0", "--w", "0,0,1")
    assert code == 2


def test_eval_dimension_mismatch_exit_2(capsys):
    code, _, err = run(capsys, "eval", "--cost", "sq", "--K", "0", "--dim", "3",
                       "--u", "1,0", "--v", "0,1,0", "--w", "0,0,1")
    assert code == 2
    assert "components" in err


def test_eval_v_out_of_range_exit_2(capsys):
    code, _, _ = run(capsys, "eval", "--cost", "neg-log1p-cosh", "--K", "-1",
                     "--dim", "3", "--u", "1,0,0", "--v", "0,5,0", "--w", "0,0,1")
    assert code == 2


def test_perturb_holds(capsys):
    code, out, _ = run(capsys, "perturb", "--f=-4*z^2", "--k", "-1", "--b", "1")
    assert code == 0
    assert "holds" in out


def test_perturb_zero_profile_fails(capsys):
    code, out, _ = run(capsys, "perturb", "--f", "0", "--k", "-1", "--b", "1")
    assert code == 1
    assert "fails" in out


def test_perturb_boundary_fails(capsys):
    code, out, _ = run(capsys, "perturb", "--f=-4*z^2", "--k", "-9", "--b", "1")
    assert code == 1


def test_perturb_bad_k_exit_2(capsys):
    code, _, _ = run(capsys, "perturb", "--f=-4*z^2", "--k", "1", "--b", "1")
    assert code == 2


def test_presets_listing(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0
    assert "neg-cosh" in out and "A3s at K=-1" in out
    assert "neg-log1p-cos" in out and "A3s at K=+1" in out
    assert "quartic" in out and "perturbation" in out


def test_resolve_cost_forms():
    assert resolve_cost("neg-cosh", 2.0).name == "neg-cosh"
    quartic = resolve_cost("quartic(0.002)", 1.0)
    assert "0.002" in quartic.text
    custom = resolve_cost("z^2/2", 1.0)
    assert custom.name is None


def test_quartic_check_via_cli(capsys):
    code, out, _ = run(capsys, "check", "--cost", "quartic(0.001)", "--K", "0",
                       "--dim", "3", "--diameter", "1")
    assert code == 0
    assert "A3s" in out
