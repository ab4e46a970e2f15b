import json
from pathlib import Path

from besovlp.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main, run_scenario, run_suite

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return path


BASE = {
    "schema": 1,
    "name": "t",
    "grid": {"d": 1, "n_per_dim": 64, "period": 1.0},
    "symbol": {"constructor": "identity", "params": {}},
    "operation": {"name": "multiplier", "params": {"p": 2.0, "q": 2.0}},
    "seed": 1,
    "budget": {"restarts": 2, "steps": 5},
}


def test_bundled_identity_scenario_passes(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, rep = run_scenario(SCENARIOS / "identity-thm44.json", out_override=out)
    assert code == EXIT_PASS
    assert rep["verdict"] == "pass"
    assert rep["reports"][0]["ratio"] <= 1.05
    assert out.exists()


def test_weak_type_scenario_reports_cda(tmp_path):
    code, rep = run_scenario(SCENARIOS / "weak-type-hilbert-transform.json")
    assert code == EXIT_PASS
    assert rep["reports"][0]["metadata"]["C_da"] == 10.0


def test_malformed_config_exits_one_without_outputs(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    out = tmp_path / "never.json"
    code, rep = run_scenario(path, out_override=out)
    assert code == EXIT_USAGE
    assert rep is None
    assert not out.exists()
    assert "error:" in capsys.readouterr().err


def test_unknown_operation_exits_one(tmp_path, capsys):
    cfg = dict(BASE)
    cfg["operation"] = {"name": "frobnicate", "params": {}}
    code, _ = run_scenario(write(tmp_path, "x.json", cfg))
    assert code == EXIT_USAGE
    assert "unknown operation" in capsys.readouterr().err


def test_missing_seed_exits_one(tmp_path, capsys):
    cfg = {k: v for k, v in BASE.items() if k != "seed"}
    code, _ = run_scenario(write(tmp_path, "x.json", cfg))
    assert code == EXIT_USAGE
    assert "seed" in capsys.readouterr().err


def test_wrong_schema_exits_one(tmp_path, capsys):
    cfg = dict(BASE, schema=99)
    code, _ = run_scenario(write(tmp_path, "x.json", cfg))
    assert code == EXIT_USAGE
    assert "schema" in capsys.readouterr().err


def test_unknown_symbol_constructor_message(tmp_path, capsys):
    cfg = dict(BASE, symbol={"constructor": "nonsense", "params": {}})
    code, _ = run_scenario(write(tmp_path, "x.json", cfg))
    assert code == EXIT_USAGE
    assert "unknown symbol constructor" in capsys.readouterr().err


def test_failing_verdict_exits_two(tmp_path):
    cfg = dict(BASE)
    cfg["operation"] = {
        "name": "verify",
        "target": "thm44",
        "params": {"s": 0.0, "sigma": 0.0, "u": "inf",
                   "p": 2.0, "v": 2.0, "q": 2.0, "w": 2.0},
    }
    cfg["tolerance"] = -0.9  # identity has ratio 1 > 0.1: deterministic fail
    code, rep = run_scenario(write(tmp_path, "fail.json", cfg))
    assert code == EXIT_FAIL
    assert rep["verdict"] == "fail"


def test_scenario_outputs_are_deterministic(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    run_scenario(SCENARIOS / "riesz-prop43.json", out_override=out1)
    run_scenario(SCENARIOS / "riesz-prop43.json", out_override=out2)
    assert out1.read_bytes() == out2.read_bytes()


def test_seed_override_changes_echo(tmp_path):
    _, rep1 = run_scenario(SCENARIOS / "gamma-band-limited.json")
    _, rep2 = run_scenario(SCENARIOS / "gamma-band-limited.json", seed_override=9)
    assert rep1["config"]["seed"] != rep2["config"]["seed"]


def test_sweep_scenario_writes_csv(tmp_path):
    cfg = json.loads((SCENARIOS / "riesz-sweep.json").read_text())
    cfg["operation"]["params"]["grids"] = [64, 128]
    cfg["output"] = {"json": str(tmp_path / "s.json"), "csv": str(tmp_path / "s.csv")}
    code, _ = run_scenario(write(tmp_path, "sweep.json", cfg))
    assert code == EXIT_PASS
    lines = (tmp_path / "s.csv").read_text().strip().splitlines()
    assert lines[0] == "p,q,n_per_dim,estimate"
    assert len(lines) == 1 + 3 * 2


def test_suite_empty_directory_exits_one(tmp_path, capsys):
    assert run_suite(tmp_path) == EXIT_USAGE


def test_suite_mixed_results(tmp_path, capsys):
    ok = dict(BASE)
    write(tmp_path, "a-ok.json", ok)
    bad = dict(BASE)
    bad["operation"] = {
        "name": "verify",
        "target": "thm44",
        "params": {"s": 0.0, "sigma": 0.0, "u": "inf",
                   "p": 2.0, "v": 2.0, "q": 2.0, "w": 2.0},
    }
    bad["tolerance"] = -0.9
    write(tmp_path, "b-bad.json", bad)
    out = tmp_path / "agg.json"
    code = run_suite(tmp_path, out=out)
    assert code == EXIT_FAIL
    matrix = json.loads(out.read_text())["suite"]
    assert matrix["a-ok.json"] == "pass"
    assert matrix["b-bad.json"] == "fail"
    assert sum(1 for v in matrix.values() if v == "fail") == 1


def test_main_subcommand_mismatch(tmp_path, capsys):
    cfg = dict(BASE)  # operation is 'multiplier'
    path = write(tmp_path, "m.json", cfg)
    assert main(["gamma", "--config", str(path)]) == EXIT_USAGE
    assert main(["multiplier", "--config", str(path)]) == EXIT_PASS


def test_main_verify_dispatch(capsys):
    code = main(["verify", "thm44", "--config",
                 str(SCENARIOS / "identity-thm44.json")])
    assert code == EXIT_PASS


def test_main_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == EXIT_USAGE


def test_matrix_symbol_scenario_infers_space_dims(tmp_path):
    cfg = dict(BASE)
    cfg["symbol"] = {
        "constructor": "diagonal",
        "params": {"entries": [
            {"constructor": "riesz", "params": {"sigma": 0.5}},
            {"constructor": "identity", "params": {}},
        ]},
    }
    cfg["operation"] = {"name": "multiplier",
                        "params": {"p": 2.0, "q": 2.0, "mean_zero": True}}
    code, rep = run_scenario(write(tmp_path, "diag.json", cfg))
    assert code == EXIT_PASS
    assert rep["reports"][0]["measured"] > 0


def test_symbol_object_accepted_by_gamma_multiplier_check():
    import numpy as np
    from besovlp import (
        GaussianSampler, GridFunction, GridSpec, ValueSpace,
        check_gamma_multiplier, identity_symbol,
    )

    grid = GridSpec(1, 64, 1.0)
    rng = np.random.default_rng(4)
    f = GridFunction(grid, rng.standard_normal((64, 1)))
    rep = check_gamma_multiplier(identity_symbol(grid), f,
                                 ValueSpace.scalar(), ValueSpace.scalar(),
                                 GaussianSampler(5))
    assert rep.passed


def test_kernel_constructor_scenario(tmp_path):
    cfg = {
        "schema": 1,
        "name": "kernel-route",
        "grid": {"d": 1, "n_per_dim": 256, "period": 1.0},
        "kernel": {"constructor": "hilbert", "params": {}},
        "operation": {"name": "weak-type",
                      "params": {"a": 1.0, "p0": 2.0, "q0": 2.0, "f_count": 6}},
        "seed": 3,
    }
    code, rep = run_scenario(write(tmp_path, "k.json", cfg))
    assert code == EXIT_PASS
    assert rep["reports"][0]["metadata"]["C_da"] == 10.0

    cfg2 = dict(cfg, name="kernel-hormander",
                operation={"name": "hormander", "params": {"a": 1.0}})
    code, rep = run_scenario(write(tmp_path, "kh.json", cfg2))
    assert code == EXIT_PASS
    assert rep["extras"]["constant"] > 0.3

    cfg3 = dict(cfg, kernel={"constructor": "nope"})
    code, _ = run_scenario(write(tmp_path, "kb.json", cfg3))
    assert code == EXIT_USAGE
