import json

import pytest
from click.testing import CliRunner

from kappacalc.cli import SCHEMA_VERSION, main

FAST = ["--dim", "2", "--order", "2"]


@pytest.fixture
def runner():
    return CliRunner()


def test_verify_space_passes(runner):
    res = runner.invoke(main, ["verify", *FAST, "--basis", "left",
                               "--suites", "space,shift"])
    assert res.exit_code == 0, res.output
    assert "identities hold" in res.output
    assert "[FAIL]" not in res.output


def test_verify_json_output(runner):
    res = runner.invoke(main, ["verify", *FAST, "--suites", "space", "--json"])
    assert res.exit_code == 0, res.output
    payload = json.loads(res.output)
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["passed"] is True
    assert payload["config"]["dim"] == 2
    assert all(s["passed"] for s in payload["suites"])


def test_verify_custom_phi_psi(runner):
    res = runner.invoke(main, ["verify", *FAST, "--phi", "exp(-A)",
                               "--psi", "1", "--suites", "space,lorentz"])
    assert res.exit_code == 0, res.output


def test_verify_natural_realization(runner):
    res = runner.invoke(main, ["verify", "--dim", "3", "--order", "2",
                               "--realization", "natural",
                               "--direction", "1,1,0",
                               "--suites", "space,lorentz,shift"])
    assert res.exit_code == 0, res.output


def test_verify_fault_injection_exits_one(runner):
    res = runner.invoke(main, ["verify", *FAST, "--suites", "calculus",
                               "--inject-fault"])
    assert res.exit_code == 1, res.output
    assert "[FAIL]" in res.output


def test_invalid_inputs_exit_two(runner):
    cases = [
        ["verify", *FAST, "--basis", "no-such-basis", "--suites", "space"],
        ["verify", *FAST, "--suites", "bogus"],
        ["verify", *FAST, "--phi", "2+A", "--psi", "1", "--suites", "space"],
        ["verify", *FAST, "--phi", "exp(", "--psi", "1", "--suites", "space"],
        ["verify", "--dim", "1", "--suites", "space"],
        ["verify", *FAST, "--realization", "natural", "--suites", "hopf"],
        ["show", *FAST, "nonsense"],
        ["show", *FAST, "coproduct"],
        ["commutator", *FAST, "xhat0", "xhat9"],
    ]
    for args in cases:
        res = runner.invoke(main, args)
        assert res.exit_code == 2, (args, res.output)
        assert "error:" in res.output


def test_config_file(runner, tmp_path):
    cfg = {
        "schema_version": SCHEMA_VERSION,
        "dim": 2,
        "order": 2,
        "basis": "weyl-symmetric",
        "s": "1/2",
        "suites": ["space", "box"],
    }
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    res = runner.invoke(main, ["verify", "--config", str(path)])
    assert res.exit_code == 0, res.output


def test_config_file_bad_schema(runner, tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"schema_version": 99}))
    res = runner.invoke(main, ["verify", "--config", str(path)])
    assert res.exit_code == 2


def test_config_file_rejects_float_rationals(runner, tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"schema_version": SCHEMA_VERSION,
                                "s": 0.5}))
    res = runner.invoke(main, ["verify", "--config", str(path)])
    assert res.exit_code == 2


def test_show_objects(runner):
    for name in ("xhat0", "M10", "Z", "box", "dhat", "xi1", "p0"):
        res = runner.invoke(main, ["show", *FAST, name])
        assert res.exit_code == 0, (name, res.output)
        assert res.output.strip()


def test_show_json(runner):
    res = runner.invoke(main, ["show", *FAST, "xhat0", "--json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert payload["schema_version"] == SCHEMA_VERSION
    assert "terms" in payload["value"]


def test_commutator_command(runner):
    res = runner.invoke(main, ["commutator", *FAST, "xhat0", "xhat1"])
    assert res.exit_code == 0, res.output
    res_graded = runner.invoke(main, ["commutator", *FAST, "--graded",
                                      "dx0", "dx1"])
    assert res_graded.exit_code == 0
    assert res_graded.output.strip() == "0"


def test_coproduct_and_antipode_commands(runner):
    res = runner.invoke(main, ["coproduct", *FAST, "p1"])
    assert res.exit_code == 0, res.output
    res = runner.invoke(main, ["antipode", *FAST, "Z"])
    assert res.exit_code == 0, res.output
    res = runner.invoke(main, ["coproduct", *FAST, "q7"])
    assert res.exit_code == 2


def test_act_command(runner):
    res = runner.invoke(main, ["act", *FAST, "p1", "xhat1"])
    assert res.exit_code == 0, res.output
    assert "i" in res.output  # p_1 |> x_1 = -i


def test_catalog_command(runner):
    res = runner.invoke(main, ["catalog"])
    assert res.exit_code == 0
    assert "bicrossproduct" in res.output
    res = runner.invoke(main, ["catalog", "--json"])
    payload = json.loads(res.output)
    assert payload["schema_version"] == SCHEMA_VERSION
    assert "left" in payload["bases"]


def test_verify_hopf_suite_small(runner):
    res = runner.invoke(main, ["verify", *FAST, "--suites", "hopf"])
    assert res.exit_code == 0, res.output


def test_verify_actions_suite_small(runner):
    res = runner.invoke(main, ["verify", *FAST, "--suites", "actions"])
    assert res.exit_code == 0, res.output
