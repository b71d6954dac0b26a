"""Command-line surface: documented invocations, exit codes, schema, determinism."""

import json
from importlib import resources

import pytest

from stabctab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def tsv_rows(out):
    return [line.split("\t") for line in out.strip().splitlines()]


def test_stable_betti_enriques(capsys):
    code, out = run(capsys, "stable-betti", "--b1", "0", "--b2", "10", "--max-k", "4")
    assert code == 0
    rows = tsv_rows(out)
    assert rows[0] == ["k", "b_k"]
    assert [r[1] for r in rows[1:]] == ["1", "0", "11", "0", "78"]


def test_stable_betti_k0(capsys):
    code, out = run(capsys, "stable-betti", "--b1", "0", "--b2", "10", "--max-k", "0")
    assert code == 0
    assert tsv_rows(out)[1] == ["0", "1"]


def test_stable_betti_bielliptic(capsys):
    _, out = run(capsys, "stable-betti", "--b1", "2", "--b2", "2", "--max-k", "2")
    assert [r[1] for r in tsv_rows(out)[1:]] == ["1", "2", "4"]


def test_perverse_table(capsys):
    code, record = run_json(
        capsys, "perverse", "--b1", "0", "--b2", "10", "--max-order", "2"
    )
    assert code == 0
    assert record["results"]["table"] == [[0, 0, 1], [0, 2, 1], [1, 1, 9], [2, 0, 1]]


def test_perverse_order_zero(capsys):
    _, record = run_json(capsys, "perverse", "--b1", "2", "--b2", "2", "--max-order", "0")
    assert record["results"]["table"] == [[0, 0, 1]]


def test_perverse_oracle_agrees(capsys):
    code, out = run(
        capsys, "perverse", "--b1", "0", "--b2", "10", "--max-order", "10", "--oracle"
    )
    assert code == 0
    assert "AGREE" in out


def test_perverse_oracle_disagreement_exits_1(capsys, monkeypatch):
    from stabctab import cli as cli_mod

    monkeypatch.setattr(
        cli_mod.perverse, "first_oracle_mismatch", lambda s, k: ((1, 1), 8, 9)
    )
    code, out = run(capsys, "perverse", "--b1", "0", "--b2", "10",
                    "--max-order", "2", "--oracle")
    assert code == 1
    assert "DISAGREE" in out and "(1,1)" in out


def test_identity_pass(capsys):
    code, out = run(capsys, "identity", "--b1", "0", "--b2", "10", "--order", "12")
    assert code == 0
    assert tsv_rows(out)[0] == ["status", "PASS"]


def test_identity_order_zero(capsys):
    code, out = run(capsys, "identity", "--b1", "4", "--b2", "6", "--order", "0")
    assert code == 0
    assert "PASS" in out


def test_identity_perturbed_fails(capsys):
    code, out = run(
        capsys, "identity", "--b1", "0", "--b2", "10", "--order", "6", "--perturb"
    )
    assert code == 1
    assert "FAIL" in out and "q^0 t^0" in out


def test_germ_cusp(capsys):
    code, out = run(capsys, "germ", "--poly", "y^2 - x^3")
    assert code == 0
    assert tsv_rows(out) == [["mu", "2"], ["tau", "2"]]


def test_germ_smooth(capsys):
    _, out = run(capsys, "germ", "--poly", "x")
    assert tsv_rows(out)[0] == ["mu", "0"]


def test_germ_with_branches(capsys, tmp_path):
    branch_file = tmp_path / "tacnode.br"
    branch_file.write_text(
        resources.files("stabctab").joinpath("data/branches/tacnode.br").read_text()
    )
    code, record = run_json(
        capsys, "germ", "--poly", "y^2 - x^4", "--branches", str(branch_file)
    )
    assert code == 0
    assert record["results"] == {
        "mu": 3, "tau": 3, "delta": 2, "r": 2, "milnor_formula": "OK",
    }


def test_germ_bad_poly_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["germ", "--poly", "y^2 - z^3"])
    assert exc.value.code == 2


def test_bounds_enriques_d0(capsys):
    code, record = run_json(
        capsys, "bounds", "--surface", "enriques", "--beta-sq", "10", "--i", "2", "--j", "3"
    )
    assert code == 0
    assert record["results"]["d0"] == 4


def test_bounds_bielliptic(capsys):
    code, record = run_json(
        capsys, "bounds", "--surface", "bielliptic", "--a", "1", "--b", "1",
        "--lambda", "1", "--mu", "1", "--gamma", "2", "--d", "3",
    )
    assert code == 0
    results = record["results"]
    assert results["codim_bound"] == "5"
    assert results["n_bound"] == 8
    assert results["governing_case"] == "1 or 2 (tie)"


def test_bounds_enriques_small(capsys):
    code, record = run_json(
        capsys, "bounds", "--surface", "enriques", "--beta-sq", "2", "--d", "1"
    )
    assert code == 0
    assert record["results"]["codim_bound"] == "1/2"
    assert record["results"]["n_bound"] == 0


def test_bounds_enriques_cases(capsys):
    _, record = run_json(
        capsys, "bounds", "--surface", "enriques", "--beta-sq", "10", "--d", "10"
    )
    assert record["results"]["codim_bound"] == "5"
    assert record["results"]["governing_case"] == "2.1"
    assert ["1.1", "-2+20*sqrt(5)"] in record["results"]["case_bounds"]


def test_bounds_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--surface", "enriques", "--beta-sq", "10"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--surface", "bielliptic", "--a", "1", "--d", "2"])
    assert exc.value.code == 2


def test_decompose_preset(capsys):
    code, out = run(capsys, "decompose", "--lattice", "bielliptic-rank2", "--beta", "1,1")
    assert code == 0
    assert tsv_rows(out) == [["theta1", "theta2"], ["0,1", "1,0"], ["1,0", "0,1"]]


def test_decompose_seven_pairs(capsys):
    _, record = run_json(
        capsys, "decompose", "--lattice", "bielliptic-rank2", "--beta", "2,2"
    )
    assert record["results"]["count"] == 7


def test_decompose_minimal_empty(capsys):
    code, out = run(capsys, "decompose", "--lattice", "bielliptic-rank2", "--beta", "1,0")
    assert code == 0
    assert tsv_rows(out) == [["theta1", "theta2"]]


def test_decompose_bad_beta(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decompose", "--lattice", "bielliptic-rank2", "--beta", "1,2,3"])
    assert exc.value.code == 2


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["stable-betti", "--b1", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_json_records_validate_against_schema(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(
        resources.files("stabctab").joinpath("data/output.schema.json").read_text()
    )
    invocations = [
        ("stable-betti", "--b1", "0", "--b2", "10", "--max-k", "3"),
        ("perverse", "--b1", "2", "--b2", "2", "--max-order", "4"),
        ("identity", "--b1", "0", "--b2", "1", "--order", "4"),
        ("germ", "--poly", "x*y"),
        ("bounds", "--surface", "enriques", "--beta-sq", "10", "--d", "10"),
        ("decompose", "--lattice", "bielliptic-rank2", "--beta", "2,2"),
    ]
    for argv in invocations:
        _, record = run_json(capsys, *argv)
        jsonschema.validate(record, schema)


def test_byte_determinism(capsys):
    argv = ("perverse", "--b1", "0", "--b2", "10", "--max-order", "6", "--format", "json")
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second
    argv = ("bounds", "--surface", "enriques", "--beta-sq", "10", "--d", "10")
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second


def test_env_override_of_default_order(capsys, monkeypatch):
    monkeypatch.setenv("STABCTAB_MAX_ORDER", "3")
    _, out = run(capsys, "stable-betti", "--b1", "0", "--b2", "10")
    assert len(tsv_rows(out)) == 1 + 4  # header + k = 0..3
    monkeypatch.setenv("STABCTAB_MAX_ORDER", "frog")
    with pytest.raises(SystemExit) as exc:
        main(["stable-betti", "--b1", "0", "--b2", "10"])
    assert exc.value.code == 2
