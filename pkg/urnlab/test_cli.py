"""
Tests for the command-line runner and its configuration
"""

import csv
import io
import json

import pytest

from urnlab import cli, config
from urnlab.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, OutputRecord, main
from urnlab.monte_carlo import ModelSpec, estimate, frequency_table, run_counts


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (config.ENV_SEED, config.ENV_TRIALS, config.ENV_Z_THRESHOLD, config.ENV_WORKERS):
        monkeypatch.delenv(name, raising=False)


# ------------------ exact ------------------

def test_exact_all_agrees(capsys):
    code, out = run(capsys, "exact", "--n", "100")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["command"] == "exact"
    assert data["checks"] == {"agreement": True}
    for method in ("weighted-prior", "conditional", "symmetry", "inductive"):
        assert data["results"][method]["exact"] == "2/3"
        assert data["results"][method]["decimal"] == pytest.approx(0.666666666667)
    assert data["results"]["uniform-prior"]["exact"] == "1/2"
    assert data["results"]["conditional.first-red"]["exact"] == "1/2"
    assert data["results"]["conditional.both-red"]["exact"] == "1/3"


def test_exact_single_method_small_urn(capsys):
    code, out = run(capsys, "exact", "--n", "2", "--method", "inductive")
    assert code == EXIT_OK
    data = json.loads(out)
    assert list(data["results"]) == ["inductive"]
    assert data["results"]["inductive"]["exact"] == "2/3"


def test_exact_rejects_tiny_urn(capsys):
    code, out = run(capsys, "exact", "--n", "1")
    assert code == EXIT_USAGE
    assert out == ""


def test_json_output_round_trips(capsys):
    _, out = run(capsys, "exact", "--n", "7")
    record = OutputRecord.model_validate_json(out)
    assert record.results["symmetry"].exact.denominator == 3
    assert record.model_dump_json(indent=2) + "\n" == out


def test_table_output(capsys):
    code, out = run(capsys, "exact", "--n", "5", "--format", "table")
    assert code == EXIT_OK
    assert "weighted-prior" in out
    assert "2/3" in out
    assert "✓ agreement" in out


# ------------------ prefix ------------------

@pytest.mark.parametrize("prefix,expected", [("R", "2/3"), ("", "1/2"), ("RRG", "3/5")])
def test_prefix(capsys, prefix, expected):
    code, out = run(capsys, "prefix", "--n", "10", "--prefix", prefix)
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["results"]["next-red"]["exact"] == expected
    assert data["checks"]["rule-of-succession"] is True


def test_prefix_posterior_rows(capsys):
    _, out = run(capsys, "prefix", "--n", "4", "--prefix", "RG", "--posterior")
    data = json.loads(out)
    assert data["results"]["posterior[x=0]"]["exact"] == "0/1"
    assert data["results"]["posterior[x=2]"]["exact"] == "2/5"


@pytest.mark.parametrize("argv", [
    ["prefix", "--n", "2", "--prefix", "RG"],
    ["prefix", "--n", "5", "--prefix", "RB"],
    ["sweep", "--min", "9", "--max", "3"],
])
def test_domain_errors_exit_with_usage_status(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == EXIT_USAGE
    error = json.loads(out)
    assert error["command"] == argv[0]
    assert error["error"]


# ------------------ sweep ------------------

def test_sweep_csv(capsys):
    code, out = run(capsys, "sweep", "--min", "2", "--max", "6", "--method", "weighted-prior",
                    "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == '"n","method","exact","decimal"'
    assert lines[1] == '2,"weighted-prior","2/3",0.666666666667'
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["n"] for row in rows] == ["2", "3", "4", "5", "6"]
    assert {row["exact"] for row in rows} == {"2/3"}


def test_sweep_all_methods_constant(capsys):
    code, out = run(capsys, "sweep", "--min", "2", "--max", "12")
    assert code == EXIT_OK
    data = json.loads(out)
    assert all(data["checks"].values())
    assert data["checks"]["uniform-prior-constant"] is True
    assert len(data["table"]) == 5 * 11


# ------------------ catalog ------------------

@pytest.mark.parametrize("name,answer", [
    ("bertrand-box", "2/3"),
    ("boy-girl-older", "1/2"),
    ("boy-girl-at-least-one", "1/3"),
])
def test_catalog(capsys, name, answer):
    code, out = run(capsys, "catalog", name)
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["results"]["answer"]["exact"] == answer
    assert sum(row["condition"] for row in data["table"]) >= 1


def test_catalog_unknown_name(capsys):
    code, _ = run(capsys, "catalog", "monty-hall")
    assert code == EXIT_USAGE


def test_catalog_table_lists_answer(capsys):
    _, out = run(capsys, "catalog", "bertrand-box", "--format", "table")
    assert "answer: 2/3" in out


# ------------------ simulate ------------------

def test_simulate_is_reproducible(capsys):
    argv = ["simulate", "--model", "symmetry", "--n", "20", "--trials", "20000", "--seed", "5"]
    code_a, out_a = run(capsys, *argv)
    code_b, out_b = run(capsys, *argv)
    assert out_a == out_b
    data = json.loads(out_a)
    assert data["simulation"]["trials"] == 20000
    assert data["simulation"]["exact_target"] == "2/3"
    assert code_a == code_b == (EXIT_OK if all(data["checks"].values()) else EXIT_CHECK_FAILED)


def test_simulate_two_draw_model_reports_frequencies(capsys):
    _, out = run(capsys, "simulate", "--model", "uniform-composition", "--n", "10",
                 "--trials", "30000", "--seed", "11")
    data = json.loads(out)
    assert set(data["checks"]) == {"estimate", "conditioning-rate", "chi-square"}
    assert sum(data["frequencies"]["counts"].values()) == 30000
    assert data["frequencies"]["expected"]["GR"] == "1/6"


def test_simulate_runs_each_trial_once(capsys, monkeypatch):
    calls = []

    def counting_run_counts(*args, **kwargs):
        calls.append(args)
        return run_counts(*args, **kwargs)

    monkeypatch.setattr(cli, "run_counts", counting_run_counts)
    _, out = run(capsys, "simulate", "--model", "uniform-composition", "--n", "12",
                 "--trials", "15000", "--seed", "21")
    assert len(calls) == 1

    data = json.loads(out)
    spec = ModelSpec(kind="uniform-composition", n=12)
    assert data["simulation"] == json.loads(estimate(spec, 15000, 21).model_dump_json())
    assert data["frequencies"] == json.loads(frequency_table(spec, 15000, 21).model_dump_json())


def test_environment_overrides_and_flags_win(capsys, monkeypatch):
    monkeypatch.setenv(config.ENV_TRIALS, "3000")
    monkeypatch.setenv(config.ENV_SEED, "0x2a")
    _, out = run(capsys, "simulate", "--model", "weighted", "--n", "8")
    sim = json.loads(out)["simulation"]
    assert sim["trials"] == 3000
    assert sim["seed"] == 42

    _, out = run(capsys, "simulate", "--model", "weighted", "--n", "8", "--trials", "1200", "--seed", "3")
    sim = json.loads(out)["simulation"]
    assert sim["trials"] == 1200
    assert sim["seed"] == 3


def test_simulate_rejects_bad_flags(capsys):
    assert run(capsys, "simulate", "--model", "symmetry", "--trials", "0")[0] == EXIT_USAGE
    assert run(capsys, "simulate", "--model", "nope")[0] == EXIT_USAGE
    assert run(capsys, "simulate", "--model", "symmetry", "--seed", "-1")[0] == EXIT_USAGE


# ------------------ config ------------------

def test_resolvers_fall_back_to_defaults(monkeypatch):
    assert config.resolve_seed() == config.DEFAULT_SEED
    assert config.resolve_trials() == config.DEFAULT_TRIALS
    assert config.resolve_z_threshold() == config.DEFAULT_Z_THRESHOLD
    assert config.resolve_workers() == config.DEFAULT_WORKERS

    monkeypatch.setenv(config.ENV_WORKERS, "three")
    monkeypatch.setenv(config.ENV_Z_THRESHOLD, "-2")
    assert config.resolve_workers() == config.DEFAULT_WORKERS
    assert config.resolve_z_threshold() == config.DEFAULT_Z_THRESHOLD
    assert config.resolve_workers(4) == 4


def test_validate_config_reports_bad_overrides(monkeypatch):
    errors, warnings = config.validate_config()
    assert errors == [] and warnings == []

    monkeypatch.setenv(config.ENV_TRIALS, "lots")
    errors, warnings = config.validate_config()
    assert errors == []
    assert len(warnings) == 1 and config.ENV_TRIALS in warnings[0]
