from __future__ import annotations

import json

import numpy as np
import pytest

from ksmetric import (
    GridSpec,
    Report,
    SuiteConfig,
    emit_report,
    gen_function,
    gen_space,
    lip_constant,
    replay_record,
    run_suite,
)
from ksmetric.errors import ResolutionError, SizeCap, UsageError, ValidationError
from ksmetric.harness.checks import check_names, get_check
from ksmetric.harness.emit import render_csv
from ksmetric.harness.suite import evaluate_inputs
from ksmetric.tools.misc import dumps


QUICK_CHECKS = [
    "ball_family",
    "ball_integral_linearity",
    "covering",
    "doubling",
    "holder_counterexample",
    "ks_inner",
    "ks_norm_axioms",
    "layer_cake",
    "maximal_properties",
    "seminorm_worked_example",
]


def _quick(checks, trials=1, **overrides):
    return SuiteConfig.from_defaults(trials=trials, checks=checks, space_sizes=[3, 5], **overrides)


#***** config *****


def test_defaults_cover_every_check() -> None:
    config = SuiteConfig.from_defaults()
    assert config.seed == 42
    assert sorted(config.trials) == check_names()
    assert config.trials_for("holder_counterexample") == 1
    assert 256 in config.grid_sizes and 64 in config.grid_sizes
    assert 32 in config.grid2d_sizes


def test_config_file_merges_nested_maps(tmp_path) -> None:
    path = tmp_path / "suite.json"
    path.write_text(json.dumps({"seed": 7, "trials": {"holder": 3}, "tolerances": {"identity": 1e-11}}))
    config = SuiteConfig.from_file(path, record_timings=True)
    assert config.seed == 7
    assert config.trials_for("holder") == 3
    assert config.trials_for("covering") == 100
    assert config.tolerance("identity") == 1e-11
    assert config.tolerance("inequality") == 1e-10
    assert config.record_timings


def test_config_file_errors(tmp_path) -> None:
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"sed": 1}))
    with pytest.raises(ValidationError):
        SuiteConfig.from_file(unknown)

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ValidationError):
        SuiteConfig.from_file(broken)

    with pytest.raises(FileNotFoundError):
        SuiteConfig.from_file(tmp_path / "missing.json")


def test_config_rejects_bad_values() -> None:
    with pytest.raises(UsageError):
        SuiteConfig.from_defaults(trials=-1)
    with pytest.raises(UsageError):
        SuiteConfig.from_defaults(formats=["pdf"])
    with pytest.raises(UsageError):
        run_suite(SuiteConfig.from_defaults(trials=1, checks=["no_such_check"]))


def test_snapshot_round_trip() -> None:
    config = _quick(["doubling"], seed=3)
    snapshot = config.to_dict()
    assert "out_dir" not in snapshot and "formats" not in snapshot
    assert snapshot["exponents"][-1] == "inf"
    assert SuiteConfig.from_snapshot(snapshot) == config


#***** generators *****


def test_line_points_of_size_two_is_the_canonical_pair() -> None:
    space = gen_space("line-points", 2, seed=123)
    assert space.point_ids == ("a", "b")
    assert space.coords.ravel().tolist() == [0.0, 1.0]
    assert space.mass.tolist() == [0.5, 0.5]


def test_generators_are_deterministic() -> None:
    one = gen_space("random-cloud", 12, seed=5)
    two = gen_space("random-cloud", 12, seed=5)
    assert np.array_equal(one.dist, two.dist) and np.array_equal(one.mass, two.mass)
    assert not np.array_equal(one.dist, gen_space("random-cloud", 12, seed=6).dist)
    f = gen_function("random-uniform", one, seed=9)
    assert f.values.tolist() == gen_function("random-uniform", two, seed=9).values.tolist()


def test_generators_respect_the_size_cap() -> None:
    with pytest.raises(SizeCap):
        gen_space("random-cloud", 5000)
    with pytest.raises(SizeCap):
        gen_space("grid-2d", 50)
    assert gen_space("grid-2d", 4).n_points == 16
    with pytest.raises(UsageError):
        gen_space("sphere", 4)


def test_generated_functions() -> None:
    space = gen_space("line-points", 6, seed=1)
    for seed in range(5):
        f = gen_function("random-lipschitz", space, seed=seed, L=0.7)
        assert lip_constant(space, f) <= 0.7
    assert gen_function("indicator", space, ids="a,c").values.tolist() == [1.0, 0.0, 1.0, 0.0, 0.0, 0.0]
    assert np.all(gen_function("random-nonnegative", space, seed=2).values >= 0)

    grid = gen_space("grid-1d", 5)
    squared = gen_function("polynomial", grid, expr="x1^2")
    assert squared.values == pytest.approx(grid.coords[:, 0] ** 2, rel=1e-15)


#***** suite *****


def test_zero_trials_is_an_empty_passing_report() -> None:
    report = run_suite(SuiteConfig.from_defaults(trials=0))
    assert report.records == []
    assert report.passed
    assert report.summary()["records"] == 0


@pytest.mark.parametrize("name", QUICK_CHECKS)
def test_check_passes(name) -> None:
    report = run_suite(_quick([name], trials=2))
    assert [r["id"] for r in report.records] == [f"{name}/0000", f"{name}/0001"]
    assert report.passed, report.failures


def test_fixed_example_checks_record_their_values() -> None:
    report = run_suite(_quick(["holder_counterexample", "seminorm_worked_example"]))
    holder = report.record("holder_counterexample/0000")
    assert holder["values"]["ks1_of_product"] == pytest.approx(0.75)
    assert holder["asserted"]["statement_refuted"]
    worked = report.record("seminorm_worked_example/0000")
    assert worked["values"]["expected"] == pytest.approx(0.3952847, rel=1e-6)


def test_reports_are_deterministic() -> None:
    config = _quick(["ks_inner", "covering", "layer_cake"], trials=3)
    one, two = run_suite(config), run_suite(config)
    assert dumps(one.to_dict()) == dumps(two.to_dict())
    assert render_csv(one) == render_csv(two)


def test_seed_changes_the_inputs() -> None:
    one = run_suite(_quick(["ks_inner"], seed=1))
    two = run_suite(_quick(["ks_inner"], seed=2))
    assert one.records[0]["inputs_digest"] != two.records[0]["inputs_digest"]


def test_replay_reproduces_a_record() -> None:
    report = run_suite(_quick(["ks_inner"], trials=2))
    original = report.record("ks_inner/0001")
    replayed = replay_record(report, "ks_inner/0001")
    assert replayed["inputs_digest"] == original["inputs_digest"]
    assert replayed["values"] == original["values"]
    assert replayed["passed"]
    with pytest.raises(ResolutionError):
        replay_record(report, "ks_inner/0009")


def test_report_load_round_trip(tmp_path) -> None:
    report = run_suite(_quick(["doubling"], trials=2))
    written = emit_report(report, tmp_path / "out", formats=("json",))
    loaded = Report.load(written["json"])
    assert loaded.records == json.loads(dumps(report.records))
    assert replay_record(written["json"], "doubling/0000")["passed"]

    with pytest.raises(ValidationError):
        Report.from_dict({"config": {}})


def test_broken_weight_normalization_is_caught(monkeypatch) -> None:
    monkeypatch.setattr("ksmetric.tools.spacefuncs.balls._normalize_weights", lambda raw: np.asarray(raw, dtype=float))
    report = run_suite(_quick(["ball_family"], trials=2))
    assert not report.passed
    failed = report.failures[0]
    assert failed["asserted"]["weights_sum_to_one"] is False
    assert failed["reproducer"]["check"] == "ball_family"
    assert "space" in failed["reproducer"]["inputs"]
    assert report.summary()["counterexamples"] == [r["id"] for r in report.failures]


def test_library_errors_become_failed_records() -> None:
    config = SuiteConfig.from_defaults()
    inputs = get_check("ks_inner").generate(np.random.default_rng(0), config)
    inputs["f"] = inputs["f"][:-1]
    record = evaluate_inputs("ks_inner", inputs, config)
    assert not record["passed"]
    assert record["asserted"] == {"completed": False}
    assert record["values"]["error_type"] == "ValidationError"
    assert record["reproducer"]["inputs"]["f"] == inputs["f"]



def test_grid_checks_at_full_scale() -> None:
    config = SuiteConfig.from_defaults()
    rng = np.random.default_rng(3)

    weak = {
        "grid": GridSpec.unit_cube(1, 256).to_dict(),
        "scheme": config.scheme().to_dict(),
        "f": rng.uniform(0.0, 1.0, 256).tolist(),
    }
    record = evaluate_inputs("weak_type", weak, config)
    assert record["passed"], record
    assert record["asserted"]["weak_ok"]

    euclid = {
        "grid": GridSpec.unit_cube(2, 32).to_dict(),
        "scheme": config.scheme().to_dict(),
        "expr": "0.5*sin(2*x1 + 0.1) + x1*x2",
        "k": 2,
        "q": 2.0,
    }
    record = evaluate_inputs("euclid", euclid, config)
    assert record["passed"], record
    assert record["asserted"]["embedding_ok"] and record["asserted"]["derivatives_exact"]


#***** emit *****


def test_emit_writes_every_format(tmp_path) -> None:
    report = run_suite(_quick(["ks_inner", "layer_cake"], trials=2))
    written = emit_report(report, tmp_path, formats=("json", "csv", "svg"))
    assert sorted(written) == ["csv", "json", "svg"]

    lines = (tmp_path / "report.csv").read_text().splitlines()
    assert len(lines) == len(report.records) + 1
    assert lines[0].startswith("id,check,trial,passed")
    assert "reproducer" not in lines[0].split(",")

    assert "<svg" in (tmp_path / "ratios.svg").read_text()
    assert json.loads((tmp_path / "report.json").read_text())["summary"]["ok"]

    with pytest.raises(UsageError):
        emit_report(report, tmp_path, formats=("pdf",))
