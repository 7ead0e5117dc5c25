from __future__ import annotations

import dataclasses
import json
from pathlib import Path

import pytest

from cli import e7forge_main
from e7forge import pipeline as pipeline_module
from e7forge.config import HAMILTON_FIXTURE, RELEASE_TAG_ENV, SPLIT_FIXTURE
from e7forge.fano import PLANE
from e7forge.git_utils import resolve_build_tag
from e7forge.jsonio import load_json, save_json
from e7forge.lie_core import algebra_from_payload, jacobi_check
from e7forge.lts_gift import FormulaStarReport
from e7forge.pipeline import (
    E7Pipeline,
    PipelineConfig,
    build_golden,
    emit_golden,
    load_pipeline_config,
    parse_command,
)
from e7forge.reports import SUMMARY_FILENAME, ReportIndex, report_filename


def _write_rejected_labeling(directory: Path) -> Path:
    payload = load_json(HAMILTON_FIXTURE)
    payload["points"]["H3"] = {"symbol": [-1, -1], "class": [1], "split": False}
    return save_json(payload, directory / "rejected.json")


def test_parse_command_accepts_arguments():
    assert parse_command("build") == ("build", None)
    assert parse_command("grade:H2") == ("grade", "H2")
    assert parse_command("base-change:-1") == ("base-change", "-1")


@pytest.mark.parametrize("token", ["assemble", "grade", "grade:P", "base-change:i", "schur:1"])
def test_parse_command_rejects_bad_tokens(token):
    with pytest.raises(ValueError):
        parse_command(token)


def test_commands_must_come_after_their_inputs(tmp_path):
    config = PipelineConfig(SPLIT_FIXTURE, commands=("grade:Q", "build"), output_dir=tmp_path)
    with pytest.raises(ValueError, match="needs an earlier command"):
        E7Pipeline(config)
    with pytest.raises(ValueError):
        E7Pipeline(PipelineConfig(SPLIT_FIXTURE, commands=("validate",), output_dir=tmp_path, prime_count=0))


def test_pipeline_config_paths_are_relative_to_the_file(tmp_path):
    config_path = save_json(
        {"labeling": str(SPLIT_FIXTURE), "commands": ["validate"], "output_dir": "out", "seed": 7},
        tmp_path / "pipeline.json",
    )
    config = load_pipeline_config(config_path)
    assert config.labeling_path == SPLIT_FIXTURE
    assert config.output_dir == (tmp_path / "out").resolve()
    assert config.commands == ("validate",)
    assert config.seed == 7

    overridden = load_pipeline_config(config_path, seed=3, prime_count=2, output_dir=tmp_path / "x")
    assert (overridden.seed, overridden.prime_count, overridden.output_dir) == (3, 2, tmp_path / "x")


def test_bare_labeling_uses_default_commands():
    config = load_pipeline_config(SPLIT_FIXTURE)
    assert config.labeling_path == SPLIT_FIXTURE
    assert config.commands[0] == "validate"


def test_rejected_labeling_exits_with_one_and_names_the_line(tmp_path):
    labeling = _write_rejected_labeling(tmp_path)
    out = tmp_path / "reports"
    exit_code = E7Pipeline(PipelineConfig(labeling, commands=("validate",), output_dir=out)).run()
    assert exit_code == 1

    report = load_json(out / report_filename(1, "validate"))
    assert report["status"] == "error"
    assert PLANE.line_name(PLANE.line_through_points(["Q1", "Q2", "H3"])) in report["lines"]
    summary = load_json(out / SUMMARY_FILENAME)
    assert summary["exit_code"] == 1
    assert summary["items"][0]["status"] == "error"


def test_missing_labeling_file_is_an_error(tmp_path):
    config = PipelineConfig(tmp_path / "absent.json", commands=("validate",), output_dir=tmp_path)
    assert E7Pipeline(config).run() == 1
    assert load_json(tmp_path / report_filename(0, "load"))["status"] == "error"


def test_report_index_exit_codes(tmp_path):
    index = ReportIndex(build_tag="test", output_dir=tmp_path, seed=1, primes=[1048583])
    index.write_report(1, "validate", {"status": "pass"})
    assert index.exit_code() == 0
    index.write_report(2, "verify-jacobi", {"status": "fail"})
    assert index.exit_code() == 2
    index.skip(3, "lts", "requires grading")
    index.write_report(4, "grade:Q1", {"status": "error"})
    assert index.exit_code() == 1

    index.note("dim", 133)
    summary = load_json(index.write())
    assert summary["total_reports"] == 4
    assert summary["dim"] == 133
    assert summary["metadata"]["build_tag"] == "test"
    assert load_json(tmp_path / "04_grade_Q1.json")["seed"] == 1


def test_build_tag_prefers_the_environment(monkeypatch):
    monkeypatch.setenv(RELEASE_TAG_ENV, "v1.2.3")
    assert resolve_build_tag() == "v1.2.3"


def test_golden_output_is_deterministic(split_assembly, tmp_path):
    first = emit_golden(split_assembly, tmp_path / "a.json").read_bytes()
    second = emit_golden(split_assembly, tmp_path / "b.json").read_bytes()
    assert first == second

    payload = json.loads(first)
    assert set(payload) >= {"dim", "names", "field", "c", "constants", "labeling"}
    reloaded = algebra_from_payload(payload)
    assert reloaded.dim == 133
    assert jacobi_check(reloaded, "sampled", samples=200, seed=5).passed


def test_cli_reports_configuration_errors(tmp_path):
    assert e7forge_main(["run", "--config", str(tmp_path / "missing.json")]) == 1


@pytest.mark.slow
def test_grading_at_an_anisotropic_point_skips_dependents(tmp_path):
    config = PipelineConfig(HAMILTON_FIXTURE, commands=("build", "grade:Q1", "lts"), output_dir=tmp_path)
    assert E7Pipeline(config).run() == 1
    summary = load_json(tmp_path / SUMMARY_FILENAME)
    assert [item["status"] for item in summary["items"]] == ["pass", "error", "skipped"]
    assert summary["dim"] == 133


def test_formula_star_highlight_follows_the_payload_status(split_gift, tmp_path, monkeypatch):
    pipeline = E7Pipeline(PipelineConfig(SPLIT_FIXTURE, commands=("validate",), output_dir=tmp_path))
    pipeline._gift = split_gift
    monkeypatch.setattr(pipeline_module, "verify_formula_star", lambda gd: FormulaStarReport(1, False, (0, 32), 2016))
    outcomes = {"pi_doubled": {"rejected": False, "error": None, "witness": None}}
    monkeypatch.setattr(pipeline_module, "perturbation_checks", lambda gd, gauge: outcomes)

    payload = pipeline._formula_star(None)
    assert payload["status"] == "fail"
    assert pipeline.index.highlights["formula_star"] == "fail"

    outcomes["pi_doubled"] = {"rejected": True, "error": "GaugeInconsistent", "witness": [0, 32]}
    payload = pipeline._formula_star(None)
    assert payload["status"] == "pass"
    assert pipeline.index.highlights["formula_star"] == "exact"
    assert pipeline.index.highlights["gauge"] == "1/1"


def _without_metadata(path):
    summary = load_json(path)
    summary.pop("metadata")
    return summary


@pytest.mark.slow
def test_two_runs_write_identical_reports_and_golden_files(tmp_path):
    commands = ("validate", "build", "schur", "verify-roots")
    goldens = []
    for name in ("first", "second"):
        pipeline = E7Pipeline(PipelineConfig(SPLIT_FIXTURE, commands=commands, output_dir=tmp_path / name, threads=2))
        assert pipeline.run() == 0
        goldens.append(emit_golden(pipeline.assembly, tmp_path / f"{name}.golden.json").read_bytes())

    for order, command in enumerate(commands, start=1):
        filename = report_filename(order, command)
        assert (tmp_path / "first" / filename).read_bytes() == (tmp_path / "second" / filename).read_bytes()
    assert _without_metadata(tmp_path / "first" / SUMMARY_FILENAME) == _without_metadata(
        tmp_path / "second" / SUMMARY_FILENAME
    )
    assert goldens[0] == goldens[1]


@pytest.mark.slow
def test_build_golden_reloads_under_full_jacobi(tmp_path):
    config = PipelineConfig(SPLIT_FIXTURE, output_dir=tmp_path, threads=2)
    first = build_golden(config, tmp_path / "a.json").read_bytes()
    second = build_golden(config, tmp_path / "b.json").read_bytes()
    assert first == second
    report = jacobi_check(algebra_from_payload(json.loads(first)), "full", threads=2)
    assert report.passed
    assert report.triples_checked == 133 * 132 * 131 // 6


@pytest.mark.slow
def test_split_pipeline_end_to_end(tmp_path):
    config = dataclasses.replace(load_pipeline_config(SPLIT_FIXTURE, output_dir=tmp_path), threads=2)
    assert E7Pipeline(config).run() == 0
    summary = load_json(tmp_path / SUMMARY_FILENAME)
    assert summary["exit_code"] == 0
    assert all(item["status"] == "pass" for item in summary["items"])
    assert (summary["dim"], summary["roots"], summary["type"]) == (133, 126, "E7")
    assert summary["formula_star"] == "exact"
    assert summary["gauge"] == "1/1"


@pytest.mark.slow
def test_hamilton_pipeline_through_base_change(tmp_path):
    commands = ("validate", "build", "grade:Q", "gift", "formula-star", "base-change:-1", "verify-roots")
    config = PipelineConfig(HAMILTON_FIXTURE, commands=commands, output_dir=tmp_path, threads=2)
    assert E7Pipeline(config).run() == 0
    summary = load_json(tmp_path / SUMMARY_FILENAME)
    assert (summary["roots"], summary["type"], summary["formula_star"]) == (126, "E7", "exact")
    roots_report = load_json(tmp_path / report_filename(7, "verify-roots"))
    assert roots_report["field"] == "QQ(sqrt(-1))"
    assert roots_report["bourbaki_match"]
