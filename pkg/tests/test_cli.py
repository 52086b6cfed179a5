"""Command-line behavior: output shapes, exit codes, streaming."""

import json

import pytest
from click.testing import CliRunner

from intentrec.cli import main
from intentrec.scenarios import scenario_path, scenario_text

from conftest import SPRINKLER_YAML


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def sprinkler_file(tmp_path):
    path = tmp_path / "sprinkler.yaml"
    path.write_text(SPRINKLER_YAML, encoding="utf-8")
    return path


class TestValidate:
    def test_valid_config_is_silent(self, runner, sprinkler_file):
        result = runner.invoke(main, ["validate", str(sprinkler_file)])
        assert result.exit_code == 0
        assert result.stdout == ""

    def test_violations_print_one_per_line(self, runner, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text(SPRINKLER_YAML.replace("sunny: 0.5", "sunny: 0.4"), encoding="utf-8")
        result = runner.invoke(main, ["validate", str(path)])
        assert result.exit_code == 1
        (line,) = result.stdout.splitlines()
        assert line.startswith("PRIORS_NOT_NORMALIZED contexts.weather ")

    def test_missing_file_is_a_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["validate", str(tmp_path / "absent.yaml")])
        assert result.exit_code == 2
        assert result.stdout == ""

    def test_malformed_yaml_fails_with_diagnostic(self, runner, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("contexts: [unclosed\n", encoding="utf-8")
        result = runner.invoke(main, ["validate", str(path)])
        assert result.exit_code == 1
        assert "error" in result.stderr


class TestInfer:
    def test_hard_evidence_decides(self, runner, sprinkler_file, tmp_path):
        evidence = tmp_path / "evidence.json"
        evidence.write_text('{"weather": "sunny", "time_of_day": "day"}', encoding="utf-8")
        result = runner.invoke(main, ["infer", str(sprinkler_file), "--evidence", str(evidence)])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["posteriors"]["turn on sprinkler"] == 0.625
        assert payload["decision"] == "turn on sprinkler"
        assert payload["tie"] is False

    def test_below_threshold_decision_is_null(self, runner, sprinkler_file):
        result = runner.invoke(main, ["infer", str(sprinkler_file)],
                               input='{"weather": "sunny"}')
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["decision"] is None

    def test_unknown_instantiation_fails(self, runner, sprinkler_file):
        result = runner.invoke(main, ["infer", str(sprinkler_file)],
                               input='{"weather": "foggy"}')
        assert result.exit_code == 1
        assert "unknown instantiation" in result.stderr

    def test_output_is_byte_stable(self, runner, sprinkler_file):
        first = runner.invoke(main, ["infer", str(sprinkler_file)], input='{"weather": "sunny"}')
        second = runner.invoke(main, ["infer", str(sprinkler_file)], input='{"weather": "sunny"}')
        assert first.stdout_bytes == second.stdout_bytes

    def test_blank_stdin_means_no_observations(self, runner, sprinkler_file):
        result = runner.invoke(main, ["infer", str(sprinkler_file)], input="")
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["posteriors"]["turn on sprinkler"] == pytest.approx(0.3725)


class TestStream:
    def test_state_threads_between_lines(self, runner):
        lines = '{"speech command": "bring"}\n{"speech command": "silence"}\n'
        result = runner.invoke(
            main, ["stream", str(scenario_path("handover_temporal"))], input=lines)
        assert result.exit_code == 0
        first, second = (json.loads(line) for line in result.stdout.splitlines())
        assert first["decision"] == "robot bring tool"
        assert second["decision"] == "robot stop"

    def test_empty_stream_produces_no_output(self, runner, sprinkler_file):
        result = runner.invoke(main, ["stream", str(sprinkler_file)], input="")
        assert result.exit_code == 0
        assert result.stdout == ""

    def test_malformed_line_is_isolated(self, runner):
        lines = (
            '{"speech command": "bring"}\n'
            "this is not json\n"
            '{"speech command": "silence"}\n'
        )
        result = runner.invoke(
            main, ["stream", str(scenario_path("handover_temporal"))], input=lines)
        assert result.exit_code == 0
        first, middle, third = (json.loads(line) for line in result.stdout.splitlines())
        assert first["decision"] == "robot bring tool"
        assert middle["error"]["code"] == "MALFORMED_LINE"
        # The bad line must not have touched the carried state.
        assert third["decision"] == "robot stop"

    def test_line_count_matches_input(self, runner, sprinkler_file):
        lines = "{}\nnot json\n{}\n{}\n"
        result = runner.invoke(main, ["stream", str(sprinkler_file)], input=lines)
        assert len(result.stdout.splitlines()) == 4


class TestCounts:
    def test_two_by_two_shape(self, runner, tmp_path):
        text = (
            "contexts:\n"
            "  first: {a: 0.5, b: 0.5}\n"
            "  second: {x: 0.2, y: 0.3, z: 0.5}\n"
            "intentions:\n"
            "  one:\n"
            "    first: {a: 1, b: 2}\n"
            "    second: {x: 3, y: 4, z: 5}\n"
            "  two:\n"
            "    first: {a: 0, b: 1}\n"
            "    second: {x: 2, y: 3, z: 4}\n"
            "decision_threshold: 0.5\n"
        )
        path = tmp_path / "shape.yaml"
        path.write_text(text, encoding="utf-8")
        result = runner.invoke(main, ["counts", str(path)])
        assert result.exit_code == 0
        assert "exponential=53 linear=15" in result.stdout

    def test_minimal_shape(self, runner, tmp_path):
        text = (
            "contexts:\n"
            "  only: {a: 0.5, b: 0.5}\n"
            "intentions:\n"
            "  one:\n"
            "    only: {a: 1, b: 2}\n"
            "decision_threshold: 0.5\n"
        )
        path = tmp_path / "tiny.yaml"
        path.write_text(text, encoding="utf-8")
        result = runner.invoke(main, ["counts", str(path)])
        assert "exponential=6 linear=4" in result.stdout

    def test_invalid_config_fails(self, runner, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text(SPRINKLER_YAML.replace("sunny: 0.5", "sunny: 0.4"), encoding="utf-8")
        result = runner.invoke(main, ["counts", str(path)])
        assert result.exit_code == 1


def test_every_bundled_scenario_validates(runner=None):
    runner = CliRunner()
    from intentrec.scenarios import bundled_names

    for name in bundled_names():
        result = runner.invoke(main, ["validate", str(scenario_path(name))])
        assert result.exit_code == 0, f"{name}: {result.stderr}"


def test_workshop_counts_report_the_reduction():
    runner = CliRunner()
    result = runner.invoke(main, ["counts", str(scenario_path("workshop"))])
    assert result.exit_code == 0
    assert "linear=72" in result.stdout
    assert "reduction=" in result.stdout


class TestServe:
    def test_serve_builds_the_app_and_starts_uvicorn(self, runner, sprinkler_file, monkeypatch):
        started = {}

        def fake_run(app, host, port):
            started["app"] = app
            started["host"] = host
            started["port"] = port

        import uvicorn

        monkeypatch.setattr(uvicorn, "run", fake_run)
        result = runner.invoke(main, ["serve", str(sprinkler_file), "--port", "9001"])
        assert result.exit_code == 0
        assert started["port"] == 9001
        assert started["app"].state.store.snapshot is not None

    def test_serve_refuses_an_invalid_config(self, runner, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text(SPRINKLER_YAML.replace("sunny: 0.5", "sunny: 0.4"), encoding="utf-8")
        result = runner.invoke(main, ["serve", str(path)])
        assert result.exit_code == 1
        assert "invalid configuration" in result.stderr
