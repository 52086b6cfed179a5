"""Command-line front door.

Exit codes are stable: 0 success, 1 validation or inference failure,
2 usage error. Results go to stdout, diagnostics to stderr; JSON output is
deterministic (sorted keys) so it can be diffed byte for byte.
"""

import json
import sys
from pathlib import Path

import click

from .config import (
    ConfigError,
    ConfigValidationError,
    config_shape,
    count_required_values,
    parse_config,
)
from .inference import EvidenceError, evidence_from_json, infer, step
from .network import CompiledNetwork, compile_network

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_config_argument = click.argument(
    "config_path", metavar="CONFIG",
    type=click.Path(exists=True, dir_okay=False, readable=True, path_type=Path),
)


def _load_network(config_path: Path) -> CompiledNetwork:
    try:
        text = config_path.read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {config_path}: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    try:
        return compile_network(parse_config(text))
    except ConfigError as exc:
        click.echo(f"error: invalid configuration: {exc}", err=True)
        sys.exit(EXIT_FAILURE)


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True)


@click.group()
@click.version_option(package_name="intentrec")
def main() -> None:
    """Author, validate, and run context-based intention recognition scenarios."""


@main.command()
@_config_argument
def validate(config_path: Path) -> None:
    """Check a scenario file; print one violation per line."""
    try:
        text = config_path.read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {config_path}: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    try:
        parse_config(text)
    except ConfigValidationError as exc:
        for violation in exc.violations:
            click.echo(f"{violation.code} {violation.path} {violation.message}")
        sys.exit(EXIT_FAILURE)
    except ConfigError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAILURE)


@main.command("infer")
@_config_argument
@click.option(
    "--evidence", "evidence_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Evidence JSON file; read from stdin when omitted.",
)
def infer_cmd(config_path: Path, evidence_path: Path | None) -> None:
    """Run one inference and print the result as JSON."""
    net = _load_network(config_path)
    raw = evidence_path.read_text(encoding="utf-8") if evidence_path else sys.stdin.read()
    if not raw.strip():
        raw = "{}"
    try:
        result = infer(net, evidence_from_json(json.loads(raw)))
    except json.JSONDecodeError as exc:
        click.echo(f"error: evidence is not valid JSON: {exc}", err=True)
        sys.exit(EXIT_FAILURE)
    except EvidenceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_FAILURE)
    click.echo(_dump(result.to_json()))


@main.command()
@_config_argument
def stream(config_path: Path) -> None:
    """Read evidence JSON lines from stdin; emit one result line each.

    A malformed line yields an error object on its output line and leaves the
    carried decision state unchanged; the stream continues.
    """
    net = _load_network(config_path)
    state: str | None = None
    for raw_line in sys.stdin:
        line = raw_line.strip()
        try:
            payload = json.loads(line) if line else _reject_blank()
            result, state = step(net, state, evidence_from_json(payload))
            output = result.to_json()
        except json.JSONDecodeError as exc:
            output = {"error": {"code": "MALFORMED_LINE", "message": str(exc)}}
        except EvidenceError as exc:
            output = {"error": {"code": "EVIDENCE_ERROR", "message": str(exc)}}
        click.echo(_dump(output))


def _reject_blank():
    raise json.JSONDecodeError("blank line", "", 0)


@main.command()
@_config_argument
def counts(config_path: Path) -> None:
    """Report how many values the scenario's shape needs, with and without
    the averaging shortcut."""
    net = _load_network(config_path)
    context_sizes, intention_sizes = config_shape(net.config)
    result = count_required_values(context_sizes, intention_sizes)
    reduction = result.exponential / result.linear
    click.echo(f"exponential={result.exponential} linear={result.linear} reduction={reduction:.2f}")


@main.command()
@_config_argument
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--write-back", is_flag=True,
              help="Persist successful config replacements to the config file.")
def serve(config_path: Path, host: str, port: int, write_back: bool) -> None:
    """Serve the REST interface for the given scenario."""
    import uvicorn

    from .service import create_app

    try:
        app = create_app(config_path=config_path, write_back=write_back)
    except ConfigError as exc:
        click.echo(f"error: invalid configuration: {exc}", err=True)
        sys.exit(EXIT_FAILURE)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
