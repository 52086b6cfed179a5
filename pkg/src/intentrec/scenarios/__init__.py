"""Scenario files shipped with the library, usable as starting points."""

from importlib import resources
from pathlib import Path

from ..config import ScenarioConfig, parse_config


def bundled_names() -> list[str]:
    """Names of the shipped scenarios (without the .yaml suffix)."""
    return sorted(
        entry.name.removesuffix(".yaml")
        for entry in resources.files(__name__).iterdir()
        if entry.name.endswith(".yaml")
    )


def scenario_text(name: str) -> str:
    """Raw document of a shipped scenario."""
    return (resources.files(__name__) / f"{name}.yaml").read_text(encoding="utf-8")


def scenario_path(name: str) -> Path:
    """Filesystem path of a shipped scenario (for CLI use)."""
    return Path(str(resources.files(__name__) / f"{name}.yaml"))


def load_scenario(name: str) -> ScenarioConfig:
    """Parse a shipped scenario."""
    return parse_config(scenario_text(name))
