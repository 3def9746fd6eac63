"""Loader for simulator scenarios from YAML files."""

import logging
from pathlib import Path
from typing import Any

import yaml  # type: ignore

from ..simulator.scenario import Scenario
from .scenario_config import ScenarioDefinition, resolve_config_env_vars

logger = logging.getLogger(__name__)

DEFAULT_SCENARIOS_DIR = Path(__file__).parent / "scenarios"


def resolve_scenario_path(name: str | Path) -> Path:
    """Return ``name`` as a path, falling back to the shipped scenarios.

    ``two_cars`` and ``two_cars.yaml`` both resolve to the bundled file when
    no such path exists relative to the working directory.
    """
    path = Path(name)
    if path.exists():
        return path
    bundled = DEFAULT_SCENARIOS_DIR / path.name
    for candidate in (bundled, bundled.with_suffix(".yaml")):
        if candidate.exists():
            return candidate
    return path


def load_yaml_config(config_path: Path) -> dict[str, Any]:
    """Load a YAML document and resolve ``${VAR:-default}`` references.

    Raises:
        FileNotFoundError: If config file doesn't exist
        yaml.YAMLError: If YAML parsing fails
        ValueError: If the document is not a mapping
    """
    if not config_path.exists():
        raise FileNotFoundError(f"Scenario file not found: {config_path}")

    with open(config_path, encoding="utf-8") as f:
        raw_config = yaml.safe_load(f)

    if not isinstance(raw_config, dict):
        raise ValueError(f"Scenario file {config_path} must contain a mapping")

    logger.debug(f"Loaded raw scenario from {config_path}")
    return resolve_config_env_vars(raw_config)  # type: ignore[no-any-return]


def load_scenario_definition(path: str | Path) -> ScenarioDefinition:
    """Load and validate a scenario file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        yaml.YAMLError: If YAML parsing fails
        ValidationError: If validation fails
    """
    resolved = resolve_scenario_path(path)
    definition = ScenarioDefinition(**load_yaml_config(resolved))
    logger.info(
        f"Loaded scenario '{definition.name or resolved.stem}' with "
        f"{len(definition.objects)} objects from {resolved}"
    )
    return definition


def load_scenario(path: str | Path, seed: int | None = None) -> Scenario:
    """Load a scenario file straight into a simulator Scenario."""
    return load_scenario_definition(path).to_scenario(seed=seed)
