"""
Load scenario configurations from files or built-in presets.
"""

import json
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Union

from scenarios.config import ScenarioConfig, validate_config
from scenarios.presets import PRESETS, expand_preset, get_preset
from simcore.errors import ScenarioConfigError

logger = logging.getLogger(__name__)


def _read(path: Path) -> dict:
    text = path.read_text()
    try:
        if path.suffix.lower() == '.json':
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
        raise ScenarioConfigError(f"cannot parse {path}: {e}") from e
    if not isinstance(data, dict):
        raise ScenarioConfigError(f"{path} must contain a table of settings")
    return data


def _anchor_trace_paths(data: dict, base_dir: Path) -> dict:
    for group in data.get('terminals', []) or []:
        if isinstance(group, dict) and group.get('kind') == 'trace' and group.get('path'):
            trace_path = Path(group['path'])
            if not trace_path.is_absolute():
                group['path'] = str(base_dir / trace_path)
    return data


def load_scenario(source: Union[str, Path]) -> ScenarioConfig:
    """
    Load one scenario.

    ``source`` is a path to a TOML/JSON file or the name of a built-in preset.
    A file may name a preset under ``extends`` and override any of its keys.
    """
    path = Path(source)
    if path.is_file():
        data = _anchor_trace_paths(_read(path), path.parent)
        base = data.pop('extends', None)
        if base is not None:
            merged = get_preset(base)
            merged.update(data)
            data = merged
        logger.info(f"Loading scenario from {path}")
        return validate_config(data)

    logger.info(f"Loading preset scenario {source}")
    return validate_config(get_preset(str(source)))


def load_scenarios(source: Union[str, Path]) -> list[ScenarioConfig]:
    """Like load_scenario, but a preset group expands to all its members."""
    if Path(source).is_file() or str(source) in PRESETS:
        return [load_scenario(source)]
    return [load_scenario(name) for name in expand_preset(str(source))]
