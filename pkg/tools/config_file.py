#!/usr/bin/env python
"""
AmBC Ratio Simulator Configuration Files

Flat configuration files, one setting per line, ``#`` comments:

    scenarios = min_distance, ml_raw
    snr_grid_db = [0, 5, 10, 15, 20]
    relative_snr_db = 40
    seed = 7

``key: value`` lines are accepted too; the file is read with PyYAML once
``=`` separators are normalized.
"""

import re
import sys
import logging
import argparse
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from src.backscatter.channel import SystemConfig
from src.backscatter.errors import ConfigError
from src.harness.experiment import ExperimentSpec, StopRule

logger = logging.getLogger('ambc_sim.config')

SYSTEM_INT_KEYS = ('num_antennas', 'repetition_length', 'coherence_length', 'seed')
SYSTEM_FLOAT_KEYS = ('relative_snr_db', 'alpha_loss_db', 'noise_power')
STOP_KEYS = ('max_bits', 'target_errors')
OTHER_KEYS = ('scenarios', 'snr_grid_db', 'direct_link_snr_db', 'compensation',
              'csi_error_var', 'label')
KNOWN_KEYS = SYSTEM_INT_KEYS + SYSTEM_FLOAT_KEYS + STOP_KEYS + OTHER_KEYS

_ASSIGNMENT = re.compile(r'^(\s*[A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$')


def normalize(text: str) -> str:
    """Rewrite ``key = value`` lines as ``key: value``"""
    return "\n".join(_ASSIGNMENT.sub(r'\1: \2', line) for line in text.splitlines())


def parse_config(text: str, source: str = "<config>") -> Dict[str, Any]:
    """
    Parse configuration text into a settings dict

    Args:
        text: File contents
        source: Name used in error messages

    Returns:
        Settings with only known keys
    """
    try:
        data = yaml.safe_load(normalize(text))
    except yaml.YAMLError as e:
        raise ConfigError(f"{source}: cannot parse: {e}") from e

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: expected one 'key = value' per line")

    unknown = sorted(str(k) for k in data if k not in KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"{source}: unknown key(s): {', '.join(unknown)}")
    return data


def load_config(path: Union[str, Path]) -> Dict[str, Any]:
    """Read and parse a configuration file"""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    with open(path) as f:
        return parse_config(f.read(), str(path))


def _as_list(value: Any) -> List[Any]:
    if isinstance(value, (list, tuple)):
        return list(value)
    if isinstance(value, str):
        return [item.strip() for item in value.split(',') if item.strip()]
    return [value]


def _convert(value: Any, kind, key: str):
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    try:
        return kind(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{key}: expected {kind.__name__}, got {value!r}") from e


def _system_changes(settings: Dict[str, Any]) -> Dict[str, Any]:
    changes = {k: _convert(settings[k], int, k) for k in SYSTEM_INT_KEYS if k in settings}
    changes.update({k: _convert(settings[k], float, k) for k in SYSTEM_FLOAT_KEYS if k in settings})
    return changes


def _spec_changes(settings: Dict[str, Any]) -> Dict[str, Any]:
    changes: Dict[str, Any] = {}
    if 'snr_grid_db' in settings:
        changes['snr_grid_db'] = tuple(_convert(v, float, 'snr_grid_db')
                                       for v in _as_list(settings['snr_grid_db']))
    if 'compensation' in settings:
        changes['compensation'] = str(settings['compensation'])
    if 'csi_error_var' in settings:
        changes['csi_error_var'] = _convert(settings['csi_error_var'], float, 'csi_error_var')
    return changes


def _apply(spec: ExperimentSpec, settings: Dict[str, Any]) -> ExperimentSpec:
    changes = _spec_changes(settings)
    system_changes = _system_changes(settings)
    stop_changes = {k: _convert(settings[k], int, k) for k in STOP_KEYS if k in settings}
    if system_changes:
        changes['system'] = replace(spec.system, **system_changes)
    if stop_changes:
        changes['stop'] = replace(spec.stop, **stop_changes)
    return replace(spec, **changes) if changes else spec


def build_specs(settings: Dict[str, Any],
                base: Optional[List[ExperimentSpec]] = None) -> List[ExperimentSpec]:
    """
    Turn settings into experiments

    With a preset as ``base`` the settings override every preset experiment
    and ``scenarios`` keeps only the listed ones. Without a preset,
    ``scenarios`` and ``snr_grid_db`` are required.

    Args:
        settings: Parsed configuration
        base: Preset experiments, if any

    Returns:
        List of validated ExperimentSpec
    """
    if 'direct_link_snr_db' in settings:
        logger.warning("direct_link_snr_db is swept by snr_grid_db and is ignored")

    scenarios = None
    if 'scenarios' in settings:
        scenarios = [str(s) for s in _as_list(settings['scenarios'])]
        if not scenarios:
            raise ConfigError("scenarios must name at least one scenario")

    if base is None:
        for key in ('scenarios', 'snr_grid_db'):
            if key not in settings:
                raise ConfigError(f"missing required key '{key}'")
        system = SystemConfig(**_system_changes(settings))
        stop = StopRule(**{k: _convert(settings[k], int, k) for k in STOP_KEYS if k in settings})
        specs = [ExperimentSpec(scenario=s, system=system, stop=stop, **_spec_changes(settings))
                 for s in scenarios]
    else:
        if scenarios is not None:
            base = [s for s in base if s.scenario.value in scenarios]
            if not base:
                raise ConfigError(f"none of the preset experiments matches {scenarios}")
        specs = [_apply(spec, settings) for spec in base]

    label = settings.get('label')
    if label:
        if len(specs) == 1:
            specs = [replace(specs[0], label=str(label))]
        else:
            specs = [replace(s, label=f"{label}_{s.label}") for s in specs]
    return specs


def main():
    parser = argparse.ArgumentParser(description="Validate an AmBC simulator config file")
    parser.add_argument("config", help="Configuration file")
    args = parser.parse_args()

    try:
        specs = build_specs(load_config(args.config))
    except ConfigError as e:
        print(f"Error: {e}")
        return 2

    for spec in specs:
        print(f"{spec.label}: {spec.scenario.value} over {list(spec.snr_grid_db)} dB")
    return 0


if __name__ == "__main__":
    sys.exit(main())
