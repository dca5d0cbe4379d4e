#!/usr/bin/env python
"""
AmBC Ratio Simulator Experiment Presets

Named experiment sets reproducing the BER comparisons of the evaluation.
Presets with a ``_desk`` suffix scale repetition lengths and bit budgets
down to what a desktop finishes in minutes; the mapping is documented in
docs/presets.md.
"""

import sys
from dataclasses import replace
from typing import Callable, Dict, List, Sequence

from src.backscatter.channel import SystemConfig
from src.backscatter.errors import ConfigError
from src.backscatter.linearize import Compensation
from src.harness.experiment import ExperimentSpec, Scenario, StopRule

DEFAULT_STOP = StopRule(max_bits=200_000, target_errors=100)


def _grid(start: float, stop: float, step: float) -> List[float]:
    points, value = [], start
    while value <= stop + 1e-9:
        points.append(round(value, 6))
        value += step
    return points


def _coded(m: int, q: int = 2) -> SystemConfig:
    return SystemConfig(num_antennas=q, repetition_length=m, coherence_length=m)


def _spec(scenario: Scenario, grid: Sequence[float], system: SystemConfig,
          label: str = "", **kwargs) -> ExperimentSpec:
    return ExperimentSpec(scenario=scenario, snr_grid_db=tuple(grid), system=system,
                          stop=kwargs.pop('stop', DEFAULT_STOP), label=label, **kwargs)


def fig3() -> List[ExperimentSpec]:
    """Uncoded detectors: complex-ratio ML, minimum distance, magnitude ratio"""
    system = SystemConfig(repetition_length=1, coherence_length=100)
    grid = _grid(0, 30, 5)
    return [_spec(s, grid, system)
            for s in (Scenario.ML_RAW, Scenario.MIN_DISTANCE, Scenario.MAGNITUDE_RATIO)]


def fig4_desk() -> List[ExperimentSpec]:
    """Symbol averaging at M = 50, 100, 200 on a 1 dB grid"""
    grid = _grid(0, 25, 1)
    return [_spec(Scenario.AVERAGING, grid, _coded(m), label=f"averaging_M{m}")
            for m in (50, 100, 200)]


def fig5_desk() -> List[ExperimentSpec]:
    """Averaging, hard and soft decoding with and without interleaving, M = 100"""
    grid = _grid(0, 30, 5)
    scenarios = (Scenario.AVERAGING, Scenario.REP_HARD, Scenario.REP_SOFT,
                 Scenario.REP_HARD_INTERLEAVED, Scenario.REP_SOFT_INTERLEAVED)
    return [_spec(s, grid, _coded(100)) for s in scenarios]


def fig6_desk() -> List[ExperimentSpec]:
    """Energy detector floor against the interleaved soft ratio detector, M = 100"""
    grid = _grid(15, 35, 5)
    return [_spec(Scenario.ENERGY, grid, _coded(100)),
            _spec(Scenario.REP_SOFT_INTERLEAVED, grid, _coded(100))]


def fig7_desk() -> List[ExperimentSpec]:
    """BER against repetition length at 10, 15 and 20 dB, one experiment per M"""
    specs = []
    for m in (10, 20, 50, 100, 200):
        for s in (Scenario.REP_HARD_INTERLEAVED, Scenario.ENERGY):
            specs.append(_spec(s, [10.0, 15.0, 20.0], _coded(m), label=f"{s.value}_M{m}"))
    return specs


def fig8_desk() -> List[ExperimentSpec]:
    """Ratio selection with Q = 4 at M = 50 against Q = 2 at M = 100"""
    grid = _grid(0, 25, 5)
    return [_spec(Scenario.RATIO_SELECTION, grid, _coded(50, q=4), label="ratio_selection_Q4_M50"),
            _spec(Scenario.RATIO_SELECTION, grid, _coded(100, q=2), label="ratio_selection_Q2_M100")]


def fig9_desk() -> List[ExperimentSpec]:
    """Phase compensation: none, proposed and perfect under hard and soft decoding, M = 100"""
    grid = _grid(0, 30, 5)
    specs = [_spec(s, grid, _coded(100), compensation=mode, label=f"{s.value}_{mode.value}")
             for s in (Scenario.REP_HARD_INTERLEAVED, Scenario.REP_SOFT_INTERLEAVED)
             for mode in (Compensation.NONE, Compensation.PROPOSED, Compensation.PERFECT)]
    specs.append(_spec(Scenario.REP_ML_INTERLEAVED, grid, _coded(100)))
    return specs


PRESETS: Dict[str, Callable[[], List[ExperimentSpec]]] = {
    'fig3': fig3,
    'fig4_desk': fig4_desk,
    'fig5_desk': fig5_desk,
    'fig6_desk': fig6_desk,
    'fig7_desk': fig7_desk,
    'fig8_desk': fig8_desk,
    'fig9_desk': fig9_desk,
}

# descriptive names accepted wherever a preset name is
ALIASES: Dict[str, str] = {
    'uncoded': 'fig3',
    'averaging_desk': 'fig4_desk',
    'coding_desk': 'fig5_desk',
    'energy_desk': 'fig6_desk',
    'repetition_desk': 'fig7_desk',
    'selection_desk': 'fig8_desk',
    'compensation_desk': 'fig9_desk',
}


def aliases_of(name: str) -> List[str]:
    return [alias for alias, target in ALIASES.items() if target == name]


def get_preset(name: str) -> List[ExperimentSpec]:
    """Experiment list of a named preset or one of its aliases"""
    try:
        return PRESETS[ALIASES.get(name, name)]()
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def with_seed(specs: List[ExperimentSpec], seed: int) -> List[ExperimentSpec]:
    """Same experiments with another master seed"""
    return [replace(s, system=replace(s.system, seed=seed)) for s in specs]


def main():
    for name, factory in PRESETS.items():
        specs = factory()
        print(f"{name:<10} ({', '.join(aliases_of(name))}) {factory.__doc__}")
        for spec in specs:
            print(f"                   - {spec.label}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
