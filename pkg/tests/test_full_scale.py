"""
Full acceptance runs with publication-size bit budgets

Minutes each; deselected by default. Run with ``pytest -m slow``.
"""

import math

import pytest

from src.backscatter.channel import SystemConfig
from src.backscatter.linearize import Compensation
from src.harness.engine import compare_paired, run_experiment
from src.harness.experiment import ExperimentSpec, Scenario, StopRule

pytestmark = pytest.mark.slow

FULL_STOP = StopRule(max_bits=100_000, target_errors=10 ** 9)


def _system(m=100, q=2):
    return SystemConfig(num_antennas=q, repetition_length=m, coherence_length=m)


def _coded(scenario, grid, m=100, q=2, **kwargs):
    return ExperimentSpec(scenario=scenario, snr_grid_db=grid, system=_system(m, q),
                          stop=FULL_STOP, **kwargs)


def snr_at_ber(curve, target):
    """SNR where the curve first falls to target, interpolated in log BER"""
    points = [(p.snr_db, p.ber) for p in curve.points]
    for (s0, b0), (s1, b1) in zip(points, points[1:]):
        if b0 >= target > b1:
            if b1 == 0:
                return s1
            frac = (math.log10(b0) - math.log10(target)) / (math.log10(b0) - math.log10(b1))
            return s0 + frac * (s1 - s0)
    raise AssertionError(f"{curve.metadata.get('label')} never reaches BER {target}")


def test_ml_matches_min_distance():
    grid = [10.0, 15.0, 20.0, 25.0]
    ml = ExperimentSpec(scenario="ml_raw", snr_grid_db=grid, stop=FULL_STOP)
    md = ExperimentSpec(scenario="min_distance", snr_grid_db=grid, stop=FULL_STOP)
    for point in compare_paired(ml, md).points:
        gap = abs(point.ber_diff)
        assert gap <= point.half_width_95 or gap < 0.1 * point.point_b.ber, point.snr_db


def test_ml_below_magnitude_ratio():
    grid = [10.0, 15.0, 20.0, 25.0]
    ml = ExperimentSpec(scenario="ml_raw", snr_grid_db=grid, stop=FULL_STOP)
    mag = ExperimentSpec(scenario="magnitude_ratio", snr_grid_db=grid, stop=FULL_STOP)
    for point in compare_paired(ml, mag).points:
        if point.point_b.bit_errors >= 100:
            assert point.point_a.ber < point.point_b.ber, point.snr_db


def test_averaging_gains_3db_per_doubling():
    grid = [float(s) for s in range(0, 41)]
    stop = StopRule(max_bits=100_000, target_errors=200)
    curves = [run_experiment(ExperimentSpec(scenario="averaging", snr_grid_db=grid,
                                            system=_system(m), stop=stop))
              for m in (100, 200)]
    gain = snr_at_ber(curves[0], 1e-2) - snr_at_ber(curves[1], 1e-2)
    assert gain == pytest.approx(3.0, abs=1.0)


@pytest.mark.parametrize("better, worse", [
    (Scenario.REP_SOFT_INTERLEAVED, Scenario.REP_HARD_INTERLEAVED),
    (Scenario.REP_HARD_INTERLEAVED, Scenario.REP_HARD),
    (Scenario.REP_SOFT, Scenario.AVERAGING),
])
def test_scheme_ordering(better, worse):
    point = compare_paired(_coded(better, [20.0]), _coded(worse, [20.0])).points[0]
    assert point.ber_diff + point.half_width_95 < 0


def test_energy_floor_against_ratio_detector():
    grid = [25.0, 30.0, 35.0]
    energy = [p.ber for p in run_experiment(_coded(Scenario.ENERGY, grid)).points]
    assert max(energy) <= 2 * min(energy)
    ratio = [p.ber for p in run_experiment(_coded(Scenario.REP_SOFT_INTERLEAVED, grid)).points]
    assert ratio[2] < ratio[0] / 10


@pytest.mark.parametrize("snr", [15.0, 20.0])
def test_selection_gain(snr):
    q4 = _coded(Scenario.RATIO_SELECTION, [snr], m=50, q=4)
    q2 = _coded(Scenario.RATIO_SELECTION, [snr], m=100, q=2)
    point = compare_paired(q4, q2).points[0]
    assert point.ber_diff <= point.half_width_95


def test_phase_compensation():
    def spec(mode):
        return _coded(Scenario.REP_SOFT_INTERLEAVED, [15.0], compensation=mode)

    worse = compare_paired(spec(Compensation.NONE), spec(Compensation.PROPOSED)).points[0]
    assert worse.ber_diff > 0
    close = compare_paired(spec(Compensation.PROPOSED), spec(Compensation.PERFECT)).points[0]
    gap = abs(close.ber_diff)
    assert gap <= close.half_width_95 or gap < 0.1 * close.point_b.ber


def test_energy_non_increasing_in_m():
    bers = [run_experiment(_coded(Scenario.ENERGY, [30.0], m=m)).points[0]
            for m in (10, 50, 100, 200)]
    for shorter, longer in zip(bers, bers[1:]):
        assert longer.ber <= shorter.ber + shorter.half_width_95 + longer.half_width_95
