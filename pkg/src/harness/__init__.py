"""
AmBC Ratio Simulator Harness Package

This package contains the Monte Carlo BER experiment engine.
"""

from .experiment import Scenario, StopRule, ExperimentSpec, BerPoint, BerCurve, read_csv
from .streams import Purpose, TrialStreams, make_stream, draw_bits
from .scenarios import TrialOutcome, simulate_trial
from .engine import (
    PairedPoint, PairedReport, run_experiment, compare_paired,
    detect_error_floor, non_monotone_points
)

__all__ = [
    'Scenario', 'StopRule', 'ExperimentSpec', 'BerPoint', 'BerCurve', 'read_csv',
    'Purpose', 'TrialStreams', 'make_stream', 'draw_bits',
    'TrialOutcome', 'simulate_trial',
    'PairedPoint', 'PairedReport', 'run_experiment', 'compare_paired',
    'detect_error_floor', 'non_monotone_points',
]
