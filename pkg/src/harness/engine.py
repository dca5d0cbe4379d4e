#!/usr/bin/env python
"""
Monte Carlo Engine
------------------
Runs experiments point by point. Trials are computed in chunks, optionally
on a process pool, and folded in trial order; the stop rule is checked
after every trial so the result never depends on the worker count.
"""

import logging
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .. import __version__
from ..backscatter.errors import GridMismatchError
from .experiment import BerCurve, BerPoint, ExperimentSpec, PUBLISHABLE_ERRORS
from .scenarios import TrialOutcome, scenario_notes, simulate_trial

logger = logging.getLogger('ambc_sim.harness')

# Trials computed per worker between stop-rule checks
TRIALS_PER_WORKER = 4

# Ratio below which the last three points count as an error floor
FLOOR_FACTOR = 2.0


def _trial_task(args: Tuple[ExperimentSpec, int, int]) -> TrialOutcome:
    spec, snr_index, trial_index = args
    return simulate_trial(spec, snr_index, trial_index)


class TrialSource:
    """Yields trial outcomes of one SNR point in trial order"""

    def __init__(self, spec: ExperimentSpec, snr_index: int, pool=None, workers: int = 1):
        self.spec = spec
        self.snr_index = snr_index
        self.pool = pool
        self.chunk = max(1, workers) * TRIALS_PER_WORKER

    def __iter__(self) -> Iterator[TrialOutcome]:
        start = 0
        while True:
            tasks = [(self.spec, self.snr_index, t) for t in range(start, start + self.chunk)]
            if self.pool is None:
                outcomes = map(_trial_task, tasks)
            else:
                outcomes = self.pool.map(_trial_task, tasks)
            yield from outcomes
            start += self.chunk


@contextmanager
def _worker_pool(workers: int):
    if workers <= 1:
        yield None
        return
    with Pool(processes=workers) as pool:
        yield pool


@dataclass
class _Tally:
    bits: int = 0
    errors: int = 0
    analytic_sum: float = 0.0
    analytic_bits: int = 0
    trials: int = 0

    def add(self, outcome: TrialOutcome, limit: Optional[int] = None) -> Tuple[int, int]:
        """Count a trial, truncated to limit bits; returns the (bits, errors) counted"""
        flags = outcome.error_flags
        analytic = outcome.analytic_ber
        if limit is not None and flags.size > limit:
            flags = flags[:limit]
            analytic = analytic[:limit] if analytic is not None else None
        bits, errors = int(flags.size), int(np.count_nonzero(flags))
        self.bits += bits
        self.errors += errors
        if analytic is not None:
            self.analytic_sum += float(np.sum(analytic))
            self.analytic_bits += int(analytic.size)
        self.trials += 1
        return bits, errors

    def point(self, snr_db: float) -> BerPoint:
        analytic = self.analytic_sum / self.analytic_bits if self.analytic_bits else None
        return BerPoint(snr_db=snr_db, bits_tested=self.bits, bit_errors=self.errors,
                        analytic_ber=analytic)


def _run_point(spec: ExperimentSpec, snr_index: int, pool, workers: int) -> Tuple[BerPoint, int]:
    tally = _Tally()
    stop = spec.stop
    for outcome in TrialSource(spec, snr_index, pool, workers):
        tally.add(outcome, limit=stop.max_bits - tally.bits)
        if stop.done(tally.bits, tally.errors):
            break
    return tally.point(spec.snr_grid_db[snr_index]), tally.trials


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> BerCurve:
    """
    Estimate the BER curve of an experiment

    Args:
        spec: Experiment specification
        workers: Worker processes (1 runs in-process)

    Returns:
        BerCurve with one point per grid SNR and provenance metadata
    """
    if spec.stop.target_errors < PUBLISHABLE_ERRORS:
        logger.debug(f"target_errors={spec.stop.target_errors} is below {PUBLISHABLE_ERRORS}; "
                     f"points are indicative only")
    logger.info(f"Running {spec.label} ({spec.scenario.value}) over "
                f"{len(spec.snr_grid_db)} SNR points with {workers} worker(s)")

    started = time.time()
    points: List[BerPoint] = []
    trials: List[int] = []
    with _worker_pool(workers) as pool:
        for idx, snr in enumerate(spec.snr_grid_db):
            point, n_trials = _run_point(spec, idx, pool, workers)
            points.append(point)
            trials.append(n_trials)
            logger.info(f"{spec.label} @ {snr:g} dB: {point.bits_tested} bits, "
                        f"{point.bit_errors} errors, BER {point.ber:.3e}")

    curve = BerCurve(points=points)
    floor = detect_error_floor(curve)
    non_monotone = non_monotone_points(curve)
    if non_monotone:
        logger.warning(f"{spec.label}: BER rises with SNR at {non_monotone} dB")
    if floor:
        logger.warning(f"{spec.label}: error floor over the last three SNR points")

    curve.metadata = {
        **spec.describe(),
        **scenario_notes(spec),
        'seed': spec.system.seed,
        'version': __version__,
        'trials': trials,
        'error_floor': floor,
        'non_monotone_snr_db': non_monotone,
        'elapsed_s': round(time.time() - started, 3),
    }
    return curve


def detect_error_floor(curve: BerCurve) -> bool:
    """True when the last three BERs are nonzero and within a factor of two"""
    if len(curve.points) < 3:
        return False
    tail = [p.ber for p in curve.points[-3:]]
    if min(tail) <= 0:
        return False
    return max(tail) / min(tail) < FLOOR_FACTOR


def non_monotone_points(curve: BerCurve) -> List[float]:
    """SNRs where the BER rises by more than the combined 95% half widths"""
    flagged = []
    for prev, cur in zip(curve.points, curve.points[1:]):
        if cur.ber - prev.ber > prev.half_width_95 + cur.half_width_95:
            flagged.append(cur.snr_db)
    return flagged


@dataclass(frozen=True)
class PairedPoint:
    """
    Paired comparison at one SNR

    Attributes:
        snr_db: Direct link SNR in dB
        point_a, point_b: BER points of the two runs over the same trials
        ber_diff: Mean per-trial BER difference (a - b)
        half_width_95: Half width of the paired 95% interval of ber_diff
    """
    snr_db: float
    point_a: BerPoint
    point_b: BerPoint
    ber_diff: float
    half_width_95: float

    @property
    def a_lower(self) -> bool:
        """a has a lower BER than b with 95% confidence"""
        return self.ber_diff + self.half_width_95 < 0

    @property
    def interval_contains_zero(self) -> bool:
        return abs(self.ber_diff) <= self.half_width_95


@dataclass
class PairedReport:
    """Paired comparison of two experiments"""
    label_a: str
    label_b: str
    points: List[PairedPoint] = field(default_factory=list)


def compare_paired(spec_a: ExperimentSpec, spec_b: ExperimentSpec,
                   workers: int = 1) -> PairedReport:
    """
    Run two experiments on shared random streams and compare them per trial

    Both runs use the same trial indices; a point finishes once both stop
    rules are met.

    Args:
        spec_a: First experiment
        spec_b: Second experiment
        workers: Worker processes

    Returns:
        PairedReport with one PairedPoint per grid SNR
    """
    if spec_a.snr_grid_db != spec_b.snr_grid_db:
        raise GridMismatchError(
            f"SNR grids differ: {list(spec_a.snr_grid_db)} vs {list(spec_b.snr_grid_db)}")
    if spec_a.system.seed != spec_b.system.seed:
        raise GridMismatchError(
            f"seeds differ: {spec_a.system.seed} vs {spec_b.system.seed}")

    report = PairedReport(label_a=spec_a.label, label_b=spec_b.label)
    with _worker_pool(workers) as pool:
        for idx, snr in enumerate(spec_a.snr_grid_db):
            tally_a, tally_b = _Tally(), _Tally()
            diffs: List[float] = []
            pairs = zip(TrialSource(spec_a, idx, pool, workers),
                        TrialSource(spec_b, idx, pool, workers))
            for out_a, out_b in pairs:
                bits_a, errors_a = tally_a.add(out_a, limit=spec_a.stop.max_bits - tally_a.bits)
                bits_b, errors_b = tally_b.add(out_b, limit=spec_b.stop.max_bits - tally_b.bits)
                if bits_a and bits_b:
                    diffs.append(errors_a / bits_a - errors_b / bits_b)
                if (spec_a.stop.done(tally_a.bits, tally_a.errors)
                        and spec_b.stop.done(tally_b.bits, tally_b.errors)):
                    break

            d = np.asarray(diffs)
            half = 1.96 * float(np.std(d, ddof=1)) / math.sqrt(d.size) if d.size > 1 else math.inf
            paired = PairedPoint(snr_db=snr, point_a=tally_a.point(snr), point_b=tally_b.point(snr),
                                 ber_diff=float(d.mean()), half_width_95=half)
            report.points.append(paired)
            logger.info(f"{spec_a.label} - {spec_b.label} @ {snr:g} dB: "
                        f"dBER {paired.ber_diff:+.3e} +- {half:.3e} over {d.size} trials")
    return report
