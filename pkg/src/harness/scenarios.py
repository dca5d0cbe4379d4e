#!/usr/bin/env python
"""
Scenario Trials
---------------
One Monte Carlo trial per call: draw channels and Tag bits, synthesize the
received blocks, run the scenario's detection chain and score the bits.

Uncoded scenarios send K bits, one per symbol, inside a single coherence
block. Coded scenarios send K = M bits per trial over K blocks of M
symbols; without interleaving block k carries the M copies of bit k, with
interleaving every block carries one copy of each bit.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from ..backscatter.channel import (
    SystemConfig, ChannelRealization, sample_channel, synthesize_block, perturb_csi
)
from ..backscatter.coding import ReceivedCode, encode, decode_all, decode_ratio_ml
from ..backscatter.detectors import (
    ENERGY_BRANCH, ml_detect_ratio, min_distance_detect, magnitude_ratio_detect, energy_detect
)
from ..backscatter.linearize import effective_channel, linearize_block
from ..backscatter.ratio_stats import closed_form_ber
from ..backscatter.selection import select_ratio
from .experiment import ExperimentSpec, Scenario
from .streams import TrialStreams, draw_bits

logger = logging.getLogger('ambc_sim.scenarios')

# Antenna pair used whenever no selection is made
DEFAULT_PAIR = (0, 1)


@dataclass(frozen=True, eq=False)
class TrialOutcome:
    """
    Result of one trial

    Attributes:
        error_flags: One flag per bit, True where the bit was wrong
        draws_per_bit: Independent channel draws seen by each bit
        analytic_ber: Closed-form BER per bit on the true channel, uncoded only
    """
    error_flags: np.ndarray
    draws_per_bit: int
    analytic_ber: Optional[np.ndarray] = None

    @property
    def bits(self) -> int:
        return int(self.error_flags.size)

    @property
    def errors(self) -> int:
        return int(np.count_nonzero(self.error_flags))


def _uncoded_trial(spec: ExperimentSpec, system: SystemConfig,
                   streams: TrialStreams) -> TrialOutcome:
    p_s, n_w = system.source_power, system.noise_power
    i, j = DEFAULT_PAIR

    bits = draw_bits(streams.bits, system.coherence_length)
    ch = sample_channel(streams.channel, system)
    block = synthesize_block(streams.signal, ch, bits, system)
    seen = perturb_csi(streams.csi, ch, spec.csi_error_var)

    if spec.scenario is Scenario.MIN_DISTANCE:
        sample = linearize_block(block, seen, i, j, p_s, n_w, spec.compensation)
        decision = min_distance_detect(sample)
    else:
        lam = block.z[i] / block.z[j]
        if spec.scenario is Scenario.ML_RAW:
            decision = ml_detect_ratio(lam, seen, i, j, p_s, n_w)
        else:
            decision = magnitude_ratio_detect(np.abs(lam), seen, i, j, p_s, n_w)

    h_eff, tau = effective_channel(ch, i, j, p_s, n_w)
    analytic = np.full(bits.size, closed_form_ber(h_eff, tau))
    return TrialOutcome(error_flags=decision.x_hat != bits, draws_per_bit=1,
                        analytic_ber=analytic)


def _coded_trial(spec: ExperimentSpec, system: SystemConfig,
                 streams: TrialStreams) -> TrialOutcome:
    p_s, n_w = system.source_power, system.noise_power
    scenario = spec.scenario
    interleaved = scenario.interleaved

    bits = draw_bits(streams.bits, system.coherence_length)
    code = encode(bits, system.repetition_length, interleaved)
    tx = code.tx_matrix
    num_blocks = tx.shape[1]

    y_cols: List[np.ndarray] = []
    h_blocks = np.empty(num_blocks, dtype=complex)
    tau_blocks = np.empty(num_blocks, dtype=float)
    ratio_cols: List[np.ndarray] = []
    seen_blocks: List[ChannelRealization] = []
    energy_x = np.empty(num_blocks, dtype=np.int8)

    for b in range(num_blocks):
        ch = sample_channel(streams.channel, system)
        block = synthesize_block(streams.signal, ch, tx[:, b], system)
        seen = perturb_csi(streams.csi, ch, spec.csi_error_var)

        if scenario is Scenario.ENERGY:
            # block b carries the M copies of bit b
            energy_x[b] = energy_detect(block.z, seen, p_s, n_w).x_hat
            continue
        if scenario is Scenario.REP_ML_INTERLEAVED:
            i, j = DEFAULT_PAIR
            ratio_cols.append(block.z[i] / block.z[j])
            seen_blocks.append(seen)
            continue

        if scenario is Scenario.RATIO_SELECTION:
            choice = select_ratio(seen)
            i, j = choice.i, choice.j
        else:
            i, j = DEFAULT_PAIR
        sample = linearize_block(block, seen, i, j, p_s, n_w, spec.compensation)
        y_cols.append(np.asarray(sample.y))
        h_blocks[b], tau_blocks[b] = sample.h_eff, sample.tau

    if scenario is Scenario.ENERGY:
        x_hat = energy_x
    elif scenario is Scenario.REP_ML_INTERLEAVED:
        x_hat = decode_ratio_ml(np.column_stack(ratio_cols), seen_blocks, p_s, n_w,
                                interleaved=True).x_hat
    else:
        rx = ReceivedCode(y_matrix=np.column_stack(y_cols), h_per_block=h_blocks,
                          tau_per_block=tau_blocks, interleaved=interleaved)
        x_hat = decode_all(rx, _METHODS[scenario]).x_hat

    draws = system.repetition_length if interleaved else 1
    return TrialOutcome(error_flags=np.asarray(x_hat) != bits, draws_per_bit=draws)


_METHODS: Dict[Scenario, str] = {
    Scenario.AVERAGING: 'average',
    Scenario.REP_HARD: 'hard',
    Scenario.REP_SOFT: 'soft',
    Scenario.REP_HARD_INTERLEAVED: 'hard',
    Scenario.REP_SOFT_INTERLEAVED: 'soft',
    Scenario.RATIO_SELECTION: 'soft',
}

_RUNNERS: Dict[Scenario, Callable[[ExperimentSpec, SystemConfig, TrialStreams], TrialOutcome]] = {
    scenario: (_coded_trial if scenario.coded else _uncoded_trial) for scenario in Scenario
}


def simulate_trial(spec: ExperimentSpec, snr_index: int, trial_index: int) -> TrialOutcome:
    """
    Run one trial of an experiment

    Args:
        spec: Experiment specification
        snr_index: Index into spec.snr_grid_db
        trial_index: Trial counter within the SNR point

    Returns:
        TrialOutcome of the trial
    """
    system = spec.system.with_snr(spec.snr_grid_db[snr_index])
    streams = TrialStreams(system.seed, snr_index, trial_index)
    return _RUNNERS[spec.scenario](spec, system, streams)


def scenario_notes(spec: ExperimentSpec) -> Dict[str, object]:
    """Scenario conventions recorded in the metadata"""
    notes: Dict[str, object] = {
        'draws_per_bit': spec.system.repetition_length if spec.scenario.interleaved else 1,
        'ratio_pair': 'selected per block' if spec.scenario is Scenario.RATIO_SELECTION
        else list(DEFAULT_PAIR),
    }
    if spec.scenario is Scenario.ENERGY:
        notes['energy_branch'] = ENERGY_BRANCH
    if not spec.scenario.coded:
        notes['repetition_length'] = 'ignored (one symbol per bit)'
    return notes
