#!/usr/bin/env python
"""
Random Streams
--------------
Counter-based random streams. Every (snr index, trial index, purpose)
triple maps to its own Philox generator derived from the master seed, so a
trial draws the same numbers whichever worker runs it and two scenarios
run with the same seed see the same channels, bits and noise.
"""

from enum import IntEnum
from typing import Dict

import numpy as np


class Purpose(IntEnum):
    """What a stream is used for"""
    CHANNEL = 0
    BITS = 1
    SIGNAL = 2
    CSI = 3


def make_stream(seed: int, snr_index: int, trial_index: int, purpose: Purpose) -> np.random.Generator:
    """
    Generator of one (snr index, trial index, purpose) substream

    Args:
        seed: Master seed
        snr_index: Index of the SNR point in the grid
        trial_index: Index of the trial within the point
        purpose: Stream purpose

    Returns:
        numpy Generator backed by Philox
    """
    seq = np.random.SeedSequence(entropy=seed,
                                 spawn_key=(snr_index, trial_index, int(purpose)))
    return np.random.Generator(np.random.Philox(seq))


class TrialStreams:
    """Lazily created streams of one trial"""

    def __init__(self, seed: int, snr_index: int, trial_index: int):
        self.seed = seed
        self.snr_index = snr_index
        self.trial_index = trial_index
        self._streams: Dict[Purpose, np.random.Generator] = {}

    def get(self, purpose: Purpose) -> np.random.Generator:
        if purpose not in self._streams:
            self._streams[purpose] = make_stream(self.seed, self.snr_index,
                                                 self.trial_index, purpose)
        return self._streams[purpose]

    @property
    def channel(self) -> np.random.Generator:
        return self.get(Purpose.CHANNEL)

    @property
    def bits(self) -> np.random.Generator:
        return self.get(Purpose.BITS)

    @property
    def signal(self) -> np.random.Generator:
        return self.get(Purpose.SIGNAL)

    @property
    def csi(self) -> np.random.Generator:
        return self.get(Purpose.CSI)


def draw_bits(rng: np.random.Generator, count: int) -> np.ndarray:
    """Equiprobable Tag bits as +1/-1"""
    return (2 * rng.integers(0, 2, size=count) - 1).astype(np.int8)
