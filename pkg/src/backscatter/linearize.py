#!/usr/bin/env python
"""
Channel Linearization
---------------------
Turns a pair of received branch samples into the linear model

    y = h x + w

by taking the principal log of the ratio z_i / z_j, removing the direct-link
bias Log(h_i^SR / h_j^SR) and compensating the 2 pi ambiguity of the
principal logarithm.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from .channel import ChannelRealization, ReceivedBlock
from .ratio_stats import linear_noise_stats

TWO_PI = 2.0 * math.pi


class Compensation(Enum):
    """Phase compensation applied after bias removal"""
    NONE = "none"
    PROPOSED = "proposed"
    PERFECT = "perfect"


@dataclass(frozen=True)
class LinearizedSample:
    """
    Linearized observation(s) of one antenna pair

    Attributes:
        y: Compensated log-ratio observation (scalar or array)
        h_eff: Effective channel h of the block
        tau: Noise scale tau of the block
    """
    y: Union[complex, np.ndarray]
    h_eff: complex
    tau: float


def effective_channel(ch: ChannelRealization, i: int, j: int,
                      p_s: float, n_w: float) -> Tuple[complex, float]:
    """
    Effective channel and noise scale of the pair (i, j)

    Args:
        ch: Channel realization
        i: Numerator branch
        j: Denominator branch
        p_s: Ambient source power
        n_w: Noise power

    Returns:
        (h_eff, tau)
    """
    stats = linear_noise_stats(ch, i, j, p_s, n_w)
    return stats.h_eff, stats.tau


def phase_shift(ratio_phase: np.ndarray, bias_phase: float) -> np.ndarray:
    """
    Phase correction added to the imaginary part of the bias-free log-ratio

    Args:
        ratio_phase: Arg(z_i / z_j) in (-pi, pi]
        bias_phase: Arg(h_i^SR / h_j^SR) in (-pi, pi]

    Returns:
        +2 pi below -pi, -2 pi above pi, 0 otherwise (boundary included)
    """
    diff = np.asarray(ratio_phase, dtype=float) - bias_phase
    return np.where(diff < -math.pi, TWO_PI, np.where(diff > math.pi, -TWO_PI, 0.0))


def direct_noise(w_i: np.ndarray, w_j: np.ndarray, s: np.ndarray,
                 ch: ChannelRealization, i: int, j: int) -> np.ndarray:
    """Noise term of the linear model computed from the branch noise draws"""
    return (np.asarray(w_i) / ch.h_sr[i] - np.asarray(w_j) / ch.h_sr[j]) / np.asarray(s)


def linearize_sample(z_i, z_j, ch: ChannelRealization, i: int, j: int,
                     p_s: float, n_w: float,
                     compensation: Compensation = Compensation.PROPOSED,
                     s: Optional[np.ndarray] = None) -> LinearizedSample:
    """
    Linearize one or more dual-branch samples

    Args:
        z_i: Numerator branch sample(s)
        z_j: Denominator branch sample(s)
        ch: Channel state available at the Reader
        i: Numerator branch
        j: Denominator branch
        p_s: Ambient source power
        n_w: Noise power
        compensation: Phase compensation mode
        s: Ambient symbols, required by ``Compensation.PERFECT`` only

    Returns:
        LinearizedSample; ``y`` has the shape of the inputs
    """
    z_i = np.asarray(z_i, dtype=complex)
    z_j = np.asarray(z_j, dtype=complex)
    if np.any(z_j == 0):
        raise ZeroDivisionError(f"zero sample on denominator branch {j}")

    h_eff, tau = effective_channel(ch, i, j, p_s, n_w)

    if compensation is Compensation.PERFECT:
        if s is None:
            raise ValueError("perfect compensation needs the ambient symbols")
        s = np.asarray(s, dtype=complex)
        y = np.log(z_i / (ch.h_sr[i] * s)) - np.log(z_j / (ch.h_sr[j] * s))
    else:
        ratio = z_i / z_j
        bias = complex(ch.h_sr[i]) / complex(ch.h_sr[j])
        y = np.log(ratio) - np.log(bias)
        if compensation is Compensation.PROPOSED:
            y = y + 1j * phase_shift(np.angle(ratio), float(np.angle(bias)))

    if y.ndim == 0:
        y = complex(y)
    return LinearizedSample(y=y, h_eff=h_eff, tau=tau)


def linearize_block(block: ReceivedBlock, ch: ChannelRealization, i: int, j: int,
                    p_s: float, n_w: float,
                    compensation: Compensation = Compensation.PROPOSED) -> LinearizedSample:
    """Linearize every sample of a received block on the pair (i, j)"""
    s = block.s if compensation is Compensation.PERFECT else None
    return linearize_sample(block.z[i], block.z[j], ch, i, j, p_s, n_w, compensation, s)
