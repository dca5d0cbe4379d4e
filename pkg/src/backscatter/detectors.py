#!/usr/bin/env python
"""
Tag Symbol Detectors
--------------------
Per-bit detectors of the Tag symbol x in {-1, +1}:

  * ml_detect_ratio        - ML on the raw complex ratio z_i / z_j
  * min_distance_detect    - minimum distance on the linearized model
  * magnitude_ratio_detect - ML on |z_i / z_j| only (baseline)
  * energy_detect          - averaged-power detector on one branch (baseline)

All detectors accept scalars or arrays and resolve exact ties to -1.
Detectors only see received samples and channel state.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .channel import ChannelRealization
from .linearize import LinearizedSample
from .ratio_stats import hypothesis_stats, magnitude_pdf, ratio_log_pdf

IntLike = Union[int, np.ndarray]
FloatLike = Union[float, np.ndarray]

# Branch used by the single-branch energy detector
ENERGY_BRANCH = 0


@dataclass(frozen=True)
class Decision:
    """
    Detector output

    Attributes:
        x_hat: Decided symbol(s), +1 or -1
        score_margin: Score of +1 minus score of -1 (positive favours +1)
    """
    x_hat: IntLike
    score_margin: FloatLike


def decision_from_margin(margin) -> Decision:
    margin = np.asarray(margin, dtype=float)
    x_hat = np.where(margin > 0, 1, -1).astype(np.int8)
    if margin.ndim == 0:
        return Decision(x_hat=int(x_hat), score_margin=float(margin))
    return Decision(x_hat=x_hat, score_margin=margin)


def ml_detect_ratio(lam, ch: ChannelRealization, i: int, j: int,
                    p_s: float, n_w: float) -> Decision:
    """
    ML detection on the complex ratio lambda = z_i / z_j

    Args:
        lam: Ratio observation(s)
        ch: Channel state
        i: Numerator branch
        j: Denominator branch
        p_s: Ambient source power
        n_w: Noise power

    Returns:
        Decision with the log-likelihood difference as margin
    """
    stats_plus = hypothesis_stats(ch, i, j, +1, p_s, n_w)
    stats_minus = hypothesis_stats(ch, i, j, -1, p_s, n_w)
    margin = ratio_log_pdf(lam, stats_plus) - ratio_log_pdf(lam, stats_minus)
    return decision_from_margin(margin)


def min_distance_detect(sample: LinearizedSample) -> Decision:
    """
    Minimum distance detection: sign of Re{y conj(h)}

    The margin |y + h|^2 - |y - h|^2 equals 4 Re{y conj(h)}.
    """
    y = np.asarray(sample.y, dtype=complex)
    margin = 4.0 * np.real(y * np.conj(sample.h_eff))
    return decision_from_margin(margin)


def magnitude_ratio_detect(lambda_abs, ch: ChannelRealization, i: int, j: int,
                           p_s: float, n_w: float) -> Decision:
    """
    ML detection on |lambda| with densities marginalized over the phase

    Args:
        lambda_abs: Ratio magnitude(s)
        ch: Channel state
        i: Numerator branch
        j: Denominator branch
        p_s: Ambient source power
        n_w: Noise power

    Returns:
        Decision with the log-likelihood difference as margin
    """
    r = np.asarray(lambda_abs, dtype=float)
    f_plus = magnitude_pdf(r, hypothesis_stats(ch, i, j, +1, p_s, n_w))
    f_minus = magnitude_pdf(r, hypothesis_stats(ch, i, j, -1, p_s, n_w))
    with np.errstate(divide='ignore', invalid='ignore'):
        margin = np.log(f_plus) - np.log(f_minus)
    # equal densities (including both zero at r = 0) are ties
    margin = np.where(f_plus == f_minus, 0.0, margin)
    return decision_from_margin(margin)


def energy_detect(z_block, ch: ChannelRealization, p_s: float, n_w: float,
                  branch: int = ENERGY_BRANCH) -> Decision:
    """
    Averaged-power detector on a single branch

    T = mean |z(n)|^2 over the M samples of a bit; under hypothesis x the
    samples are CN(0, sigma_x^2) and M T / sigma_x^2 is Gamma(M) distributed,
    so the log-likelihood is -M log sigma_x^2 - M T / sigma_x^2 up to a
    constant shared by both hypotheses.

    Args:
        z_block: Samples of shape (Q, M) or (Q, B, M) for B bits
        ch: Channel state
        p_s: Ambient source power
        n_w: Noise power
        branch: Branch whose power is averaged

    Returns:
        Decision per bit
    """
    z = np.asarray(z_block, dtype=complex)[branch]
    m = z.shape[-1]
    stat = np.mean(np.abs(z) ** 2, axis=-1)

    mu = ch.composite(+1)[branch], ch.composite(-1)[branch]
    var_plus = abs(mu[0]) ** 2 * p_s + n_w
    var_minus = abs(mu[1]) ** 2 * p_s + n_w
    ll_plus = -m * math.log(var_plus) - m * stat / var_plus
    ll_minus = -m * math.log(var_minus) - m * stat / var_minus
    return decision_from_margin(ll_plus - ll_minus)
