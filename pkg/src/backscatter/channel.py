#!/usr/bin/env python
"""
Ambient Backscatter Channel Model
---------------------------------
Channel realizations and per-symbol received signals for a single-antenna Tag
and a Q-antenna Reader, in the model normalized by the source-to-Reader
large-scale gain:

    z_q(n) = (h_q^SR + h_q^TR * g * x) * s(n) + w_q(n),   g = alpha * A_TR * h^ST

The direct link SNR is P_s / N_w and the relative SNR is 1 / (alpha^2 A_TR^2).
The source power is referenced to unit noise: P_s = 10^(gamma_d / 10).
"""

import math
import logging
from dataclasses import dataclass, field, replace
from typing import Tuple, Union

import numpy as np

from .errors import ConfigError

logger = logging.getLogger('ambc_sim.channel')

# Upper bound for the master seed (64-bit unsigned)
MAX_SEED = 2 ** 64


def complex_normal(rng: np.random.Generator, shape: Union[int, Tuple[int, ...]],
                   variance: float = 1.0) -> np.ndarray:
    """
    Draw circularly symmetric complex Gaussian samples CN(0, variance)

    Args:
        rng: numpy Generator to draw from
        shape: Output shape
        variance: Total complex variance

    Returns:
        Complex array of the requested shape
    """
    if isinstance(shape, int):
        shape = (shape,)
    parts = rng.standard_normal((2,) + tuple(shape))
    return math.sqrt(variance / 2.0) * (parts[0] + 1j * parts[1])


@dataclass(frozen=True)
class SystemConfig:
    """
    Scenario scalars for one simulated link

    Attributes:
        direct_link_snr_db: Direct link SNR gamma_d in dB
        relative_snr_db: Relative SNR delta_gamma in dB
        alpha_loss_db: Tag implementation loss in dB (amplitude factor)
        num_antennas: Number of Reader antennas Q
        repetition_length: Symbols per Tag bit M
        coherence_length: Symbols per coherence block K
        noise_power: Noise power N_w (linear)
        seed: Master RNG seed
    """
    direct_link_snr_db: float = 20.0
    relative_snr_db: float = 40.0
    alpha_loss_db: float = 1.1
    num_antennas: int = 2
    repetition_length: int = 1
    coherence_length: int = 100
    noise_power: float = 1.0
    seed: int = 0

    def __post_init__(self):
        for name in ('direct_link_snr_db', 'relative_snr_db', 'alpha_loss_db', 'noise_power'):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(f"{name} must be a finite number, got {value!r}")
        if self.num_antennas < 2:
            raise ConfigError(f"num_antennas must be >= 2, got {self.num_antennas}")
        if self.repetition_length < 1:
            raise ConfigError(f"repetition_length must be >= 1, got {self.repetition_length}")
        if self.coherence_length < 1:
            raise ConfigError(f"coherence_length must be >= 1, got {self.coherence_length}")
        # zero noise is allowed only for the linearized scenarios, see ExperimentSpec
        if self.noise_power < 0:
            raise ConfigError(f"noise_power must be >= 0, got {self.noise_power}")
        if not 0 <= self.seed < MAX_SEED:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def source_power(self) -> float:
        """Ambient source power P_s (linear, referenced to unit noise)"""
        return 10.0 ** (self.direct_link_snr_db / 10.0)

    @property
    def amplitudes(self) -> Tuple[float, float]:
        """(alpha, A_TR) derived from the dB settings"""
        return derive_amplitudes(self.alpha_loss_db, self.relative_snr_db)

    def with_snr(self, direct_link_snr_db: float) -> 'SystemConfig':
        """Copy of this config at another direct link SNR"""
        return replace(self, direct_link_snr_db=float(direct_link_snr_db))


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """
    Fading coefficients of one coherence block

    Attributes:
        h_sr: Source-to-Reader fading per antenna, shape (Q,)
        h_tr: Tag-to-Reader fading per antenna, shape (Q,)
        h_st: Source-to-Tag fading
        g: Composite backscatter gain alpha * A_TR * h_st
    """
    h_sr: np.ndarray
    h_tr: np.ndarray
    h_st: complex
    g: complex

    @property
    def num_antennas(self) -> int:
        return int(self.h_sr.shape[0])

    def composite(self, x: int) -> np.ndarray:
        """Composite channel mu_q = h_q^SR + h_q^TR g x for every antenna"""
        return self.h_sr + self.h_tr * self.g * x


@dataclass(frozen=True, eq=False)
class ReceivedBlock:
    """
    Received samples of one coherence block

    Only ``z`` may reach a detector; ``s`` and ``x`` are kept for oracle
    checks and BER scoring.

    Attributes:
        z: Received samples, shape (Q, N)
        s: Ambient symbols, shape (N,)
        x: Tag symbol per ambient symbol (+1/-1), shape (N,)
    """
    z: np.ndarray
    s: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)

    @property
    def length(self) -> int:
        return int(self.z.shape[1])


def derive_amplitudes(alpha_loss_db: float, relative_snr_db: float) -> Tuple[float, float]:
    """
    Convert the Tag loss and the relative SNR into amplitude factors

    Args:
        alpha_loss_db: Tag implementation loss in dB
        relative_snr_db: Relative SNR delta_gamma in dB

    Returns:
        (alpha, a_tr) with 1 / (alpha^2 a_tr^2) equal to delta_gamma (linear)
    """
    alpha = 10.0 ** (-alpha_loss_db / 20.0)
    a_tr = 1.0 / (alpha * 10.0 ** (relative_snr_db / 20.0))
    return alpha, a_tr


def sample_channel(rng: np.random.Generator, config: SystemConfig) -> ChannelRealization:
    """
    Draw one block-fading channel realization

    All small-scale coefficients are i.i.d. CN(0, 1). Exact zeros of h_sr or
    h_st are rejected and redrawn since later stages divide by them.

    Args:
        rng: Stream to draw from
        config: System configuration

    Returns:
        The channel realization
    """
    q = config.num_antennas
    alpha, a_tr = config.amplitudes

    while True:
        coeffs = complex_normal(rng, 2 * q + 1)
        h_sr, h_tr, h_st = coeffs[:q], coeffs[q:2 * q], complex(coeffs[2 * q])
        if np.all(h_sr != 0) and h_st != 0:
            break
        logger.debug("Rejected degenerate channel draw")

    return ChannelRealization(h_sr=h_sr, h_tr=h_tr, h_st=h_st, g=alpha * a_tr * h_st)


def synthesize_block(rng: np.random.Generator, ch: ChannelRealization,
                     x_seq: np.ndarray, config: SystemConfig) -> ReceivedBlock:
    """
    Synthesize the received samples of one block

    Args:
        rng: Stream for the ambient symbols and the noise
        ch: Channel realization, constant over the block
        x_seq: Tag symbol (+1/-1) for each ambient symbol
        config: System configuration (source and noise power)

    Returns:
        The received block
    """
    x = np.asarray(x_seq, dtype=np.int8).reshape(-1)
    if x.size < 1:
        raise ConfigError("block must contain at least one symbol")
    if not np.all(np.abs(x) == 1):
        raise ConfigError("Tag symbols must be +1 or -1")

    n = x.size
    s = complex_normal(rng, n, config.source_power)
    w = complex_normal(rng, (ch.num_antennas, n), config.noise_power)

    mu = ch.h_sr[:, None] + ch.h_tr[:, None] * ch.g * x[None, :]
    z = mu * s[None, :] + w
    return ReceivedBlock(z=z, s=s, x=x)


def perturb_csi(rng: np.random.Generator, ch: ChannelRealization,
                error_var: float) -> ChannelRealization:
    """
    Channel state seen by the Reader when its direct-link estimate is noisy

    Args:
        rng: Stream for the estimation error
        ch: True channel realization
        error_var: Variance of the CN(0, error_var) error added to h_sr

    Returns:
        ``ch`` itself when error_var is 0, otherwise a perturbed copy
    """
    if error_var < 0:
        raise ConfigError(f"CSI error variance must be >= 0, got {error_var}")
    if error_var == 0:
        return ch
    noisy = ch.h_sr + complex_normal(rng, ch.num_antennas, error_var)
    return replace(ch, h_sr=noisy)
