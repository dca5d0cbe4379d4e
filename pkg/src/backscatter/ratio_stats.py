#!/usr/bin/env python
"""
Ratio Statistics
----------------
Closed-form statistics of ratios of correlated zero-mean complex Gaussians:
the density of the raw ratio observation, the density of the linearized
noise, the error-variable density with its closed-form integral G, the
closed-form BER of the minimum distance detector and the pair selection
metric eta.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate

from .channel import ChannelRealization
from .errors import DegenerateChannelError, InvalidStatsError

ArrayLike = Union[complex, float, np.ndarray]


@dataclass(frozen=True)
class HypothesisStats:
    """
    Second-order statistics of (z_i, z_j) under one Tag hypothesis

    Attributes:
        mu1, mu2: Composite channels of the numerator and denominator branch
        sigma1_sq, sigma2_sq: Branch variances |mu|^2 P_s + N_w
        rho: Complex correlation coefficient mu1* mu2 P_s / (sigma1 sigma2)
        one_minus_rho_sq: 1 - |rho|^2, computed without cancellation
    """
    mu1: complex
    mu2: complex
    sigma1_sq: float
    sigma2_sq: float
    rho: complex
    one_minus_rho_sq: float


@dataclass(frozen=True)
class LinearNoiseStats:
    """
    Parameters of the linearized model y = h x + w for one antenna pair

    Attributes:
        h_eff: Effective channel h
        tau: Noise scale tau
    """
    h_eff: complex
    tau: float


def _check_pair(ch: ChannelRealization, i: int, j: int) -> None:
    if i == j:
        raise ValueError(f"ratio branches must differ, got i = j = {i}")
    q = ch.num_antennas
    if not (0 <= i < q and 0 <= j < q):
        raise ValueError(f"branch index out of range for {q} antennas: ({i}, {j})")


def _check_gains(ch: ChannelRealization, i: int, j: int) -> None:
    if ch.h_sr[i] == 0 or ch.h_sr[j] == 0:
        raise DegenerateChannelError(f"zero direct-link gain on branch pair ({i}, {j})")


def hypothesis_stats(ch: ChannelRealization, i: int, j: int, x: int,
                     p_s: float, n_w: float) -> HypothesisStats:
    """
    Statistics of the ratio z_i / z_j given Tag symbol x

    Args:
        ch: Channel realization
        i: Numerator branch
        j: Denominator branch
        x: Tag symbol hypothesis (+1 or -1)
        p_s: Ambient source power
        n_w: Noise power

    Returns:
        HypothesisStats for the hypothesis
    """
    _check_pair(ch, i, j)
    mu = ch.composite(x)
    mu1, mu2 = complex(mu[i]), complex(mu[j])
    p1, p2 = abs(mu1) ** 2 * p_s, abs(mu2) ** 2 * p_s
    s1, s2 = p1 + n_w, p2 + n_w

    if s1 * s2 > 0:
        rho = mu1.conjugate() * mu2 * p_s / math.sqrt(s1 * s2)
        # 1 - p1 p2 / (s1 s2) expanded so the high-SNR case keeps its digits
        one_minus = (n_w * (p1 + p2) + n_w * n_w) / (s1 * s2)
    else:
        rho, one_minus = 0j, 0.0

    return HypothesisStats(mu1=mu1, mu2=mu2, sigma1_sq=s1, sigma2_sq=s2,
                           rho=rho, one_minus_rho_sq=one_minus)


def _quadratic_form(lam: ArrayLike, stats: HypothesisStats) -> np.ndarray:
    # |lam|^2/s1^2 + 1/s2^2 - 2 Re(rho lam)/(s1 s2), written as a completed square
    sigma1 = math.sqrt(stats.sigma1_sq)
    sigma2 = math.sqrt(stats.sigma2_sq)
    lam = np.asarray(lam, dtype=complex)
    centred = lam / sigma1 - np.conj(stats.rho) / sigma2
    return centred.real ** 2 + centred.imag ** 2 + stats.one_minus_rho_sq / stats.sigma2_sq


def _check_stats(stats: HypothesisStats) -> None:
    if not stats.one_minus_rho_sq > 0:
        raise InvalidStatsError(f"|rho| must be < 1, got 1 - |rho|^2 = {stats.one_minus_rho_sq}")


def ratio_pdf(lam: ArrayLike, stats: HypothesisStats) -> np.ndarray:
    """
    Density of the complex ratio lambda = z_1 / z_2

    Args:
        lam: Ratio observation(s)
        stats: Statistics of the hypothesis

    Returns:
        Density value(s), same shape as ``lam``
    """
    _check_stats(stats)
    scale = stats.one_minus_rho_sq / (math.pi * stats.sigma1_sq * stats.sigma2_sq)
    return scale / _quadratic_form(lam, stats) ** 2


def ratio_log_pdf(lam: ArrayLike, stats: HypothesisStats) -> np.ndarray:
    """Natural log of ``ratio_pdf``"""
    _check_stats(stats)
    log_scale = (math.log(stats.one_minus_rho_sq)
                 - math.log(math.pi * stats.sigma1_sq * stats.sigma2_sq))
    return log_scale - 2.0 * np.log(_quadratic_form(lam, stats))


def magnitude_pdf(r: ArrayLike, stats: HypothesisStats, epsrel: float = 1e-9) -> np.ndarray:
    """
    Density of |lambda| obtained by integrating ``ratio_pdf`` over the phase

    The integrand peaks where Re(rho lambda) is largest, so the phase is
    measured from -arg(rho); the integrand is even in that variable.

    Args:
        r: Magnitude(s) at which to evaluate
        stats: Statistics of the hypothesis
        epsrel: Relative tolerance of the adaptive quadrature

    Returns:
        Density value(s), same shape as ``r``
    """
    _check_stats(stats)
    r = np.asarray(r, dtype=float)
    flat = r.reshape(-1)
    offset = -np.angle(stats.rho)

    def integrand(phi):
        return ratio_pdf(flat * np.exp(1j * (phi + offset)), stats)

    peak = integrand(0.0)
    safe_peak = np.where(peak > 0, peak, 1.0)
    half, _ = integrate.quad_vec(lambda phi: integrand(phi) / safe_peak, 0.0, math.pi,
                                 epsrel=epsrel, norm='max')
    density = 2.0 * flat * half * safe_peak
    return density.reshape(r.shape)


def linear_noise_stats(ch: ChannelRealization, i: int, j: int,
                       p_s: float, n_w: float) -> LinearNoiseStats:
    """
    Effective channel h and noise scale tau of the pair (i, j)

    Args:
        ch: Channel realization
        i: Numerator branch
        j: Denominator branch
        p_s: Ambient source power
        n_w: Noise power

    Returns:
        LinearNoiseStats for the pair
    """
    _check_pair(ch, i, j)
    _check_gains(ch, i, j)
    h_sr_i, h_sr_j = complex(ch.h_sr[i]), complex(ch.h_sr[j])
    h_eff = (complex(ch.h_tr[i]) / h_sr_i - complex(ch.h_tr[j]) / h_sr_j) * ch.g
    gain_sum = 1.0 / abs(h_sr_i) ** 2 + 1.0 / abs(h_sr_j) ** 2
    tau = gain_sum * n_w / (math.pi * p_s)
    return LinearNoiseStats(h_eff=complex(h_eff), tau=tau)


def linear_noise_pdf(w: ArrayLike, ch: ChannelRealization, i: int, j: int,
                     p_s: float, n_w: float) -> np.ndarray:
    """
    Density of the linearized noise, written in terms of the branch gains

    Args:
        w: Noise value(s)
        ch: Channel realization
        i: Numerator branch
        j: Denominator branch
        p_s: Ambient source power
        n_w: Noise power

    Returns:
        Density value(s)
    """
    _check_pair(ch, i, j)
    _check_gains(ch, i, j)
    gain_sum = 1.0 / abs(ch.h_sr[i]) ** 2 + 1.0 / abs(ch.h_sr[j]) ** 2
    w_abs_sq = np.abs(np.asarray(w, dtype=complex)) ** 2
    return (n_w / (math.pi * p_s)) * gain_sum * (w_abs_sq + gain_sum * n_w / p_s) ** -2


def linear_noise_pdf_tau(w: ArrayLike, tau: float) -> np.ndarray:
    """Density of the linearized noise in its tau form: tau (|w|^2 + pi tau)^-2"""
    w_abs_sq = np.abs(np.asarray(w, dtype=complex)) ** 2
    return tau * (w_abs_sq + math.pi * tau) ** -2


def error_pdf(phi: ArrayLike, tau: float, h_abs_sq: float) -> np.ndarray:
    """Density of the error variable phi = h x w"""
    phi_abs_sq = np.abs(np.asarray(phi, dtype=complex)) ** 2
    c = tau * h_abs_sq
    return c * (phi_abs_sq + math.pi * c) ** -2


def _sign(value: float) -> float:
    return 1.0 if value > 0 else -1.0


def _zeta(u: float, v: float, c: float) -> float:
    root = math.sqrt(c + v * v)
    return (v / root) / (2.0 * math.pi) * math.atan(u / root)


def error_cdf_G(phi_r: float, phi_i: float, tau: float, h_abs_sq: float) -> float:
    """
    Closed-form antiderivative G of the error-variable density

    G(r, i) = zeta(r, i) + zeta(i, r). Infinite arguments are taken as
    iterated limits with the phi_i limit first; both orders give the same
    values: G(+-inf, i) = +-gamma(i)/4, G(r, +-inf) = +-gamma(r)/4 and
    G(+-inf, +-inf) = sign(r) sign(i)/4.

    Args:
        phi_r: Real-part argument (may be +-inf)
        phi_i: Imaginary-part argument (may be +-inf)
        tau: Noise scale, > 0
        h_abs_sq: |h|^2, > 0

    Returns:
        Value of G
    """
    if not tau > 0:
        raise ValueError(f"tau must be > 0, got {tau}")
    if not h_abs_sq > 0:
        raise ValueError(f"|h|^2 must be > 0, got {h_abs_sq}")
    c = math.pi * tau * h_abs_sq

    r_inf, i_inf = math.isinf(phi_r), math.isinf(phi_i)
    if r_inf and i_inf:
        return _sign(phi_r) * _sign(phi_i) / 4.0
    if r_inf:
        return _sign(phi_r) * (phi_i / math.sqrt(c + phi_i * phi_i)) / 4.0
    if i_inf:
        return _sign(phi_i) * (phi_r / math.sqrt(c + phi_r * phi_r)) / 4.0
    return _zeta(phi_r, phi_i, c) + _zeta(phi_i, phi_r, c)


def ber_from_G(h_abs_sq: float, tau: float) -> float:
    """
    BER of the minimum distance detector as the G combination over the
    error region Re(phi) < -|h|^2
    """
    inf = math.inf
    a = -h_abs_sq
    return (error_cdf_G(a, inf, tau, h_abs_sq) + error_cdf_G(-inf, -inf, tau, h_abs_sq)
            - error_cdf_G(inf, -inf, tau, h_abs_sq) - error_cdf_G(a, -inf, tau, h_abs_sq))


def closed_form_ber(h_eff: ArrayLike, tau: ArrayLike) -> Union[float, np.ndarray]:
    """
    Closed-form BER of the minimum distance detector on the linearized model

        P_b = 1/2 - 1/2 (pi tau / |h|^2 + 1)^(-1/2)

    Args:
        h_eff: Effective channel(s)
        tau: Noise scale(s), >= 0

    Returns:
        BER in [0, 1/2]; 1/2 where h_eff is 0
    """
    h_abs_sq = np.abs(np.asarray(h_eff, dtype=complex)) ** 2
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise ValueError("tau must be >= 0")
    h_abs_sq, tau = np.broadcast_arrays(h_abs_sq, tau)

    ratio = np.full(h_abs_sq.shape, np.inf)
    np.divide(math.pi * tau, h_abs_sq, out=ratio, where=h_abs_sq > 0)
    # 1 - (1 + e)^(-1/2) without cancellation for small e
    ber = -0.5 * np.expm1(-0.5 * np.log1p(ratio))
    return float(ber) if ber.ndim == 0 else ber


def eta(ch: ChannelRealization, i: int, j: int) -> float:
    """
    Selection metric of the pair (i, j); the BER of the pair increases with it

    Args:
        ch: Channel realization
        i: First branch
        j: Second branch

    Returns:
        eta_{i,j}, +inf when the two branch ratios coincide
    """
    _check_pair(ch, i, j)
    _check_gains(ch, i, j)
    h_sr_i, h_sr_j = complex(ch.h_sr[i]), complex(ch.h_sr[j])
    numerator = 1.0 / abs(h_sr_i) ** 2 + 1.0 / abs(h_sr_j) ** 2
    denominator = abs(complex(ch.h_tr[i]) / h_sr_i - complex(ch.h_tr[j]) / h_sr_j) ** 2
    if denominator == 0:
        return math.inf
    return numerator / denominator
