#!/usr/bin/env python
"""
Repetition Coding and Interleaving
----------------------------------
Each Tag bit is repeated M times. Without interleaving the K codewords are
the columns of the M x K matrix X and codeword k is sent inside coherence
block k. With interleaving the transmitted matrix is V = X^T: column m of V
(one copy of every bit) is sent inside coherence block m, so each bit sees
M independent channel draws.

Column b of a transmitted or received matrix always belongs to coherence
block b.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .channel import ChannelRealization
from .detectors import Decision, decision_from_margin
from .ratio_stats import hypothesis_stats, ratio_log_pdf


@dataclass(frozen=True, eq=False)
class CodeBlock:
    """
    Encoded super-block

    Attributes:
        bits: Information bits x_1..x_K (+1/-1)
        tx_matrix: Transmitted symbols; column b goes out in block b
        interleaved: Whether tx_matrix is the transposed layout
    """
    bits: np.ndarray
    tx_matrix: np.ndarray
    interleaved: bool


@dataclass(frozen=True, eq=False)
class ReceivedCode:
    """
    Linearized samples of one super-block in transmission order

    Attributes:
        y_matrix: Linearized samples, same layout as the transmitted matrix
        h_per_block: Effective channel of each coherence block (column)
        tau_per_block: Noise scale of each coherence block (column)
        interleaved: Layout flag copied from the CodeBlock
    """
    y_matrix: np.ndarray
    h_per_block: np.ndarray
    tau_per_block: np.ndarray
    interleaved: bool

    def __post_init__(self):
        if self.y_matrix.ndim != 2:
            raise ValueError(f"y_matrix must be 2-D, got shape {self.y_matrix.shape}")
        blocks = self.y_matrix.shape[1]
        if len(self.h_per_block) != blocks or len(self.tau_per_block) != blocks:
            raise ValueError(
                f"need one channel and one tau per block ({blocks}), got "
                f"{len(self.h_per_block)} and {len(self.tau_per_block)}")

    @property
    def num_codewords(self) -> int:
        return int(self.y_matrix.shape[0] if self.interleaved else self.y_matrix.shape[1])


def interleave(matrix: np.ndarray) -> np.ndarray:
    """Block interleaver: transpose"""
    return np.asarray(matrix).T.copy()


def deinterleave(matrix: np.ndarray) -> np.ndarray:
    """Block de-interleaver: transpose"""
    return np.asarray(matrix).T.copy()


def encode(bits, repetition: int, interleaved: bool) -> CodeBlock:
    """
    Repetition-encode K bits, optionally interleaving

    Args:
        bits: K Tag bits (+1/-1)
        repetition: Repetition length M
        interleaved: Apply the transpose interleaver

    Returns:
        CodeBlock with an M x K (or K x M interleaved) transmitted matrix
    """
    bits = np.asarray(bits, dtype=np.int8).reshape(-1)
    if bits.size < 1:
        raise ValueError("need at least one bit")
    if repetition < 1:
        raise ValueError(f"repetition length must be >= 1, got {repetition}")
    if not np.all(np.abs(bits) == 1):
        raise ValueError("bits must be +1 or -1")

    x_matrix = np.tile(bits, (repetition, 1))
    tx = interleave(x_matrix) if interleaved else x_matrix
    return CodeBlock(bits=bits, tx_matrix=tx, interleaved=interleaved)


def _codewords(rx: ReceivedCode) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    # rows of the returned arrays are codewords
    y = np.asarray(rx.y_matrix, dtype=complex)
    h = np.asarray(rx.h_per_block, dtype=complex)
    tau = np.asarray(rx.tau_per_block, dtype=float)
    if rx.interleaved:
        k = y.shape[0]
        return y, np.tile(h, (k, 1)), np.tile(tau, (k, 1))
    m = y.shape[0]
    return y.T, np.tile(h[:, None], (1, m)), np.tile(tau[:, None], (1, m))


def _average_margin(y, h) -> np.ndarray:
    y_bar = y.mean(axis=1)
    return 4.0 * np.real(y_bar * np.conj(h[:, 0]))


def _hard_votes(y, h) -> np.ndarray:
    votes = np.where(np.real(y * np.conj(h)) > 0, 1, -1)
    return votes.sum(axis=1).astype(float)


def _soft_margin(y, h, tau) -> np.ndarray:
    noise = np.pi * tau
    cost_plus = np.log(np.abs(y - h) ** 2 + noise).sum(axis=1)
    cost_minus = np.log(np.abs(y + h) ** 2 + noise).sum(axis=1)
    return cost_minus - cost_plus


def _hard_decision(votes) -> Decision:
    votes = np.asarray(votes, dtype=float)
    # majority with ties to +1
    x_hat = np.where(votes >= 0, 1, -1).astype(np.int8)
    if votes.ndim == 0:
        return Decision(x_hat=int(x_hat), score_margin=float(votes))
    return Decision(x_hat=x_hat, score_margin=votes)


def decode_all(rx: ReceivedCode, method: str) -> Decision:
    """
    Decode every codeword of a super-block

    Args:
        rx: Received code
        method: ``average``, ``hard`` or ``soft``

    Returns:
        Decision with one entry per codeword
    """
    y, h, tau = _codewords(rx)
    if method == 'average':
        if rx.interleaved:
            raise ValueError("averaging needs a constant channel per codeword")
        return decision_from_margin(_average_margin(y, h))
    if method == 'hard':
        return _hard_decision(_hard_votes(y, h))
    if method == 'soft':
        return decision_from_margin(_soft_margin(y, h, tau))
    raise ValueError(f"unknown decoding method {method!r}")


def _single(decision: Decision, k: int) -> Decision:
    return Decision(x_hat=int(decision.x_hat[k]), score_margin=float(decision.score_margin[k]))


def decode_average(rx: ReceivedCode, k: int) -> Decision:
    """Average the M samples of codeword k, then minimum distance"""
    return _single(decode_all(rx, 'average'), k)


def decode_hard(rx: ReceivedCode, k: int) -> Decision:
    """Majority vote over per-sample minimum distance decisions"""
    return _single(decode_all(rx, 'hard'), k)


def decode_soft(rx: ReceivedCode, k: int) -> Decision:
    """
    Soft decision: argmin over x of sum_m log(|y_m - h_m x|^2 + pi tau_m)

    This is the negative log-likelihood of the codeword under the
    linearized noise density, dropping terms shared by both hypotheses.
    """
    return _single(decode_all(rx, 'soft'), k)


def decode_ratio_ml(ratio_matrix, channels: Sequence[ChannelRealization],
                    p_s: float, n_w: float, interleaved: bool,
                    pair: Tuple[int, int] = (0, 1)) -> Decision:
    """
    Codeword ML on the raw ratios: sum of per-sample log-likelihood ratios

    Args:
        ratio_matrix: z_i / z_j in transmission order, column b in block b
        channels: Channel state of each coherence block
        p_s: Ambient source power
        n_w: Noise power
        interleaved: Layout of ratio_matrix
        pair: Branches (i, j) of the ratio

    Returns:
        Decision with one entry per codeword, ties to -1
    """
    lam = np.asarray(ratio_matrix, dtype=complex)
    if lam.ndim != 2 or lam.shape[1] != len(channels):
        raise ValueError("need one channel per column of the ratio matrix")
    i, j = pair

    llr = np.empty(lam.shape, dtype=float)
    for b, ch in enumerate(channels):
        plus = hypothesis_stats(ch, i, j, +1, p_s, n_w)
        minus = hypothesis_stats(ch, i, j, -1, p_s, n_w)
        llr[:, b] = ratio_log_pdf(lam[:, b], plus) - ratio_log_pdf(lam[:, b], minus)

    margin = llr.sum(axis=1) if interleaved else llr.sum(axis=0)
    return decision_from_margin(margin)
