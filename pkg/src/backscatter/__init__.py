"""
Ambient backscatter ratio detection library
"""

from .errors import (
    AmbcError, InvalidStatsError, DegenerateChannelError, ConfigError, GridMismatchError
)
from .channel import (
    SystemConfig, ChannelRealization, ReceivedBlock,
    complex_normal, derive_amplitudes, sample_channel, synthesize_block, perturb_csi
)
from .ratio_stats import (
    HypothesisStats, LinearNoiseStats,
    hypothesis_stats, ratio_pdf, ratio_log_pdf, magnitude_pdf,
    linear_noise_stats, linear_noise_pdf, linear_noise_pdf_tau,
    error_pdf, error_cdf_G, ber_from_G, closed_form_ber, eta
)
from .linearize import (
    Compensation, LinearizedSample,
    effective_channel, phase_shift, direct_noise, linearize_sample, linearize_block
)
from .detectors import (
    Decision, decision_from_margin, ml_detect_ratio, min_distance_detect,
    magnitude_ratio_detect, energy_detect
)
from .coding import (
    CodeBlock, ReceivedCode, encode, interleave, deinterleave,
    decode_all, decode_average, decode_hard, decode_soft, decode_ratio_ml
)
from .selection import RatioChoice, select_ratio

__all__ = [
    'AmbcError', 'InvalidStatsError', 'DegenerateChannelError', 'ConfigError',
    'GridMismatchError',
    'SystemConfig', 'ChannelRealization', 'ReceivedBlock',
    'complex_normal', 'derive_amplitudes', 'sample_channel', 'synthesize_block', 'perturb_csi',
    'HypothesisStats', 'LinearNoiseStats',
    'hypothesis_stats', 'ratio_pdf', 'ratio_log_pdf', 'magnitude_pdf',
    'linear_noise_stats', 'linear_noise_pdf', 'linear_noise_pdf_tau',
    'error_pdf', 'error_cdf_G', 'ber_from_G', 'closed_form_ber', 'eta',
    'Compensation', 'LinearizedSample',
    'effective_channel', 'phase_shift', 'direct_noise', 'linearize_sample', 'linearize_block',
    'Decision', 'decision_from_margin', 'ml_detect_ratio', 'min_distance_detect',
    'magnitude_ratio_detect', 'energy_detect',
    'CodeBlock', 'ReceivedCode', 'encode', 'interleave', 'deinterleave',
    'decode_all', 'decode_average', 'decode_hard', 'decode_soft', 'decode_ratio_ml',
    'RatioChoice', 'select_ratio',
]
