"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from src.backscatter.channel import ChannelRealization, SystemConfig, sample_channel


def make_channel(h_sr, h_tr, g, h_st=1.0 + 0j) -> ChannelRealization:
    """Channel realization with hand-picked coefficients"""
    return ChannelRealization(h_sr=np.asarray(h_sr, dtype=complex),
                              h_tr=np.asarray(h_tr, dtype=complex),
                              h_st=complex(h_st), g=complex(g))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def system():
    return SystemConfig(direct_link_snr_db=20.0, relative_snr_db=40.0)


@pytest.fixture
def channel(rng, system):
    return sample_channel(rng, system)


@pytest.fixture
def strong_channel():
    """Two-antenna channel with a strong backscatter link"""
    return make_channel([1.0 + 0.2j, -0.4 + 0.9j], [0.7 - 0.5j, 0.3 + 1.1j], 0.3 + 0.1j)
