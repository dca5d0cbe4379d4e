#!/usr/bin/env python
"""
Ratio Selection
---------------
Choose the antenna pair whose ratio gives the lowest BER. The closed-form
BER grows with eta_{i,j}, so the best pair is the eta minimizer over all
Q(Q-1)/2 unordered pairs.
"""

import itertools
import math
from dataclasses import dataclass

from .channel import ChannelRealization
from .errors import DegenerateChannelError
from .ratio_stats import eta


@dataclass(frozen=True)
class RatioChoice:
    """
    Selected antenna pair

    Attributes:
        i: First branch (0-based, i < j)
        j: Second branch
        eta_value: eta of the pair
    """
    i: int
    j: int
    eta_value: float


def select_ratio(ch: ChannelRealization) -> RatioChoice:
    """
    Exhaustive eta search over all pairs; first pair wins on ties

    Raises:
        DegenerateChannelError: every pair has eta = +inf
    """
    best = None
    for i, j in itertools.combinations(range(ch.num_antennas), 2):
        value = eta(ch, i, j)
        if best is None or value < best.eta_value:
            best = RatioChoice(i=i, j=j, eta_value=value)

    if best is None or math.isinf(best.eta_value):
        raise DegenerateChannelError("no antenna pair has a finite selection metric")
    return best
