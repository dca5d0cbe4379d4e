"""
Exception types shared by the backscatter library, the harness and the CLI.
"""


class AmbcError(Exception):
    """Base class for all simulator errors"""


class InvalidStatsError(AmbcError, ValueError):
    """Hypothesis statistics do not define a proper density (|rho| >= 1)"""


class DegenerateChannelError(AmbcError, ValueError):
    """A branch gain is zero, or no antenna pair is usable"""


class ConfigError(AmbcError, ValueError):
    """Invalid system configuration, experiment spec or config file"""


class GridMismatchError(AmbcError, ValueError):
    """Paired comparison requested on experiments that cannot be paired"""
