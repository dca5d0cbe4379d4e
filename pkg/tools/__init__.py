"""
AmBC Ratio Simulator Tools Package

This package contains the command-line runner, experiment presets, config
file handling, the self-check suite and plotting utilities.
"""

__version__ = "0.1.0"
