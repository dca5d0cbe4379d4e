"""
AmBC Ratio Simulator Package

Link-level Monte Carlo simulator and numerical library for ambient
backscatter communication with complex-ratio detection at a multi-antenna
Reader.
"""

__version__ = "0.1.0"
