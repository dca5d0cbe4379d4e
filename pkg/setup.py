#!/usr/bin/env python

from setuptools import setup, find_packages

setup(
    name="ambc-ratio-sim",
    version="0.1.0",
    description="Complex-ratio detector simulator for ambient backscatter communication",
    author="AmBC Ratio Simulator Project",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "numpy>=1.20.0",
        "scipy>=1.8.0",
        "matplotlib>=3.5.0",
        "pyyaml>=6.0.0",
    ],
    extras_require={
        "test": ["pytest>=7.0.0"],
    },
    entry_points={
        "console_scripts": [
            "ambc-sim=tools.ber_runner:main",
            "ambc-selfcheck=tools.selfcheck:main",
            "ambc-plot=tools.ber_plot:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering",
    ],
    python_requires=">=3.8",
)
