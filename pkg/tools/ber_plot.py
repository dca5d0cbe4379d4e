#!/usr/bin/env python
"""
AmBC Ratio Simulator Plotting

Renders BER curves written by the runner, and the two conditional ratio
densities of one channel realization, to image files.
"""

import sys
import argparse
import logging
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from src.backscatter.channel import SystemConfig, sample_channel
from src.backscatter.errors import AmbcError
from src.backscatter.ratio_stats import hypothesis_stats, ratio_log_pdf
from src.harness.experiment import BerCurve, read_csv

logger = logging.getLogger('ambc_sim.plot')


def plot_curves(curves: Sequence[BerCurve], out_path: Union[str, Path],
                title: str = "BER vs direct link SNR") -> Path:
    """
    Semilog BER plot, one line per curve; zero-BER points are left out

    Args:
        curves: Curves to draw
        out_path: Image file to write
        title: Figure title

    Returns:
        Path of the written image
    """
    fig, ax = plt.subplots(figsize=(8, 6))
    for curve in curves:
        snr = [p.snr_db for p in curve.points if p.bit_errors > 0]
        ber = [p.ber for p in curve.points if p.bit_errors > 0]
        ci = [p.half_width_95 for p in curve.points if p.bit_errors > 0]
        if not snr:
            logger.warning(f"{curve.metadata.get('label', 'curve')}: no errors, nothing to draw")
            continue
        ax.errorbar(snr, ber, yerr=ci, marker='o', capsize=3,
                    label=curve.metadata.get('label', 'curve'))

    ax.set_yscale('log')
    ax.set_xlabel("Direct link SNR (dB)")
    ax.set_ylabel("BER")
    ax.set_title(title)
    ax.grid(True, which='both', alpha=0.3)
    ax.legend()
    fig.tight_layout()

    out_path = Path(out_path)
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    logger.info(f"Wrote {out_path}")
    return out_path


def plot_ratio_pdfs(system: SystemConfig, out_path: Union[str, Path], seed: int = 0,
                    extent: float = 3.0, resolution: int = 301) -> Path:
    """
    Log densities of lambda = z_1 / z_2 under x = +1 and x = -1

    Args:
        system: System configuration (SNRs set the channel statistics)
        out_path: Image file to write
        seed: Seed of the channel draw
        extent: Half width of the plotted region around the bias h_1 / h_2
        resolution: Grid points per axis

    Returns:
        Path of the written image
    """
    ch = sample_channel(np.random.default_rng(seed), system)
    p_s, n_w = system.source_power, system.noise_power
    centre = complex(ch.h_sr[0] / ch.h_sr[1])
    scale = extent * max(abs(centre), 1.0)

    re = np.linspace(centre.real - scale, centre.real + scale, resolution)
    im = np.linspace(centre.imag - scale, centre.imag + scale, resolution)
    grid = re[None, :] + 1j * im[:, None]

    fig, axes = plt.subplots(1, 2, figsize=(12, 5), sharey=True)
    for ax, x in zip(axes, (+1, -1)):
        density = ratio_log_pdf(grid, hypothesis_stats(ch, 0, 1, x, p_s, n_w))
        mesh = ax.pcolormesh(re, im, density, shading='auto', cmap='viridis')
        ax.set_title(f"log f(lambda | x = {x:+d})")
        ax.set_xlabel("Re(lambda)")
        fig.colorbar(mesh, ax=ax)
    axes[0].set_ylabel("Im(lambda)")
    fig.suptitle(f"Ratio densities at {system.direct_link_snr_db:g} dB, "
                 f"relative SNR {system.relative_snr_db:g} dB")
    fig.tight_layout()

    out_path = Path(out_path)
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
    logger.info(f"Wrote {out_path}")
    return out_path


def plot_csv_files(paths: List[str], out_path: str, title: str) -> Path:
    return plot_curves([read_csv(p) for p in paths], out_path, title)


def main():
    parser = argparse.ArgumentParser(description="Plot BER curves from CSV files")
    parser.add_argument("csv", nargs='+', help="BER curve CSV files")
    parser.add_argument("--out", default="ber.png", help="Output image")
    parser.add_argument("--title", default="BER vs direct link SNR", help="Figure title")
    args = parser.parse_args()

    try:
        plot_csv_files(args.csv, args.out, args.title)
    except (AmbcError, OSError) as e:
        print(f"Error: {e}")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
