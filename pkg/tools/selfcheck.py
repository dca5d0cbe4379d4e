#!/usr/bin/env python
"""
AmBC Ratio Simulator Self-Check Suite

Runs the analytic oracles of the library: quadrature normalization of the
three densities, the identities of the closed-form error integral G, and a
small Monte Carlo run of the minimum distance detector against the
closed-form BER.
"""

import sys
import math
import time
import json
import argparse
import platform
from datetime import datetime
from typing import Callable, Dict, Optional

import numpy as np
from scipy import integrate

from src import __version__
from src.backscatter.channel import ChannelRealization, SystemConfig, complex_normal, sample_channel
from src.backscatter.detectors import min_distance_detect
from src.backscatter.linearize import LinearizedSample
from src.backscatter.ratio_stats import (
    hypothesis_stats, ratio_pdf, linear_noise_pdf, linear_noise_pdf_tau, linear_noise_stats,
    error_pdf, error_cdf_G, ber_from_G, closed_form_ber
)

# Disc radius in units of the density width; the tail beyond it is added analytically
RADIUS_FACTOR = 200.0

NORMALIZATION_TOL = 1e-3
IDENTITY_TOL = 1e-12
QUADRATURE_BER_TOL = 1e-6
MC_RELATIVE_TOL = 0.05
MC_SAMPLES = 200_000


def disc_mass(pdf: Callable[[complex], float], centre: complex, width: float,
              tail: Callable[[float], float]) -> float:
    """
    Probability mass of a radially decaying 2-D density

    Integrates ``pdf`` in polar coordinates over a disc around ``centre``
    and adds the analytic mass outside the disc.

    Args:
        pdf: Density of a complex argument
        centre: Peak of the density
        width: Length scale of the peak
        tail: Mass outside radius R, as a function of R

    Returns:
        Total mass
    """
    radius = RADIUS_FACTOR * width

    def integrand(r, theta):
        return r * float(pdf(centre + r * complex(math.cos(theta), math.sin(theta))))

    inner, _ = integrate.dblquad(integrand, 0.0, 2.0 * math.pi, 0.0, radius,
                                 epsabs=1e-10, epsrel=1e-10)
    return inner + tail(radius)


def ber_by_quadrature(tau: float, h_abs_sq: float) -> float:
    """P(Re(phi) < -|h|^2) by 2-D quadrature of the error-variable density"""
    def integrand(phi_i, phi_r):
        return float(error_pdf(complex(phi_r, phi_i), tau, h_abs_sq))

    value, _ = integrate.dblquad(integrand, -np.inf, -h_abs_sq, -np.inf, np.inf,
                                 epsabs=1e-11, epsrel=1e-10)
    return value


def reference_link(target_ber: float = 0.1):
    """
    Two-antenna link with h = 1 and a noise power giving ``target_ber``

    h_sr = (1, 1), h_tr = (1, -1) and g = 1/2 give h = 1 and
    tau = 2 N_w / pi at unit source power.
    """
    ch = ChannelRealization(h_sr=np.array([1.0 + 0j, 1.0 + 0j]),
                            h_tr=np.array([1.0 + 0j, -1.0 + 0j]), h_st=1.0 + 0j, g=0.5 + 0j)
    ratio = (1.0 / (1.0 - 2.0 * target_ber)) ** 2 - 1.0
    n_w = ratio / 2.0
    return ch, 1.0, n_w


class SelfChecker:
    """Runs the analytic and Monte Carlo oracles"""

    def __init__(self, options=None, ber_fn: Callable = closed_form_ber):
        """
        Initialize the checker

        Args:
            options: Dict of options (seed, samples, quiet)
            ber_fn: Closed-form BER under test
        """
        self.options = options or {}
        self.ber_fn = ber_fn
        self.seed = self.options.get('seed', 2024)
        self.samples = self.options.get('samples', MC_SAMPLES)
        self.quiet = self.options.get('quiet', False)
        self.results: Dict = {
            "quadrature": [],
            "identities": [],
            "monte_carlo": [],
            "summary": {
                "passed": 0,
                "failed": 0,
            }
        }

    def run_all_checks(self) -> bool:
        """Run all checks; True when every check passed"""
        started = time.time()
        self._print_header("AmBC Ratio Simulator Self-Check")

        self._print_section("Density Normalization")
        self.check_normalization()

        self._print_section("Closed-Form Error Integral")
        self.check_identities()

        self._print_section("Monte Carlo vs Closed Form")
        self.check_monte_carlo()

        self.results["elapsed_s"] = round(time.time() - started, 2)
        self._print_summary()
        return self.results["summary"]["failed"] == 0

    def check_normalization(self):
        """Quadrature normalization of the ratio, linearized-noise and error densities"""
        rng = np.random.default_rng(self.seed)
        system = SystemConfig(direct_link_snr_db=10.0, relative_snr_db=10.0)
        ch = sample_channel(rng, system)
        p_s, n_w = system.source_power, system.noise_power

        for x in (+1, -1):
            stats = hypothesis_stats(ch, 0, 1, x, p_s, n_w)
            sigma1 = math.sqrt(stats.sigma1_sq)
            c = stats.one_minus_rho_sq / stats.sigma2_sq
            scale = stats.one_minus_rho_sq / (math.pi * stats.sigma1_sq * stats.sigma2_sq)
            centre = sigma1 * np.conj(stats.rho) / math.sqrt(stats.sigma2_sq)

            def tail(radius, scale=scale, sigma1=sigma1, c=c):
                return scale * math.pi * sigma1 ** 2 / (radius ** 2 / sigma1 ** 2 + c)

            mass = disc_mass(lambda lam, s=stats: ratio_pdf(lam, s), complex(centre),
                             sigma1 * math.sqrt(c), tail)
            self._add_result("quadrature", f"Ratio density mass (x={x:+d})", f"{mass:.6f}",
                             abs(mass - 1.0) < NORMALIZATION_TOL)

        noise = linear_noise_stats(ch, 0, 1, p_s, n_w)
        tau = noise.tau
        width = math.sqrt(math.pi * tau)
        mass = disc_mass(lambda w: linear_noise_pdf(w, ch, 0, 1, p_s, n_w), 0j, width,
                         lambda radius: math.pi * tau / (radius ** 2 + math.pi * tau))
        self._add_result("quadrature", "Linearized noise mass", f"{mass:.6f}",
                         abs(mass - 1.0) < NORMALIZATION_TOL)

        points = complex_normal(rng, 10, 4.0 * tau)
        gap = float(np.max(np.abs(linear_noise_pdf(points, ch, 0, 1, p_s, n_w)
                                  - linear_noise_pdf_tau(points, tau))
                           / linear_noise_pdf_tau(points, tau)))
        self._add_result("quadrature", "Gain form equals tau form", f"{gap:.2e}",
                         gap < IDENTITY_TOL)

        h_abs_sq = abs(noise.h_eff) ** 2
        c = tau * h_abs_sq
        mass = disc_mass(lambda phi: error_pdf(phi, tau, h_abs_sq), 0j, math.sqrt(math.pi * c),
                         lambda radius: math.pi * c / (radius ** 2 + math.pi * c))
        self._add_result("quadrature", "Error variable mass", f"{mass:.6f}",
                         abs(mass - 1.0) < NORMALIZATION_TOL)

    def check_identities(self):
        """G identities and the closed-form BER they produce"""
        inf = math.inf
        tau, h_abs_sq = 0.3, 0.7
        self._add_result("identities", "G(0, 0)", f"{error_cdf_G(0.0, 0.0, tau, h_abs_sq):.2e}",
                         error_cdf_G(0.0, 0.0, tau, h_abs_sq) == 0.0)

        total = (error_cdf_G(inf, inf, tau, h_abs_sq) - error_cdf_G(-inf, inf, tau, h_abs_sq)
                 - error_cdf_G(inf, -inf, tau, h_abs_sq) + error_cdf_G(-inf, -inf, tau, h_abs_sq))
        self._add_result("identities", "Total probability", f"{total:.15f}",
                         abs(total - 1.0) < IDENTITY_TOL)

        rng = np.random.default_rng(self.seed)
        worst = 0.0
        for _ in range(20):
            h = complex(complex_normal(rng, 1)[0])
            tau_k = float(rng.exponential(0.5))
            worst = max(worst, abs(ber_from_G(abs(h) ** 2, tau_k) - self.ber_fn(h, tau_k)))
        self._add_result("identities", "Four-term G vs closed form", f"{worst:.2e}",
                         worst < IDENTITY_TOL)

        reference = ber_by_quadrature(tau, h_abs_sq)
        closed = self.ber_fn(math.sqrt(h_abs_sq), tau)
        gap = abs(reference - closed)
        self._add_result("identities", "Quadrature BER vs closed form", f"{gap:.2e}",
                         gap < QUADRATURE_BER_TOL)

    def check_monte_carlo(self):
        """Minimum distance detection on simulated linearized noise"""
        rng = np.random.default_rng(self.seed)
        ch, p_s, n_w = reference_link(0.1)
        noise = linear_noise_stats(ch, 0, 1, p_s, n_w)

        n = self.samples
        x = 2 * rng.integers(0, 2, size=n) - 1
        s = complex_normal(rng, n, p_s)
        w = complex_normal(rng, (2, n), n_w)
        w_lin = (w[0] / ch.h_sr[0] - w[1] / ch.h_sr[1]) / s
        sample = LinearizedSample(y=noise.h_eff * x + w_lin, h_eff=noise.h_eff, tau=noise.tau)

        simulated = float(np.mean(min_distance_detect(sample).x_hat != x))
        expected = float(self.ber_fn(noise.h_eff, noise.tau))
        relative = abs(simulated - expected) / expected if expected > 0 else math.inf
        self._add_result("monte_carlo", "Min distance BER",
                         f"{simulated:.5f} vs {expected:.5f}", relative < MC_RELATIVE_TOL,
                         f"{n} samples, relative gap {relative:.2%}")

    def _add_result(self, category, name, value, success, message=None):
        """Record and print one check"""
        self.results[category].append({
            "name": name,
            "value": value,
            "success": bool(success),
            "message": message,
        })
        if success:
            self.results["summary"]["passed"] += 1
        else:
            self.results["summary"]["failed"] += 1

        if not self.quiet:
            status = "✓ " if success else "✗ "
            details = f": {message}" if message else ""
            print(f"{status}{name}: {value}{details}")

    def _print_header(self, title):
        if self.quiet:
            return
        print("\n" + "=" * 80)
        print(f"{title}".center(80))
        print("=" * 80)

    def _print_section(self, title):
        if self.quiet:
            return
        print("\n" + "-" * 80)
        print(f"{title}")
        print("-" * 80)

    def _print_summary(self):
        if self.quiet:
            return
        self._print_section("Summary")
        passed = self.results["summary"]["passed"]
        failed = self.results["summary"]["failed"]
        print(f"Passed: {passed}/{passed + failed} checks")
        print(f"Failed: {failed}")
        print(f"Elapsed: {self.results.get('elapsed_s', 0)} s")
        if failed == 0:
            print("\n✓ All checks passed!")
        else:
            print("\n✗ Some checks failed.")

    def save_results(self, filename: Optional[str] = None) -> str:
        """Save check results to a JSON file"""
        if not filename:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filename = f"selfcheck_{timestamp}.json"

        self.results["system_info"] = {
            "timestamp": datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            "python_version": platform.python_version(),
            "version": __version__,
        }
        with open(filename, 'w') as f:
            json.dump(self.results, f, indent=2)
        if not self.quiet:
            print(f"\nCheck results saved to {filename}")
        return filename


def run_selfcheck(save: bool = False, output: Optional[str] = None, seed: int = 2024) -> int:
    """Run every check; exit code 0 on success, 1 on any failure"""
    checker = SelfChecker({'seed': seed})
    success = checker.run_all_checks()
    if save or output:
        checker.save_results(output)
    return 0 if success else 1


def main():
    parser = argparse.ArgumentParser(description="AmBC Ratio Simulator Self-Check")
    parser.add_argument("--seed", type=int, default=2024, help="Seed of the random checks")
    parser.add_argument("--save", action="store_true", help="Save check results to a file")
    parser.add_argument("--output", help="Output file for check results")
    args = parser.parse_args()
    return run_selfcheck(args.save, args.output, args.seed)


if __name__ == "__main__":
    sys.exit(main())
