#!/usr/bin/env python
"""
AmBC Ratio Simulator Command-Line Runner

Runs BER experiments from presets and config files and writes one CSV plus
one metadata sidecar per experiment.

Exit codes: 0 success, 1 check failure, 2 usage or configuration error.
"""

import sys
import logging
import argparse
from pathlib import Path
from typing import List, Optional

from src import __version__
from src.backscatter.channel import SystemConfig
from src.backscatter.errors import AmbcError
from src.harness.engine import run_experiment
from src.harness.experiment import ExperimentSpec
from tools.ber_plot import plot_csv_files, plot_ratio_pdfs
from tools.config_file import build_specs, load_config
from tools.presets import PRESETS, aliases_of, get_preset, with_seed
from tools.selfcheck import run_selfcheck

logger = logging.getLogger('ambc_sim.cli')

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def setup_logging(verbose: bool = False) -> None:
    """Configure root logging for the command-line tools"""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO,
                        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')


def resolve_specs(config_path: Optional[str], preset: Optional[str],
                  seed: Optional[int]) -> List[ExperimentSpec]:
    """
    Experiments of a run: preset, then config file, then flags

    Args:
        config_path: Config file, if any
        preset: Preset name, if any
        seed: Seed flag, if given

    Returns:
        Experiments to run
    """
    base = get_preset(preset) if preset else None
    if config_path:
        specs = build_specs(load_config(config_path), base)
    elif base is not None:
        specs = base
    else:
        raise AmbcError("run needs --config or --preset")
    if seed is not None:
        specs = with_seed(specs, seed)
    return specs


def cmd_run(args) -> int:
    specs = resolve_specs(args.config, args.preset, args.seed)
    out_dir = Path(args.out)
    for spec in specs:
        curve = run_experiment(spec, workers=args.workers)
        csv_path, meta_path = curve.save(out_dir, spec.label)
        print(f"{spec.label}: {csv_path} ({meta_path.name})")
    return EXIT_OK


def cmd_list_presets(args) -> int:
    for name, factory in PRESETS.items():
        print(f"{name:<10} {', '.join(aliases_of(name)):<18} {factory.__doc__}")
        if args.verbose:
            for spec in factory():
                print(f"                   - {spec.label}: {spec.scenario.value}, "
                      f"M={spec.system.repetition_length}, Q={spec.system.num_antennas}")
    return EXIT_OK


def cmd_plot(args) -> int:
    path = plot_csv_files(args.csv, args.out, args.title)
    print(f"Wrote {path}")
    return EXIT_OK


def cmd_plot_pdf(args) -> int:
    system = SystemConfig(direct_link_snr_db=args.snr, relative_snr_db=args.relative_snr)
    path = plot_ratio_pdfs(system, args.out, seed=args.seed)
    print(f"Wrote {path}")
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    return run_selfcheck(save=args.save, output=args.output, seed=args.seed)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ambc-sim",
                                     description="AmBC complex-ratio detector BER simulator")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('-v', '--verbose', action='store_true', help='Debug logging')

    subparsers = parser.add_subparsers(dest='command', help='Command')

    run_parser = subparsers.add_parser('run', help='Run BER experiments')
    run_parser.add_argument('--config', help='Configuration file')
    run_parser.add_argument('--preset', help='Preset name (see list-presets)')
    run_parser.add_argument('--seed', type=int, help='Master seed, overrides preset and config')
    run_parser.add_argument('--out', default='results', help='Output directory (default: results)')
    run_parser.add_argument('--workers', type=int, default=1, help='Worker processes')

    check_parser = subparsers.add_parser('selfcheck', help='Run the analytic oracle checks')
    check_parser.add_argument('--seed', type=int, default=2024, help='Seed of the random checks')
    check_parser.add_argument('--save', action='store_true', help='Save check results to a file')
    check_parser.add_argument('--output', help='Output file for check results')

    subparsers.add_parser('list-presets', help='List experiment presets')

    plot_parser = subparsers.add_parser('plot', help='Plot BER curves from CSV files')
    plot_parser.add_argument('csv', nargs='+', help='BER curve CSV files')
    plot_parser.add_argument('--out', default='ber.png', help='Output image')
    plot_parser.add_argument('--title', default='BER vs direct link SNR', help='Figure title')

    pdf_parser = subparsers.add_parser('plot-pdf', help='Plot the conditional ratio densities')
    pdf_parser.add_argument('--snr', type=float, default=20.0, help='Direct link SNR in dB')
    pdf_parser.add_argument('--relative-snr', type=float, default=10.0, help='Relative SNR in dB')
    pdf_parser.add_argument('--seed', type=int, default=0, help='Seed of the channel draw')
    pdf_parser.add_argument('--out', default='ratio_pdf.png', help='Output image')

    return parser


COMMANDS = {
    'run': cmd_run,
    'selfcheck': cmd_selfcheck,
    'list-presets': cmd_list_presets,
    'plot': cmd_plot,
    'plot-pdf': cmd_plot_pdf,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    setup_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except AmbcError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"{e.filename or ''}: {e.strerror or e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
