# -*- coding: utf-8 -*-

"""
Argument parsing for the verification script.

Flags left unset stay None, so that they only override the config file and
preset values when given explicitly.
"""

import argparse
import sys

from .config import SUBCOMMANDS, PRESETS

# argparse destination -> RunConfig setting
FLAG_SETTINGS = {
    'seed': 'seed',
    'paths': 'paths',
    'grid': 'grid',
    'workers': 'workers',
    'out_dir': 'out_dir',
    'dump_ensemble': 'dump_ensemble',
}


def explicit_settings(args):
    """
    Returns the settings given explicitly on the command line.

    We can't rely on argparse defaults for this because the parent parser
    would fill every flag and hide the config file and preset values.
    """
    values = {}
    for dest, setting in FLAG_SETTINGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            values[setting] = value
    return values


def get_parser():
    parser = argparse.ArgumentParser(description="Verifies the Heisenberg-type inequalities "
                                     "and the identities behind them, exactly and by Monte Carlo.")
    subparsers = parser.add_subparsers(title='Suites',
                                       dest='task',
                                       description='Verification suite to run. '
                                       'Type %(prog)s [SUITE] -h to get suite-specific help.')

    # parser with arguments shared among all suites
    base_parser = argparse.ArgumentParser(add_help=False)
    base_parser.add_argument('--config', type=str, default=None,
                             help='INI file with the run configuration')
    base_parser.add_argument('--seed', type=int, default=None,
                             help='Seed of the random streams (default 42)')
    base_parser.add_argument('--paths', type=int, default=None,
                             help='Number of simulated paths N (default 100000)')
    base_parser.add_argument('--grid', type=int, default=None,
                             help='Number of grid steps M (default 512)')
    base_parser.add_argument('--workers', type=int, default=None,
                             help='Maximum number of worker threads (default 1)')
    base_parser.add_argument('--out-dir', type=str, default=None, dest='out_dir',
                             help='Directory for report.csv and report.json (default .)')
    base_parser.add_argument('--preset', type=str, default=None, choices=sorted(PRESETS),
                             help='Named set of settings for an acceptance case')
    base_parser.add_argument('--dump-ensemble', action='store_const', const=True,
                             default=None, dest='dump_ensemble',
                             help='Save the simulated paths to the output directory')
    base_parser.add_argument('-v', '--verbose', help='Verbose mode',
                             action="store_true")

    helps = {
        'check-algebra': 'Exact operator identities on random elements',
        'lemma2': 'Inner products of exponential martingales, exact and simulated',
        'isometry': 'Ito isometry for the configured integrands',
        'h1': 'Fixed-time inequality, exact',
        'h2': 'Integrated inequality with Monte Carlo stochastic integrals',
        'pde': 'Finite-difference residual of the heat-type equation',
        'l2limit': 'L2 convergence of difference quotients of exponentials',
        'all': 'Every suite',
    }
    for name in sorted(SUBCOMMANDS):
        subparsers.add_parser(name, help=helps[name], parents=[base_parser])

    return parser


def get_args(argv=None):
    return get_parser().parse_args(argv)


def print_usage(stream=None):
    get_parser().print_usage(stream or sys.stderr)
