# -*- coding: utf-8 -*-

"""
Batch entry point: reads the configuration, runs the selected suites and
writes the reports.

Exit status: 0 if every case passes, 1 if some case fails, 2 for an
invalid configuration or command line, 3 if an exponential overflowed.
"""

import logging

from . import config
from . import utils
from . import arguments
from . import reports
from .errors import ConfigError
from .metadata import RunMetadata
from .suites import SuiteContext, run_suites

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_OVERFLOW = 3


def build_config(args):
    """
    Layers the settings: defaults, config file, preset, explicit flags.
    The subcommand selects the suite, except 'all', which keeps the
    suites named in the config file.
    """
    values = config.read_config_file(args.config) if args.config else {}
    run_config = config.RunConfig(**values)
    if args.preset:
        run_config.apply_preset(args.preset)
    run_config.update(arguments.explicit_settings(args))
    suite = config.SUBCOMMANDS[args.task]
    if suite != 'all':
        run_config.suites = [suite]
    return run_config.validate()


def run(run_config):
    """
    Executes the suites of a validated configuration and writes
    report.csv, report.json and metadata.json to its output directory.

    :returns: the exit status.
    """
    logger = logging.getLogger("Logger")
    config.set_out_dir(run_config.out_dir)
    names = run_config.selected_suites()
    md = RunMetadata(run_config, names)
    logger.info(str(md))

    ctx = SuiteContext(run_config)
    records, overflow = run_suites(ctx, names)
    reports.write_reports(records, md, config.FILES)
    md.save_to_file()

    failures = reports.failure_summary(records)
    for line in failures:
        logger.error(line)
    if overflow is not None:
        return EXIT_OVERFLOW
    if failures:
        logger.error("%d of %d cases failed" % (len(failures), len(records)))
        return EXIT_FAIL
    logger.info("All %d cases passed" % len(records))
    return EXIT_PASS


def main(argv=None):
    try:
        args = arguments.get_args(argv)
    except SystemExit as e:
        return e.code

    # the verbose flag only exists once a suite is named
    utils.set_logger(logging.DEBUG if getattr(args, "verbose", False) else logging.INFO)
    logger = logging.getLogger("Logger")
    if args.task is None:
        arguments.print_usage()
        logger.error("No suite selected")
        return EXIT_CONFIG

    try:
        run_config = build_config(args)
    except ConfigError as e:
        arguments.print_usage()
        logger.error("Invalid configuration: %s" % e)
        return EXIT_CONFIG
    return run(run_config)
