#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Script to run the verification suites and write the reports.

Run ``stochheis-verify.py -h`` for the list of suites and options.
"""

import sys

from stochheis.cli import main


if __name__ == '__main__':
    sys.exit(main())
