# -*- coding: utf-8 -*-

"""
This script contains the definition of the RunMetadata class, which
records everything needed to reproduce a verification run.
"""

import json

import numpy as np
import scipy

from . import __version__
from . import config
from .processes import RNG_NAME, BLOCK_SIZE


class RunMetadata(object):
    """
    Class for storing metadata about a run: the simulation parameters, the
    random generator, the tolerances and the software versions.
    """

    def __init__(self, run_config, suites):
        self.suites = list(suites)
        self.seed = run_config.seed
        self.paths = run_config.paths
        self.grid = run_config.grid
        self.horizon = run_config.horizon
        self.time_change = run_config.time_change().describe()
        self.rng = RNG_NAME
        self.rng_block_size = BLOCK_SIZE
        self.preset = run_config.preset
        self.settings = run_config.as_dict()
        self.version = __version__
        self.numpy_version = np.__version__
        self.scipy_version = scipy.__version__
        self.files = dict(config.FILES)

    def as_dict(self):
        """The fields written to the JSON report (file paths excluded)."""
        data = dict(self.__dict__)
        del data['files']
        return data

    def __str__(self):
        """Shows the simulation parameters of the run."""
        lines = []
        lines.append("Metadata for suites %s" % ', '.join(self.suites))
        for key in ('seed', 'paths', 'grid', 'horizon', 'time_change', 'rng', 'preset'):
            lines.append('%s: %s' % (key, self.__dict__[key]))
        return '\n'.join(lines)

    def save_to_file(self, filename=None):
        """
        Saves the metadata as JSON. By default, next to the reports in the
        output directory.
        """
        if filename is None:
            filename = self.files['metadata']
        with open(filename, 'w') as f:
            json.dump(self.as_dict(), f, sort_keys=True, indent=2)

    @classmethod
    def load_from_file(cls, filename):
        """
        Reads a file written by :meth:`save_to_file` and returns a RunMetadata
        object.
        """
        with open(filename) as f:
            data = json.load(f)
        md = cls.__new__(cls)
        md.__dict__.update(data)
        md.files = {}
        return md
