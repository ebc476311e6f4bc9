# -*- coding: utf-8 -*-

"""
Configuration data for the system.

A run is described by a :class:`RunConfig`, read from an INI file with the
sections ``[run]``, ``[time_change]``, ``[cases]`` and ``[tolerances]``.
Output paths live in the module-level ``FILES`` dictionary, filled by
:func:`set_out_dir`.
"""

import os
import copy
import configparser

from .errors import ConfigError
from .processes import TimeChange, TimeGrid
from .verify.elements import ProcessElement, CenteringFunction, parse_complex, format_complex

out_dir = None
FILES = {}

SUITES = ('algebra', 'lemma2', 'isometry', 'h1', 'h2', 'pde', 'l2limit')

# subcommand name -> suite
SUBCOMMANDS = {
    'check-algebra': 'algebra',
    'lemma2': 'lemma2',
    'isometry': 'isometry',
    'h1': 'h1',
    'h2': 'h2',
    'pde': 'pde',
    'l2limit': 'l2limit',
    'all': 'all',
}

DEFAULTS = dict(
    # [run]
    horizon=1.0,
    grid=512,
    paths=100000,
    seed=42,
    workers=1,
    suites=['all'],
    out_dir='.',
    # [time_change]
    kind='identity',
    alpha=None,
    knots=None,
    # [cases]
    y=['one', 'x', 'mart(1)'],
    g=['0'],
    g_tilde=['0'],
    c=[0.0],
    c_tilde=[0.0],
    exponents=[1, -1, 1j],
    variances=[0.25, 1.0, 4.0],
    randomized=100,
    randomized_h2=0,
    # [tolerances]
    sigmas=4.0,
    discretization=10.0,
    exact=1e-9,
    algebra=1e-12,
    unitarity=1e-9,
    # command line only
    dump_ensemble=False,
    preset=None,
)


def _float_list(text):
    return [float(v) for v in text.split(',') if v.strip()]


def _complex_list(text):
    return [parse_complex(v) for v in text.split(',') if v.strip()]


def _name_list(text):
    return [v.strip() for v in text.split(',') if v.strip()]


def _centering_list(text):
    # piecewise centerings use commas between knots
    return [v.strip() for v in text.split(';') if v.strip()]


def _knots(text):
    try:
        return [tuple(float(v) for v in item.split(':')) for item in text.split(',')]
    except ValueError:
        raise ConfigError('Cannot read knots: %r' % text)


# section -> key -> reader
SCHEMA = {
    'run': {
        'horizon': float,
        'grid': int,
        'paths': int,
        'seed': int,
        'workers': int,
        'suites': _name_list,
        'out_dir': str,
    },
    'time_change': {
        'kind': str,
        'alpha': float,
        'knots': _knots,
    },
    'cases': {
        'y': _name_list,
        'g': _centering_list,
        'g_tilde': _centering_list,
        'c': _float_list,
        'c_tilde': _float_list,
        'exponents': _complex_list,
        'variances': _float_list,
        'randomized': int,
        'randomized_h2': int,
    },
    'tolerances': {
        'sigmas': float,
        'discretization': float,
        'exact': float,
        'algebra': float,
        'unitarity': float,
    },
}

# preset name -> (suite, overrides)
PRESETS = {
    'commutators': ('algebra', dict(randomized=1000)),
    'unitarity': ('algebra', dict(randomized=1000)),
    'lemma2': ('lemma2', dict(horizon=1.0, grid=1, paths=1000000,
                              exponents=[1, -1, 1j])),
    'l2limit': ('l2limit', dict(exponents=[0, 1, 1j], variances=[1.0])),
    'pde': ('pde', dict(exponents=[0, 1, 1j, 1 + 1j])),
    'h1': ('h1', dict(randomized=500, y=['one', 'x', 'mart(1)'], c=[0.0], c_tilde=[0.0],
                      variances=[0.25, 1.0, 4.0])),
    'brownian-equality': ('h2', dict(horizon=1.0, grid=512, paths=100000, kind='identity',
                                     y=['one'], g=['0'], g_tilde=['0'], randomized_h2=0)),
    'brownian-strict': ('h2', dict(horizon=1.0, grid=512, paths=100000, kind='identity',
                                   y=['x'], g=['0'], g_tilde=['0'], randomized_h2=0)),
    'h2-randomized': ('h2', dict(horizon=1.0, grid=128, paths=100000, kind='power', alpha=2.0,
                                 y=['one'], g=['0'], g_tilde=['0'], randomized_h2=20)),
    'isometry': ('isometry', dict(horizon=1.0, grid=512, paths=100000, kind='identity',
                                  y=['one', 'x'])),
}


def get_config_paths(directory):
    """Returns the output files of a run writing to ``directory``."""
    return {key: os.path.join(directory, value) for key, value in [
        ('.', '.'),
        ('report_csv', 'report.csv'),
        ('report_json', 'report.json'),
        ('metadata', 'metadata.json'),
        ('ensemble_dump', 'ensemble.npz'),
    ]}


def set_out_dir(directory):
    """Sets the global output directory, creating it if needed."""
    global out_dir, FILES
    if os.path.exists(directory) and not os.path.isdir(directory):
        raise ConfigError('Invalid output directory: %s' % directory)
    if not os.path.exists(directory):
        os.makedirs(directory)
    out_dir = directory
    FILES = get_config_paths(directory)


def read_config_file(filename):
    """
    Reads an INI file and returns the values it sets, keyed by option name.
    Unknown sections or keys are errors.
    """
    parser = configparser.ConfigParser()
    try:
        with open(filename) as f:
            parser.read_file(f)
    except (OSError, IOError) as e:
        raise ConfigError('Cannot read config file %s: %s' % (filename, e))
    except configparser.Error as e:
        raise ConfigError('Malformed config file %s: %s' % (filename, e))

    values = {}
    for section in parser.sections():
        if section not in SCHEMA:
            raise ConfigError('Unknown section [%s] in %s' % (section, filename))
        readers = SCHEMA[section]
        for key, text in parser.items(section):
            if key not in readers:
                raise ConfigError('Unknown key %s in section [%s]' % (key, section))
            try:
                values[key] = readers[key](text)
            except ValueError as e:
                raise ConfigError('Bad value for %s in [%s]: %r (%s)' % (key, section, text, e))
    return values


class RunConfig(object):
    """
    All settings of one run. Values are layered: defaults, then a config
    file, then a preset, then explicit command line flags.
    """

    def __init__(self, **values):
        self.__dict__.update(copy.deepcopy(DEFAULTS))
        self.update(values)

    def update(self, values):
        for key, value in values.items():
            if key not in DEFAULTS:
                raise ConfigError('Unknown setting: %s' % key)
            setattr(self, key, value)

    def apply_preset(self, name):
        """Applies a preset's settings and returns the suite it targets."""
        if name not in PRESETS:
            raise ConfigError('Unknown preset: %s' % name)
        suite, overrides = PRESETS[name]
        self.update(overrides)
        self.preset = name
        return suite

    def validate(self):
        """Checks every setting; raises ConfigError on the first bad one."""
        if not self.horizon > 0:
            raise ConfigError('Horizon must be positive, got %r' % self.horizon)
        for key in ('grid', 'paths', 'workers'):
            if getattr(self, key) < 1:
                raise ConfigError('%s must be positive, got %r' % (key, getattr(self, key)))
        if self.seed < 0:
            raise ConfigError('Seed must be non-negative, got %r' % self.seed)
        if not self.suites:
            raise ConfigError('No suite selected')
        for name in self.suites:
            if name != 'all' and name not in SUITES:
                raise ConfigError('Unknown suite: %s' % name)
        if len(self.g) != len(self.g_tilde):
            raise ConfigError('g and g_tilde must list the same number of centerings')
        if len(self.c) != len(self.c_tilde):
            raise ConfigError('c and c_tilde must list the same number of centerings')
        if any(q < 0 for q in self.variances):
            raise ConfigError('Variances must be non-negative')
        if self.randomized < 0 or self.randomized_h2 < 0:
            raise ConfigError('Randomized case counts must be non-negative')
        for key in SCHEMA['tolerances']:
            if not getattr(self, key) >= 0:
                raise ConfigError('Tolerance %s must be non-negative' % key)

        # building the objects checks the remaining values
        try:
            self.time_change().check_on(self.time_grid())
            self.processes()
            self.centerings()
        except ConfigError:
            raise
        except ValueError as e:
            raise ConfigError(str(e))
        return self

    def selected_suites(self):
        """Suites to run, in a fixed order."""
        if 'all' in self.suites:
            return list(SUITES)
        return [name for name in SUITES if name in self.suites]

    def time_change(self):
        if self.kind == 'identity':
            return TimeChange.identity(self.horizon)
        if self.kind == 'power':
            return TimeChange.power(self.alpha, self.horizon)
        if self.kind == 'piecewise':
            if self.knots is None:
                raise ConfigError('Piecewise time change needs knots')
            return TimeChange('piecewise', self.horizon, knots=self.knots)
        raise ConfigError('Unknown time change: %s' % self.kind)

    def time_grid(self):
        return TimeGrid.uniform(self.horizon, self.grid)

    def processes(self):
        return [ProcessElement.parse(text) for text in self.y]

    def centerings(self):
        """Pairs (g, g_tilde) of centering functions."""
        return [(CenteringFunction.parse(a), CenteringFunction.parse(b))
                for a, b in zip(self.g, self.g_tilde)]

    def as_dict(self):
        """Settings for report metadata, with numbers that JSON can hold."""
        values = {}
        for key in sorted(DEFAULTS):
            # the worker count never changes results
            if key in ('out_dir', 'dump_ensemble', 'workers'):
                continue
            value = getattr(self, key)
            if key == 'exponents':
                value = [format_complex(v) for v in value]
            elif key == 'knots' and value is not None:
                value = [list(k) for k in value]
            values[key] = value
        return values

    def __str__(self):
        lines = ['Run configuration']
        for key, value in sorted(self.as_dict().items()):
            lines.append('%s: %s' % (key, value))
        return '\n'.join(lines)


def load_config(filename=None, **overrides):
    """
    Builds a validated RunConfig from an optional file and explicit values.
    """
    values = read_config_file(filename) if filename else {}
    values.update(overrides)
    return RunConfig(**values).validate()
