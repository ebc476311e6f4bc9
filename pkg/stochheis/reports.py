# -*- coding: utf-8 -*-

"""
Writing case records to report.csv and report.json.

Everything but the timestamp is a function of the configuration and seed,
so two runs with the same settings give identical files apart from the
header block of the JSON document.
"""

import csv
import json
import logging
import math
from datetime import datetime, timezone

import numpy as np

from .verify.elements import format_complex

# fields of each CSV row, in order
CSV_FIELDS = ('suite', 'case', 'seed', 'N', 'M', 'T', 'h', 'value', 'target', 'stderr',
              'factor1_mean', 'factor1_stderr', 'factor2_mean', 'factor2_stderr',
              'lhs_product', 'rhs_exact', 'slack', 'allowance', 'pass', 'label', 'detail')


def plain(value):
    """
    Converts numbers to JSON-friendly values: complex numbers with a zero
    imaginary part become floats, other complex numbers [re, im] pairs, and
    non-finite floats strings.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if value.imag != 0:
            return [plain(value.real), plain(value.imag)]
        value = value.real
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, dict):
        return dict((k, plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return str(value)


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (complex, np.complexfloating)):
        return format_complex(value)
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def record_row(record, md):
    """A record plus the run parameters, keyed by CSV field."""
    row = record.as_dict()
    row['pass'] = row.pop('passed')
    row.update(seed=md.seed, N=md.paths, M=md.grid, T=md.horizon, h=md.time_change)
    return row


def write_csv(records, md, filename):
    with open(filename, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(CSV_FIELDS)
        for record in records:
            row = record_row(record, md)
            writer.writerow([_cell(row[name]) for name in CSV_FIELDS])


def report_document(records, md, timestamp=None):
    """The JSON report as a dictionary."""
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat()
    cases = []
    for record in records:
        cases.append(plain(record_row(record, md)))
    return {
        'header': {'timestamp': timestamp},
        'metadata': plain(md.as_dict()),
        'cases': cases,
        'summary': {
            'total': len(records),
            'failed': sum(1 for r in records if not r.passed),
        },
    }


def write_json(records, md, filename, timestamp=None):
    document = report_document(records, md, timestamp)
    with open(filename, 'w') as f:
        json.dump(document, f, sort_keys=True, indent=2)
        f.write('\n')


def write_reports(records, md, files):
    """Writes both reports to the paths in ``files``."""
    logger = logging.getLogger("Logger")
    write_csv(records, md, files['report_csv'])
    write_json(records, md, files['report_json'])
    logger.info("Wrote %d cases to %s and %s"
                % (len(records), files['report_csv'], files['report_json']))


def failure_summary(records):
    """One line per failed case."""
    lines = []
    for record in records:
        if not record.passed:
            lines.append('FAILED %s: %s (value %s, target %s) %s'
                         % (record.suite, record.case, _cell(record.value),
                            _cell(record.target), record.detail))
    return lines
