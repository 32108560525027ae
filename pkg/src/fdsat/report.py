"""Report documents, CSV sweep tables and SVG charts."""

from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET
from dataclasses import asdict

import numpy as np
import pandas as pd

import fdsat
from fdsat import scenario

FLOAT_DIGITS = 6
CSV_FLOAT_FORMAT = '%.6f'

SVG_WIDTH = 640
SVG_HEIGHT = 400
SVG_MARGIN = {'left': 70, 'right': 20, 'top': 20, 'bottom': 50}
SVG_TICKS = 5


def _clean(obj):
    """Round floats to the report precision; non-finite values become None."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return None
        # avoid printing -0.0
        return round(v, FLOAT_DIGITS) + 0.0
    return obj


def to_json(obj):
    """Canonical JSON text with sorted keys and rounded floats."""
    return json.dumps(_clean(obj), sort_keys=True, indent=2) + '\n'


def result_dict(result):
    """Plain representation of an assessment result."""
    geo = result.geometry
    budgets = {}
    for key, budget in result.budgets.items():
        budgets[key] = asdict(budget)
    return {
        'use_case': result.use_case_id,
        'sic_db': result.sic_db,
        'geometry': {
            'policy': geo.policy,
            'satellite_id': geo.satellite_id,
            'epoch_s': geo.epoch_s,
            'passes': {name: asdict(p) for name, p in geo.passes.items()},
            'distances_km': dict(geo.distances_km),
        },
        'budgets': budgets,
        'comparison': asdict(result.comparison),
        'loop_margin_db': result.loop_margin_db,
        'sic_breakeven_db': result.sic_breakeven_db,
        'warnings': list(result.warnings),
    }


def assumptions_dict(s):
    """Defaulted and overridden fields and the scenario notes."""
    return {'defaults': dict(s.defaults), 'overrides': dict(s.overrides),
            'notes': list(s.notes)}


def build_document(s, result):
    """
    Report document for one assessment.

    Returns
    -------
    document : dict
        Keys scenario, result, assumptions and version.
    """
    return {
        'scenario': scenario.scenario_to_dict(s, include_defaults=True),
        'result': result_dict(result),
        'assumptions': assumptions_dict(s),
        'version': fdsat.__version__,
    }


def format_table(s, result):
    """Human-readable summary of an assessment."""
    c = result.comparison
    geo = result.geometry
    rows = [
        ('use case', s.use_case_id),
        ('scenario', s.name or ''),
        ('satellite',
         f'{s.satellite_node} = constellation member {geo.satellite_id}'),
        ('epoch (s)', f'{geo.epoch_s:.1f} ({geo.policy})'),
    ]
    for name, p in geo.passes.items():
        rows.append((f'{name} elevation (deg)', f'{p.elevation_deg:.2f}'))
        rows.append((f'{name} slant range (km)', f'{p.slant_range_km:.2f}'))
    for key, b in result.budgets.items():
        tx, rx = s.link.directions[key]
        rows.append((f'{tx} -> {rx} FSPL (dB)', f'{b.fspl_db:.2f}'))
        rows.append((f'{tx} -> {rx} SNR (dB)', f'{b.snr_db:.2f}'))
    breakeven = result.sic_breakeven_db
    rows += [
        ('carrier (GHz)', f'{s.link.carrier_ghz:g}'),
        ('noise (dBW)', f'{c.noise_dbw:.2f}'),
        ('SIC (dB)', f'{result.sic_db:.2f}'),
        ('residual SI (dBW)', f'{c.residual_si_dbw:.2f}'),
        (f'SINR at {s.link.fd_node} (dB)', f'{c.fd_rx.sinr_fd_db:.2f}'),
        ('SE FDD (bps/Hz)', f'{c.se_fdd_bps_hz:.2f}'),
        ('SE FD (bps/Hz)', f'{c.se_fd_bps_hz:.2f}'),
        ('gain (%)', f'{c.gain_percent:.2f}'),
        ('loop margin (dB)', f'{result.loop_margin_db:.2f}'),
        ('break-even SIC (dB)',
         'unreachable' if breakeven is None else f'{breakeven:.2f}'),
    ]
    table = pd.DataFrame(rows, columns=['quantity', 'value'])
    lines = [table.to_string(index=False, justify='left')]
    if s.defaults:
        lines.append('')
        lines.append('defaulted fields:')
        lines += [f'  {k}: {v}' for k, v in s.defaults.items()]
    if s.overrides:
        lines.append('')
        lines.append('overridden fields:')
        lines += [f'  {k}: {v}' for k, v in s.overrides.items()]
    if s.notes:
        lines.append('')
        lines.append('assumptions:')
        lines += [f'  {n}' for n in s.notes]
    for warning in result.warnings:
        lines.append(f'warning: {warning}')
    return '\n'.join(lines) + '\n'


def to_csv(table):
    """Sweep table as CSV text with fixed six-decimal floats."""
    missing = [c for c in scenario.SWEEP_COLUMNS if c not in table.columns]
    if missing:
        raise ValueError(f'sweep table is missing columns: {missing}')
    return table[scenario.SWEEP_COLUMNS].to_csv(
        index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n'
    )


def read_sweep_csv(path):
    """
    Read a sweep CSV written by `to_csv`.

    Returns
    -------
    table : pandas.DataFrame
        Sweep table with the exact values stored in the file.
    """
    table = pd.read_csv(path, float_precision='round_trip')
    if list(table.columns) != scenario.SWEEP_COLUMNS:
        raise ValueError(
            f'{path}: expected columns {",".join(scenario.SWEEP_COLUMNS)}'
        )
    return table


def _normalize(values):
    return [float(f'{v:.{FLOAT_DIGITS}f}') for v in values]


def _axis_range(values):
    lo, hi = min(values), max(values)
    if hi == lo:
        return lo - 1, hi + 1
    return lo, hi


def render_svg(table, x='sic_db', y='gain_percent'):
    """
    Chart of one sweep column against another as standalone SVG.

    Values are normalized to the CSV precision, so a table re-read from
    its CSV renders to the same bytes.

    Parameters
    ----------
    table : pandas.DataFrame
        Sweep table.

    x, y : str, optional
        Columns on the horizontal and vertical axes.

    Returns
    -------
    svg : str
        SVG document with axes, gridlines, axis labels and one polyline.
    """
    if len(table) == 0:
        raise ValueError('cannot plot an empty sweep table')
    xs = _normalize(table[x])
    ys = _normalize(table[y])
    x_lo, x_hi = _axis_range(xs)
    y_lo, y_hi = _axis_range(ys)

    left = SVG_MARGIN['left']
    top = SVG_MARGIN['top']
    plot_w = SVG_WIDTH - left - SVG_MARGIN['right']
    plot_h = SVG_HEIGHT - top - SVG_MARGIN['bottom']

    def px(v):
        return left + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v):
        return top + (y_hi - v) / (y_hi - y_lo) * plot_h

    svg = ET.Element('svg', {
        'xmlns': 'http://www.w3.org/2000/svg',
        'width': str(SVG_WIDTH),
        'height': str(SVG_HEIGHT),
        'viewBox': f'0 0 {SVG_WIDTH} {SVG_HEIGHT}',
        'font-family': 'sans-serif',
        'font-size': '12',
    })
    grid = ET.SubElement(svg, 'g', {'stroke': '#dddddd', 'stroke-width': '1'})
    labels = ET.SubElement(svg, 'g', {'fill': '#000000'})
    for i in range(SVG_TICKS + 1):
        xv = x_lo + (x_hi - x_lo) * i / SVG_TICKS
        yv = y_lo + (y_hi - y_lo) * i / SVG_TICKS
        gx = f'{px(xv):.2f}'
        gy = f'{py(yv):.2f}'
        ET.SubElement(grid, 'line', {
            'x1': gx, 'y1': str(top), 'x2': gx, 'y2': str(top + plot_h)
        })
        ET.SubElement(grid, 'line', {
            'x1': str(left), 'y1': gy, 'x2': str(left + plot_w), 'y2': gy
        })
        xt = ET.SubElement(labels, 'text', {
            'x': gx, 'y': str(top + plot_h + 16), 'text-anchor': 'middle'
        })
        xt.text = f'{xv:.4g}'
        yt = ET.SubElement(labels, 'text', {
            'x': str(left - 6), 'y': gy, 'text-anchor': 'end',
            'dominant-baseline': 'middle',
        })
        yt.text = f'{yv:.4g}'

    ET.SubElement(svg, 'rect', {
        'x': str(left), 'y': str(top), 'width': str(plot_w),
        'height': str(plot_h), 'fill': 'none', 'stroke': '#000000',
    })
    x_label = ET.SubElement(svg, 'text', {
        'x': f'{left + plot_w / 2:.2f}', 'y': str(SVG_HEIGHT - 10),
        'text-anchor': 'middle',
    })
    x_label.text = 'SIC (dB)' if x == 'sic_db' else x
    y_label = ET.SubElement(svg, 'text', {
        'x': '16', 'y': f'{top + plot_h / 2:.2f}', 'text-anchor': 'middle',
        'transform': f'rotate(-90 16 {top + plot_h / 2:.2f})',
    })
    y_label.text = 'Gain (%)' if y == 'gain_percent' else y

    points = ' '.join(f'{px(a):.2f},{py(b):.2f}' for a, b in zip(xs, ys))
    ET.SubElement(svg, 'polyline', {
        'points': points, 'fill': 'none', 'stroke': '#1f77b4',
        'stroke-width': '2',
    })
    body = ET.tostring(svg, encoding='unicode')
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + '\n'


def format_passes(passes):
    """Pass table as fixed-precision text."""
    if passes.empty:
        return 'no passes\n'
    return passes.to_string(index=False, float_format=lambda v: f'{v:.2f}') + '\n'
