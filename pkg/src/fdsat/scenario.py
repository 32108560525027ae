"""Scenario files, assessment and SIC sweeps."""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import pandas as pd

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
import tomli_w

from fdsat import duplexing
from fdsat import geometry
from fdsat import linkbudget
from fdsat import usecases

logger = logging.getLogger(__name__)

THREADS_ENV = 'FDSAT_THREADS'

ROLES = ('ground', 'air', 'satellite')
DEFAULT_ALT_KM = {'ground': 0.0, 'air': 20.0}
DEFAULT_ISOLATION_DB = {'ground': 40.0, 'air': 25.0, 'satellite': 25.0}
DEFAULT_CARRIER_GHZ = {'FU-UD': 37.5, 'UU-FD': 29.3, 'SATL': 22.5}

DEFAULT_SEARCH = {
    'search_start_s': 0.0,
    'search_window_s': 86400.0,
    'search_step_s': 10.0,
    'refine_step_s': 1.0,
}

SWEEP_COLUMNS = ['sic_db', 'se_fdd_bps_hz', 'se_fd_bps_hz', 'gain_percent',
                 'residual_si_dbw']

_REQUIRED = object()


@dataclass(frozen=True)
class Node:
    """
    Named endpoint of the link pair.

    Ground and air nodes have a fixed position. The satellite node is
    bound to a constellation member when the geometry is resolved.
    """

    name: str
    role: str
    eirp_dbw: float
    g_over_t_dbk: float
    isolation_db: float
    position: geometry.GeodeticPosition | None = None

    @property
    def is_satellite(self):
        return self.role == 'satellite'

    def chain(self, carrier_ghz):
        """RF chain of the node at a carrier."""
        return linkbudget.RfChain(self.eirp_dbw, self.g_over_t_dbk,
                                  carrier_ghz, self.isolation_db)


@dataclass(frozen=True)
class LinkSpec:
    """Topology of the two directions and the shared carrier."""

    direction_a: tuple
    direction_b: tuple
    fd_node: str
    carrier_ghz: float
    additional_loss_db: float = 0.0
    min_elevation_deg: float = 10.0

    @property
    def directions(self):
        return {'direction_a': self.direction_a,
                'direction_b': self.direction_b}


@dataclass(frozen=True)
class EpochPolicy:
    """Fixed epoch, or best-pass search when `epoch_s` is None."""

    epoch_s: float | None = None
    search_start_s: float | None = None
    search_window_s: float | None = None
    search_step_s: float | None = None
    refine_step_s: float | None = None

    @property
    def fixed(self):
        return self.epoch_s is not None


@dataclass(frozen=True)
class DuplexSettings:
    """Full-duplex operating point."""

    sic_db: float = 70.0
    fd_node_tx_power_dbw: float = 0.0
    amplification_db: float = 60.0
    fdd_split: float = 0.5


@dataclass(frozen=True)
class Scenario:
    """
    Validated scenario.

    `defaults` maps the dotted key of every field that was not written
    in the scenario file to a description of the value applied.
    `overrides` does the same for fields replaced after loading.
    """

    use_case_id: str
    constellation: geometry.ConstellationSpec
    nodes: dict
    link: LinkSpec
    epoch: EpochPolicy
    env: linkbudget.NoiseEnvironment
    duplex: DuplexSettings
    name: str | None = None
    notes: tuple = ()
    defaults: dict = field(default_factory=dict)
    overrides: dict = field(default_factory=dict)

    @property
    def satellite_node(self):
        """Name of the satellite node used by the link."""
        tx, rx = self.link.direction_a
        return tx if self.nodes[tx].is_satellite else rx

    def observer_names(self):
        """Ground and air nodes of the link, in order of appearance."""
        names = []
        for tx, rx in (self.link.direction_a, self.link.direction_b):
            for name in (tx, rx):
                if not self.nodes[name].is_satellite and name not in names:
                    names.append(name)
        return names

    def with_sic(self, sic_db, origin=None):
        """
        Copy with another SIC value.

        The SIC field leaves the defaults ledger and is recorded as an
        override, naming `origin` when given.
        """
        sic_db = float(sic_db)
        text = f'overridden to {sic_db:g}'
        if origin is not None:
            text += f' from the {origin}'
        defaults = {k: v for k, v in self.defaults.items()
                    if k != 'duplex.sic_db'}
        overrides = {**self.overrides, 'duplex.sic_db': text}
        return replace(self, duplex=replace(self.duplex, sic_db=sic_db),
                       defaults=defaults, overrides=overrides)


@dataclass(frozen=True)
class ResolvedGeometry:
    """Satellite, epoch and slant ranges shared by every SIC value."""

    satellite_id: int
    epoch_s: float
    passes: dict
    distances_km: dict
    policy: str


@dataclass(frozen=True)
class AssessmentResult:
    """Outcome of assessing one scenario at one SIC value."""

    use_case_id: str
    sic_db: float
    geometry: ResolvedGeometry
    budgets: dict
    comparison: duplexing.DuplexComparison
    loop_margin_db: float
    sic_breakeven_db: float | None
    assumptions: dict
    warnings: tuple = ()


class _Table:
    """Strict reader of one table of a scenario document."""

    def __init__(self, raw, path, ledger):
        if not isinstance(raw, dict):
            raise ValueError(f'{path}: expected a table')
        self.raw = raw
        self.path = path
        self.ledger = ledger
        self.seen = set()

    def dotted(self, key):
        return f'{self.path}.{key}' if self.path else key

    def get(self, key, default=_REQUIRED, kind='float'):
        self.seen.add(key)
        if key not in self.raw:
            if default is _REQUIRED:
                where = self.path or 'scenario'
                raise ValueError(f'{where}: missing required field {key!r}')
            if default is not None:
                self.ledger[self.dotted(key)] = f'defaulted to {default:g}'
            return default
        return _convert(self.raw[key], self.dotted(key), kind)

    def table(self, key, required=False):
        self.seen.add(key)
        if key not in self.raw:
            if required:
                raise ValueError(
                    f'{self.path or "scenario"}: missing required table {key!r}'
                )
            return {}
        value = self.raw[key]
        if not isinstance(value, dict):
            raise ValueError(f'{self.dotted(key)}: expected a table')
        return value

    def finish(self):
        unknown = sorted(set(self.raw) - self.seen)
        if unknown:
            where = f'[{self.path}]' if self.path else 'the top level'
            raise ValueError(f'unknown key {unknown[0]!r} in {where}')


def _convert(value, key, kind):
    if kind == 'float':
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f'{key}: expected a number, got {value!r}')
        if not math.isfinite(value):
            raise ValueError(f'{key}: must be finite')
        return float(value)
    if kind == 'int':
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f'{key}: expected an integer, got {value!r}')
        return value
    if kind == 'str':
        if not isinstance(value, str):
            raise ValueError(f'{key}: expected a string, got {value!r}')
        return value
    if kind == 'strings':
        if not isinstance(value, list) or not all(
            isinstance(v, str) for v in value
        ):
            raise ValueError(f'{key}: expected a list of strings')
        return tuple(value)
    raise ValueError(f'Invalid kind: {kind}')


def _check(condition, key, message):
    if not condition:
        raise ValueError(f'{key}: {message}')


def _read_constellation(raw, ledger):
    t = _Table(raw, 'constellation', ledger)
    default = geometry.ConstellationSpec()
    planes = t.get('planes', default.planes, 'int')
    sats = t.get('sats_per_plane', default.sats_per_plane, 'int')
    _check(planes >= 1, 'constellation.planes', 'must be at least 1')
    _check(sats >= 1, 'constellation.sats_per_plane', 'must be at least 1')
    phase = t.get('phase_offset_deg', None)
    if phase is None:
        phase = 360.0 / (planes * sats)
        ledger['constellation.phase_offset_deg'] = \
            f'defaulted to 360 / (planes * sats_per_plane) = {phase:g}'
    spec = geometry.ConstellationSpec(
        altitude_km=t.get('altitude_km', default.altitude_km),
        planes=planes,
        sats_per_plane=sats,
        inclination_deg=t.get('inclination_deg', default.inclination_deg),
        raan_spread_deg=t.get('raan_spread_deg', default.raan_spread_deg),
        phase_offset_deg=phase,
        epoch_s=t.get('epoch_s', default.epoch_s),
    )
    t.finish()
    return spec


def _read_node(name, raw, ledger):
    path = f'nodes.{name}'
    t = _Table(raw, path, ledger)
    role = t.get('role', kind='str')
    _check(role in ROLES, f'{path}.role',
           f'must be one of {", ".join(ROLES)}, got {role!r}')
    position = None
    if role != 'satellite':
        lat = t.get('lat_deg')
        lon = t.get('lon_deg')
        alt = t.get('alt_km', DEFAULT_ALT_KM[role])
        _check(abs(lat) <= 90, f'{path}.lat_deg', 'must be within [-90, 90]')
        _check(abs(lon) <= 180, f'{path}.lon_deg',
               'must be within [-180, 180]')
        _check(alt >= 0, f'{path}.alt_km', 'must be non-negative')
        position = geometry.GeodeticPosition(lat, lon, alt)
    eirp = t.get('eirp_dbw')
    g_over_t = t.get('g_over_t_dbk')
    isolation = t.get('isolation_db', DEFAULT_ISOLATION_DB[role])
    _check(isolation >= 0, f'{path}.isolation_db', 'must be non-negative')
    t.finish()
    return Node(name, role, eirp, g_over_t, isolation, position)


def _read_direction(raw, key, nodes):
    if not isinstance(raw, dict):
        raise ValueError(f'{key}: expected a table with tx and rx')
    t = _Table(raw, key, {})
    tx = t.get('tx', kind='str')
    rx = t.get('rx', kind='str')
    t.finish()
    for end in (tx, rx):
        if end not in nodes:
            raise ValueError(f'{key}: unknown node {end!r}')
    roles = sorted(nodes[n].is_satellite for n in (tx, rx))
    _check(roles == [False, True], key,
           'must join one satellite node and one ground or air node')
    return tx, rx


def _read_link(raw, use_case_id, nodes, ledger):
    t = _Table(raw, 'link', ledger)
    a = _read_direction(t.table('direction_a', required=True),
                        'link.direction_a', nodes)
    b = _read_direction(t.table('direction_b', required=True),
                        'link.direction_b', nodes)
    fd_node = t.get('fd_node', kind='str')
    if fd_node not in nodes:
        raise ValueError(f'link.fd_node: unknown node {fd_node!r}')
    sat_a = [n for n in a if nodes[n].is_satellite]
    sat_b = [n for n in b if nodes[n].is_satellite]
    _check(sat_a == sat_b, 'link', 'both directions must use the same '
           'satellite node')
    carrier = t.get('carrier_ghz', DEFAULT_CARRIER_GHZ.get(use_case_id,
                                                           _REQUIRED))
    _check(carrier > 0, 'link.carrier_ghz', 'must be positive')
    loss = t.get('additional_loss_db', 0.0)
    _check(loss >= 0, 'link.additional_loss_db', 'must be non-negative')
    min_elev = t.get('min_elevation_deg', 10.0)
    _check(-90 <= min_elev <= 90, 'link.min_elevation_deg',
           'must be within [-90, 90]')

    epoch_s = t.get('epoch_s', None)
    search = {}
    for key, value in DEFAULT_SEARCH.items():
        if epoch_s is not None and key in t.raw:
            raise ValueError(f'link.{key}: not allowed with a fixed epoch_s')
        search[key] = t.get(key, value if epoch_s is None else None)
    if epoch_s is None:
        ledger['link.epoch_s'] = (
            f'best pass within {search["search_window_s"]:g} s from '
            f'{search["search_start_s"]:g} s'
        )
        _check(search['search_window_s'] > 0, 'link.search_window_s',
               'window must be positive')
        _check(search['search_step_s'] > 0, 'link.search_step_s',
               'must be positive')
        _check(search['refine_step_s'] > 0, 'link.refine_step_s',
               'must be positive')
    t.finish()

    link = LinkSpec(a, b, fd_node, carrier, loss, min_elev)
    pair = duplexing.FdLinkPair(
        duplexing.Direction(a[0], a[1], 1.0),
        duplexing.Direction(b[0], b[1], 1.0),
        carrier, fd_node, 0.0,
    )
    try:
        pair.validate()
    except ValueError as err:
        raise ValueError(f'link: {err}') from None
    return link, EpochPolicy(epoch_s, **search)


def _read_env(raw, ledger):
    t = _Table(raw, 'env', ledger)
    default = linkbudget.NoiseEnvironment()
    temperature = t.get('temperature_k', default.temperature_k)
    bandwidth = t.get('bandwidth_hz', default.bandwidth_hz)
    t.finish()
    _check(temperature > 0, 'env.temperature_k', 'temperature must be positive')
    _check(bandwidth > 0, 'env.bandwidth_hz', 'bandwidth must be positive')
    return linkbudget.NoiseEnvironment(temperature, bandwidth)


def _read_duplex(raw, fd_node, ledger):
    t = _Table(raw, 'duplex', ledger)
    default = DuplexSettings()
    sic = t.get('sic_db', default.sic_db)
    _check(sic >= 0, 'duplex.sic_db', 'must be non-negative')
    tx_power = t.get('fd_node_tx_power_dbw', None)
    if tx_power is None:
        tx_power = fd_node.eirp_dbw
        ledger['duplex.fd_node_tx_power_dbw'] = (
            f'defaulted to the EIRP of {fd_node.name} ({tx_power:g} dBW)'
        )
    amplification = t.get('amplification_db', default.amplification_db)
    _check(amplification >= 0, 'duplex.amplification_db',
           'must be non-negative')
    split = t.get('fdd_split', default.fdd_split)
    _check(0 < split < 1, 'duplex.fdd_split',
           'must be strictly between 0 and 1')
    t.finish()
    return DuplexSettings(sic, tx_power, amplification, split)


def scenario_from_dict(doc):
    """
    Validate a parsed scenario document.

    Parameters
    ----------
    doc : dict
        Nested tables as parsed from TOML.

    Returns
    -------
    scenario : Scenario
        Validated scenario with every default recorded in `defaults`.
    """
    ledger = {}
    top = _Table(doc, '', ledger)
    use_case_id = top.get('use_case', kind='str')
    if use_case_id not in usecases.ids():
        raise ValueError(
            f'use_case: unknown use case {use_case_id!r}; valid ids: '
            f'{", ".join(usecases.ids())}'
        )
    name = top.get('name', None, 'str')
    notes = top.get('assumptions', None, 'strings') or ()

    constellation = _read_constellation(top.table('constellation'), ledger)
    raw_nodes = top.table('nodes', required=True)
    if not raw_nodes:
        raise ValueError('nodes: at least one node is required')
    nodes = {n: _read_node(n, raw, ledger) for n, raw in raw_nodes.items()}
    link, epoch = _read_link(top.table('link', required=True), use_case_id,
                             nodes, ledger)
    env = _read_env(top.table('env'), ledger)
    duplex = _read_duplex(top.table('duplex'), nodes[link.fd_node], ledger)
    top.finish()

    s = Scenario(use_case_id, constellation, nodes, link, epoch, env, duplex,
                 name=name, notes=notes, defaults=dict(sorted(ledger.items())))
    logger.debug('loaded scenario %s with %d defaulted fields',
                 name or use_case_id, len(s.defaults))
    return s


def load_scenario(document):
    """
    Parse and validate a TOML scenario document.

    Parameters
    ----------
    document : str
        Scenario text.

    Returns
    -------
    scenario : Scenario
        Validated scenario.

    Raises
    ------
    tomllib.TOMLDecodeError
        If the text is not valid TOML; the message gives line and column.

    ValueError
        If a field is missing, unknown or out of range.
    """
    return scenario_from_dict(tomllib.loads(document))


def load_scenario_file(path):
    """Load a scenario from a TOML file."""
    with open(path, encoding='utf-8') as f:
        text = f.read()
    return load_scenario(text)


def _explicit(values, prefix, defaults):
    return {k: v for k, v in values.items()
            if v is not None and f'{prefix}.{k}' not in defaults}


def scenario_to_dict(s, include_defaults=False):
    """
    Scenario as nested tables.

    By default only explicitly given fields are included. With
    `include_defaults`, every applied value is included.
    """
    d = {} if include_defaults else s.defaults
    doc = {'use_case': s.use_case_id}
    if s.name is not None:
        doc['name'] = s.name
    if s.notes:
        doc['assumptions'] = list(s.notes)

    c = s.constellation
    constellation = _explicit({
        'altitude_km': c.altitude_km,
        'planes': c.planes,
        'sats_per_plane': c.sats_per_plane,
        'inclination_deg': c.inclination_deg,
        'raan_spread_deg': c.raan_spread_deg,
        'phase_offset_deg': c.phase_offset_deg,
        'epoch_s': c.epoch_s,
    }, 'constellation', d)
    if constellation:
        doc['constellation'] = constellation

    nodes = {}
    for name, node in s.nodes.items():
        values = {'role': node.role}
        if node.position is not None:
            values.update(lat_deg=node.position.lat_deg,
                          lon_deg=node.position.lon_deg,
                          alt_km=node.position.alt_km)
        values.update(eirp_dbw=node.eirp_dbw,
                      g_over_t_dbk=node.g_over_t_dbk,
                      isolation_db=node.isolation_db)
        nodes[name] = _explicit(values, f'nodes.{name}', d)
    doc['nodes'] = nodes

    link = {
        'direction_a': dict(zip(('tx', 'rx'), s.link.direction_a)),
        'direction_b': dict(zip(('tx', 'rx'), s.link.direction_b)),
        'fd_node': s.link.fd_node,
    }
    link.update(_explicit({
        'carrier_ghz': s.link.carrier_ghz,
        'additional_loss_db': s.link.additional_loss_db,
        'min_elevation_deg': s.link.min_elevation_deg,
        'epoch_s': s.epoch.epoch_s,
        'search_start_s': s.epoch.search_start_s,
        'search_window_s': s.epoch.search_window_s,
        'search_step_s': s.epoch.search_step_s,
        'refine_step_s': s.epoch.refine_step_s,
    }, 'link', d))
    doc['link'] = link

    env = _explicit({'temperature_k': s.env.temperature_k,
                     'bandwidth_hz': s.env.bandwidth_hz}, 'env', d)
    if env:
        doc['env'] = env
    duplex = _explicit({
        'sic_db': s.duplex.sic_db,
        'fd_node_tx_power_dbw': s.duplex.fd_node_tx_power_dbw,
        'amplification_db': s.duplex.amplification_db,
        'fdd_split': s.duplex.fdd_split,
    }, 'duplex', d)
    if duplex:
        doc['duplex'] = duplex
    return doc


def dump_scenario(s):
    """
    Serialize a scenario to TOML text.

    Only explicitly given fields are written, so loading the text back
    gives an equal scenario with the same defaults.
    """
    return tomli_w.dumps(scenario_to_dict(s))


def resolve_geometry(s):
    """
    Bind the satellite node to a constellation member.

    Parameters
    ----------
    s : Scenario
        Validated scenario.

    Returns
    -------
    resolved : ResolvedGeometry
        Satellite id, epoch, pass geometry per ground or air node and
        slant range per direction.

    Raises
    ------
    geometry.VisibilityError
        If no satellite is visible to every node at the required
        elevation.
    """
    names = s.observer_names()
    observers = [s.nodes[n].position for n in names]
    min_elev = s.link.min_elevation_deg
    if s.epoch.fixed:
        passes = geometry.geometry_at(s.constellation, observers,
                                      s.epoch.epoch_s, min_elev)
        policy = 'fixed_epoch'
    else:
        passes = geometry.best_pass(
            s.constellation, observers,
            window_s=s.epoch.search_window_s,
            step_s=s.epoch.search_step_s,
            min_elev_deg=min_elev,
            start_s=s.epoch.search_start_s,
            refine_step_s=s.epoch.refine_step_s,
        )
        policy = 'best_pass'
    by_node = dict(zip(names, passes))

    distances = {}
    for key, (tx, rx) in s.link.directions.items():
        ground = rx if s.nodes[tx].is_satellite else tx
        distances[key] = by_node[ground].slant_range_km
    first = passes[0]
    logger.debug('%s bound to satellite %d at %g s (%s)', s.satellite_node,
                 first.satellite_id, first.epoch_s, policy)
    return ResolvedGeometry(first.satellite_id, first.epoch_s, by_node,
                            distances, policy)


def _link_pair(s, resolved):
    a, b = s.link.direction_a, s.link.direction_b
    return duplexing.FdLinkPair(
        duplexing.Direction(a[0], a[1], resolved.distances_km['direction_a']),
        duplexing.Direction(b[0], b[1], resolved.distances_km['direction_b']),
        s.link.carrier_ghz, s.link.fd_node, s.duplex.fd_node_tx_power_dbw,
    )


def _chains(s):
    return {name: node.chain(s.link.carrier_ghz)
            for name, node in s.nodes.items()}


def _compare(s, resolved, sic_db):
    cfg = duplexing.SicConfig(sic_db, s.nodes[s.link.fd_node].isolation_db)
    return duplexing.compare_duplex(
        _link_pair(s, resolved), _chains(s), s.env, cfg,
        s.duplex.fdd_split, s.link.additional_loss_db,
    )


def assess(s, sic_db=None, resolved=None):
    """
    Assess full duplex against FDD for one scenario.

    Parameters
    ----------
    s : Scenario
        Validated scenario.

    sic_db : float, optional
        SIC to use instead of the scenario value.

    resolved : ResolvedGeometry, optional
        Geometry from an earlier call to `resolve_geometry`.

    Returns
    -------
    result : AssessmentResult
        Geometry, budgets of both directions, duplex comparison, loop
        margin, break-even SIC and the defaults ledger.
    """
    if sic_db is not None:
        s = s.with_sic(sic_db)
    if resolved is None:
        resolved = resolve_geometry(s)

    chains = _chains(s)
    budgets = {}
    for key, (tx, rx) in s.link.directions.items():
        budgets[key] = linkbudget.evaluate_link(
            chains[tx], chains[rx], resolved.distances_km[key], s.env,
            s.link.additional_loss_db,
        )
    comparison = _compare(s, resolved, s.duplex.sic_db)

    fd_node = s.nodes[s.link.fd_node]
    cfg = duplexing.SicConfig(s.duplex.sic_db, fd_node.isolation_db)
    margin = duplexing.loop_stability_margin_db(s.duplex.amplification_db, cfg)
    warnings = []
    if margin < 0:
        msg = (f'loop stability margin {margin:.2f} dB is negative; the '
               f'relay echo loop at {fd_node.name} can oscillate')
        logger.warning(msg)
        warnings.append(msg)
    breakeven = duplexing.sic_breakeven_db(
        _link_pair(s, resolved), chains, s.env, fd_node.isolation_db,
        s.duplex.fdd_split, s.link.additional_loss_db,
    )
    return AssessmentResult(
        use_case_id=s.use_case_id,
        sic_db=s.duplex.sic_db,
        geometry=resolved,
        budgets=budgets,
        comparison=comparison,
        loop_margin_db=margin,
        sic_breakeven_db=breakeven,
        assumptions={**s.defaults, **s.overrides},
        warnings=tuple(warnings),
    )


def default_threads():
    """Worker count from the environment; None for automatic."""
    raw = os.environ.get(THREADS_ENV, '').strip()
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        n = -1
    if n < 0:
        raise ValueError(
            f'{THREADS_ENV} must be a non-negative integer, got {raw!r}'
        )
    return n or None


def sweep_sic(s, sic_values, resolved=None, threads=None):
    """
    Compare duplex modes over several SIC values.

    Geometry is resolved once and shared by every value, so slant
    ranges are identical across the sweep.

    Parameters
    ----------
    s : Scenario
        Validated scenario.

    sic_values : sequence of float
        SIC values in dB, all non-negative.

    resolved : ResolvedGeometry, optional
        Pre-resolved geometry.

    threads : int, optional
        Worker count. Defaults to the FDSAT_THREADS environment
        variable, or automatic.

    Returns
    -------
    results : list of (float, DuplexComparison)
        One entry per SIC value, in input order.
    """
    values = [float(v) for v in sic_values]
    if not values:
        raise ValueError('at least one SIC value is required')
    if any(not v >= 0 for v in values):
        raise ValueError('SIC values must be non-negative')
    if resolved is None:
        resolved = resolve_geometry(s)
    if threads is None:
        threads = default_threads()

    def run(sic):
        return sic, _compare(s, resolved, sic)

    logger.debug('sweeping %d SIC values', len(values))
    if threads == 1 or len(values) == 1:
        return [run(v) for v in values]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run, values))


def sweep_table(results):
    """
    Tabulate sweep results.

    Returns
    -------
    table : pandas.DataFrame
        One row per SIC value with fields sic_db, se_fdd_bps_hz,
        se_fd_bps_hz, gain_percent and residual_si_dbw.
    """
    rows = [[sic, c.se_fdd_bps_hz, c.se_fd_bps_hz, c.gain_percent,
             c.residual_si_dbw] for sic, c in results]
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def parse_sic_range(text):
    """
    Expand a ``start:stop:step`` range of SIC values.

    The stop value is included when it falls on the grid.
    """
    parts = str(text).split(':')
    if len(parts) != 3:
        raise ValueError(f'malformed SIC range {text!r}; expected start:stop:step')
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(
            f'malformed SIC range {text!r}; expected start:stop:step'
        ) from None
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise ValueError(f'SIC range {text!r} must be finite')
    if step <= 0:
        raise ValueError(f'SIC range {text!r}: step must be positive')
    if start > stop:
        raise ValueError(f'SIC range {text!r}: start must not exceed stop')
    if start < 0:
        raise ValueError(f'SIC range {text!r}: SIC must be non-negative')
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(n), 9)


def sweep_grid(s, sic_range, resolved=None, threads=None):
    """Sweep a ``start:stop:step`` range and return the sweep table."""
    values = parse_sic_range(sic_range)
    return sweep_table(sweep_sic(s, values, resolved, threads))


def visibility(s, window_s, step_s=None, min_elev_deg=None, start_s=None):
    """
    Passes over every ground and air node of a scenario.

    Parameters
    ----------
    s : Scenario
        Validated scenario.

    window_s : float
        Scan window length.

    step_s : float, optional
        Scan step; defaults to the scenario search step or 10 s.

    min_elev_deg : float, optional
        Elevation threshold; defaults to the scenario minimum elevation.

    start_s : float, optional
        Scan start; defaults to the scenario search start or 0 s.

    Returns
    -------
    passes : pandas.DataFrame
        Output of `geometry.find_passes` for each node with a leading
        node column.
    """
    if step_s is None:
        step_s = s.epoch.search_step_s or DEFAULT_SEARCH['search_step_s']
    if min_elev_deg is None:
        min_elev_deg = s.link.min_elevation_deg
    if start_s is None:
        start_s = s.epoch.search_start_s or DEFAULT_SEARCH['search_start_s']
    if not window_s > 0:
        raise ValueError('window_s must be positive')

    frames = []
    for name, node in s.nodes.items():
        if node.is_satellite:
            continue
        passes = geometry.find_passes(s.constellation, node.position,
                                      window_s, step_s, min_elev_deg, start_s)
        passes.insert(0, 'node', name)
        frames.append(passes)
    return pd.concat(frames, ignore_index=True)
