"""Circular-orbit constellation geometry and ground visibility."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

EARTH_RADIUS_KM = 6371.0
MU_EARTH_KM3_S2 = 398600.4418
SIDEREAL_DAY_S = 86164.0905
EARTH_ROTATION_DEG_S = 360.0 / SIDEREAL_DAY_S


class VisibilityError(ValueError):
    """No epoch in the search window satisfies the visibility constraint."""


@dataclass(frozen=True)
class ConstellationSpec:
    """
    Shell of circular orbits with evenly spaced planes and slots.

    Parameters
    ----------
    altitude_km : float
        Orbit altitude above the spherical Earth.

    planes : int
        Number of orbital planes.

    sats_per_plane : int
        Number of satellites in each plane.

    inclination_deg : float
        Orbit inclination, between 0 and 180 degrees.

    raan_spread_deg : float
        Total right ascension span across planes. Plane k has RAAN
        ``k * raan_spread_deg / planes``; 180 gives a star pattern.

    phase_offset_deg : float, optional
        Anomaly stagger between adjacent planes. Defaults to
        ``360 / (planes * sats_per_plane)``.

    epoch_s : float
        Time origin; satellite phases and Earth rotation are measured
        from this instant.
    """

    altitude_km: float = 780.0
    planes: int = 6
    sats_per_plane: int = 11
    inclination_deg: float = 86.4
    raan_spread_deg: float = 180.0
    phase_offset_deg: float | None = None
    epoch_s: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.altitude_km) or self.altitude_km <= 0:
            raise ValueError('constellation.altitude_km: altitude must be positive')
        if self.planes < 1:
            raise ValueError('constellation.planes: must be at least 1')
        if self.sats_per_plane < 1:
            raise ValueError('constellation.sats_per_plane: must be at least 1')
        if not 0 <= self.inclination_deg <= 180:
            raise ValueError(
                'constellation.inclination_deg: must be between 0 and 180'
            )
        if not math.isfinite(self.raan_spread_deg):
            raise ValueError('constellation.raan_spread_deg: must be finite')
        if not math.isfinite(self.epoch_s):
            raise ValueError('constellation.epoch_s: must be finite')
        if self.phase_offset_deg is None:
            default = 360.0 / (self.planes * self.sats_per_plane)
            object.__setattr__(self, 'phase_offset_deg', default)
        elif not math.isfinite(self.phase_offset_deg):
            raise ValueError('constellation.phase_offset_deg: must be finite')

    @property
    def n_sats(self):
        return self.planes * self.sats_per_plane

    @property
    def radius_km(self):
        return EARTH_RADIUS_KM + self.altitude_km

    @property
    def mean_motion_deg_s(self):
        """Angular rate from Kepler's third law."""
        return math.degrees(math.sqrt(MU_EARTH_KM3_S2 / self.radius_km ** 3))

    @property
    def period_s(self):
        return orbital_period_s(self)


@dataclass(frozen=True)
class GeodeticPosition:
    """Spherical-Earth latitude, longitude and altitude."""

    lat_deg: float
    lon_deg: float
    alt_km: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.lat_deg) or abs(self.lat_deg) > 90:
            raise ValueError(f'latitude {self.lat_deg} outside [-90, 90]')
        if not math.isfinite(self.lon_deg) or abs(self.lon_deg) > 180:
            raise ValueError(f'longitude {self.lon_deg} outside [-180, 180]')
        if not math.isfinite(self.alt_km) or self.alt_km < 0:
            raise ValueError(f'altitude {self.alt_km} km must be non-negative')


@dataclass(frozen=True)
class PassGeometry:
    """Observer geometry toward one satellite at one epoch."""

    satellite_id: int
    epoch_s: float
    elevation_deg: float
    slant_range_km: float


def orbital_period_s(spec):
    """Orbital period of the shell, 2*pi*sqrt(a**3 / mu)."""
    return 2 * math.pi * math.sqrt(spec.radius_km ** 3 / MU_EARTH_KM3_S2)


def geodetic_to_cartesian(pos):
    """
    Convert a geodetic position to Earth-fixed Cartesian coordinates.

    Parameters
    ----------
    pos : GeodeticPosition
        Position on or above the spherical Earth.

    Returns
    -------
    xyz : numpy.ndarray
        Earth-centered Earth-fixed coordinates in km, shape (3,).
    """
    lat = math.radians(pos.lat_deg)
    lon = math.radians(pos.lon_deg)
    r = EARTH_RADIUS_KM + pos.alt_km
    return np.array([r * math.cos(lat) * math.cos(lon),
                     r * math.cos(lat) * math.sin(lon),
                     r * math.sin(lat)])


def cartesian_to_geodetic(xyz):
    """Convert Earth-fixed coordinates to a spherical geodetic position."""
    x, y, z = (float(v) for v in xyz)
    r = math.sqrt(x * x + y * y + z * z)
    if r < EARTH_RADIUS_KM * (1 - 1e-12):
        raise ValueError(f'position radius {r} km is below the Earth surface')
    lat = math.degrees(math.atan2(z, math.hypot(x, y)))
    lon = math.degrees(math.atan2(y, x))
    return GeodeticPosition(lat, lon, max(r - EARTH_RADIUS_KM, 0.0))


def sub_satellite_point(xyz):
    """Latitude and longitude directly beneath a satellite."""
    pos = cartesian_to_geodetic(xyz)
    return pos.lat_deg, pos.lon_deg


def satellite_positions(spec, times, frame='ecef'):
    """
    Positions of every satellite at a set of epochs.

    Parameters
    ----------
    spec : ConstellationSpec
        Constellation definition.

    times : array-like
        Epochs in seconds.

    frame : {'ecef', 'eci'}
        Earth-fixed (default) or inertial frame. The frames coincide at
        the constellation epoch.

    Returns
    -------
    xyz : numpy.ndarray
        Array of shape (n_times, n_sats, 3) in km. Satellite id
        ``k * sats_per_plane + j`` is slot j of plane k.
    """
    if frame not in ('ecef', 'eci'):
        raise ValueError(f'Invalid frame: {frame}')
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if not np.all(np.isfinite(times)):
        raise ValueError('epochs must be finite')
    dt = times - spec.epoch_s

    plane = np.repeat(np.arange(spec.planes), spec.sats_per_plane)
    slot = np.tile(np.arange(spec.sats_per_plane), spec.planes)
    raan = np.radians(plane * spec.raan_spread_deg / spec.planes)
    phase0 = slot * 360.0 / spec.sats_per_plane + plane * spec.phase_offset_deg
    u = np.radians(phase0[None, :] + spec.mean_motion_deg_s * dt[:, None])

    inc = math.radians(spec.inclination_deg)
    cos_u = np.cos(u)
    sin_u = np.sin(u)
    cos_raan = np.cos(raan)[None, :]
    sin_raan = np.sin(raan)[None, :]
    r = spec.radius_km
    x = r * (cos_raan * cos_u - sin_raan * sin_u * math.cos(inc))
    y = r * (sin_raan * cos_u + cos_raan * sin_u * math.cos(inc))
    z = r * sin_u * math.sin(inc)

    if frame == 'ecef':
        theta = np.radians(EARTH_ROTATION_DEG_S * dt)[:, None]
        x, y = (x * np.cos(theta) + y * np.sin(theta),
                -x * np.sin(theta) + y * np.cos(theta))
    return np.stack([x, y, z], axis=-1)


def propagate(spec, t, frame='ecef'):
    """
    Satellite states at one epoch.

    Parameters
    ----------
    spec : ConstellationSpec
        Constellation definition.

    t : float
        Epoch in seconds.

    frame : {'ecef', 'eci'}
        Coordinate frame of the returned positions.

    Returns
    -------
    states : pandas.DataFrame
        One row per satellite, indexed by satellite id, with fields:

        plane : int
            Orbital plane index.

        slot : int
            Slot index within the plane.

        x_km, y_km, z_km : float
            Position in the requested frame.
    """
    xyz = satellite_positions(spec, [t], frame)[0]
    states = pd.DataFrame({
        'plane': np.repeat(np.arange(spec.planes), spec.sats_per_plane),
        'slot': np.tile(np.arange(spec.sats_per_plane), spec.planes),
        'x_km': xyz[:, 0],
        'y_km': xyz[:, 1],
        'z_km': xyz[:, 2],
    })
    states.index.name = 'satellite'
    return states


def elevation_and_range(observer, sat):
    """
    Elevation angle and slant range from an observer to satellites.

    Parameters
    ----------
    observer : GeodeticPosition
        Observer location.

    sat : array-like
        Satellite position(s) in the Earth-fixed frame, shape (..., 3).

    Returns
    -------
    elevation_deg : float or numpy.ndarray
        Angle between the local horizon plane and the line of sight.
        Negative below the horizon.

    slant_range_km : float or numpy.ndarray
        Euclidean distance to the satellite.
    """
    obs = geodetic_to_cartesian(observer)
    up = obs / np.linalg.norm(obs)
    rho = np.asarray(sat, dtype=float) - obs
    dist = np.linalg.norm(rho, axis=-1)
    with np.errstate(divide='ignore', invalid='ignore'):
        sin_el = np.clip(rho @ up / dist, -1.0, 1.0)
    elevation = np.degrees(np.arcsin(sin_el))
    if elevation.ndim == 0:
        return float(elevation), float(dist)
    return elevation, dist


def _pass_grid(spec, observers, times):
    """Elevation and range arrays of shape (n_obs, n_times, n_sats)."""
    xyz = satellite_positions(spec, times)
    elev = []
    dist = []
    for obs in observers:
        e, d = elevation_and_range(obs, xyz)
        elev.append(e)
        dist.append(d)
    return np.array(elev), np.array(dist)


def _best_on_grid(spec, observers, times, min_elev_deg):
    elev, dist = _pass_grid(spec, observers, times)
    worst = elev.min(axis=0)
    score = np.where(worst >= min_elev_deg, worst, -np.inf)
    if not np.isfinite(score).any():
        return None
    # first maximum in (epoch, satellite) order gives the tie-break
    i, j = np.unravel_index(np.argmax(score), score.shape)
    return times[i], j, elev[:, i, j], dist[:, i, j]


def _epoch_grid(start_s, stop_s, step_s):
    n = int(math.floor((stop_s - start_s) / step_s + 1e-9)) + 1
    return start_s + step_s * np.arange(n)


def best_pass(spec, observers, window_s, step_s=10.0, min_elev_deg=10.0,
              start_s=0.0, refine_step_s=1.0):
    """
    Find the epoch where one satellite is best seen by all observers.

    The window is scanned at `step_s`, then the region within one step
    of the coarse optimum is scanned again at `refine_step_s`. The
    selected epoch and satellite maximize the lowest elevation among
    the observers, with every observer above `min_elev_deg`. Ties go to
    the earlier epoch, then the lower satellite id.

    Parameters
    ----------
    spec : ConstellationSpec
        Constellation definition.

    observers : sequence of GeodeticPosition
        One or more observers that must share the satellite.

    window_s : float
        Length of the search window.

    step_s : float, optional
        Coarse scan step.

    min_elev_deg : float, optional
        Minimum elevation every observer must see.

    start_s : float, optional
        Start of the search window.

    refine_step_s : float, optional
        Step of the refinement scan.

    Returns
    -------
    passes : list of PassGeometry
        Geometry for each observer, in the order given.

    Raises
    ------
    VisibilityError
        If no epoch in the window satisfies the constraint.
    """
    if isinstance(observers, GeodeticPosition):
        observers = [observers]
    observers = list(observers)
    if not observers:
        raise ValueError('at least one observer is required')
    if not window_s > 0:
        raise ValueError('window_s must be positive')
    if not step_s > 0 or not refine_step_s > 0:
        raise ValueError('step_s must be positive')

    stop_s = start_s + window_s
    times = _epoch_grid(start_s, stop_s, step_s)
    logger.debug('scanning %d epochs for %d observers', len(times),
                 len(observers))
    coarse = _best_on_grid(spec, observers, times, min_elev_deg)
    if coarse is None:
        raise VisibilityError(
            f'no common visibility: no satellite is above {min_elev_deg:g} deg '
            f'for all {len(observers)} observers within {window_s:g} s '
            f'starting at {start_s:g} s'
        )

    t0 = coarse[0]
    lo = max(start_s, t0 - step_s)
    hi = min(stop_s, t0 + step_s)
    fine = _best_on_grid(spec, observers, _epoch_grid(lo, hi, refine_step_s),
                         min_elev_deg)
    best = coarse
    if fine is not None and fine[2].min() > coarse[2].min():
        best = fine
    epoch, sat_id, elev, dist = best
    return [PassGeometry(int(sat_id), float(epoch), float(e), float(d))
            for e, d in zip(elev, dist)]


def geometry_at(spec, observers, epoch_s, min_elev_deg=10.0):
    """Best shared satellite at a fixed epoch."""
    observers = list(observers)
    found = _best_on_grid(spec, observers, np.array([float(epoch_s)]),
                          min_elev_deg)
    if found is None:
        raise VisibilityError(
            f'no common visibility: no satellite is above {min_elev_deg:g} deg '
            f'for all {len(observers)} observers at epoch {epoch_s:g} s'
        )
    epoch, sat_id, elev, dist = found
    return [PassGeometry(int(sat_id), float(epoch), float(e), float(d))
            for e, d in zip(elev, dist)]


def find_passes(spec, observer, window_s, step_s=10.0, min_elev_deg=10.0,
                start_s=0.0):
    """
    List visibility passes of every satellite over one observer.

    Parameters
    ----------
    spec : ConstellationSpec
        Constellation definition.

    observer : GeodeticPosition
        Observer location.

    window_s : float
        Length of the scan window.

    step_s : float, optional
        Sampling step. Pass boundaries are resolved to this step.

    min_elev_deg : float, optional
        Elevation above which the satellite counts as visible.

    start_s : float, optional
        Start of the scan window.

    Returns
    -------
    passes : pandas.DataFrame
        One row per contiguous run of visible samples, sorted by start
        time and satellite, with fields satellite, start_s, end_s,
        duration_s, max_elevation_epoch_s, max_elevation_deg and
        min_range_km. Duration counts samples times the step.
    """
    if not window_s > 0:
        raise ValueError('window_s must be positive')
    if not step_s > 0:
        raise ValueError('step_s must be positive')
    times = _epoch_grid(start_s, start_s + window_s, step_s)
    elev, dist = _pass_grid(spec, [observer], times)
    elev = elev[0]
    dist = dist[0]
    visible = elev >= min_elev_deg

    rows = []
    for sat in range(spec.n_sats):
        edges = np.diff(np.concatenate([[0], visible[:, sat].astype(int), [0]]))
        starts = np.flatnonzero(edges == 1)
        stops = np.flatnonzero(edges == -1)
        for a, b in zip(starts, stops):
            peak = a + int(np.argmax(elev[a:b, sat]))
            rows.append({
                'satellite': sat,
                'start_s': times[a],
                'end_s': times[b - 1],
                'duration_s': (b - a) * step_s,
                'max_elevation_epoch_s': times[peak],
                'max_elevation_deg': elev[peak, sat],
                'min_range_km': dist[a:b, sat].min(),
            })
    columns = ['satellite', 'start_s', 'end_s', 'duration_s',
               'max_elevation_epoch_s', 'max_elevation_deg', 'min_range_km']
    passes = pd.DataFrame(rows, columns=columns)
    passes = passes.sort_values(['start_s', 'satellite'], ignore_index=True)
    return passes
