"""Test constellation propagation and visibility."""

import math

import numpy as np
import pytest

from fdsat import geometry


@pytest.fixture()
def spec():
    return geometry.ConstellationSpec(altitude_km=780, planes=6,
                                      sats_per_plane=11)


@pytest.fixture()
def luxembourg():
    return geometry.GeodeticPosition(49.6266, 6.15898)


@pytest.fixture()
def vigo():
    return geometry.GeodeticPosition(42.16951, -8.68318)


def slant_range(altitude_km, elevation_deg):
    r = geometry.EARTH_RADIUS_KM
    eps = math.radians(elevation_deg)
    return (math.sqrt((r + altitude_km) ** 2 - (r * math.cos(eps)) ** 2)
            - r * math.sin(eps))


def test_default_phase_offset(spec):
    assert spec.phase_offset_deg == pytest.approx(360 / 66)
    assert spec.n_sats == 66


def test_invalid_constellation():
    with pytest.raises(ValueError, match='altitude must be positive'):
        geometry.ConstellationSpec(altitude_km=0)
    with pytest.raises(ValueError, match='planes'):
        geometry.ConstellationSpec(planes=0)


def test_orbital_period(spec):
    assert geometry.orbital_period_s(spec) == pytest.approx(6018.2, abs=0.5)
    assert spec.period_s == geometry.orbital_period_s(spec)


def test_geodetic_round_trip():
    rng = np.random.default_rng(42)
    lat = rng.uniform(-89, 89, 100)
    lon = rng.uniform(-179, 179, 100)
    alt = rng.uniform(0, 2000, 100)
    for a, b, c in zip(lat, lon, alt):
        pos = geometry.GeodeticPosition(a, b, c)
        back = geometry.cartesian_to_geodetic(geometry.geodetic_to_cartesian(pos))
        assert back.lat_deg == pytest.approx(a, abs=1e-9)
        assert back.lon_deg == pytest.approx(b, abs=1e-9)
        assert back.alt_km == pytest.approx(c, abs=1e-9)


def test_invalid_position():
    with pytest.raises(ValueError):
        geometry.GeodeticPosition(91, 0)
    with pytest.raises(ValueError):
        geometry.GeodeticPosition(0, 181)


def test_radius_conserved(spec):
    times = np.arange(0, math.ceil(spec.period_s) + 1, 1.0)
    xyz = geometry.satellite_positions(spec, times)
    radius = np.linalg.norm(xyz, axis=-1)
    np.testing.assert_allclose(radius, spec.radius_km, rtol=0, atol=1e-9)


def test_frames_coincide_at_epoch(spec):
    ecef = geometry.satellite_positions(spec, [spec.epoch_s], 'ecef')
    eci = geometry.satellite_positions(spec, [spec.epoch_s], 'eci')
    np.testing.assert_allclose(ecef, eci)
    with pytest.raises(ValueError):
        geometry.satellite_positions(spec, [0.0], 'lla')


def test_inertial_positions_periodic(spec):
    times = np.arange(0.0, 600.0, 7.0)
    now = geometry.satellite_positions(spec, times, 'eci')
    later = geometry.satellite_positions(spec, times + spec.period_s, 'eci')
    np.testing.assert_allclose(later, now, rtol=0, atol=1e-6)


def test_propagate_layout(spec):
    states = geometry.propagate(spec, 100.0)
    assert states.shape == (66, 5)
    assert states.index.name == 'satellite'
    assert states.loc[12, 'plane'] == 1
    assert states.loc[12, 'slot'] == 1
    np.testing.assert_allclose(
        np.linalg.norm(states[['x_km', 'y_km', 'z_km']].to_numpy(), axis=1),
        spec.radius_km,
    )


def test_sub_satellite_point(spec):
    states = geometry.propagate(spec, 0.0, frame='eci')
    # slot 0 of plane 0 starts at the ascending node
    lat, lon = geometry.sub_satellite_point(states.loc[0, ['x_km', 'y_km', 'z_km']])
    assert lat == pytest.approx(0, abs=1e-9)
    assert lon == pytest.approx(0, abs=1e-9)


def test_overhead_elevation():
    obs = geometry.GeodeticPosition(0, 0)
    sat = np.array([geometry.EARTH_RADIUS_KM + 780, 0, 0])
    elev, dist = geometry.elevation_and_range(obs, sat)
    assert elev == pytest.approx(90)
    assert dist == pytest.approx(780)


def test_antipode_elevation():
    obs = geometry.GeodeticPosition(0, 0)
    sat = np.array([-(geometry.EARTH_RADIUS_KM + 780), 0, 0])
    elev, dist = geometry.elevation_and_range(obs, sat)
    assert elev == pytest.approx(-90)
    assert dist == pytest.approx(2 * geometry.EARTH_RADIUS_KM + 780)


@pytest.mark.parametrize('altitude_km', [400, 780, 1200])
def test_slant_range_closed_form(altitude_km):
    obs = geometry.GeodeticPosition(0, 0)
    r = geometry.EARTH_RADIUS_KM
    for eps in np.linspace(0, 90, 91):
        nadir = math.asin(r * math.cos(math.radians(eps)) / (r + altitude_km))
        central = math.pi / 2 - math.radians(eps) - nadir
        sat = (r + altitude_km) * np.array([math.cos(central), 0,
                                            math.sin(central)])
        elev, dist = geometry.elevation_and_range(obs, sat)
        assert dist == pytest.approx(slant_range(altitude_km, eps), abs=1e-9)
        assert elev == pytest.approx(eps, abs=1e-5)


def test_slant_range_reference():
    assert slant_range(780, 10) == pytest.approx(2324.6, abs=0.5)


def brute_force_best(spec, observers, times, min_elev):
    best = -np.inf
    for chunk in np.array_split(times, max(1, len(times) // 1000)):
        xyz = geometry.satellite_positions(spec, chunk)
        elev = np.min([geometry.elevation_and_range(o, xyz)[0]
                       for o in observers], axis=0)
        elev = np.where(elev >= min_elev, elev, -np.inf)
        best = max(best, elev.max())
    return best


def test_best_pass_matches_brute_force(spec, luxembourg, vigo):
    window = 6000.0
    passes = geometry.best_pass(spec, [luxembourg, vigo], window)
    assert len(passes) == 2
    assert passes[0].satellite_id == passes[1].satellite_id
    assert passes[0].epoch_s == passes[1].epoch_s
    worst = min(p.elevation_deg for p in passes)
    assert worst >= 10

    oracle = brute_force_best(spec, [luxembourg, vigo],
                              np.arange(0, window + 1, 1.0), 10)
    assert worst <= oracle + 1e-9
    assert worst >= oracle - 2


def test_best_pass_observer_order(spec, luxembourg, vigo):
    forward = geometry.best_pass(spec, [luxembourg, vigo], 6000.0)
    reverse = geometry.best_pass(spec, [vigo, luxembourg], 6000.0)
    assert reverse == forward[::-1]


def test_best_pass_geometry_consistent(spec, luxembourg):
    (found,) = geometry.best_pass(spec, [luxembourg], 3600.0)
    xyz = geometry.satellite_positions(spec, [found.epoch_s])[0, found.satellite_id]
    elev, dist = geometry.elevation_and_range(luxembourg, xyz)
    assert elev == pytest.approx(found.elevation_deg)
    assert dist == pytest.approx(found.slant_range_km)


def test_no_common_visibility(spec, luxembourg, vigo):
    with pytest.raises(geometry.VisibilityError, match='no common visibility'):
        geometry.best_pass(spec, [luxembourg, vigo], 3600.0, min_elev_deg=89.9)


def test_geometry_at_fixed_epoch(spec, luxembourg):
    passes = geometry.geometry_at(spec, [luxembourg], 0.0, min_elev_deg=-90)
    assert passes[0].epoch_s == 0.0
    with pytest.raises(geometry.VisibilityError):
        geometry.geometry_at(spec, [luxembourg], 0.0, min_elev_deg=90)


def test_find_passes(spec, luxembourg):
    passes = geometry.find_passes(spec, luxembourg, 86400.0)
    assert not passes.empty
    assert (passes['max_elevation_deg'] >= 10).all()
    assert (passes['end_s'] >= passes['start_s']).all()
    assert passes['start_s'].is_monotonic_increasing
    high = geometry.find_passes(spec, luxembourg, 86400.0, min_elev_deg=80)
    assert high['duration_s'].sum() < passes['duration_s'].sum()


def test_find_passes_invalid_window(spec, luxembourg):
    with pytest.raises(ValueError, match='window_s'):
        geometry.find_passes(spec, luxembourg, 0.0)
