"""Test the shipped reference scenarios against published levels."""

import pytest

from fdsat import scenario
from fdsat import usecases

# (FDD, FD) spectral efficiency at 70 dB SIC, gain at 70 dB and the
# change of gain from 70 to 80 dB SIC
PUBLISHED = {
    'fu_ud': (6.43, 10.74, 67.0, 15.0),
    'uu_fd': (7.21, 11.26, 56.0, 24.0),
    'satl': (3.26, 5.52, 70.0, 0.0),
}
SE_TOLERANCE = 1.0
GAIN_TOLERANCE = 10.0
DELTA_TOLERANCE = 7.0


@pytest.fixture(scope='module', params=sorted(PUBLISHED))
def case(request):
    s = scenario.load_scenario(usecases.reference_scenario_text(request.param))
    resolved = scenario.resolve_geometry(s)
    return request.param, s, resolved


def test_spectral_efficiency_levels(case):
    name, s, resolved = case
    fdd, fd, _, _ = PUBLISHED[name]
    result = scenario.assess(s, resolved=resolved)
    cmp = result.comparison
    assert cmp.se_fdd_bps_hz == pytest.approx(fdd, abs=SE_TOLERANCE)
    assert cmp.se_fd_bps_hz == pytest.approx(fd, abs=SE_TOLERANCE)


def test_feeder_uplink_gain():
    s = scenario.load_scenario(usecases.reference_scenario_text('fu_ud'))
    gain = PUBLISHED['fu_ud'][2]
    result = scenario.assess(s)
    assert result.comparison.gain_percent == pytest.approx(
        gain, abs=GAIN_TOLERANCE
    )
    # the undisturbed user downlink alone beats the FDD baseline
    assert result.sic_breakeven_db == 0.0


def test_gain_change_70_to_80(case):
    name, s, resolved = case
    delta = PUBLISHED[name][3]
    (_, at70), (_, at80) = scenario.sweep_sic(s, [70.0, 80.0], resolved=resolved)
    change = at80.gain_percent - at70.gain_percent
    assert change == pytest.approx(delta, abs=DELTA_TOLERANCE)


def test_assumptions_reported(case):
    _, s, resolved = case
    result = scenario.assess(s, resolved=resolved)
    assert result.assumptions
    assert 'link.epoch_s' in result.assumptions
    assert any('additional_loss_db' in note for note in s.notes)


def test_geometry_reused(case):
    _, s, resolved = case
    results = scenario.sweep_sic(s, [50.0, 90.0], resolved=resolved)
    a, b = (cmp for _, cmp in results)
    assert a.fd_rx.distance_km == b.fd_rx.distance_km
    assert a.remote_rx.distance_km == b.remote_rx.distance_km

