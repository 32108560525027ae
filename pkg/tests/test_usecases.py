"""Test the use case catalog."""

import pytest

from fdsat import usecases
from fdsat.usecases import PriorityTier


def test_catalog_size():
    entries = usecases.catalog()
    assert len(entries) == 8
    assert len({uc.id for uc in entries}) == 8
    assert usecases.ids() == (
        'UL', 'FL', 'CTRL', 'FU-UD', 'UU-FD', 'ISL-SO', 'ISL-ML', 'SATL'
    )


def test_entries_complete():
    for uc in usecases.catalog():
        assert len(uc.bands) >= 1
        assert len(uc.advantages) >= 1
        assert uc.name
        assert uc.application


def test_user_link():
    uc = usecases.get('UL')
    assert uc.bands == ('Ku', 'Ka')
    assert 'satellite-aided M2M and D2D' in uc.application


def test_multi_layer_advantages():
    uc = usecases.get('ISL-ML')
    assert any(a.startswith('Doubling the spectrum') for a in uc.advantages)
    assert any('latency by up to 50%' in a for a in uc.advantages)


def test_priority():
    expected = {
        'ISL-SO': PriorityTier.MOST_PROMISING,
        'ISL-ML': PriorityTier.MOST_PROMISING,
        'FL': PriorityTier.PROMISING,
        'UL': PriorityTier.PROMISING,
        'SATL': PriorityTier.LESS_PROMISING,
        'CTRL': PriorityTier.LESS_PROMISING,
        'FU-UD': PriorityTier.LESS_PROMISING,
        'UU-FD': PriorityTier.LESS_PROMISING,
    }
    assert {i: usecases.priority(i) for i in usecases.ids()} == expected


def test_unknown_id():
    with pytest.raises(KeyError, match='valid ids'):
        usecases.priority('XX')


def test_catalog_table():
    table = usecases.catalog_table()
    assert table.shape == (8, 5)
    assert table.loc['SATL', 'bands'] == 'K'
    one = usecases.catalog_table('ISL-SO')
    assert one.index.to_list() == ['ISL-SO']


def test_default_scenario_feeder_uplink():
    template = usecases.default_scenario('FU-UD')
    assert template.parameters_specified
    s = template.scenario
    assert s.nodes['gateway'].eirp_dbw == 43.0
    assert s.nodes['satellite'].eirp_dbw == 65.0
    assert s.nodes['satellite'].g_over_t_dbk == 31.5
    assert s.link.carrier_ghz == 37.5
    assert s.link.fd_node == 'satellite'


def test_default_scenario_unspecified():
    template = usecases.default_scenario('ISL-SO')
    assert not template.parameters_specified
    assert template.scenario is None
    assert template.note


def test_default_scenario_satl():
    s = usecases.default_scenario('SATL').scenario
    assert s.nodes[s.link.fd_node].isolation_db == 25.0
    assert s.nodes['haps'].position.alt_km == 20.0
    assert s.link.carrier_ghz == 22.5


@pytest.mark.parametrize('use_case_id', ['FU-UD', 'UU-FD', 'SATL'])
def test_reference_scenarios_valid(use_case_id):
    template = usecases.default_scenario(use_case_id)
    assert template.scenario.use_case_id == use_case_id


def test_reference_scenario_text():
    assert 'use_case = "FU-UD"' in usecases.reference_scenario_text('fu_ud')
    with pytest.raises(KeyError):
        usecases.reference_scenario_text('isl')
