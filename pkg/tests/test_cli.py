"""Test the command-line interface."""

import json
from pathlib import Path

import pytest

import fdsat
from fdsat import cli
from fdsat import usecases

DATA = Path(__file__).parent / 'data'


@pytest.fixture()
def fu_ud(tmp_path):
    path = tmp_path / 'fu_ud.toml'
    path.write_text(usecases.reference_scenario_text('fu_ud'))
    return path


@pytest.fixture()
def hidden(tmp_path):
    text = usecases.reference_scenario_text('fu_ud').replace(
        'min_elevation_deg = 10.0', 'min_elevation_deg = 89.9'
    )
    path = tmp_path / 'hidden.toml'
    path.write_text(text)
    return path


def test_catalog(capsys):
    assert cli.main(['catalog']) == 0
    out = capsys.readouterr().out
    for use_case_id in usecases.ids():
        assert use_case_id in out


def test_catalog_entry(capsys):
    assert cli.main(['catalog', 'ISL-SO']) == 0
    assert 'Relaying, data offloading' in capsys.readouterr().out


def test_catalog_json_golden(capsys):
    assert cli.main(['catalog', '--json']) == 0
    expected = (DATA / 'catalog.json').read_text()
    assert capsys.readouterr().out == expected


def test_catalog_unknown(capsys):
    assert cli.main(['catalog', 'XX']) == 1
    assert 'ISL-SO' in capsys.readouterr().err


def test_assess_table(fu_ud, capsys):
    assert cli.main(['assess', '--scenario', str(fu_ud)]) == 0
    out = capsys.readouterr().out
    assert 'SE FDD (bps/Hz)' in out
    assert 'gain (%)' in out


def test_assess_json(fu_ud, tmp_path):
    out = tmp_path / 'report.json'
    args = ['assess', '--scenario', str(fu_ud), '--format', 'json',
            '--out', str(out)]
    assert cli.main(args) == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {'scenario', 'result', 'assumptions', 'version'}
    assert doc['version'] == fdsat.__version__
    first = out.read_bytes()
    assert cli.main(args) == 0
    assert out.read_bytes() == first


def test_assess_sic_echoed(tmp_path):
    path = tmp_path / 'fu_ud.toml'
    text = usecases.reference_scenario_text('fu_ud')
    path.write_text(text.replace('sic_db = 70.0\n', ''))
    out = tmp_path / 'report.json'
    assert cli.main(['assess', '--scenario', str(path), '--sic', '80',
                     '--format', 'json', '--out', str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc['result']['sic_db'] == 80.0
    assert doc['scenario']['duplex']['sic_db'] == doc['result']['sic_db']
    assert 'duplex.sic_db' not in doc['assumptions']['defaults']
    assert doc['assumptions']['overrides'] == {
        'duplex.sic_db': 'overridden to 80 from the command line'
    }


def test_assess_csv(fu_ud, capsys):
    assert cli.main(['assess', '--scenario', str(fu_ud), '--sic', '80',
                     '--format', 'csv']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert lines[1].startswith('80.000000,')


def test_assess_missing_file(tmp_path, capsys):
    path = tmp_path / 'missing.toml'
    assert cli.main(['assess', '--scenario', str(path)]) == 2
    assert str(path) in capsys.readouterr().err


def test_assess_invalid(tmp_path, capsys):
    path = tmp_path / 'bad.toml'
    path.write_text('use_case = "FU-UD"\n[env]\nbandwidth_hz = 0\n')
    assert cli.main(['assess', '--scenario', str(path)]) == 1
    assert 'nodes' in capsys.readouterr().err


def test_assess_no_visibility(hidden, capsys):
    assert cli.main(['assess', '--scenario', str(hidden)]) == 3
    assert 'no common visibility' in capsys.readouterr().err


def test_sweep_files(fu_ud, tmp_path):
    csv = tmp_path / 'sweep.csv'
    svg = tmp_path / 'sweep.svg'
    args = ['sweep', '--scenario', str(fu_ud), '--sic-range', '50:110:5',
            '--csv', str(csv), '--svg', str(svg)]
    assert cli.main(args) == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == 'sic_db,se_fdd_bps_hz,se_fd_bps_hz,gain_percent,residual_si_dbw'
    assert len(lines) == 14
    first = (csv.read_bytes(), svg.read_bytes())
    assert cli.main(args) == 0
    assert (csv.read_bytes(), svg.read_bytes()) == first
    assert svg.read_text().count('<polyline') == 1


def test_sweep_stdout(fu_ud, capsys):
    assert cli.main(['sweep', '--scenario', str(fu_ud),
                     '--sic-range', '70:80:10']) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3


def test_sweep_bad_range(fu_ud):
    assert cli.main(['sweep', '--scenario', str(fu_ud),
                     '--sic-range', '70:50']) == 1


def test_sweep_bad_threads(fu_ud, monkeypatch):
    monkeypatch.setenv('FDSAT_THREADS', 'lots')
    assert cli.main(['sweep', '--scenario', str(fu_ud),
                     '--sic-range', '70:80:10']) == 1


def test_visibility(fu_ud, capsys):
    assert cli.main(['visibility', '--scenario', str(fu_ud),
                     '--window-s', '6000']) == 0
    out = capsys.readouterr().out
    assert 'gateway' in out
    assert 'terminal' in out


def test_visibility_zero_window(fu_ud):
    assert cli.main(['visibility', '--scenario', str(fu_ud),
                     '--window-s', '0']) == 1


def test_usage_error(capsys):
    assert cli.main(['assess']) == 1
    assert cli.main(['frobnicate']) == 1


def test_version(capsys):
    assert cli.main(['--version']) == 0
    assert fdsat.__version__ in capsys.readouterr().out
