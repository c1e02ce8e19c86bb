import mock
import pytest

from skcf import arith, helpers
from skcf.arith import Scalar
from skcf.state import parse_ket, pencil_of_state

from . import W, temporary_file

CONFIG = """
[app:main]
skcf.tol = 1e-7
skcf.mode = all_triples
other.option = ignored
"""


@mock.patch.dict(helpers.config, clear=True)
def test_load_config_keeps_skcf_options():
    with temporary_file(CONFIG, suffix='.ini') as path:
        helpers.load_config(path)
    assert {'skcf.tol': '1e-7', 'skcf.mode': 'all_triples'} == helpers.config


def test_load_config_missing_file():
    with pytest.raises(ValueError):
        helpers.load_config('/does/not/exist.ini')


@mock.patch.dict(helpers.config, clear=True)
@mock.patch.dict('os.environ', clear=True)
def test_default_tol_is_built_in():
    assert arith.DEFAULT_TOL == helpers.default_tol()


@mock.patch.dict(helpers.config, {'skcf.tol': '1e-7'}, clear=True)
@mock.patch.dict('os.environ', clear=True)
def test_default_tol_from_config():
    assert 1e-7 == helpers.default_tol()


@mock.patch.dict(helpers.config, {'skcf.tol': '1e-7'}, clear=True)
@mock.patch.dict('os.environ', {'SKCF_TOL': '1e-5'}, clear=True)
def test_default_tol_environment_wins():
    assert 1e-5 == helpers.default_tol()


@pytest.mark.parametrize('value', ['-1', 'abc', '0'])
def test_default_tol_rejects_bad_values(value):
    with mock.patch.dict('os.environ', {'SKCF_TOL': value}):
        with pytest.raises(ValueError) as e:
            helpers.default_tol()
    assert "Configuration option 'SKCF_TOL'" in str(e.value)


@mock.patch.dict(helpers.config, {'skcf.mode': 'all_triples'}, clear=True)
def test_default_mode_from_config():
    assert 'all-triples' == helpers.default_mode()


@mock.patch.dict(helpers.config, {'skcf.mode': 'greedy', 'skcf.format': 'yaml'}, clear=True)
def test_bad_configured_mode_and_format():
    with pytest.raises(ValueError):
        helpers.default_mode()
    with pytest.raises(ValueError):
        helpers.default_format()


@mock.patch.dict(helpers.config, clear=True)
def test_defaults():
    assert 'restricted' == helpers.default_mode()
    assert 'json' == helpers.default_format()


@pytest.mark.parametrize('mu, lam, expected', [
    (Scalar(1), Scalar(1), 'λ+μ'),
    (Scalar(2), Scalar(-1), '-λ+2μ'),
    (Scalar(0), Scalar(0), '·'),
    (Scalar(-1), Scalar(0), '-μ'),
    (Scalar(0), Scalar(1, 1), '(1+i)λ'),
])
def test_linear_form(mu, lam, expected):
    assert expected == helpers.linear_form(mu, lam)


def test_render_pencil():
    assert 'λ  μ\n·  λ' == helpers.render_pencil(pencil_of_state(parse_ket(W)))
    assert 'W\nλ  μ\n·  λ' == helpers.render_pencil(pencil_of_state(parse_ket(W)), title='W')
