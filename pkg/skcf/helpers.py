"""Configuration access and display helpers for skcf
"""
import logging
import os
from configparser import ConfigParser
from typing import Dict, Optional

from . import arith
from .arith import Scalar
from .exc import Invalid
from .state import Pencil
from .validators import valid_mode, valid_tol

log = logging.getLogger(__name__)

TOL_CONF_KEY = 'skcf.tol'
MODE_CONF_KEY = 'skcf.mode'
FORMAT_CONF_KEY = 'skcf.format'
TOL_ENV_VAR = 'SKCF_TOL'

CONFIG_SECTION = 'app:main'
DEFAULT_MODE = 'restricted'
DEFAULT_FORMAT = 'json'

config = {}  # type: Dict[str, str]


def load_config(path):
    # type: (str) -> Dict[str, str]
    """Load skcf options from the ``[app:main]`` section of an ini file into :data:`config`
    """
    parser = ConfigParser(interpolation=None)
    if not parser.read(path):
        raise ValueError("Configuration file '{}' cannot be read".format(path))
    if parser.has_section(CONFIG_SECTION):
        config.update((k, v) for k, v in parser.items(CONFIG_SECTION) if k.startswith('skcf.'))
    log.debug("Loaded configuration from %s", path)
    return config


def default_tol():
    # type: () -> float
    """Get the tolerance from the environment, then the configuration, then the built-in default
    """
    for source, value in ((TOL_ENV_VAR, os.environ.get(TOL_ENV_VAR)), (TOL_CONF_KEY, config.get(TOL_CONF_KEY))):
        if value is None or value == '':
            continue
        try:
            return valid_tol(value)
        except Invalid:
            raise ValueError("Configuration option '{}' must be a positive number, got '{}'".format(source, value))
    return arith.DEFAULT_TOL


def default_mode():
    # type: () -> str
    """Get the configured normalization mode
    """
    mode = config.get(MODE_CONF_KEY, DEFAULT_MODE)
    try:
        return valid_mode(mode)
    except Invalid:
        raise ValueError("Configuration option '{}' must be 'restricted' or 'all-triples', got '{}'".format(
            MODE_CONF_KEY, mode))


def default_format():
    # type: () -> str
    fmt = config.get(FORMAT_CONF_KEY, DEFAULT_FORMAT)
    if fmt not in ('json', 'ket', 'pencil'):
        raise ValueError("Configuration option '{}' must be json, ket or pencil, got '{}'".format(
            FORMAT_CONF_KEY, fmt))
    return fmt


def linear_form(mu, lam):
    # type: (Scalar, Scalar) -> str
    """Render ``lam * λ + mu * μ`` the way pencils are printed in tables (``λ+μ``, ``-λ+2μ``)
    """
    text = ''
    for coeff, symbol in ((lam, 'λ'), (mu, 'μ')):
        if coeff.is_zero:
            continue
        term = _coefficient(coeff) + symbol
        if text and not term.startswith('-'):
            text += '+'
        text += term
    return text or '·'


def _coefficient(value):
    if value == arith.ONE:
        return ''
    if value == -arith.ONE:
        return '-'
    text = arith.format_scalar(value)
    if value.im and value.re:
        return '({})'.format(text)
    return text


def render_pencil(p, title=None):
    # type: (Pencil, Optional[str]) -> str
    """Render a pencil as a matrix of linear forms in λ and μ
    """
    cells = [[linear_form(mu, lam) for mu, lam in zip(row_r, row_s)] for row_r, row_s in zip(p.R, p.S)]
    width = max(len(cell) for row in cells for cell in row)
    lines = ['  '.join(cell.rjust(width) for cell in row) for row in cells]
    if title:
        lines.insert(0, title)
    return '\n'.join(lines)
