"""Command line interface for skcf
"""
import functools
import json
import logging
import logging.config
from collections import namedtuple
from configparser import ConfigParser

import click

from . import helpers
from .canonical import canonicalize, equivalent, form_label, form_to_json, structure_of_form
from .classify import enumerate_classes, orbit_check, paper_label, registry_entry, representative_state
from .exc import SkcfError
from .kronecker import build_pencil
from .state import local_ranks, parse_ket, pencil_of_state, render_ket, state_from_json
from .validators import valid_tol

log = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)-5.5s [%(name)s] %(message)s'

Settings = namedtuple('Settings', 'tol mode fmt')


class InputError(click.ClickException):
    """Bad input or an error while processing it; exits with code 2
    """
    exit_code = 2


def _handle_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (SkcfError, ValueError) as e:
            log.debug("Command failed", exc_info=True)
            raise InputError(str(e))
    return wrapper


def _common_options(func):
    func = click.option('--format', 'fmt', type=click.Choice(['json', 'ket', 'pencil']), default=None,
                        help='Output format (default: json)')(func)
    func = click.option('--mode', type=click.Choice(['restricted', 'all-triples']), default=None,
                        help='Eigenvalue normalization mode (default: restricted)')(func)
    func = click.option('--tol', type=float, default=None,
                        help='Relative tolerance for approximate values (default: $SKCF_TOL or 1e-9)')(func)
    return func


def _settings(tol, mode, fmt):
    # type: (float, str, str) -> Settings
    """Resolve options: command line flag, then environment, then configuration file, then default
    """
    tol = valid_tol(tol) if tol is not None else helpers.default_tol()
    return Settings(tol, mode or helpers.default_mode(), fmt or helpers.default_format())


def _configure_logging(verbose, config_file):
    if config_file:
        parser = ConfigParser(interpolation=None)
        parser.read(config_file)
        if parser.has_section('loggers'):
            logging.config.fileConfig(config_file, disable_existing_loggers=False)
            return
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbose, 2)]
    logging.basicConfig(level=level, format=LOG_FORMAT)


def read_state(path):
    """Read a state from a JSON document or a ket text file
    """
    try:
        with open(path) as f:
            text = f.read()
    except (IOError, OSError) as e:
        raise InputError("Cannot read state file '{}': {}".format(path, e))
    try:
        if text.lstrip().startswith('{'):
            return state_from_json(json.loads(text))
        return parse_ket(text)
    except ValueError as e:
        raise InputError("Cannot load state from '{}': {}".format(path, e))


def _emit_json(doc):
    click.echo(json.dumps(doc, indent=2, ensure_ascii=False))


def _emit_form(form, settings, extra=None):
    if settings.fmt == 'ket':
        click.echo(render_ket(representative_state(form)))
    elif settings.fmt == 'pencil':
        click.echo(helpers.render_pencil(build_pencil(structure_of_form(form))))
    else:
        doc = form_to_json(form)
        doc.update(extra or {})
        _emit_json(doc)


@click.group(name='skcf', short_help='State Kronecker canonical form commands')
@click.option('-v', '--verbose', count=True, help='Log more (repeat for debug output)')
@click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='ini file with [app:main] skcf.* options and logging sections')
def skcf(verbose, config_file):
    """Canonical forms and SLOCC classes of 2 x m x n tripartite states."""
    _configure_logging(verbose, config_file)
    if config_file:
        helpers.load_config(config_file)


@skcf.command('canon')
@click.argument('state_file', type=click.Path(dir_okay=False))
@click.option('--with-ranks', is_flag=True, help='Include the local ranks of the state')
@_common_options
@_handle_errors
def canon(state_file, with_ranks, tol, mode, fmt):
    """Print the canonical form of a state given as JSON or ket text."""
    settings = _settings(tol, mode, fmt)
    state = read_state(state_file)
    form = canonicalize(state, settings.tol, settings.mode)
    extra = {'label': paper_label(form, tol=settings.tol) or form_label(form)}
    if with_ranks:
        extra['local_ranks'] = list(local_ranks(state, settings.tol))
    _emit_form(form, settings, extra)


@skcf.command('equiv')
@click.argument('first', type=click.Path(dir_okay=False))
@click.argument('second', type=click.Path(dir_okay=False))
@_common_options
@click.pass_context
@_handle_errors
def equiv(ctx, first, second, tol, mode, fmt):
    """Decide whether two states are SLOCC equivalent (exit code 1 when they are not)."""
    settings = _settings(tol, mode, fmt)
    result = equivalent(read_state(first), read_state(second), settings.tol, settings.mode)
    if settings.fmt == 'json':
        _emit_json({'equivalent': result})
    else:
        click.echo('equivalent' if result else 'not equivalent')
    if not result:
        ctx.exit(1)


@skcf.command('enumerate')
@click.option('--m', 'm', type=int, required=True, help='Dimension of party B')
@click.option('--n', 'n', type=int, required=True, help='Dimension of party C')
@click.option('--all-ranks', is_flag=True, help='Include states without full local ranks on B and C')
@_common_options
@_handle_errors
def enumerate_(m, n, all_ranks, tol, mode, fmt):
    """List the SLOCC classes of 2 x m x n states."""
    settings = _settings(tol, mode, fmt)
    entries = enumerate_classes(m, n, include_degenerate=all_ranks)
    if settings.fmt == 'json':
        _emit_json([{'label': e.label, 'dims': list(e.dims), 'ket': e.ket, 'form': form_to_json(e.form)}
                    for e in entries])
    elif settings.fmt == 'ket':
        for e in entries:
            click.echo('{}\t{}'.format(e.label, e.ket))
    else:
        for e in entries:
            click.echo(helpers.render_pencil(build_pencil(structure_of_form(e.form)), title=e.label))
            click.echo('')


@skcf.command('orbit-check')
@click.argument('state_file', type=click.Path(dir_okay=False))
@click.option('--trials', type=click.IntRange(min=1), default=100, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@_common_options
@click.pass_context
@_handle_errors
def orbit_check_(ctx, state_file, trials, seed, tol, mode, fmt):
    """Apply random local operators and check the canonical form never changes."""
    settings = _settings(tol, mode, fmt)
    report = orbit_check(read_state(state_file), trials, seed, settings.tol, settings.mode)
    _emit_json(report._asdict())
    if report.failures:
        ctx.exit(1)


@skcf.command('show')
@click.argument('label')
@_common_options
@_handle_errors
def show(label, tol, mode, fmt):
    """Show a labelled class: its printed representative and canonical form."""
    settings = _settings(tol, mode, fmt)
    entry = registry_entry(label)
    if settings.fmt == 'ket':
        click.echo(entry.ket)
    elif settings.fmt == 'pencil':
        state = parse_ket(entry.ket, entry.dims)
        click.echo(helpers.render_pencil(pencil_of_state(state), title=entry.label))
    else:
        _emit_json({'label': entry.label, 'dims': list(entry.dims), 'ket': entry.ket,
                    'form': form_to_json(entry.form)})


def get_commands():
    return [skcf]
