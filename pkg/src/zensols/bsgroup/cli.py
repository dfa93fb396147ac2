"""Command line entry point to the application.

"""
__author__ = 'Paul Landes'

from typing import Tuple, List, Dict, Any, Sequence, FrozenSet
from dataclasses import replace
from pathlib import Path
import sys
import logging
import re
import plac
from zensols.bsgroup.domain import BaumslagSolitarError, ParameterError
from zensols.bsgroup.config import RunConfig, ConfigFactory
from zensols.bsgroup.app import Application

logger = logging.getLogger(__name__)
_LEVEL_DEFAULT: str = '[warn|info|debug]'
_FORMAT_DEFAULT: str = '<text|json|yaml>'
_ACTIONS: Tuple[str, ...] = (
    'classify', 'generators', 'reduce', 'nq', 'lie', 'verify', 'corpus',
    'version')


def _int_list(s: str, desc: str) -> Tuple[int, ...]:
    try:
        return tuple(map(int, filter(lambda x: len(x) > 0,
                                     re.split(r'[\s,]+', s))))
    except ValueError:
        raise ParameterError(f'Expecting comma separated {desc}: {s}')


_OPTION_ALIASES: Dict[str, str] = {
    '--class': '--classes',
    '--k-window': '--window',
    '--p': '--primes'}
"""Long option spellings accepted for options plac names otherwise."""

_LIST_OPTIONS: FrozenSet[str] = frozenset({'--primes', '--index', '--bound'})
"""Options that take integers as separate arguments, such as ``--index 3 2``."""

_INT_REGEX: re.Pattern = re.compile(r'^-?\d+$')


def _normalize_args(argv: Sequence[str]) -> List[str]:
    """Rename aliased options and join the integers following a list option
    into its single comma separated value.

    """
    args: List[str] = []
    i: int = 0
    while i < len(argv):
        arg: str = argv[i]
        i += 1
        if not arg.startswith('--'):
            args.append(arg)
            continue
        name, eq, val = arg.partition('=')
        name = _OPTION_ALIASES.get(name, name)
        if name in _LIST_OPTIONS and len(eq) == 0:
            vals: List[str] = []
            while i < len(argv) and _INT_REGEX.match(argv[i]) is not None:
                vals.append(argv[i])
                i += 1
            if len(vals) > 0:
                # joined with = since a leading minus reads as a flag
                args.append(f'{name}={",".join(vals)}')
                continue
        args.append(name + eq + val)
    return args


@plac.annotations(
    action=('task to execute (see actions)', 'positional', None, str),
    version=('print the version and exit', 'flag', 'v'),
    level=('level', 'option', 'l', str),
    config=('comma separated configuration files', 'option', 'c', str),
    m=('the conjugated exponent of BS(m, n)', 'option', 'm', int),
    n=('the image exponent of BS(m, n)', 'option', 'n', int),
    word=('word to reduce, such as "[t^-1 a^2 t, a]"', 'option', 'w', str),
    classes=('nilpotency class bound', 'option', 'C', int),
    window=('largest |k| of generator instances', 'option', 'k', int),
    expwindow=('largest |x|, |y| of corollary instances', 'option', 'e', int),
    primes=('comma separated primes', 'option', 'p', str),
    torsion=('comma separated cyclic orders of free products',
             'option', 't', str),
    check=('check to verify', 'option', 'x', str),
    all=('run every check about the group', 'flag', 'a'),
    set=('generating set: gamma-omega, n-omega, np-omega',
         'option', 's', str),
    prime=('prime of the np-omega set', 'option', 'q', int),
    presentation=('presentation file used instead of BS(m, n)',
                  'option', 'r', Path),
    input=('corpus file, the bundled corpus if not given', 'option', 'i', Path),
    jobs=('corpus worker processes', 'option', 'j', int),
    basis=('print the Hall basis of a degree', 'option', 'B', int),
    witt=('print the free Lie ring rank of a degree', 'option', 'W', int),
    index=('print the index of psi at degree and kappa: C KAPPA',
           'option', 'I', str),
    bound=('print the gr_c order bound of BS(m, n): M N C',
           'option', 'O', str),
    format=('output format', 'option', 'f', str),
    json=('shortcut for JSON output', 'flag', 'J'))
def invoke(action: str = None, version: bool = False,
           level: str = _LEVEL_DEFAULT,
           config: str = None,
           m: int = None, n: int = None,
           word: str = None,
           classes: int = None,
           window: int = None,
           expwindow: int = None,
           primes: str = None,
           torsion: str = None,
           check: str = None,
           all: bool = False,
           set: str = None,
           prime: int = None,
           presentation: Path = None,
           input: Path = None,
           jobs: int = None,
           basis: int = None,
           witt: int = None,
           index: str = None,
           bound: str = None,
           format: str = _FORMAT_DEFAULT,
           json: bool = False) -> int:
    """\
Residual properties and lower central series of Baumslag-Solitar groups
BS(m, n) = <t, a | t^-1 a^m t = a^n>.

actions:
  classify -m -n [-p]           residual finiteness, nilpotence and p
  generators -m -n [-s, -q, -k] normal closure generating sets
  reduce -m -n -w               Britton normal form of a word
  nq [-m -n | -r] [-C]          nilpotent quotient and graded quotients
  lie [-C] [-m -n]              Hall basis, ranks and order bounds
  lie --basis|--witt C          Hall basis or rank of degree C
  lie --index C KAPPA           index of psi_KAPPA at degree C
  lie --bound M N C             order bound of gr_C of BS(M, N)
  verify -m -n [-a | -x]        run checks (exit 1 on fail, 2 inconclusive)
  corpus [-i, -j]               run a fixture corpus (exit 1 on mismatch)
  version                       print the version

    """
    prog: str = Path(sys.argv[0]).name
    if version:
        action = 'version'
    fmt: str
    log_level: int = logging.WARNING
    if level == _LEVEL_DEFAULT:
        if action == 'corpus' or (action == 'verify' and all):
            log_level = logging.INFO
        else:
            log_level = logging.WARNING
    else:
        log_level = {
            'warn': logging.WARNING,
            'info': logging.INFO,
            'debug': logging.DEBUG,
        }.get(level)
        if log_level is None:
            print(f'{prog}: error: unknown log level: {level}',
                  file=sys.stderr)
            return 2
    if log_level == logging.DEBUG:
        fmt = '[%(levelname)s] %(module)s: %(message)s'
    else:
        fmt = f'{prog}: %(message)s'
    logging.basicConfig(format=fmt, level=logging.WARNING)
    logging.getLogger('zensols.bsgroup').setLevel(log_level)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f'invoking action: {action}')
    format = 'json' if json else format
    format = None if format == _FORMAT_DEFAULT else format
    try:
        if action is None:
            raise ParameterError('missing action argument')
        if action not in _ACTIONS:
            raise ParameterError(f'no such action: {action}')
        config_files: Tuple[Path, ...] = () if config is None else \
            tuple(map(Path, re.split(r'[\s,]+', config)))
        cfg: RunConfig = ConfigFactory(config_files).create()
        overrides: Dict[str, Any] = {
            'subcommand': action, 'm': m, 'n': n, 'class_bound': classes,
            'k_window': window, 'exp_window': expwindow, 'jobs': jobs,
            'format': format, 'presentation_path': presentation}
        if primes is not None:
            overrides['primes'] = _int_list(primes, 'primes')
        if torsion is not None:
            overrides['torsion'] = _int_list(torsion, 'cyclic orders')
        cfg = replace(cfg, **dict(filter(lambda t: t[1] is not None,
                                         overrides.items())))
        if cfg.format not in {'text', 'json', 'yaml'}:
            raise ParameterError(f'No such output format: {cfg.format}')
        app = Application(cfg, progress=(log_level == logging.INFO))
        kwargs: Dict[str, Any] = {}
        if action == 'reduce':
            kwargs['word'] = word
        elif action == 'generators':
            kwargs.update({'name': set, 'prime': prime})
        elif action == 'verify':
            kwargs.update({'check': check, 'all': all})
        elif action == 'corpus':
            kwargs['path'] = input
        elif action == 'lie':
            kwargs.update({
                'basis': basis, 'witt': witt,
                'index': None if index is None
                else _int_list(index, 'degree and kappa'),
                'bound': None if bound is None
                else _int_list(bound, 'm, n and degree')})
        ret = getattr(app, action)(**kwargs)
        return ret if isinstance(ret, int) else 0
    except BaumslagSolitarError as e:
        print(f'{prog}: error: {e}', file=sys.stderr)
        if log_level <= logging.DEBUG:
            import traceback
            traceback.print_exc()
        return 2


def run(argv: Sequence[str]) -> int:
    """Parse ``argv``, run the action and return the exit code: 0 on success,
    1 on a failed check or corpus mismatch, 2 on a usage, parameter or
    resource error or an inconclusive check.

    """
    try:
        return plac.call(invoke, _normalize_args(argv))
    except SystemExit as e:
        # argparse exits on unknown flags and malformed option values
        return e.code if isinstance(e.code, int) else 2


def main(args: List[str] = None):
    if args is not None:
        sys.argv = ['bsgroup'] + args
    sys.exit(run(sys.argv[1:]))
