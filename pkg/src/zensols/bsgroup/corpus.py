"""Runs a fixture corpus: rows of groups with the expected classifier output
and the checks that must pass.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Any, Optional
from dataclasses import dataclass, field, replace
import logging
from pathlib import Path
from multiprocessing import Pool
import yaml
from yaml.nodes import Node, SequenceNode
from tqdm import tqdm
from .domain import Flattenable, BaumslagSolitarError, CorpusError
from .presentation import BSParams, normalize_bs
from .classify import ResidualReport, residual_report
from .verify import CHECKS, FAIL, INCONCLUSIVE, run_check
from .config import RunConfig

logger = logging.getLogger(__name__)

_EXPECT_KEYS: Tuple[str, ...] = (
    'residually_finite', 'residually_nilpotent', 'witness_case', 'gamma_case')


@dataclass
class CorpusRow(Flattenable):
    """A parsed row of the corpus file."""

    index: int = field()
    """The zero based row index."""

    line: int = field()
    """The one based line in the corpus file where the row starts."""

    m: int = field()
    n: int = field()

    expect: Dict[str, Any] = field()
    """The expected classifier fields with ``residually_p`` by prime."""

    checks: Tuple[str, ...] = field()
    class_bound: Optional[int] = field(default=None)

    @property
    def label(self) -> str:
        return f'row {self.index} (line {self.line}): BS({self.m},{self.n})'


@dataclass
class CorpusRowResult(Flattenable):
    """The outcome of one corpus row."""

    row: CorpusRow = field()
    group: str = field()
    """The normalized group name."""

    verdicts: Dict[str, str] = field()
    """The check name to its verdict."""

    mismatches: Tuple[str, ...] = field()
    """Each differing expectation or failed check."""

    @property
    def passed(self) -> bool:
        return len(self.mismatches) == 0

    def asdict(self) -> Dict[str, Any]:
        return {'index': self.row.index,
                'line': self.row.line,
                'group': self.group,
                'passed': self.passed,
                'verdicts': self.verdicts,
                'mismatches': list(self.mismatches)}


@dataclass
class CorpusSummary(Flattenable):
    """The results of all rows ordered by row index."""

    path: Path = field()
    results: Tuple[CorpusRowResult, ...] = field()

    @property
    def failures(self) -> Tuple[CorpusRowResult, ...]:
        return tuple(filter(lambda r: not r.passed, self.results))

    @property
    def passed(self) -> bool:
        return len(self.failures) == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def asdict(self) -> Dict[str, Any]:
        return {'path': str(self.path),
                'rows': len(self.results),
                'passed': self.passed,
                'failures': len(self.failures),
                'results': list(map(lambda r: r.asdict(), self.results))}


def _row_error(line: int, msg: str) -> CorpusError:
    return CorpusError(f'Malformed corpus row at line {line}: {msg}')


def _parse_int(row: Dict[str, Any], key: str, line: int,
               required: bool = True) -> Optional[int]:
    val: Any = row.get(key)
    if val is None:
        if required:
            raise _row_error(line, f"missing '{key}'")
        return None
    if isinstance(val, bool) or not isinstance(val, int):
        raise _row_error(line, f"'{key}' is not an integer: {val}")
    return val


def _parse_row(index: int, line: int, row: Any) -> CorpusRow:
    if not isinstance(row, dict):
        raise _row_error(line, f'expecting a mapping: {row}')
    unknown: List[str] = sorted(set(row) - {'m', 'n', 'expect', 'checks',
                                            'class'})
    if len(unknown) > 0:
        raise _row_error(line, f"unknown keys: {', '.join(unknown)}")
    expect: Any = row.get('expect', {})
    if not isinstance(expect, dict):
        raise _row_error(line, f"'expect' is not a mapping: {expect}")
    bad: List[str] = sorted(set(expect) - set(_EXPECT_KEYS + ('residually_p',)))
    if len(bad) > 0:
        raise _row_error(line, f"unknown expectations: {', '.join(bad)}")
    rp: Any = expect.get('residually_p', {})
    if not isinstance(rp, dict) or \
       not all(map(lambda k: isinstance(k, int), rp)):
        raise _row_error(line, f"'residually_p' must map primes: {rp}")
    checks: Any = row.get('checks', [])
    if not isinstance(checks, list):
        raise _row_error(line, f"'checks' is not a list: {checks}")
    for check in checks:
        if check not in CHECKS:
            raise _row_error(line, f'no such check: {check}')
    c: Optional[int] = _parse_int(row, 'class', line, False)
    if c is not None and c < 1:
        raise _row_error(line, f'class must be positive: {c}')
    return CorpusRow(
        index=index,
        line=line,
        m=_parse_int(row, 'm', line),
        n=_parse_int(row, 'n', line),
        expect=expect,
        checks=tuple(checks),
        class_bound=c)


def read_corpus(path: Path) -> Tuple[CorpusRow, ...]:
    """Parse the corpus file keeping the line of each row.

    :raises CorpusError: if the file is not a list of well formed rows

    """
    with open(path) as f:
        content: str = f.read()
    try:
        node: Node = yaml.compose(content, Loader=yaml.SafeLoader)
        data: Any = yaml.safe_load(content)
    except yaml.YAMLError as e:
        raise CorpusError(f'Could not parse corpus {path}: {e}') from e
    if node is None or data is None:
        return ()
    if not isinstance(node, SequenceNode) or not isinstance(data, list):
        raise CorpusError(f'Expecting a list of rows in corpus: {path}')
    return tuple(map(
        lambda t: _parse_row(t[0], t[1].start_mark.line + 1, t[2]),
        zip(range(len(data)), node.value, data)))


def _check_expect(report: ResidualReport, expect: Dict[str, Any]) -> \
        List[str]:
    obs: Dict[str, Any] = report.asdict()
    mismatches: List[str] = []
    for key in _EXPECT_KEYS:
        if key in expect and expect[key] != obs[key]:
            mismatches.append(
                f'{key}: expected {expect[key]}, got {obs[key]}')
    for q, val in expect.get('residually_p', {}).items():
        got: bool = report.residually_p[q]
        if got != val:
            mismatches.append(f'residually_p({q}): expected {val}, got {got}')
    return mismatches


def run_row(row: CorpusRow, config: RunConfig) -> CorpusRowResult:
    """Classify the group of ``row`` and run its checks."""
    mismatches: List[str] = []
    verdicts: Dict[str, str] = {}
    group: str = f'BS({row.m},{row.n})'
    try:
        p: BSParams = normalize_bs(row.m, row.n)
        group = p.name
        primes: Tuple[int, ...] = tuple(
            sorted(row.expect.get('residually_p', {})))
        mismatches.extend(_check_expect(residual_report(p, primes),
                                        row.expect))
        cfg: RunConfig = config
        if row.class_bound is not None:
            cfg = replace(config, class_bound=row.class_bound)
        for check in row.checks:
            verdict: str = run_check(check, p, cfg).verdict
            verdicts[check] = verdict
            if verdict in {FAIL, INCONCLUSIVE}:
                mismatches.append(f'{check}: {verdict}')
    except BaumslagSolitarError as e:
        mismatches.append(f'error: {e}')
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f'{row.label}: {mismatches}')
    return CorpusRowResult(row, group, verdicts, tuple(mismatches))


def _run_row_job(args: Tuple[CorpusRow, RunConfig]) -> CorpusRowResult:
    return run_row(*args)


@dataclass
class CorpusRunner(object):
    """Runs every row of a corpus, in worker processes when ``jobs > 1``.

    """
    config: RunConfig = field()
    progress: bool = field(default=False)
    """Whether to show a progress bar."""

    def run(self, path: Path) -> CorpusSummary:
        rows: Tuple[CorpusRow, ...] = read_corpus(path)
        jobs: int = max(1, self.config.jobs)
        if logger.isEnabledFor(logging.INFO):
            logger.info(f'running {len(rows)} corpus rows from {path} ' +
                        f'with {jobs} job(s)')
        args: List[Tuple[CorpusRow, RunConfig]] = list(map(
            lambda r: (r, self.config), rows))
        results: List[CorpusRowResult] = []
        pbar = tqdm(total=len(rows), ncols=80, disable=(not self.progress))
        if jobs == 1 or len(rows) < 2:
            for arg in args:
                results.append(_run_row_job(arg))
                pbar.update()
        else:
            with Pool(min(jobs, len(rows))) as pool:
                # imap keeps row order regardless of completion order
                for res in pool.imap(_run_row_job, args):
                    results.append(res)
                    pbar.update()
        pbar.close()
        for res in results:
            if not res.passed:
                logger.warning(f"{res.row.label} mismatch: " +
                               '; '.join(res.mismatches))
        return CorpusSummary(path, tuple(results))


def bundled_corpus_path() -> Path:
    """The bundled fixture corpus."""
    return Path(__file__).parent / 'resources' / 'corpus.yml'


def run_corpus(path: Path, config: RunConfig, progress: bool = False) -> int:
    """Run every row of the corpus at ``path`` and return the exit code: 0
    when all rows match and 1 on any mismatch.

    :raises CorpusError: if a row is malformed

    """
    return CorpusRunner(config, progress).run(path).exit_code
