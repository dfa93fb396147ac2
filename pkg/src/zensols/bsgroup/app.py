"""Residual properties and lower central series of Baumslag-Solitar groups.

"""
__author__ = 'Paul Landes'

from typing import Tuple, List, Dict, Any, Optional, ClassVar
from dataclasses import dataclass, field
import logging
from pathlib import Path
from tqdm import tqdm
from jinja2 import Template, BaseLoader
from jinja2 import Environment as Jinja2Environment
from . import BaumslagSolitarError, ParameterError, Flattenable
from .presentation import (
    FreeWord, BSParams, GroupPresentation, normalize_bs, parse_word,
    format_word, bs_presentation, read_presentation
)
from .wordengine import BrittonNormalForm, britton_reduce, t_exponent_sum
from .classify import (
    GeneratorFamily, residual_report, families, family, instantiate
)
from .lie import hall_basis, witt_rank, lattice_index, grc_order_bound
from .nq import nilpotent_quotient
from .pcp import PcPresentation
from .verify import (
    VerificationReport, GROUP_CHECKS, PASS, FAIL, INCONCLUSIVE, aggregate,
    run_check
)
from .corpus import CorpusSummary, CorpusRunner, bundled_corpus_path
from .config import RunConfig

logger = logging.getLogger(__name__)


@dataclass
class _Document(Flattenable):
    """A schema stable output document: ``tool_version``, ``subcommand``,
    ``params`` and ``result``.

    """
    data: Dict[str, Any] = field()

    def asdict(self) -> Dict[str, Any]:
        return self.data


@dataclass
class Application(object):
    """The application client class to the command line.

    """
    _PACKAGE: ClassVar[str] = 'zensols.bsgroup'

    config: RunConfig = field()
    """The merged configuration with the command line values."""

    progress: bool = field(default=False)
    """Whether to show progress bars on long running actions."""

    def _template(self, name: str) -> Template:
        path: Path = Path(__file__).parent / 'resources' / 'templates' / \
            f'{name}.txt'
        env = Jinja2Environment(loader=BaseLoader, keep_trailing_newline=True)
        return env.from_string(path.read_text())

    @classmethod
    def _tool_version(cls) -> str:
        import importlib.metadata
        version: str = '<unknown>'
        try:
            version = importlib.metadata.version(cls._PACKAGE)
        except importlib.metadata.PackageNotFoundError:
            pass
        return version

    def _document(self, params: Dict[str, Any],
                  result: Dict[str, Any]) -> _Document:
        return _Document({'tool_version': self._tool_version(),
                          'subcommand': self.config.subcommand,
                          'params': params,
                          'result': result})

    def _dump(self, params: Dict[str, Any], result: Dict[str, Any]):
        """Print one document in the configured format."""
        format: str = self.config.format
        doc: _Document = self._document(params, result)
        content: str
        if format == 'json':
            content = doc.asjson(indent=4) + '\n'
        elif format == 'yaml':
            content = doc.asyaml()
        elif format == 'text':
            content = self._template(self.config.subcommand).render(
                params=params, result=result)
        else:
            raise ParameterError(f'No such output format: {format}')
        print(content, end='')

    def _params(self) -> BSParams:
        cfg: RunConfig = self.config
        if cfg.m is None or cfg.n is None:
            raise ParameterError(
                f"The '{cfg.subcommand}' action needs both -m and -n")
        return normalize_bs(cfg.m, cfg.n)

    def _group_params(self, p: BSParams, **kwargs) -> Dict[str, Any]:
        params: Dict[str, Any] = {'m': self.config.m, 'n': self.config.n,
                                  'group': p.name}
        params.update(kwargs)
        return params

    def version(self):
        """Print the version."""
        print(self._tool_version())

    def classify(self) -> int:
        """Print the residual properties of ``BS(m, n)``."""
        p: BSParams = self._params()
        self._dump(self._group_params(p, primes=list(self.config.primes)),
                   residual_report(p, self.config.primes).asdict())
        return 0

    def generators(self, name: str = None, prime: int = None) -> int:
        """Print the normal closure generating sets.

        :param name: ``gamma-omega``, ``n-omega`` or ``np-omega``, or all sets
                     if not given

        :param prime: the prime of the ``np-omega`` set

        """
        p: BSParams = self._params()
        fams: List[GeneratorFamily]
        if name is None:
            fams = list(families(p, self.config.primes).values())
        else:
            fams = [family(p, name, prime)]
        k: int = self.config.k_window
        result: List[Dict[str, Any]] = []
        for fam in fams:
            dct: Dict[str, Any] = fam.asdict()
            dct['instances'] = list(map(
                lambda w: format_word(w, fam.names),
                instantiate(fam, k, templates_only=True)))
            result.append(dct)
        self._dump(self._group_params(p, k_window=k, set=name, prime=prime),
                   {'families': result})
        return 0

    def reduce(self, word: str = None) -> int:
        """Print the Britton normal form of a word.

        :param word: the word in the ``t``, ``a`` grammar

        """
        if word is None:
            raise ParameterError("The 'reduce' action needs --word")
        p: BSParams = self._params()
        w: FreeWord = parse_word(word)
        nf: BrittonNormalForm = britton_reduce(p, w)
        result: Dict[str, Any] = {'input': word}
        result.update(nf.asdict())
        result['normal_form'] = str(nf)
        result['is_identity'] = nf.is_identity
        result['t_sum'] = t_exponent_sum(w)
        self._dump(self._group_params(p, word=word), result)
        return 0

    def nq(self) -> int:
        """Print the nilpotent quotient of ``BS(m, n)`` or of the presentation
        file.

        """
        cfg: RunConfig = self.config
        pres: GroupPresentation
        params: Dict[str, Any]
        if cfg.presentation_path is not None:
            pres = read_presentation(cfg.presentation_path)
            params = {'presentation': str(cfg.presentation_path),
                      'group': str(pres)}
        else:
            p: BSParams = self._params()
            pres = bs_presentation(p)
            params = self._group_params(p)
        params['class_bound'] = cfg.class_bound
        pc: PcPresentation = nilpotent_quotient(
            pres, cfg.class_bound, cfg.budget)
        self._dump(params, pc.asdict())
        return 0

    def lie(self, basis: int = None, witt: int = None,
            index: Tuple[int, ...] = None,
            bound: Tuple[int, ...] = None) -> int:
        """Print the Hall basis and ranks of the free Lie ring by degree and,
        given a group, the graded quotient order bounds.  At most one of the
        parameters selects a single quantity instead.

        :param basis: the degree of the Hall basis to print

        :param witt: the degree of the rank to print

        :param index: the degree and ``kappa`` of the index of ``psi_kappa``

        :param bound: ``m``, ``n`` and the degree of the ``gr_c`` order bound

        """
        cfg: RunConfig = self.config
        modes: Dict[str, Any] = dict(filter(
            lambda t: t[1] is not None,
            {'basis': basis, 'witt': witt, 'index': index,
             'bound': bound}.items()))
        if len(modes) > 1:
            raise ParameterError("The 'lie' action takes at most one of " +
                                 '--basis, --witt, --index or --bound')
        params: Dict[str, Any]
        result: Dict[str, Any]
        if basis is not None:
            params = {'mode': 'basis', 'degree': basis}
            result = {'basis': list(map(str, hall_basis(basis)))}
        elif witt is not None:
            params = {'mode': 'witt', 'degree': witt}
            result = {'witt_rank': witt_rank(witt)}
        elif index is not None:
            if len(index) != 2:
                raise ParameterError(
                    f'Expecting a degree and kappa: {index}')
            c, kappa = index
            params = {'mode': 'index', 'degree': c, 'kappa': kappa}
            result = {'lattice_index': lattice_index(
                c, kappa, cfg.lie.check_index_up_to)}
        elif bound is not None:
            if len(bound) != 3:
                raise ParameterError(f'Expecting m, n and a degree: {bound}')
            m, n, c = bound
            p: BSParams = normalize_bs(m, n)
            params = {'mode': 'bound', 'm': m, 'n': n, 'group': p.name,
                      'degree': c}
            result = {'order_bound': grc_order_bound(p, c)}
        else:
            params, result = self._lie_table()
        self._dump(params, result)
        return 0

    def _lie_table(self) -> Tuple[Dict[str, Any], Dict[str, Any]]:
        cfg: RunConfig = self.config
        p: Optional[BSParams] = None
        if cfg.m is not None and cfg.n is not None:
            p = self._params()
        kappa: Optional[int] = None if p is None else abs(p.delta)
        rows: List[Dict[str, Any]] = []
        for c in range(1, cfg.class_bound + 1):
            rows.append({
                'degree': c,
                'witt_rank': witt_rank(c),
                'basis': list(map(str, hall_basis(c))),
                'order_bound': None if p is None or c < 2
                else grc_order_bound(p, c),
                'lattice_index': None if kappa is None or kappa == 0
                else lattice_index(c, kappa, cfg.lie.check_index_up_to)})
        params: Dict[str, Any] = {'mode': 'table',
                                  'class_bound': cfg.class_bound}
        if p is not None:
            params.update(self._group_params(p, kappa=kappa))
        return params, {'degrees': rows}

    def verify(self, check: str = None, all: bool = False) -> int:
        """Run checks on ``BS(m, n)`` and exit with 0 when all pass, 1 on any
        failure and 2 when a check is inconclusive.

        :param check: the check name to run

        :param all: whether to run every check on the group

        """
        if (check is None) == (not all):
            raise ParameterError("The 'verify' action needs one of " +
                                 '--all or --check')
        cfg: RunConfig = self.config
        p: BSParams = self._params()
        names: Tuple[str, ...] = GROUP_CHECKS if all else (check,)
        reports: List[VerificationReport] = []
        for name in tqdm(names, ncols=80, disable=(not self.progress)):
            reports.append(run_check(name, p, cfg))
        verdict: str = aggregate(tuple(map(lambda r: r.verdict, reports)))
        if logger.isEnabledFor(logging.INFO):
            logger.info(f'{p}: {verdict}')
        self._dump(self._group_params(
            p, checks=list(names), class_bound=cfg.class_bound,
            k_window=cfg.k_window, exp_window=cfg.exp_window),
            {'verdict': verdict,
             'reports': list(map(lambda r: r.asdict(), reports))})
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}.get(verdict, 0)

    def corpus(self, path: Path = None) -> int:
        """Run a fixture corpus and exit with 1 on any mismatch.

        :param path: the corpus file, or the bundled corpus if not given

        """
        path = bundled_corpus_path() if path is None else path
        if not path.is_file():
            raise BaumslagSolitarError(f'No such corpus file: {path}')
        runner = CorpusRunner(self.config, self.progress)
        summary: CorpusSummary = runner.run(path)
        self._dump({'path': str(path), 'jobs': self.config.jobs},
                   summary.asdict())
        return summary.exit_code
