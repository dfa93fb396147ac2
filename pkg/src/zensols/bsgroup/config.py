"""Run configuration read from the bundled ``default.yml`` merged with user
configuration files.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Any, Type, Optional
from dataclasses import dataclass, field
import os
import logging
import functools
from pathlib import Path
from io import StringIO
import yaml
from jinja2 import Template, Environment, BaseLoader
from .domain import BaumslagSolitarError, Config
from .lie import LieConfig
from .nq import BudgetConfig

logger = logging.getLogger(__name__)


@dataclass
class RunConfig(Config):
    """The parameters of a command line run: the ``run`` section of the
    configuration with the values given on the command line.

    """
    subcommand: Optional[str] = field(default=None)
    """The action, such as ``classify`` or ``verify``."""

    m: Optional[int] = field(default=None)
    n: Optional[int] = field(default=None)

    class_bound: int = field(default=5)
    """The class of the nilpotent quotients used by the checks."""

    k_window: int = field(default=3)
    """The largest ``|k|`` of instantiated generator families."""

    exp_window: int = field(default=2)
    """The largest ``|x|`` and ``|y|`` of the corollary families."""

    primes: Tuple[int, ...] = field(default=(2, 3))
    """The primes queried for residual ``p`` properties."""

    torsion: Tuple[int, ...] = field(default=(6,))
    """The cyclic factor orders of the free product checks."""

    sample_size: int = field(default=200)
    """The number of random triples in the commutator identity check."""

    seed: int = field(default=0)
    """The random seed of sampled checks."""

    jobs: int = field(default=1)
    """The number of worker processes of the corpus runner."""

    format: str = field(default='text')
    """The output format: ``text``, ``json`` or ``yaml``."""

    presentation_path: Optional[Path] = field(default=None)
    """A presentation file used instead of ``BS(m, n)``."""

    @classmethod
    def instance(cls: Type, data: Dict[str, Any]) -> RunConfig:
        """Create an instance from the parsed (and merged) configuration."""
        if 'run' not in data:
            raise BaumslagSolitarError("Missing top-level 'run' from config")
        run: Dict[str, Any] = data['run']
        return RunConfig(
            data=data,
            class_bound=cls._get_int(run, 'class_bound', 'class bound', 5),
            k_window=cls._get_int(run, 'k_window', 'k window', 3),
            exp_window=cls._get_int(run, 'exp_window', 'exponent window', 2),
            primes=tuple(map(int, cls._get(run, 'primes', 'primes', [2, 3]))),
            torsion=tuple(map(int, cls._get(run, 'torsion', 'torsion', [6]))),
            sample_size=cls._get_int(run, 'sample_size', 'sample size', 200),
            seed=cls._get_int(run, 'seed', 'random seed', 0),
            jobs=cls._get_int(run, 'jobs', 'worker processes', 1))

    @property
    def budget(self) -> BudgetConfig:
        """The nilpotent quotient resource budget."""
        if not hasattr(self, '_budget'):
            self._budget = BudgetConfig.instance(
                self._get(self.data, 'budget', 'resource budget', {}))
        return self._budget

    @property
    def lie(self) -> LieConfig:
        """The free Lie ring configuration."""
        if not hasattr(self, '_lie'):
            self._lie = LieConfig.instance(
                self._get(self.data, 'lie', 'free Lie ring', {}))
        return self._lie

    def asdict(self) -> Dict[str, Any]:
        return {'subcommand': self.subcommand,
                'm': self.m,
                'n': self.n,
                'class_bound': self.class_bound,
                'k_window': self.k_window,
                'exp_window': self.exp_window,
                'primes': list(self.primes),
                'torsion': list(self.torsion),
                'jobs': self.jobs,
                'presentation_path': None if self.presentation_path is None
                else str(self.presentation_path)}


@dataclass
class ConfigFactory(object):
    """Reads, renders and merges configuration files into a
    :class:`.RunConfig`.  User files take precedence over the defaults.

    """
    config_files: Tuple[Path, ...] = field(default=())
    """The user configuration files, earlier files taking precedence."""

    @staticmethod
    def default_path() -> Path:
        return Path(__file__).parent / 'resources' / 'default.yml'

    def _render(self, content: str, params: Dict[str, Any]) -> str:
        env = Environment(loader=BaseLoader, keep_trailing_newline=True)
        template: Template = env.from_string(content)
        return template.render(params)

    def read_config(self) -> List[Dict[str, Any]]:
        """Return the parsed files, the defaults last."""
        params: Dict[str, Any] = dict(env=os.environ)
        datas: List[Dict[str, Any]] = []
        for path in self.config_files + (self.default_path(),):
            if logger.isEnabledFor(logging.DEBUG):
                logger.debug(f'parsing config file: {path}')
            if not path.is_file():
                raise BaumslagSolitarError(f'No such config file: {path}')
            with open(path, 'r') as f:
                content: str = f.read()
            content = self._render(content, params)
            data: Any = yaml.load(StringIO(content), yaml.FullLoader)
            if not isinstance(data, dict):
                raise BaumslagSolitarError(
                    f'Expecting a mapping in config file: {path}')
            datas.append(data)
        return datas

    def create(self) -> RunConfig:
        def merge(a: dict, b: dict) -> dict:
            for key in b:
                if key in a:
                    if isinstance(a[key], dict) and isinstance(b[key], dict):
                        merge(a[key], b[key])
                else:
                    a[key] = b[key]
            return a

        data: Dict[str, Any] = functools.reduce(merge, self.read_config())
        return RunConfig.instance(data)
