"""Free group words, their text grammar, Baumslag-Solitar parameters and the
group presentations built from them.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Iterable, Iterator, Sequence, Any, ClassVar
from dataclasses import dataclass, field
import logging
import re
from math import gcd
from pathlib import Path
from sympy import factorint
from .domain import (
    Flattenable, ParameterError, WordSyntaxError, UnknownGeneratorError
)

logger = logging.getLogger(__name__)

T: int = 0
"""The index of the stable letter ``t`` (also ``x`` in the free Lie ring)."""

A: int = 1
"""The index of the base generator ``a`` (also ``y`` in the free Lie ring)."""

BS_NAMES: Tuple[str, ...] = ('t', 'a')
"""The generator names of a Baumslag-Solitar group."""


def _free_reduce(syllables: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    stack: List[Tuple[int, int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if len(stack) > 0 and stack[-1][0] == gen:
            exp += stack.pop()[1]
            if exp == 0:
                continue
        stack.append((gen, exp))
    return tuple(stack)


@dataclass(unsafe_hash=True)
class FreeWord(Flattenable):
    """A freely reduced word in a finitely generated free group stored as a
    sequence of ``(generator index, exponent)`` syllables.  Construction
    always freely reduces the syllables, so adjacent syllables have distinct
    generators and no exponent is zero.

    """
    syllables: Tuple[Tuple[int, int], ...] = field(default=())
    """The ``(generator, nonzero exponent)`` pairs."""

    def __post_init__(self):
        self.syllables = _free_reduce(self.syllables)

    @staticmethod
    def generator(gen: int, exp: int = 1) -> FreeWord:
        """Return the word ``gen^exp``."""
        return FreeWord(((gen, exp),))

    @property
    def is_identity(self) -> bool:
        """Whether this is the empty word."""
        return len(self.syllables) == 0

    @property
    def length(self) -> int:
        """The number of letters (sum of absolute exponents)."""
        return sum(map(lambda s: abs(s[1]), self.syllables))

    @property
    def generators(self) -> Tuple[int, ...]:
        """The sorted generator indexes used in the word."""
        return tuple(sorted(set(map(lambda s: s[0], self.syllables))))

    def letters(self) -> Iterator[Tuple[int, int]]:
        """Iterate over the letters as ``(generator, ±1)`` pairs."""
        for gen, exp in self.syllables:
            step: int = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield (gen, step)

    def exponent_sum(self, gen: int) -> int:
        """The sum of the exponents of generator ``gen``."""
        return sum(map(lambda s: s[1],
                       filter(lambda s: s[0] == gen, self.syllables)))

    def inverse(self) -> FreeWord:
        return FreeWord(tuple(map(lambda s: (s[0], -s[1]),
                                  reversed(self.syllables))))

    def conjugate(self, by: FreeWord) -> FreeWord:
        """Return ``by^-1 self by``."""
        return by.inverse() * self * by

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(self.syllables + other.syllables)

    def __pow__(self, exp: int) -> FreeWord:
        word: FreeWord = self if exp >= 0 else self.inverse()
        return FreeWord(word.syllables * abs(exp))

    def asdict(self) -> Dict[str, Any]:
        return {'word': format_word(self)}

    def __str__(self) -> str:
        return format_word(self)


IDENTITY: FreeWord = FreeWord()
"""The identity of every free group."""


def commutator_word(u: FreeWord, v: FreeWord) -> FreeWord:
    """Return the freely reduced commutator ``[u, v] = u^-1 v^-1 u v``."""
    return u.inverse() * v.inverse() * u * v


def format_word(w: FreeWord, names: Sequence[str] = BS_NAMES) -> str:
    """Format a word in the grammar :func:`parse_word` reads, such as
    ``a^-1 t^-1 a t``.  The identity is formatted as ``1``.

    """
    if w.is_identity:
        return '1'
    terms: List[str] = []
    for gen, exp in w.syllables:
        name: str = names[gen] if gen < len(names) else f'g{gen}'
        terms.append(name if exp == 1 else f'{name}^{exp}')
    return ' '.join(terms)


class _WordParser(object):
    """A recursive descent parser for the word grammar::

        word := "1" | term { ("*" | whitespace) term }
        term := atom [ "^" signed-integer ]
        atom := name | "(" word ")" | "[" word "," word "]"

    """
    _TOKEN: ClassVar[re.Pattern] = re.compile(
        r'\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[+-]?\d+)|' +
        r'(?P<sym>[()\[\],*^]))')

    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names: Dict[str, int] = {n: i for i, n in enumerate(names)}
        self.tokens: List[Tuple[str, str, int]] = self._tokenize()
        self.pos = 0

    def _tokenize(self) -> List[Tuple[str, str, int]]:
        toks: List[Tuple[str, str, int]] = []
        text: str = self.text
        i: int = 0
        while i < len(text):
            if text[i:].strip() == '':
                break
            m: re.Match = self._TOKEN.match(text, i)
            if m is None:
                start: int = len(text[i:]) - len(text[i:].lstrip()) + i
                raise WordSyntaxError('Unexpected character', text, start)
            kind: str = m.lastgroup
            toks.append((kind, m.group(kind), m.start(kind)))
            i = m.end()
        return toks

    def _peek(self) -> Tuple[str, str, int]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ('end', '', len(self.text))

    def _next(self) -> Tuple[str, str, int]:
        tok = self._peek()
        self.pos += 1
        return tok

    def _expect(self, sym: str) -> None:
        kind, val, pos = self._next()
        if kind != 'sym' or val != sym:
            found: str = 'end of input' if kind == 'end' else repr(val)
            raise WordSyntaxError(
                f"Expecting '{sym}' but found {found}", self.text, pos)

    def _starts_atom(self, tok: Tuple[str, str, int]) -> bool:
        kind, val, _ = tok
        return kind == 'name' or (kind == 'int' and val == '1') or \
            (kind == 'sym' and val in '([')

    def parse(self) -> FreeWord:
        word: FreeWord = self._word()
        kind, val, pos = self._peek()
        if kind != 'end':
            raise WordSyntaxError(f'Unexpected {val!r}', self.text, pos)
        return word

    def _word(self) -> FreeWord:
        tok = self._peek()
        if not self._starts_atom(tok):
            kind, val, pos = tok
            found: str = 'end of input' if kind == 'end' else repr(val)
            raise WordSyntaxError(
                f'Expecting a term but found {found}', self.text, pos)
        word: FreeWord = self._term()
        while True:
            tok = self._peek()
            if tok[0] == 'sym' and tok[1] == '*':
                self._next()
                word = word * self._term()
            elif self._starts_atom(tok):
                word = word * self._term()
            else:
                break
        return word

    def _term(self) -> FreeWord:
        atom, bracket = self._atom()
        kind, val, pos = self._peek()
        if kind == 'sym' and val == '^':
            if bracket:
                raise WordSyntaxError(
                    'Exponent on a commutator bracket requires parentheses',
                    self.text, pos)
            self._next()
            kind, val, pos = self._next()
            if kind != 'int':
                raise WordSyntaxError(
                    'Expecting an integer exponent', self.text, pos)
            atom = atom ** int(val)
        return atom

    def _atom(self) -> Tuple[FreeWord, bool]:
        kind, val, pos = self._next()
        if kind == 'name':
            if val not in self.names:
                raise UnknownGeneratorError(val)
            return FreeWord.generator(self.names[val]), False
        if kind == 'int' and val == '1':
            return IDENTITY, False
        if kind == 'sym' and val == '(':
            word: FreeWord = self._word()
            self._expect(')')
            return word, False
        if kind == 'sym' and val == '[':
            u: FreeWord = self._word()
            self._expect(',')
            v: FreeWord = self._word()
            self._expect(']')
            return commutator_word(u, v), True
        found: str = 'end of input' if kind == 'end' else repr(val)
        raise WordSyntaxError(f'Unexpected {found}', self.text, pos)


def parse_word(text: str, names: Sequence[str] = BS_NAMES) -> FreeWord:
    """Parse ``text`` into a freely reduced word.

    :param text: the word, such as ``[t^-1 a^2 t, a]``

    :param names: the declared generator names, by index

    :raises WordSyntaxError: if the text does not conform to the grammar

    :raises UnknownGeneratorError: if a name is not in ``names``

    """
    return _WordParser(text, names).parse()


@dataclass(unsafe_hash=True)
class BSParams(Flattenable):
    """The normalized parameters of the Baumslag-Solitar group
    ``BS(m, n) = <t, a | t^-1 a^m t = a^n>`` with ``0 < m <= |n|``.

    """
    m: int = field()
    """The positive exponent of the conjugated power."""

    n: int = field()
    """The nonzero image exponent, ``m <= |n|``."""

    d: int = field()
    """The greatest common divisor of ``m`` and ``|n|``."""

    m1: int = field()
    """``m / d``"""

    n1: int = field()
    """``n / d``"""

    delta: int = field()
    """``n - m``"""

    moves: Tuple[str, ...] = field(default=(), compare=False)
    """The isomorphism moves (``swap`` or ``flip``) that normalized the
    user's input.

    """
    @staticmethod
    def of(m: int, n: int) -> BSParams:
        """Create parameters from an already normalized pair."""
        if m <= 0 or abs(n) < m:
            raise ParameterError(f'Not a normalized pair: ({m}, {n})')
        d: int = gcd(m, n)
        return BSParams(m, n, d, m // d, n // d, n - m)

    @property
    def name(self) -> str:
        return f'BS({self.m},{self.n})'

    def asdict(self) -> Dict[str, Any]:
        return {'m': self.m, 'n': self.n, 'd': self.d, 'm1': self.m1,
                'n1': self.n1, 'delta': self.delta,
                'moves': list(self.moves)}

    def __str__(self) -> str:
        return self.name


def normalize_bs(m: int, n: int) -> BSParams:
    """Normalize the pair using ``BS(m,n) = BS(n,m) = BS(-m,-n)`` so that
    ``0 < m <= |n|``.  The applied moves are recorded in
    :obj:`.BSParams.moves`.

    """
    if m == 0 or n == 0:
        raise ParameterError(f'Exponents must be nonzero: ({m}, {n})')
    moves: List[str] = []
    while True:
        if abs(m) > abs(n):
            m, n = n, m
            moves.append('swap')
        elif m < 0:
            m, n = -m, -n
            moves.append('flip')
        else:
            break
    params: BSParams = BSParams.of(m, n)
    if len(moves) > 0:
        params = BSParams(params.m, params.n, params.d, params.m1,
                          params.n1, params.delta, tuple(moves))
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f'normalized to {params} with moves: {moves}')
    return params


def bs_relator(p: BSParams) -> FreeWord:
    """Return the relator ``a^(n-m) t^-1 a^-m t a^m``, which is equivalent to
    ``t^-1 a^m t a^-n``.

    """
    return FreeWord(((A, p.delta), (T, -1), (A, -p.m), (T, 1), (A, p.m)))


@dataclass(unsafe_hash=True)
class GroupPresentation(Flattenable):
    """A finite group presentation.

    """
    names: Tuple[str, ...] = field()
    """The generator names by index."""

    relators: Tuple[FreeWord, ...] = field(default=())
    """The relators, each using only declared generator indexes."""

    def __post_init__(self):
        if len(self.names) == 0:
            raise ParameterError('A presentation needs at least one generator')
        for rel in self.relators:
            for gen in rel.generators:
                if gen >= len(self.names):
                    raise UnknownGeneratorError(gen)

    @property
    def generator_count(self) -> int:
        return len(self.names)

    def format(self, w: FreeWord) -> str:
        """Format a word using this presentation's generator names."""
        return format_word(w, self.names)

    def parse(self, text: str) -> FreeWord:
        """Parse a word using this presentation's generator names."""
        return parse_word(text, self.names)

    def asdict(self) -> Dict[str, Any]:
        return {'generators': list(self.names),
                'relators': list(map(self.format, self.relators))}

    def __str__(self) -> str:
        rels: str = ', '.join(map(self.format, self.relators))
        return f"<{', '.join(self.names)} | {rels}>"


def bs_presentation(p: BSParams) -> GroupPresentation:
    """The one relator presentation of ``BS(m, n)`` over ``(t, a)``."""
    return GroupPresentation(BS_NAMES, (bs_relator(p),))


def zzm_presentation(m: int) -> GroupPresentation:
    """The presentation ``<t, a | a^m>`` of the free product of the integers
    and a cyclic group of order ``m``.

    """
    if m < 2:
        raise ParameterError(f'Cyclic factor order must be at least 2: {m}')
    return GroupPresentation(BS_NAMES, (FreeWord.generator(A, m),))


def free_presentation(rank: int = 2) -> GroupPresentation:
    """The free group on ``x, y`` (rank 2) or ``x1..xr``."""
    if rank < 1:
        raise ParameterError(f'Rank must be positive: {rank}')
    names: Tuple[str, ...] = ('x', 'y') if rank == 2 else \
        tuple(map(lambda i: f'x{i + 1}', range(rank)))
    return GroupPresentation(names)


def prime_power_base(q: int) -> int:
    """Return the prime ``p`` with ``q = p^r``, ``r > 0``.

    :raises ParameterError: if ``q`` is not a prime power

    """
    factors: Dict[int, int] = factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise ParameterError(f'Not a prime power: {q}')
    return next(iter(factors))


def zzm_product_presentation(prime_powers: Sequence[int]) -> GroupPresentation:
    """The presentation of ``Z * (Z_q1 x ... x Z_qk)`` for prime powers
    ``q_i`` of pairwise distinct primes::

        <t, x1..xk | x_i^q_i, [x_i, x_j]>

    """
    if len(prime_powers) == 0:
        raise ParameterError('Need at least one prime power')
    primes: List[int] = list(map(prime_power_base, prime_powers))
    if len(set(primes)) != len(primes):
        raise ParameterError(
            f'Prime powers must have distinct primes: {prime_powers}')
    k: int = len(prime_powers)
    names: Tuple[str, ...] = ('t',) + tuple(
        map(lambda i: f'x{i + 1}', range(k)))
    rels: List[FreeWord] = []
    for i, q in enumerate(prime_powers):
        rels.append(FreeWord.generator(i + 1, q))
    for i in range(k):
        for j in range(i + 1, k):
            rels.append(commutator_word(FreeWord.generator(i + 1),
                                        FreeWord.generator(j + 1)))
    return GroupPresentation(names, tuple(rels))


def read_presentation(path: Path) -> GroupPresentation:
    """Read a presentation file.  The first line that is not blank or a
    ``#`` comment is a header of the form ``gens: t a`` and every following
    line is a relator in the word grammar.

    """
    names: Tuple[str, ...] = None
    rels: List[FreeWord] = []
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if len(line) == 0 or line.startswith('#'):
                continue
            if names is None:
                m: re.Match = re.match(r'^gens\s*:\s*(.+)$', line)
                if m is None:
                    raise ParameterError(
                        f"{path}:{lineno}: expecting a 'gens:' header")
                names = tuple(re.split(r'[\s,]+', m.group(1).strip()))
            else:
                try:
                    rels.append(parse_word(line, names))
                except ParameterError as e:
                    raise ParameterError(f'{path}:{lineno}: {e}') from e
    if names is None:
        raise ParameterError(f"{path}: missing 'gens:' header")
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f'read {len(rels)} relators from {path}')
    return GroupPresentation(names, tuple(rels))
