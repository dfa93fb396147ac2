"""Decides the word problem in Baumslag-Solitar groups by Britton reduction
and in the free product of the integers with a finite cyclic group.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Any
from dataclasses import dataclass, field
import logging
from .domain import Flattenable, ParameterError
from .presentation import T, A, FreeWord, BSParams, format_word

logger = logging.getLogger(__name__)


def _check_bs_word(w: FreeWord):
    for gen in w.generators:
        if gen not in (T, A):
            raise ParameterError(
                f'Word uses generator index {gen} outside of (t, a)')


@dataclass(unsafe_hash=True)
class BrittonNormalForm(Flattenable):
    """The canonical form ``a^head t^e1 a^r1 ... t^ek a^rk`` of a group
    element, where residues follow a ``t^-1`` are in ``[0, m)`` and residues
    following a ``t`` are in ``[0, |n|)``.

    """
    head: int = field()
    """The exponent of the leading power of ``a``."""

    tail: Tuple[Tuple[int, int], ...] = field(default=())
    """The ``(epsilon, residue)`` pairs read as ``t^epsilon a^residue``."""

    @property
    def is_identity(self) -> bool:
        return self.head == 0 and len(self.tail) == 0

    @property
    def t_length(self) -> int:
        """The number of stable letters."""
        return len(self.tail)

    def is_reduced(self, p: BSParams) -> bool:
        """Whether no rewrite rule applies to this form in ``BS(m, n)``."""
        prev: int = None
        for i, (eps, res) in enumerate(self.tail):
            bound: int = p.m if eps < 0 else abs(p.n)
            if not (0 <= res < bound):
                return False
            if prev is not None and prev[0] == 0 and eps == -prev[1]:
                return False
            prev = (res, eps)
        return True

    def as_word(self) -> FreeWord:
        """Return the normal form as a (freely reduced) word."""
        syls: List[Tuple[int, int]] = [(A, self.head)]
        for eps, res in self.tail:
            syls.append((T, eps))
            syls.append((A, res))
        return FreeWord(tuple(syls))

    def asdict(self) -> Dict[str, Any]:
        return {'head': self.head,
                'tail': list(map(list, self.tail)),
                'word': str(self)}

    def __str__(self) -> str:
        return format_word(self.as_word())


def britton_reduce(p: BSParams, w: FreeWord) -> BrittonNormalForm:
    """Rewrite ``w`` to its Britton normal form in ``BS(m, n)``.  The word is
    scanned from right to left; each ``t^e a^z`` is rewritten as
    ``a^c t^e a^j`` with ``j`` a coset residue, where ``t^-1 a^(qm) =
    a^(qn) t^-1`` and ``t a^(qn) = a^(qm) t``, and a pinch ``t^e a^0 t^-e``
    cancels.

    :param p: the group parameters

    :param w: a word over ``(t, a)``

    """
    _check_bs_word(w)
    m: int = p.m
    n: int = p.n
    # split into a^z0 t^e1 a^z1 ... t^ek a^zk
    powers: List[int] = [0]
    epsilons: List[int] = []
    for gen, exp in w.syllables:
        if gen == A:
            powers[-1] += exp
        else:
            step: int = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                epsilons.append(step)
                powers.append(0)
    carry: int = 0
    # the reduced suffix, stored reversed so its first element is last
    suffix: List[Tuple[int, int]] = []
    for i in range(len(epsilons), 0, -1):
        eps: int = epsilons[i - 1]
        z: int = powers[i] + carry
        if eps < 0:
            q, j = divmod(z, m)
            carry = q * n
        else:
            j = z % abs(n)
            carry = ((z - j) // n) * m
        if j == 0 and len(suffix) > 0 and suffix[-1][0] == -eps:
            carry += suffix.pop()[1]
        else:
            suffix.append((eps, j))
    nf = BrittonNormalForm(powers[0] + carry, tuple(reversed(suffix)))
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f'reduced {w} -> {nf} in {p}')
    return nf


def is_identity(p: BSParams, w: FreeWord) -> bool:
    """Whether ``w`` is the identity in ``BS(m, n)``."""
    return britton_reduce(p, w).is_identity


def words_equal(p: BSParams, u: FreeWord, v: FreeWord) -> bool:
    """Whether ``u`` and ``v`` are the same element of ``BS(m, n)``."""
    return britton_reduce(p, u) == britton_reduce(p, v)


def t_exponent_sum(w: FreeWord) -> int:
    """The exponent sum of the stable letter ``t``."""
    return w.exponent_sum(T)


@dataclass(unsafe_hash=True)
class FreeProductNormalForm(Flattenable):
    """The reduced form of an element of ``Z * Z_m = <t, a | a^m>`` as
    alternating nonzero powers of ``t`` and powers of ``a`` in ``[1, m)``.

    """
    m: int = field()
    """The order of the cyclic factor."""

    syllables: Tuple[Tuple[int, int], ...] = field(default=())
    """The alternating ``(generator, exponent)`` syllables."""

    @property
    def is_identity(self) -> bool:
        return len(self.syllables) == 0

    def as_word(self) -> FreeWord:
        return FreeWord(self.syllables)

    def asdict(self) -> Dict[str, Any]:
        return {'m': self.m, 'word': str(self)}

    def __str__(self) -> str:
        return format_word(self.as_word())


def free_product_reduce(m: int, w: FreeWord) -> FreeProductNormalForm:
    """Reduce ``w`` in ``Z * Z_m``: exponents of ``a`` are taken modulo ``m``
    and like syllables are merged.

    """
    if m < 2:
        raise ParameterError(f'Cyclic factor order must be at least 2: {m}')
    _check_bs_word(w)
    stack: List[Tuple[int, int]] = []
    for gen, exp in w.syllables:
        if gen == A:
            exp %= m
        if exp == 0:
            continue
        if len(stack) > 0 and stack[-1][0] == gen:
            exp += stack.pop()[1]
            if gen == A:
                exp %= m
            if exp == 0:
                continue
        stack.append((gen, exp))
    return FreeProductNormalForm(m, tuple(stack))
