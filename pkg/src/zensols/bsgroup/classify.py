"""Residual property criteria and the explicit generating families of the
intersections of the lower central series and of the finite (and finite
``p``) index normal subgroups.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Sequence, Any, Optional
from dataclasses import dataclass, field
import logging
from math import gcd
from sympy import isprime, factorint, divisors, multiplicity
from .domain import Flattenable, ParameterError
from .presentation import (
    T, A, FreeWord, BSParams, commutator_word, format_word, prime_power_base
)

logger = logging.getLogger(__name__)


def _check_prime(q: int):
    if not isprime(q):
        raise ParameterError(f'Not a prime: {q}')


def _is_prime_power(q: int) -> bool:
    return q > 1 and len(factorint(q)) == 1


def is_residually_finite(p: BSParams) -> bool:
    """True iff ``m = 1`` or ``|n| = m``."""
    return p.m == 1 or abs(p.n) == p.m


def is_residually_nilpotent(p: BSParams) -> bool:
    """True iff ``m = 1`` and ``n != 2``, or ``|n| = m`` is a prime power."""
    return (p.m == 1 and p.n != 2) or \
        (abs(p.n) == p.m and _is_prime_power(p.m))


def is_residually_p(p: BSParams, prime: int) -> bool:
    """True iff ``m = 1`` and ``n = 1 (mod p)``, or ``n = m = p^r``, or
    ``n = -m``, ``p = 2`` and ``m = 2^r``.

    :raises ParameterError: if ``prime`` is not prime

    """
    _check_prime(prime)
    m, n = p.m, p.n
    if m == 1 and (n - 1) % prime == 0:
        return True
    power_of_prime: bool = m == prime ** multiplicity(prime, m)
    if n == m and power_of_prime:
        return True
    return n == -m and prime == 2 and power_of_prime


def gamma_case(p: BSParams) -> str:
    """Name the clause that gives the generators of the lower central series
    intersection: ``coprime_normal_closure_a``, ``coprime_commutators``,
    ``ad_and_commutators`` or ``commutators_only``.

    """
    adjacent: bool = abs(p.n1 - p.m1) == 1
    if p.d == 1:
        return 'coprime_normal_closure_a' if adjacent \
            else 'coprime_commutators'
    return 'ad_and_commutators' if adjacent else 'commutators_only'


def witness_case(p: BSParams) -> str:
    """Name the clause of the residual properties criteria that fired."""
    if not is_residually_finite(p):
        return 'not_residually_finite'
    if p.m == 1:
        return 'm1_n_is_2' if p.n == 2 else 'm1_n_not_2'
    return 'balanced_prime_power' if _is_prime_power(p.m) \
        else 'balanced_not_prime_power'


@dataclass
class ResidualReport(Flattenable):
    """The residual properties of a Baumslag-Solitar group.

    """
    params: BSParams = field()
    """The classified group."""

    residually_finite: bool = field()
    residually_nilpotent: bool = field()

    residually_p: Dict[int, bool] = field()
    """The queried primes to whether the group is residually ``p``."""

    witness_case: str = field()
    """The criteria clause that fired (see :func:`witness_case`)."""

    gamma_case: str = field()
    """The generating set clause (see :func:`gamma_case`)."""

    def asdict(self) -> Dict[str, Any]:
        return {'group': self.params.name,
                'params': self.params.asdict(),
                'residually_finite': self.residually_finite,
                'residually_nilpotent': self.residually_nilpotent,
                'residually_p': {str(k): v
                                 for k, v in self.residually_p.items()},
                'witness_case': self.witness_case,
                'gamma_case': self.gamma_case}


def residual_report(p: BSParams, primes: Sequence[int] = ()) -> ResidualReport:
    """Classify the residual properties of ``p`` for the given primes."""
    return ResidualReport(
        params=p,
        residually_finite=is_residually_finite(p),
        residually_nilpotent=is_residually_nilpotent(p),
        residually_p={q: is_residually_p(p, q) for q in primes},
        witness_case=witness_case(p),
        gamma_case=gamma_case(p))


@dataclass(unsafe_hash=True)
class CommutatorTemplate(Flattenable):
    """The family ``[t^-sk g^mu t^sk, h^nu]`` for all integers ``k``, where
    ``s`` is the :obj:`orientation`.  Both orientations give the same
    family since ``k`` ranges over all integers.

    """
    mu: int = field()
    nu: int = field()

    orientation: int = field(default=1)
    """``1`` conjugates by ``t^k`` and ``-1`` by ``t^-k``."""

    left: int = field(default=A)
    """The generator index of the conjugated power."""

    right: int = field(default=A)
    """The generator index of the other commutator entry."""

    def instance(self, k: int) -> FreeWord:
        """Return the freely reduced family member for ``k``."""
        conj: FreeWord = FreeWord.generator(T, self.orientation * k)
        return commutator_word(
            FreeWord.generator(self.left, self.mu).conjugate(conj),
            FreeWord.generator(self.right, self.nu))

    def format(self, names: Sequence[str]) -> str:
        def power(gen: int, exp: int) -> str:
            return names[gen] if exp == 1 else f'{names[gen]}^{exp}'

        neg, pos = ('-k', 'k') if self.orientation > 0 else ('k', '-k')
        return (f'[t^{neg} {power(self.left, self.mu)} t^{pos}, ' +
                f'{power(self.right, self.nu)}]')

    def __str__(self) -> str:
        return self.format(('t', 'a'))


@dataclass
class GeneratorFamily(Flattenable):
    """A finite description of a normal closure generating set, which is
    infinite by its parametric templates.

    """
    name: str = field()
    """The subgroup, such as ``gamma-omega``."""

    group: str = field()
    """A description of the ambient group."""

    constant_words: Tuple[FreeWord, ...] = field(default=())
    """Generators that do not depend on ``k``."""

    templates: Tuple[CommutatorTemplate, ...] = field(default=())
    """The commutator families parameterized by ``k``."""

    extra_words: Tuple[FreeWord, ...] = field(default=())
    """Other generators, such as ``t^-1 a^(p^r u) t a^(-p^r v)``."""

    names: Tuple[str, ...] = field(default=('t', 'a'))
    """The generator names used to format the words."""

    @property
    def is_empty(self) -> bool:
        return len(self.constant_words) == 0 and \
            len(self.templates) == 0 and len(self.extra_words) == 0

    @property
    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        """The ``(mu, nu)`` pairs of the templates."""
        return tuple(map(lambda t: (t.mu, t.nu), self.templates))

    def asdict(self) -> Dict[str, Any]:
        def fmt(w: FreeWord) -> str:
            return format_word(w, self.names)

        return {'name': self.name,
                'group': self.group,
                'constant_words': list(map(fmt, self.constant_words)),
                'templates': list(map(lambda t: t.format(self.names),
                                      self.templates)),
                'extra_words': list(map(fmt, self.extra_words))}


def coprime_factor_pairs(d: int) -> Tuple[Tuple[int, int], ...]:
    """All ordered pairs ``(mu, nu)`` of coprime positive integers with
    ``mu * nu = d``.

    """
    if d < 1:
        raise ParameterError(f'Expecting a positive integer: {d}')
    return tuple(map(lambda mu: (mu, d // mu),
                     filter(lambda mu: gcd(mu, d // mu) == 1, divisors(d))))


def _templates(pairs: Sequence[Tuple[int, int]],
               orientation: int = 1) -> Tuple[CommutatorTemplate, ...]:
    return tuple(map(lambda pr: CommutatorTemplate(pr[0], pr[1], orientation),
                     pairs))


def gamma_omega_generators(p: BSParams) -> GeneratorFamily:
    """The normal closure generators of the intersection of the lower
    central series.  When ``|n1 - m1| = 1`` (no prime divides
    ``n1 - m1``) ``a^d`` is a generator, and the commutator families for
    all coprime factorizations of ``d`` are always included.  For ``d = 1``
    this degenerates to the normal closure of ``a`` when ``|n1 - m1| = 1``
    and to ``[t^-k a t^k, a]`` otherwise.

    """
    adjacent: bool = abs(p.n1 - p.m1) == 1
    consts: Tuple[FreeWord, ...] = ()
    templates: Tuple[CommutatorTemplate, ...] = \
        _templates(coprime_factor_pairs(p.d))
    if adjacent:
        consts = (FreeWord.generator(A, p.d),)
        if p.d == 1:
            templates = ()
    return GeneratorFamily('gamma-omega', p.name, consts, templates)


def n_omega_generators(p: BSParams) -> GeneratorFamily:
    """The normal closure generators ``[t^k a^d t^-k, a]`` of the
    intersection of all finite index normal subgroups.

    """
    return GeneratorFamily(
        'n-omega', p.name, templates=_templates(((p.d, 1),), -1))


def np_omega_generators(p: BSParams, q: int) -> GeneratorFamily:
    """The normal closure generators of the intersection of all normal
    subgroups of ``q``-power index.  With ``m = q^r m1'`` and
    ``n = q^s n1'`` (``q`` divides neither cofactor): when ``r != s`` or
    ``m1' != n1' (mod q)`` the family is ``a^(q^min(r,s))``; otherwise it is
    ``t^-1 a^(q^r u) t a^(-q^r v)`` with the commutators
    ``[t^k a^(q^r) t^-k, a]``, where ``u = m1'/d'``, ``v = n1'/d'`` and
    ``d' = gcd(m1', n1')``.

    :raises ParameterError: if ``q`` is not prime

    """
    _check_prime(q)
    r: int = multiplicity(q, p.m)
    s: int = multiplicity(q, abs(p.n))
    m1: int = p.m // q ** r
    n1: int = p.n // q ** s
    if r != s or (m1 - n1) % q != 0:
        const = FreeWord.generator(A, q ** min(r, s))
        return GeneratorFamily(f'np-omega({q})', p.name, (const,))
    dp: int = gcd(m1, n1)
    u: int = m1 // dp
    v: int = n1 // dp
    qr: int = q ** r
    extra = FreeWord(((T, -1), (A, qr * u), (T, 1), (A, -qr * v)))
    return GeneratorFamily(
        f'np-omega({q})', p.name,
        templates=_templates(((qr, 1),), -1),
        extra_words=(extra,))


def zzm_gamma_omega_generators(m: int) -> GeneratorFamily:
    """The normal closure generators of the lower central series
    intersection of ``Z * Z_m = <t, a | a^m>``.

    """
    if m < 2:
        raise ParameterError(f'Cyclic factor order must be at least 2: {m}')
    return GeneratorFamily('gamma-omega', f'Z*Z_{m}',
                           templates=_templates(coprime_factor_pairs(m)))


def zzm_product_generators(prime_powers: Sequence[int]) -> GeneratorFamily:
    """The normal closure generators ``[t^-k x_i t^k, x_j]``, ``i != j``, of the
    lower central series intersection of ``Z * (Z_q1 x ... x Z_qk)``.

    """
    primes: List[int] = list(map(prime_power_base, prime_powers))
    if len(set(primes)) != len(primes):
        raise ParameterError(
            f'Prime powers must have distinct primes: {prime_powers}')
    k: int = len(prime_powers)
    templates: List[CommutatorTemplate] = []
    for i in range(k):
        for j in range(k):
            if i != j:
                templates.append(CommutatorTemplate(
                    1, 1, left=i + 1, right=j + 1))
    names: Tuple[str, ...] = ('t',) + tuple(
        map(lambda i: f'x{i + 1}', range(k)))
    factors: str = ' x '.join(map(lambda q: f'Z_{q}', prime_powers))
    return GeneratorFamily('gamma-omega', f'Z*({factors})',
                           templates=tuple(templates), names=names)


def instantiate(f: GeneratorFamily, k_window: int,
                templates_only: bool = False) -> Tuple[FreeWord, ...]:
    """Truncate the family to ``|k| <= k_window``.

    :param f: the family to instantiate

    :param k_window: the largest absolute value of ``k``

    :param templates_only: whether to leave out the constant and extra words

    :return: the constant and extra words followed by the template members,
             in template and then ``k`` order

    """
    if k_window < 0:
        raise ParameterError(f'Window must be nonnegative: {k_window}')
    words: List[FreeWord] = []
    if not templates_only:
        words.extend(f.constant_words)
        words.extend(f.extra_words)
    for template in f.templates:
        for k in range(-k_window, k_window + 1):
            words.append(template.instance(k))
    return tuple(words)


def families(p: BSParams, primes: Sequence[int] = ()) -> \
        Dict[str, GeneratorFamily]:
    """Return all families of ``p`` by set name, with one ``np-omega`` set
    per prime.

    """
    fams: Dict[str, GeneratorFamily] = {
        'gamma-omega': gamma_omega_generators(p),
        'n-omega': n_omega_generators(p)}
    for q in primes:
        fams[f'np-omega({q})'] = np_omega_generators(p, q)
    return fams


def family(p: BSParams, name: str, prime: Optional[int] = None) -> \
        GeneratorFamily:
    """Return a family by its set name.

    :param name: one of ``gamma-omega``, ``n-omega`` or ``np-omega``

    :param prime: the prime needed by ``np-omega``

    """
    if name == 'gamma-omega':
        return gamma_omega_generators(p)
    elif name == 'n-omega':
        return n_omega_generators(p)
    elif name == 'np-omega':
        if prime is None:
            raise ParameterError('The np-omega set needs a prime')
        return np_omega_generators(p, prime)
    raise ParameterError(f'No such generator set: {name}')
