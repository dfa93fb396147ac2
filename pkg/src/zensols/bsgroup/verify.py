"""Executable checks of the residual property and lower central series
results that combine the classifier, the word engine, the free Lie ring and
the nilpotent quotients.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Sequence, Callable, Any, Optional
from dataclasses import dataclass, field
import logging
import random
from sympy import isprime, factorint, multiplicity
from .domain import Flattenable, ParameterError
from .presentation import (
    T, A, FreeWord, BSParams, commutator_word, format_word,
    zzm_presentation, zzm_product_presentation, free_presentation
)
from .wordengine import is_identity, free_product_reduce
from .classify import (
    is_residually_nilpotent, coprime_factor_pairs, gamma_omega_generators,
    n_omega_generators, np_omega_generators, zzm_gamma_omega_generators,
    zzm_product_generators, instantiate, GeneratorFamily
)
from .lie import grc_order_bound
from .pcp import AbelianInvariants, PcPresentation, ExponentLattice, full_lattice
from .nq import (
    BudgetConfig, nilpotent_quotient, bs_quotient, in_gamma,
    normal_closure_lattice, commutator_lattice
)
from .config import RunConfig

logger = logging.getLogger(__name__)

PASS: str = 'pass'
FAIL: str = 'fail'
NOT_APPLICABLE: str = 'not-applicable'
INCONCLUSIVE: str = 'inconclusive'

_SEVERITY: Dict[str, int] = {
    NOT_APPLICABLE: 0, PASS: 1, INCONCLUSIVE: 2, FAIL: 3}

_STABILITY_PROBES: int = 2
"""How many times the window is enlarged looking for a stable lattice."""


@dataclass
class Instance(Flattenable):
    """One checked instance of a report."""

    description: str = field()
    observed: str = field()
    expected: str = field()
    passed: bool = field()


@dataclass
class VerificationReport(Flattenable):
    """The verdict of a check with the instances it is based on.

    """
    check: str = field()
    """The check name, such as ``gamma-omega``."""

    params: Dict[str, Any] = field()
    """The group and window parameters of the check."""

    verdict: str = field()
    """One of ``pass``, ``fail``, ``not-applicable`` or ``inconclusive``."""

    details: Tuple[Instance, ...] = field(default=())
    notes: Tuple[str, ...] = field(default=())
    """Caveats, such as the reason the check does not apply."""

    @property
    def failures(self) -> Tuple[Instance, ...]:
        return tuple(filter(lambda i: not i.passed, self.details))

    def asdict(self) -> Dict[str, Any]:
        return {'check': self.check,
                'params': self.params,
                'verdict': self.verdict,
                'instances': len(self.details),
                'failures': len(self.failures),
                'details': list(map(lambda i: i.asdict(), self.details)),
                'notes': list(self.notes)}


def aggregate(verdicts: Sequence[str]) -> str:
    """Combine verdicts: ``fail`` over ``inconclusive`` over ``pass``, where
    ``not-applicable`` never fails a run.

    """
    if len(verdicts) == 0:
        return NOT_APPLICABLE
    return max(verdicts, key=lambda v: _SEVERITY[v])


def _report(check: str, params: Dict[str, Any], details: Sequence[Instance],
            notes: Sequence[str] = ()) -> VerificationReport:
    verdict: str = PASS if all(map(lambda i: i.passed, details)) else FAIL
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f'{check}: {verdict} on {len(details)} instances')
    return VerificationReport(check, params, verdict, tuple(details),
                              tuple(notes))


def _not_applicable(check: str, params: Dict[str, Any],
                    reason: str) -> VerificationReport:
    return VerificationReport(check, params, NOT_APPLICABLE, notes=(reason,))


def _group_params(p: BSParams, **kwargs) -> Dict[str, Any]:
    params: Dict[str, Any] = {'group': p.name, 'm': p.m, 'n': p.n}
    params.update(kwargs)
    return params


def _depth(pc: PcPresentation, w: FreeWord) -> int:
    """The largest ``i`` with the image of ``w`` in ``gamma_i`` of the
    quotient, which is one more than the class for the identity.

    """
    vec = pc.image(w)
    weights: List[int] = [wt for e, wt in zip(vec, pc.weights) if e != 0]
    return min(weights) if len(weights) > 0 else pc.nilpotency_class + 1


def vanishing_instances(pc: PcPresentation, words: Sequence[FreeWord],
                        names: Sequence[str] = ('t', 'a')) -> List[Instance]:
    """Check that every word lies in ``gamma_i`` for ``1 <= i <= c``, that
    is, its image has no exponent of weight ``c`` or less.

    """
    c: int = pc.nilpotency_class
    details: List[Instance] = []
    for w in words:
        depth: int = _depth(pc, w)
        details.append(Instance(
            description=format_word(w, names),
            observed=f'gamma_{depth}',
            expected=f'gamma_{c + 1}',
            passed=depth > c))
    return details


def _stable_closure(pc: PcPresentation,
                    words: Callable[[int], Sequence[FreeWord]],
                    k_window: int) -> Tuple[Optional[ExponentLattice], int]:
    """Return the normal closure of the family instantiated at the first
    window (starting at ``k_window``) that does not change when the window
    grows by one with that window, or ``None`` with the last window compared
    when no probed window is stable.

    """
    lattice: ExponentLattice = normal_closure_lattice(pc, words(k_window))
    for k in range(k_window, k_window + _STABILITY_PROBES + 1):
        larger: ExponentLattice = normal_closure_lattice(pc, words(k + 1))
        if larger == lattice:
            return lattice, k
        if logger.isEnabledFor(logging.INFO):
            logger.info(f'closure changed from window {k} to {k + 1}')
        lattice = larger
    return None, k_window + _STABILITY_PROBES + 1


def _family_words(f: GeneratorFamily) -> Callable[[int], Tuple[FreeWord, ...]]:
    return lambda k: instantiate(f, k)


def verify_gamma_omega_vanishing(p: BSParams, c_max: int, k_window: int,
                                 budget: BudgetConfig = None) -> \
        VerificationReport:
    """Every instantiated generator of ``gamma_omega`` lies in every
    ``gamma_i``, ``i <= c_max``.

    """
    pc: PcPresentation = bs_quotient(p, c_max, budget)
    words = instantiate(gamma_omega_generators(p), k_window)
    return _report('gamma-omega',
                   _group_params(p, class_bound=c_max, k_window=k_window),
                   vanishing_instances(pc, words))


def verify_trivial_when_res_nilpotent(p: BSParams, k_window: int) -> \
        VerificationReport:
    """Every instantiated generator of ``gamma_omega`` is the identity when
    the group is residually nilpotent.

    """
    params: Dict[str, Any] = _group_params(p, k_window=k_window)
    if not is_residually_nilpotent(p):
        return _not_applicable('trivial-res-nilpotent', params,
                               f'{p} is not residually nilpotent')
    details: List[Instance] = []
    for w in instantiate(gamma_omega_generators(p), k_window):
        ident: bool = is_identity(p, w)
        details.append(Instance(format_word(w), '1' if ident else 'nontrivial',
                                '1', ident))
    return _report('trivial-res-nilpotent', params, details)


def verify_thm2_identity(p: BSParams) -> VerificationReport:
    """Check ``[a^(d(n1 +- 1)), t] = a^(-+d)`` when ``m1 = n1 +- 1`` by
    Britton reduction, and ``[t, a^-m] = a^(n-m)`` when ``d = 1``.

    """
    params: Dict[str, Any] = _group_params(p, d=p.d, m1=p.m1, n1=p.n1)
    sign: int = p.m1 - p.n1
    if abs(sign) != 1:
        return _not_applicable('thm2-identity', params,
                               f'|m1 - n1| = {abs(sign)} != 1')
    a_m = FreeWord.generator(A, p.m)
    t = FreeWord.generator(T)
    a_delta = FreeWord.generator(A, -p.delta)
    op: str = '+' if sign > 0 else '-'
    cases: List[Tuple[str, FreeWord]] = [
        (f'[a^(d(n1{op}1)), t] = [a^{p.m}, t] = a^{p.delta}',
         commutator_word(a_m, t) * a_delta)]
    if p.d == 1:
        cases.append((f'[t, a^{-p.m}] = a^{p.delta}',
                      commutator_word(t, a_m.inverse()) * a_delta))
    details: List[Instance] = []
    for desc, w in cases:
        ident: bool = is_identity(p, w)
        details.append(Instance(desc, 'holds' if ident else 'fails',
                                'holds', ident))
    return _report('thm2-identity', params, details)


def verify_thm2_quotient_level(p: BSParams, c_max: int, k_window: int,
                               budget: BudgetConfig = None) -> \
        VerificationReport:
    """The image ``A`` of ``gamma_omega`` in the class ``c_max`` quotient
    satisfies ``[A, G] = A``.

    """
    check: str = 'thm2-quotient'
    pc: PcPresentation = bs_quotient(p, c_max, budget)
    lattice, window = _stable_closure(
        pc, _family_words(gamma_omega_generators(p)), k_window)
    params: Dict[str, Any] = _group_params(
        p, class_bound=c_max, k_window=window)
    note: str = ('the closure is of the generators with |k| <= ' +
                 f'{window}, a finitely generated part of gamma_omega')
    if lattice is None:
        return VerificationReport(check, params, INCONCLUSIVE, notes=(
            f'closure did not stabilize up to window {window}',))
    comm: ExponentLattice = commutator_lattice(pc, lattice, full_lattice(pc))
    return _report(check, params, [Instance(
        '[A, G] = A', str(comm), str(lattice), comm == lattice)], (note,))


def _corollary_words(p: BSParams, k_window: int, exp_window: int) -> \
        List[FreeWord]:
    a = FreeWord.generator(A)
    a_d = FreeWord.generator(A, p.d)
    words: List[FreeWord] = []
    for k in range(-k_window, k_window + 1):
        conj = FreeWord.generator(T, k)
        for x in range(-exp_window, exp_window + 1):
            for y in range(-exp_window, exp_window + 1):
                words.append(commutator_word(
                    (a_d.conjugate(conj)) ** x, a ** y))
                words.append(commutator_word(
                    (a.conjugate(conj)) ** y, a_d ** x))
    return words


def verify_corollary_user(p: BSParams, c_max: int, k_window: int,
                          exp_window: int, budget: BudgetConfig = None) -> \
        VerificationReport:
    """Both families ``[(t^-k a^d t^k)^x, a^y]`` and ``[(t^-k a t^k)^y,
    (a^d)^x]`` lie in ``gamma_(c_max+1)``.

    """
    pc: PcPresentation = bs_quotient(p, c_max, budget)
    return _report('corollary',
                   _group_params(p, class_bound=c_max, k_window=k_window,
                                 exp_window=exp_window),
                   vanishing_instances(
                       pc, _corollary_words(p, k_window, exp_window)))


def verify_lemma_kofinas(p: BSParams, c_max: int, k_window: int,
                         budget: BudgetConfig = None) -> VerificationReport:
    """Every ``[t^-k a^mu t^k, a^nu]`` with coprime ``mu * nu = d`` lies in
    ``gamma_(c_max+1)``.

    """
    pc: PcPresentation = bs_quotient(p, c_max, budget)
    words: List[FreeWord] = []
    for mu, nu in coprime_factor_pairs(p.d):
        for k in range(-k_window, k_window + 1):
            conj = FreeWord.generator(T, k)
            words.append(commutator_word(
                FreeWord.generator(A, mu).conjugate(conj),
                FreeWord.generator(A, nu)))
    return _report('kofinas',
                   _group_params(p, class_bound=c_max, k_window=k_window,
                                 pairs=list(map(list,
                                                coprime_factor_pairs(p.d)))),
                   vanishing_instances(pc, words))


def verify_bounds_chain(p: BSParams, c_max: int, primes: Sequence[int],
                        k_window: int = 3, budget: BudgetConfig = None) -> \
        VerificationReport:
    """The images satisfy ``N_omega <= gamma_omega <= (Np)_omega`` for each
    prime.

    :raises ParameterError: if a number in ``primes`` is not prime

    """
    for q in primes:
        if not isprime(q):
            raise ParameterError(f'Not a prime: {q}')
    check: str = 'bounds'
    pc: PcPresentation = bs_quotient(p, c_max, budget)
    fams: List[Tuple[str, GeneratorFamily]] = [
        ('N_omega', n_omega_generators(p)),
        ('gamma_omega', gamma_omega_generators(p))]
    fams.extend(map(lambda q: (f'(N{q})_omega', np_omega_generators(p, q)),
                    primes))
    lattices: Dict[str, ExponentLattice] = {}
    windows: List[int] = []
    for name, fam in fams:
        lattice, window = _stable_closure(pc, _family_words(fam), k_window)
        if lattice is None:
            return VerificationReport(
                check, _group_params(p, class_bound=c_max, k_window=window,
                                     primes=list(primes)),
                INCONCLUSIVE,
                notes=(f'{name} closure did not stabilize up to window ' +
                       f'{window}',))
        lattices[name] = lattice
        windows.append(window)
    pairs: List[Tuple[str, str]] = [('N_omega', 'gamma_omega')]
    pairs.extend(map(lambda q: ('gamma_omega', f'(N{q})_omega'), primes))
    details: List[Instance] = []
    for sub, sup in pairs:
        inside: bool = lattices[sub].issubset(lattices[sup])
        details.append(Instance(
            f'{sub} <= {sup}',
            f'{lattices[sub]} in {lattices[sup]}' if inside
            else f'{lattices[sub]} not in {lattices[sup]}',
            'contained', inside))
    return _report(check, _group_params(
        p, class_bound=c_max, k_window=max(windows), primes=list(primes)),
        details)


def verify_subgroup_relation(p: BSParams, q: int) -> VerificationReport:
    """With ``q^mu`` exactly dividing ``d`` and ``u = a^(q^mu)``, the relation
    ``t^-1 u^(m/q^mu) t = u^(n/q^mu)`` holds.

    :raises ParameterError: if ``q`` is not prime

    """
    if not isprime(q):
        raise ParameterError(f'Not a prime: {q}')
    params: Dict[str, Any] = _group_params(p, prime=q, d=p.d)
    if p.d % q != 0:
        return _not_applicable('subgroup', params, f'{q} does not divide {p.d}')
    qmu: int = q ** multiplicity(q, p.d)
    mj: int = p.m // qmu
    nj: int = p.n // qmu
    u = FreeWord.generator(A, qmu)
    t = FreeWord.generator(T)
    w: FreeWord = (u ** mj).conjugate(t) * (u ** nj).inverse()
    ident: bool = is_identity(p, w)
    return _report('subgroup', params, [Instance(
        f't^-1 u^{mj} t = u^{nj}, u = a^{qmu}',
        'holds' if ident else 'fails', 'holds', ident)])


def _random_word(rand: random.Random, rank: int, max_len: int) -> FreeWord:
    return FreeWord(tuple(
        (rand.randrange(rank), rand.choice((-1, 1)))
        for _ in range(rand.randint(0, max_len))))


def verify_commutator_identities(sample_size: int, seed: int = 0,
                                 c_max: int = 4,
                                 budget: BudgetConfig = None) -> \
        VerificationReport:
    """The expansions ``[ab, c] = [a, c] [[a, c], b] [b, c]`` and ``[a, bc] =
    [a, c] [a, b] [[a, b], c]`` as free group identities on random triples,
    and ``[x^k, y] = [x, y^k] = [x, y]^k`` modulo ``gamma_3`` in the free
    nilpotent quotient for ``k <= 5``.

    """
    rand = random.Random(seed)
    names: Tuple[str, ...] = ('x', 'y', 'z')
    details: List[Instance] = []
    for _ in range(sample_size):
        a, b, c = (_random_word(rand, 3, 6) for _ in range(3))
        trip: str = ', '.join(map(lambda w: format_word(w, names), (a, b, c)))
        left = commutator_word(a * b, c)
        ac = commutator_word(a, c)
        right = ac * commutator_word(ac, b) * commutator_word(b, c)
        details.append(Instance(f'[ab,c] for ({trip})',
                                format_word(left * right.inverse(), names),
                                '1', left == right))
        left = commutator_word(a, b * c)
        ab = commutator_word(a, b)
        right = ac * ab * commutator_word(ab, c)
        details.append(Instance(f'[a,bc] for ({trip})',
                                format_word(left * right.inverse(), names),
                                '1', left == right))
    pres = free_presentation(2)
    pc: PcPresentation = nilpotent_quotient(pres, max(2, min(c_max, 4)), budget)
    x, y = FreeWord.generator(0), FreeWord.generator(1)
    xy = commutator_word(x, y)
    for kappa in range(1, 6):
        for desc, w in ((f'[x^{kappa},y] = [x,y]^{kappa}',
                         commutator_word(x ** kappa, y)),
                        (f'[x,y^{kappa}] = [x,y]^{kappa}',
                         commutator_word(x, y ** kappa))):
            inside: bool = in_gamma(pc, w * xy ** -kappa, 2)
            details.append(Instance(
                f'{desc} mod gamma_3', 'congruent' if inside else 'differs',
                'congruent', inside))
    return _report('commutator-identities',
                   {'sample_size': sample_size, 'seed': seed,
                    'class_bound': pc.nilpotency_class}, details)


def _expected_abelianization(p: BSParams) -> AbelianInvariants:
    return AbelianInvariants.from_divisors((0, p.delta))


def order_bound_instance(degree: int, inv: AbelianInvariants,
                         bound: int) -> Instance:
    """Compare the graded quotient ``inv`` of ``degree`` with an order bound:
    it passes when ``inv`` is finite and its order divides ``bound``.

    """
    ok: bool = inv.is_finite and bound % inv.order == 0
    return Instance(
        f'gr_{degree}', f'{inv} (order {inv.order})' if inv.is_finite
        else str(inv), f'finite, order dividing {bound}', ok)


def verify_grc_finiteness(p: BSParams, c_max: int,
                          budget: BudgetConfig = None) -> VerificationReport:
    """The graded quotients ``gr_i`` are finite of order dividing
    :func:`.grc_order_bound` for ``2 <= i <= c_max`` and ``gr_1`` is ``Z +
    Z/|n-m|`` (``Z^2`` when ``n = m``).

    :raises ParameterError: if ``c_max < 2``

    """
    if c_max < 2:
        raise ParameterError(f'Class bound must be at least 2: {c_max}')
    pc: PcPresentation = bs_quotient(p, c_max, budget)
    gr: Tuple[AbelianInvariants, ...] = pc.invariants
    expect: AbelianInvariants = _expected_abelianization(p)
    details: List[Instance] = [Instance(
        'gr_1', str(gr[0]), str(expect), gr[0] == expect)]
    for i in range(2, c_max + 1):
        details.append(order_bound_instance(
            i, gr[i - 1], grc_order_bound(p, i)))
    return _report('grc-finiteness', _group_params(p, class_bound=c_max),
                   details)


def verify_zzm_vanishing(m: int, c_max: int, k_window: int,
                         budget: BudgetConfig = None) -> VerificationReport:
    """Every instantiated generator of ``gamma_omega(Z * Z_m)`` lies in every
    ``gamma_i``, ``i <= c_max``, and at least one is nontrivial when ``m`` has
    two prime factors.

    """
    fam: GeneratorFamily = zzm_gamma_omega_generators(m)
    pc: PcPresentation = nilpotent_quotient(zzm_presentation(m), c_max, budget)
    words: Tuple[FreeWord, ...] = instantiate(fam, k_window)
    details: List[Instance] = vanishing_instances(pc, words)
    if len(factorint(m)) >= 2:
        nontrivial: List[FreeWord] = list(filter(
            lambda w: not free_product_reduce(m, w).is_identity, words))
        details.append(Instance(
            'a generator is nontrivial in the free product',
            format_word(nontrivial[0]) if len(nontrivial) > 0 else 'none',
            'a nontrivial word', len(nontrivial) > 0))
    return _report('zzm', {'group': fam.group, 'class_bound': c_max,
                           'k_window': k_window}, details)


def verify_zzm_product_vanishing(prime_powers: Sequence[int], c_max: int,
                                 k_window: int,
                                 budget: BudgetConfig = None) -> \
        VerificationReport:
    """Every instantiated ``[t^-k x_i t^k, x_j]`` of ``Z * (Z_q1 x ... x
    Z_qk)`` lies in every ``gamma_i``, ``i <= c_max``.

    """
    fam: GeneratorFamily = zzm_product_generators(prime_powers)
    pres = zzm_product_presentation(prime_powers)
    pc: PcPresentation = nilpotent_quotient(pres, c_max, budget)
    return _report('zzm', {'group': fam.group, 'class_bound': c_max,
                           'k_window': k_window},
                   vanishing_instances(
                       pc, instantiate(fam, k_window), pres.names))


def _subgroup_check(p: BSParams, cfg: RunConfig) -> VerificationReport:
    primes: List[int] = sorted(factorint(p.d))
    if len(primes) == 0:
        return _not_applicable('subgroup', _group_params(p, d=p.d),
                               'no prime divides d = 1')
    reports: List[VerificationReport] = list(map(
        lambda q: verify_subgroup_relation(p, q), primes))
    details: Tuple[Instance, ...] = sum(map(lambda r: r.details, reports), ())
    return _report('subgroup', _group_params(p, d=p.d, primes=primes),
                   details)


def _zzm_check(p: BSParams, cfg: RunConfig) -> VerificationReport:
    if len(cfg.torsion) == 1:
        return verify_zzm_vanishing(cfg.torsion[0], cfg.class_bound,
                                    cfg.k_window, cfg.budget)
    return verify_zzm_product_vanishing(cfg.torsion, cfg.class_bound,
                                        cfg.k_window, cfg.budget)


CHECKS: Dict[str, Callable[[BSParams, RunConfig], VerificationReport]] = {
    'gamma-omega': lambda p, cfg: verify_gamma_omega_vanishing(
        p, cfg.class_bound, cfg.k_window, cfg.budget),
    'trivial-res-nilpotent': lambda p, cfg: verify_trivial_when_res_nilpotent(
        p, cfg.k_window),
    'thm2-identity': lambda p, cfg: verify_thm2_identity(p),
    'thm2-quotient': lambda p, cfg: verify_thm2_quotient_level(
        p, cfg.class_bound, cfg.k_window, cfg.budget),
    'corollary': lambda p, cfg: verify_corollary_user(
        p, cfg.class_bound, cfg.k_window, cfg.exp_window, cfg.budget),
    'kofinas': lambda p, cfg: verify_lemma_kofinas(
        p, cfg.class_bound, cfg.k_window, cfg.budget),
    'bounds': lambda p, cfg: verify_bounds_chain(
        p, cfg.class_bound, cfg.primes, cfg.k_window, cfg.budget),
    'subgroup': _subgroup_check,
    'grc-finiteness': lambda p, cfg: verify_grc_finiteness(
        p, max(2, cfg.class_bound), cfg.budget),
    'commutator-identities': lambda p, cfg: verify_commutator_identities(
        cfg.sample_size, cfg.seed, min(cfg.class_bound, 4), cfg.budget),
    'zzm': _zzm_check,
}
"""The checks by name, each taking the group and the run configuration."""

GROUP_CHECKS: Tuple[str, ...] = (
    'gamma-omega', 'trivial-res-nilpotent', 'thm2-identity', 'thm2-quotient',
    'corollary', 'kofinas', 'bounds', 'subgroup', 'grc-finiteness')
"""The checks run by ``verify --all``: those about the given group."""


def run_check(name: str, p: BSParams, cfg: RunConfig) -> VerificationReport:
    """Run the check ``name`` from :obj:`CHECKS`.

    :raises ParameterError: if there is no such check

    """
    fn: Callable = CHECKS.get(name)
    if fn is None:
        raise ParameterError(
            f"No such check: {name} (one of {', '.join(CHECKS)})")
    if logger.isEnabledFor(logging.INFO):
        logger.info(f'running {name} on {p}')
    return fn(p, cfg)
