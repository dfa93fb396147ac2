"""The nilpotent quotient algorithm: presentations of ``G/gamma_(c+1)(G)`` for
finitely presented ``G`` built one central layer at a time, with word images,
graded quotients and subgroup lattices in the quotients.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Sequence, Iterable, Any, Optional
from dataclasses import dataclass, field
import dataclasses
import logging
from functools import lru_cache
from .domain import (
    Config, BaumslagSolitarError, ParameterError, ResourceBudgetError
)
from .presentation import (
    FreeWord, BSParams, GroupPresentation, bs_presentation
)
from .matrix import (
    IntMatrix, SmithForm, smith_normal_form, hermite_normal_form,
    lattice_coordinates, row_times
)
from .pcp import (
    Vector, AbelianInvariants, PcPresentation, InducedSequence,
    ExponentLattice, subgroup_lattice, pivot
)

logger = logging.getLogger(__name__)


@dataclass
class BudgetConfig(Config):
    """The ``budget`` section of the configuration, which bounds the work of
    :func:`nilpotent_quotient`.

    """
    max_generators: int = field(default=400)
    """The largest number of polycyclic generators of a quotient."""

    max_bits: int = field(default=4096)
    """The largest bit length of any exponent in a relation."""

    @classmethod
    def instance(cls, data: Dict[str, Any]) -> BudgetConfig:
        return BudgetConfig(
            data=data,
            max_generators=cls._get_int(
                data, 'max_generators', 'generator budget', 400),
            max_bits=cls._get_int(data, 'max_bits', 'bit length budget', 4096))

    @classmethod
    def default(cls) -> BudgetConfig:
        return cls.instance({})

    def check(self, pc: PcPresentation):
        """:raises ResourceBudgetError: if ``pc`` exceeds the budget"""
        if pc.generator_count > self.max_generators:
            raise ResourceBudgetError(
                f'Class {pc.nilpotency_class} quotient needs ' +
                f'{pc.generator_count} generators, over the budget of ' +
                f'{self.max_generators}')
        vecs: Iterable[Vector] = (tuple(pc.powers.values()) +
                                  tuple(pc.commutators.values()) +
                                  pc.epimorphism)
        bits: int = max((abs(e).bit_length() for v in vecs for e in v),
                        default=0)
        if bits > self.max_bits:
            raise ResourceBudgetError(
                f'Class {pc.nilpotency_class} quotient has {bits} bit ' +
                f'exponents, over the budget of {self.max_bits}')


def _pc_names(count: int) -> Tuple[str, ...]:
    return tuple(map(lambda i: f'g{i + 1}', range(count)))


class _CentralExtension(object):
    """Extends the class ``c`` quotient ``Q`` by one central layer.  Every
    relation of ``Q`` and every group generator gets a tail, the overlap
    tests give the relations among the tails and the relator images together
    with the image of the free group cut the layer down to ``gr_(c+1)``.

    """
    def __init__(self, quotient: PcPresentation, pres: GroupPresentation,
                 budget: BudgetConfig):
        self.q = quotient
        self.pres = pres
        self.budget = budget
        self.n: int = quotient.generator_count
        self.c: int = quotient.nilpotency_class
        q: PcPresentation = quotient
        tails: List[Tuple[str, Any]] = []
        for i in range(self.n):
            if q.orders[i] != 0:
                tails.append(('power', i))
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if q.weights[i] + q.weights[j] <= self.c + 1:
                    tails.append(('commutator', (j, i)))
        for x in range(pres.generator_count):
            tails.append(('generator', x))
        self.tails: Tuple[Tuple[str, Any], ...] = tuple(tails)

    def _build(self, tail_map: Sequence[Sequence[int]],
               tail_orders: Sequence[int]) -> PcPresentation:
        """Add the tails ``tail_map[var]`` (in the new generators of orders
        ``tail_orders``) to the relations of the quotient.

        """
        q: PcPresentation = self.q
        zero: Vector = q.identity()
        powers: Dict[int, Vector] = {}
        comms: Dict[Tuple[int, int], Vector] = {}
        for var, (kind, key) in enumerate(self.tails):
            if kind == 'power':
                powers[key] = q.powers.get(key, zero) + tuple(tail_map[var])
            elif kind == 'commutator':
                vec: Vector = q.commutators.get(key, zero) + \
                    tuple(tail_map[var])
                if any(vec):
                    comms[key] = vec
        count: int = self.n + len(tail_orders)
        return PcPresentation(
            names=_pc_names(count),
            weights=q.weights + (self.c + 1,) * len(tail_orders),
            orders=q.orders + tuple(tail_orders),
            powers=powers,
            commutators=comms,
            nilpotency_class=self.c + 1)

    def _tail_relations(self) -> List[List[int]]:
        """Collect the overlaps with free tails and return the differences."""
        t: int = len(self.tails)
        units: List[List[int]] = [[1 if i == j else 0 for j in range(t)]
                                  for i in range(t)]
        free: PcPresentation = self._build(units, (0,) * t)
        n: int = self.n
        rows: List[List[int]] = []
        for label, lhs, rhs in free.consistency_checks(self.c + 1):
            if lhs[:n] != rhs[:n]:
                raise BaumslagSolitarError(
                    f'Class {self.c} quotient is inconsistent at {label}')
            diff: List[int] = [a - b for a, b in zip(lhs[n:], rhs[n:])]
            if any(diff):
                rows.append(diff)
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f'{len(rows)} tail relations over {t} tails')
        return rows

    @staticmethod
    def _padded(smith: SmithForm, size: int) -> List[int]:
        divs: List[int] = list(smith.divisors)
        return divs + [0] * (size - len(divs))

    def _tail_quotient(self) -> Tuple[List[List[int]], List[int]]:
        """Return the tail map to the tail group modulo the overlap relations
        and the orders of its generators.

        """
        t: int = len(self.tails)
        basis: List[List[int]] = hermite_normal_form(self._tail_relations(), t)
        smith: SmithForm = smith_normal_form(IntMatrix.of(basis, t))
        divs: List[int] = self._padded(smith, t)
        kept: List[int] = [i for i in range(t) if divs[i] != 1]
        right: List[List[int]] = smith.right.tolist()
        tail_map: List[List[int]] = []
        for var in range(t):
            tail_map.append(list(map(
                lambda i: right[var][i] % divs[i] if divs[i] != 0
                else right[var][i], kept)))
        return tail_map, list(map(lambda i: divs[i], kept))

    def extend(self) -> PcPresentation:
        q: PcPresentation = self.q
        n: int = self.n
        c: int = self.c
        tail_map, tail_orders = self._tail_quotient()
        cover: PcPresentation = self._build(tail_map, tail_orders)
        tn: int = len(tail_orders)
        gen_var: Dict[int, int] = {key: var for var, (kind, key)
                                   in enumerate(self.tails)
                                   if kind == 'generator'}
        psi: List[Vector] = []
        for x in range(self.pres.generator_count):
            psi.append(q.epimorphism[x] + tuple(tail_map[gen_var[x]]))
        # relator images in the central layer
        rels: List[List[int]] = []
        for rel in self.pres.relators:
            vec: Vector = cover.evaluate(psi, rel)
            if any(vec[:n]):
                raise BaumslagSolitarError(
                    f'Relator {self.pres.format(rel)} does not vanish ' +
                    f'in the class {c} quotient')
            rels.append(list(vec[n:]))
        # the image of the free group in the cover
        seq = InducedSequence(cover)
        for vec in psi:
            seq.add(vec)
        seq.close()
        by_pivot: Dict[int, Vector] = {pivot(r): r for r in seq.canonical()}
        lifts: List[Vector] = []
        for k in range(n):
            row: Vector = by_pivot.get(k)
            if row is None or row[:n] != q.unit(k):
                raise BaumslagSolitarError(
                    f'Generator g{k + 1} has no lift in the class {c + 1} cover')
            lifts.append(row)
        layer: List[List[int]] = [list(r[n:]) for p, r in by_pivot.items()
                                  if p >= n]
        for i, o in enumerate(tail_orders):
            if o != 0:
                vec = [0] * tn
                vec[i] = o
                layer.append(vec)
                rels.append(vec)
        basis: List[List[int]] = hermite_normal_form(layer, tn)
        coords: List[List[int]] = []
        for rel in rels:
            co: Optional[List[int]] = lattice_coordinates(basis, rel)
            if co is None:
                raise BaumslagSolitarError(
                    f'Relator image {rel} outside of the free group image')
            coords.append(co)
        smith: SmithForm = smith_normal_form(IntMatrix.of(coords, len(basis)))
        divs: List[int] = self._padded(smith, len(basis))
        kept: List[int] = [i for i in range(len(basis)) if divs[i] != 1]
        right: IntMatrix = smith.right

        def to_layer(lam: Sequence[int]) -> Vector:
            co: Optional[List[int]] = lattice_coordinates(basis, lam)
            if co is None:
                raise BaumslagSolitarError(
                    f'Tail {lam} outside of the free group image')
            y: List[int] = row_times(co, right) if len(co) > 0 else []
            return tuple(map(lambda i: y[i] % divs[i] if divs[i] != 0
                             else y[i], kept))

        def lift(vec: Sequence[int]) -> Vector:
            result: Vector = cover.identity()
            for k, e in enumerate(vec[:n]):
                if e != 0:
                    result = cover.multiply(result, cover.power(lifts[k], e))
            return result

        def diff(a: Vector, b: Vector) -> List[int]:
            if a[:n] != b[:n]:
                raise BaumslagSolitarError(
                    f'Lifted relation disagrees in class {c}: {a} != {b}')
            return [x - y for x, y in zip(a[n:], b[n:])]

        zero: Vector = q.identity()
        powers: Dict[int, Vector] = {}
        for k in range(n):
            o: int = q.orders[k]
            if o != 0:
                base: Vector = q.powers.get(k, zero)
                vec = base + to_layer(diff(cover.power(lifts[k], o),
                                           lift(base)))
                if any(vec):
                    powers[k] = vec
        comms: Dict[Tuple[int, int], Vector] = {}
        for i in range(n):
            for j in range(i + 1, n):
                if q.weights[i] + q.weights[j] <= c + 1:
                    base = q.commutators.get((j, i), zero)
                    vec = base + to_layer(diff(
                        cover.commutator(lifts[j], lifts[i]), lift(base)))
                    if any(vec):
                        comms[(j, i)] = vec
        epi: List[Vector] = []
        for x, img in enumerate(psi):
            base = q.epimorphism[x]
            epi.append(base + to_layer(diff(img, lift(base))))
        invs = AbelianInvariants.from_divisors(map(lambda i: divs[i], kept))
        count: int = n + len(kept)
        ext = PcPresentation(
            names=_pc_names(count),
            weights=q.weights + (c + 1,) * len(kept),
            orders=q.orders + tuple(map(lambda i: divs[i], kept)),
            powers=powers,
            commutators=comms,
            epimorphism=tuple(epi),
            group_names=q.group_names,
            invariants=q.invariants + (invs,),
            nilpotency_class=c + 1)
        self.budget.check(ext)
        return ext


def _trivial_quotient(pres: GroupPresentation) -> PcPresentation:
    return PcPresentation(
        names=(), weights=(), orders=(),
        epimorphism=((),) * pres.generator_count,
        group_names=pres.names)


def nilpotent_quotient(pres: GroupPresentation, c: int,
                       budget: BudgetConfig = None) -> PcPresentation:
    """Compute a consistent weighted polycyclic presentation of
    ``G/gamma_(c+1)(G)`` with the epimorphism from the group generators.  The
    first layer is the abelianization given by the Smith normal form of the
    relator exponent sums.

    :param pres: the finitely presented group ``G``

    :param c: the class of the quotient

    :param budget: the resource limits, which default to
                   :meth:`.BudgetConfig.default`

    :raises ResourceBudgetError: if a quotient exceeds the budget

    """
    if c < 1:
        raise ParameterError(f'Class must be positive: {c}')
    budget = BudgetConfig.default() if budget is None else budget
    quot: PcPresentation = _trivial_quotient(pres)
    for cls in range(1, c + 1):
        if cls > 1 and quot.invariants[-1].is_trivial:
            # gamma_i = gamma_(i+1) so every later layer is trivial
            quot = dataclasses.replace(
                quot, invariants=quot.invariants + (AbelianInvariants(),),
                nilpotency_class=cls)
        else:
            quot = _CentralExtension(quot, pres, budget).extend()
        if logger.isEnabledFor(logging.INFO):
            logger.info(f'class {cls}: {quot.generator_count} generators, ' +
                        f'gr_{cls} = {quot.invariants[-1]}')
    return quot


@lru_cache(maxsize=64)
def _bs_quotient(m: int, n: int, c: int, max_generators: int,
                 max_bits: int) -> PcPresentation:
    budget = BudgetConfig(data={}, max_generators=max_generators,
                          max_bits=max_bits)
    return nilpotent_quotient(bs_presentation(BSParams.of(m, n)), c, budget)


def bs_quotient(p: BSParams, c: int,
                budget: BudgetConfig = None) -> PcPresentation:
    """Return the (cached) class ``c`` quotient of ``BS(m, n)``."""
    budget = BudgetConfig.default() if budget is None else budget
    return _bs_quotient(p.m, p.n, c, budget.max_generators, budget.max_bits)


def collect(pc: PcPresentation, w: FreeWord) -> Vector:
    """The normal form of a word over the polycyclic generators."""
    return pc.collect(w)


def image(pc: PcPresentation, w: FreeWord) -> Vector:
    """The normal form of the image of a word over the group generators."""
    return pc.image(w)


def graded_quotients(pc: PcPresentation) -> Tuple[AbelianInvariants, ...]:
    """The invariants of ``gr_i(G)`` for ``1 <= i <= c``."""
    return pc.invariants


def in_gamma(pc: PcPresentation, w: FreeWord, i: int) -> bool:
    """Whether the image of ``w`` is in ``gamma_(i+1)`` of the quotient, that
    is, it has no exponents on generators of weight ``i`` or less.

    """
    if i < 1 or i > pc.nilpotency_class:
        raise ParameterError(
            f'Weight must be in [1, {pc.nilpotency_class}]: {i}')
    vec: Vector = pc.image(w)
    return all(map(lambda ew: ew[0] == 0 or ew[1] > i,
                   zip(vec, pc.weights)))


def normal_closure_lattice(pc: PcPresentation,
                           gens: Iterable[FreeWord]) -> ExponentLattice:
    """The normal closure in the quotient of the images of ``gens``."""
    return subgroup_lattice(pc, map(pc.image, gens), normal=True)


def commutator_lattice(pc: PcPresentation, a: ExponentLattice,
                       b: ExponentLattice) -> ExponentLattice:
    """The subgroup ``[A, B]`` of normal subgroups ``A`` and ``B``: the normal
    closure of the commutators of their rows.

    :raises ParameterError: if a lattice is over another presentation

    """
    for lat in (a, b):
        if lat.pc is not pc:
            raise ParameterError(
                'Lattices are over different polycyclic presentations')
    comms: List[Vector] = []
    for x in a.rows:
        for y in b.rows:
            comms.append(pc.commutator(x, y))
    return subgroup_lattice(pc, comms, normal=True)


def gamma_lattice(pc: PcPresentation, i: int) -> ExponentLattice:
    """The image of ``gamma_i(G)``, which is spanned by the generators of
    weight at least ``i``.

    """
    return ExponentLattice(pc, tuple(map(
        pc.unit, filter(lambda g: pc.weights[g] >= i,
                        range(pc.generator_count)))))


def graded_bracket(pc: PcPresentation, i: int, j: int) -> \
        Dict[Tuple[str, str], Vector]:
    """The Lie bracket ``gr_i x gr_j -> gr_(i+j)`` on the polycyclic
    generators: each ordered pair of generators of weights ``i`` and ``j`` to
    the weight ``i + j`` exponents of their commutator.  The table is empty
    when ``i + j`` is beyond the class.

    """
    if i < 1 or j < 1:
        raise ParameterError(f'Weights must be positive: ({i}, {j})')
    table: Dict[Tuple[str, str], Vector] = {}
    if i + j > pc.nilpotency_class:
        return table
    for a in filter(lambda g: pc.weights[g] == i, range(pc.generator_count)):
        for b in filter(lambda g: pc.weights[g] == j,
                        range(pc.generator_count)):
            if a != b:
                comm: Vector = pc.commutator(pc.unit(a), pc.unit(b))
                table[(pc.names[a], pc.names[b])] = pc.layer(comm, i + j)
    return table

