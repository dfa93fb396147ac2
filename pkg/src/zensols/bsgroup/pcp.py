"""Weighted polycyclic presentations of nilpotent groups, collection to
normal form and subgroups represented as induced polycyclic sequences.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Set, Iterable, Iterator, Sequence, Any, Optional
from dataclasses import dataclass, field
import logging
from .domain import (
    Flattenable, BaumslagSolitarError, ParameterError, UnknownGeneratorError
)
from .presentation import FreeWord, format_word
from .matrix import xgcd

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]
"""The exponents ``(e_1, ..., e_N)`` of the normal form ``g_1^e_1 ... g_N^e_N``."""

Syllable = Tuple[int, int]


def _word(vec: Sequence[int]) -> List[Syllable]:
    return [(i, e) for i, e in enumerate(vec) if e != 0]


def _inverse_word(vec: Sequence[int]) -> List[Syllable]:
    return [(i, -e) for i, e in reversed(tuple(enumerate(vec))) if e != 0]


def _push(stack: List[Syllable], word: List[Syllable], times: int = 1):
    """Push ``word`` so its first syllable is processed first."""
    for _ in range(times):
        stack.extend(reversed(word))


def pivot(vec: Sequence[int]) -> Optional[int]:
    """The index of the first nonzero exponent or ``None`` for the identity."""
    for i, e in enumerate(vec):
        if e != 0:
            return i
    return None


@dataclass(unsafe_hash=True)
class AbelianInvariants(Flattenable):
    """A finitely generated abelian group ``Z^r + Z/t_1 + ... + Z/t_k`` with
    each ``t_i`` dividing ``t_(i+1)``.

    """
    free_rank: int = field(default=0)
    torsion: Tuple[int, ...] = field(default=())
    """The invariant factors, all at least two."""

    @staticmethod
    def from_divisors(divisors: Iterable[int]) -> AbelianInvariants:
        """Create the invariants from the Smith normal form diagonal of a
        relation matrix, where a zero is a free factor and a one is trivial.

        """
        divs: Tuple[int, ...] = tuple(map(abs, divisors))
        return AbelianInvariants(
            free_rank=sum(1 for d in divs if d == 0),
            torsion=tuple(sorted(d for d in divs if d > 1)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and len(self.torsion) == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        """The group order, or 0 if the group is infinite."""
        if self.free_rank > 0:
            return 0
        order: int = 1
        for t in self.torsion:
            order *= t
        return order

    def asdict(self) -> Dict[str, Any]:
        return {'free_rank': self.free_rank,
                'torsion': list(self.torsion),
                'text': str(self)}

    def __str__(self) -> str:
        parts: List[str] = []
        if self.free_rank == 1:
            parts.append('Z')
        elif self.free_rank > 1:
            parts.append(f'Z^{self.free_rank}')
        parts.extend(map(lambda t: f'Z/{t}', self.torsion))
        return ' + '.join(parts) if len(parts) > 0 else '0'


@dataclass(eq=False)
class PcPresentation(Flattenable):
    """A weighted polycyclic presentation of a nilpotent group on generators
    ``g_1..g_N`` with nondecreasing weights.  Power relations read
    ``g_i^o_i = powers[i]`` and commutator relations ``[g_j, g_i] =
    commutators[(j, i)]`` for ``j > i``; relations not given are trivial.
    The vectors are normal forms over the generators after ``g_i`` (and after
    ``g_j`` for commutators).

    """
    names: Tuple[str, ...] = field()
    """The polycyclic generator names."""

    weights: Tuple[int, ...] = field()
    """The lower central series weight of each generator."""

    orders: Tuple[int, ...] = field()
    """The relative orders, where 0 is infinite."""

    powers: Dict[int, Vector] = field(default_factory=dict)
    """Generator index to the normal form of ``g_i^o_i``."""

    commutators: Dict[Tuple[int, int], Vector] = field(default_factory=dict)
    """The pair ``(j, i)``, ``j > i``, to the normal form of ``[g_j, g_i]``."""

    epimorphism: Tuple[Vector, ...] = field(default=())
    """The images of the group generators."""

    group_names: Tuple[str, ...] = field(default=())
    """The names of the group (not polycyclic) generators."""

    invariants: Tuple[AbelianInvariants, ...] = field(default=())
    """The invariants of ``gr_i`` for each weight ``i``."""

    nilpotency_class: int = field(default=0)
    """The class ``c`` of the presented quotient ``G/gamma_(c+1)(G)``."""

    def __post_init__(self):
        n: int = len(self.names)
        if len(self.weights) != n or len(self.orders) != n:
            raise ParameterError(
                f'Generator count mismatch: {n} names, ' +
                f'{len(self.weights)} weights, {len(self.orders)} orders')
        for rel in (tuple(self.powers.values()) +
                    tuple(self.commutators.values()) + self.epimorphism):
            if len(rel) != n:
                raise ParameterError(f'Expecting {n} exponents: {rel}')
        self._conjugates: Dict[Tuple[int, int], Optional[Vector]] = {}
        self._inverse_conjugates: Dict[int, Dict[int, Optional[Vector]]] = {}

    @property
    def generator_count(self) -> int:
        return len(self.names)

    @property
    def max_weight(self) -> int:
        """The largest generator weight, which bounds the nilpotency class."""
        return max(self.weights) if len(self.weights) > 0 else 0

    def identity(self) -> Vector:
        return (0,) * self.generator_count

    def unit(self, i: int) -> Vector:
        """The normal form of generator ``g_i``."""
        return self._scaled(i, 1)

    def _scaled(self, i: int, e: int) -> Vector:
        vec: List[int] = [0] * self.generator_count
        vec[i] = e
        return tuple(vec)

    def _conjugate(self, j: int, k: int, step: int) -> Optional[Vector]:
        """The normal form of ``g_j^(g_k^step)`` for ``j > k`` or ``None`` when
        the generators commute.

        """
        if step < 0:
            return self._inverse_conjugate(j, k)
        key: Tuple[int, int] = (j, k)
        if key not in self._conjugates:
            tail: Vector = self.commutators.get(key)
            if tail is None or not any(tail):
                self._conjugates[key] = None
            else:
                vec: List[int] = list(tail)
                vec[j] += 1
                self._conjugates[key] = tuple(vec)
        return self._conjugates[key]

    def _inverse_conjugate(self, j: int, k: int) -> Optional[Vector]:
        table: Dict[int, Optional[Vector]] = self._inverse_conjugates.get(k)
        if table is None:
            table = {}
            self._inverse_conjugates[k] = table
            # g_j^(g_k) = g_j W gives g_j^(g_k^-1) = g_j (g_k W g_k^-1)^-1,
            # which needs the conjugates of the later generators first
            for jj in range(self.generator_count - 1, k, -1):
                tail: Vector = self.commutators.get((jj, k))
                if tail is None or not any(tail):
                    table[jj] = None
                    continue
                vec: List[int] = list(self.unit(k))
                stack: List[Syllable] = [(k, -1)]
                _push(stack, _word(tail))
                shifted: List[int] = self._collect(vec, stack)
                conj: List[int] = list(self.unit(jj))
                stack = []
                _push(stack, _inverse_word(shifted))
                table[jj] = tuple(self._collect(conj, stack))
        return table[j]

    def _add(self, vec: List[int], g: int, e: int, stack: List[Syllable]):
        """Add ``e`` to the exponent of ``g`` when no later exponent is set."""
        o: int = self.orders[g]
        if o == 0:
            vec[g] += e
        else:
            q, r = divmod(vec[g] + e, o)
            vec[g] = r
            if q != 0:
                power: Vector = self.powers.get(g)
                if power is not None and any(power):
                    if q > 0:
                        _push(stack, _word(power), q)
                    else:
                        _push(stack, _inverse_word(power), -q)

    def _collect(self, vec: List[int], stack: List[Syllable]) -> List[int]:
        """Collect from the left: multiply the normal form ``vec`` by the
        syllables on ``stack`` (the last is processed first).

        """
        n: int = self.generator_count
        while len(stack) > 0:
            g, e = stack.pop()
            if e == 0:
                continue
            if not any(vec[g + 1:]):
                self._add(vec, g, e, stack)
                continue
            step: int = 1 if e > 0 else -1
            if e != step:
                stack.append((g, e - step))
            suffix: List[Syllable] = [(j, vec[j]) for j in range(g + 1, n)
                                      if vec[j] != 0]
            for j, _ in suffix:
                vec[j] = 0
            for j, v in reversed(suffix):
                conj: Optional[Vector] = self._conjugate(j, g, step)
                if conj is None:
                    stack.append((j, v))
                elif v > 0:
                    _push(stack, _word(conj), v)
                else:
                    _push(stack, _inverse_word(conj), -v)
            self._add(vec, g, step, stack)
        return vec

    def collect_syllables(self, syllables: Sequence[Syllable],
                          start: Optional[Sequence[int]] = None) -> Vector:
        """Collect the product of ``start`` (the identity by default) and the
        syllables into normal form.

        """
        vec: List[int] = list(self.identity() if start is None else start)
        stack: List[Syllable] = []
        _push(stack, list(syllables))
        return tuple(self._collect(vec, stack))

    def collect(self, w: FreeWord) -> Vector:
        """Return the normal form of a word over the polycyclic generators."""
        for gen in w.generators:
            if gen >= self.generator_count:
                raise UnknownGeneratorError(gen)
        return self.collect_syllables(w.syllables)

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        return self.collect_syllables(_word(v), u)

    def inverse(self, u: Sequence[int]) -> Vector:
        return self.collect_syllables(_inverse_word(u))

    def power(self, u: Sequence[int], e: int) -> Vector:
        if e < 0:
            u, e = self.inverse(u), -e
        result: Vector = self.identity()
        base: Vector = tuple(u)
        while e > 0:
            if e & 1:
                result = self.multiply(result, base)
            e >>= 1
            if e > 0:
                base = self.multiply(base, base)
        return result

    def conjugate(self, u: Sequence[int], by: Sequence[int]) -> Vector:
        """Return ``by^-1 u by``."""
        return self.collect_syllables(
            _word(u) + _word(by), self.inverse(by))

    def commutator(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        """Return ``[u, v] = u^-1 v^-1 u v``."""
        return self.collect_syllables(
            _inverse_word(v) + _word(u) + _word(v), self.inverse(u))

    def evaluate(self, images: Sequence[Sequence[int]], w: FreeWord) -> Vector:
        """Map each generator index ``i`` of ``w`` to ``images[i]`` and
        collect the product.

        """
        result: Vector = self.identity()
        for gen, exp in w.syllables:
            if gen >= len(images):
                raise UnknownGeneratorError(
                    self.group_names[gen] if gen < len(self.group_names)
                    else gen)
            result = self.multiply(result, self.power(images[gen], exp))
        return result

    def image(self, w: FreeWord) -> Vector:
        """Apply the epimorphism to a word over the group generators."""
        return self.evaluate(self.epimorphism, w)

    def layer(self, vec: Sequence[int], weight: int) -> Vector:
        """The exponents of ``vec`` on the generators of ``weight``."""
        return tuple(e for e, w in zip(vec, self.weights) if w == weight)

    def consistency_checks(self, bound: Optional[int] = None) -> \
            Iterator[Tuple[str, Vector, Vector]]:
        """Generate the standard overlap tests as ``(label, left, right)``
        pairs of two collections of the same element.  Only tests whose
        generator weights sum to at most ``bound`` (the largest weight by
        default) are generated since the others hold trivially.

        """
        n: int = self.generator_count
        w: Tuple[int, ...] = self.weights
        o: Tuple[int, ...] = self.orders
        bound = self.max_weight if bound is None else bound
        col = self.collect_syllables
        for k in range(n):
            for j in range(k):
                for i in range(j):
                    if w[i] + w[j] + w[k] > bound:
                        continue
                    yield (f'g{k+1}(g{j+1}g{i+1})',
                           col(_word(col(((j, 1), (i, 1)))), self.unit(k)),
                           col(((i, 1),), col(((k, 1), (j, 1)))))
        for i in range(n):
            if o[i] != 0:
                pw: Vector = self.powers.get(i, self.identity())
                yield (f'g{i+1}^{o[i]+1}',
                       col(_word(pw), self.unit(i)),
                       col(((i, 1),), pw))
        for j in range(n):
            for i in range(j):
                if w[i] + w[j] > bound:
                    continue
                ji: Vector = col(((j, 1), (i, 1)))
                if o[j] != 0:
                    pw = self.powers.get(j, self.identity())
                    yield (f'g{j+1}^{o[j]}g{i+1}',
                           col(((i, 1),), pw),
                           col(_word(ji), self._scaled(j, o[j] - 1)))
                if o[i] != 0:
                    pw = self.powers.get(i, self.identity())
                    yield (f'g{j+1}g{i+1}^{o[i]}',
                           col(_word(pw), self.unit(j)),
                           col(((i, o[i] - 1),), ji))
                else:
                    yield (f'g{j+1}g{i+1}^-1g{i+1}',
                           self.unit(j),
                           col(((i, 1),), col(((j, 1), (i, -1)))))
                if o[j] == 0:
                    yield (f'g{j+1}^-1g{j+1}g{i+1}',
                           self.unit(i),
                           col(_word(ji), col(((j, -1),))))
                if o[i] == 0 and o[j] == 0:
                    yield (f'g{j+1}^-1g{i+1}^-1g{i+1}',
                           col(((j, -1),)),
                           col(((i, 1),), col(((j, -1), (i, -1)))))

    def consistency_violations(self) -> Tuple[str, ...]:
        """The labels of the overlap tests that collect to different normal
        forms, which is empty for a consistent presentation.

        """
        return tuple(map(lambda c: c[0],
                         filter(lambda c: c[1] != c[2],
                                self.consistency_checks())))

    def format_vector(self, vec: Sequence[int]) -> str:
        """Format a normal form as a word over the polycyclic generators."""
        return format_word(FreeWord(tuple(_word(vec))), self.names)

    def asdict(self) -> Dict[str, Any]:
        fmt = self.format_vector
        gens: List[Dict[str, Any]] = []
        for name, weight, order in zip(self.names, self.weights, self.orders):
            gens.append({'name': name, 'weight': weight,
                         'order': order if order != 0 else 'infinite'})
        rels: List[str] = []
        for i, vec in sorted(self.powers.items()):
            rels.append(f'{self.names[i]}^{self.orders[i]} = {fmt(vec)}')
        for (j, i), vec in sorted(self.commutators.items()):
            if any(vec):
                rels.append(
                    f'[{self.names[j]}, {self.names[i]}] = {fmt(vec)}')
        epi: Dict[str, str] = {}
        for i, vec in enumerate(self.epimorphism):
            name: str = self.group_names[i] \
                if i < len(self.group_names) else f'x{i + 1}'
            epi[name] = fmt(vec)
        return {'class': self.nilpotency_class,
                'generators': gens,
                'relations': rels,
                'epimorphism': epi,
                'graded_quotients': list(map(str, self.invariants))}

    def __str__(self) -> str:
        return (f'pc presentation of class {self.nilpotency_class} on ' +
                f'{self.generator_count} generators')


class InducedSequence(object):
    """Builds the induced polycyclic sequence of the subgroup generated by a
    set of elements: echelon rows keyed by pivot index with a positive
    leading exponent that divides the relative order when it is finite.

    """
    def __init__(self, pc: PcPresentation,
                 rows: Dict[int, Vector] = None):
        self.pc = pc
        self.rows: Dict[int, Vector] = dict(rows or {})
        self._dirty: Set[int] = set()

    def add(self, elem: Sequence[int]):
        """Add an element to the subgroup without closing it."""
        pc: PcPresentation = self.pc
        queue: List[Vector] = [tuple(elem)]
        while len(queue) > 0:
            elem = queue.pop()
            k: Optional[int] = pivot(elem)
            while k is not None:
                b: int = elem[k]
                o: int = pc.orders[k]
                row: Vector = self.rows.get(k)
                if row is None:
                    if o == 0:
                        if b < 0:
                            elem = pc.inverse(elem)
                    else:
                        g, s, _ = xgcd(b, o)
                        if g != b:
                            new: Vector = pc.power(elem, s)
                            queue.append(pc.multiply(
                                pc.power(new, -(b // g)), elem))
                            elem = new
                        queue.append(pc.power(elem, o // g))
                    self.rows[k] = elem
                    self._dirty.add(k)
                    break
                a: int = row[k]
                if b % a == 0:
                    elem = pc.multiply(pc.power(row, -(b // a)), elem)
                    k = pivot(elem)
                    continue
                g, s, t = xgcd(a, b)
                new = pc.multiply(pc.power(row, s), pc.power(elem, t))
                queue.append(pc.multiply(pc.power(new, -(a // g)), row))
                queue.append(pc.multiply(pc.power(new, -(b // g)), elem))
                if o != 0:
                    queue.append(pc.power(new, o // g))
                self.rows[k] = new
                self._dirty.add(k)
                break

    def close(self, normal: bool = False):
        """Add commutators of rows until the rows generate a subgroup (and its
        normal closure when ``normal`` is ``True``).

        """
        pc: PcPresentation = self.pc
        w: Tuple[int, ...] = pc.weights
        bound: int = pc.max_weight
        rounds: int = 0
        while len(self._dirty) > 0:
            dirty: List[int] = sorted(self._dirty)
            self._dirty = set()
            rows: Dict[int, Vector] = dict(self.rows)
            rounds += 1
            for k in dirty:
                row: Vector = rows[k]
                for k2, row2 in rows.items():
                    if k2 == k or (k2 in dirty and k2 < k):
                        continue
                    if w[k] + w[k2] <= bound:
                        self.add(pc.commutator(row, row2))
                if normal:
                    for g in range(pc.generator_count):
                        if w[k] + w[g] <= bound:
                            self.add(pc.commutator(row, pc.unit(g)))
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(f'closed {len(self.rows)} rows in {rounds} rounds')

    def canonical(self) -> Tuple[Vector, ...]:
        """Return the rows ordered by pivot with the exponents at later
        pivots reduced into ``[0, lead)``.

        """
        pc: PcPresentation = self.pc
        pivots: List[int] = sorted(self.rows)
        out: List[Vector] = []
        for i, k in enumerate(pivots):
            row: Vector = self.rows[k]
            for q in pivots[i + 1:]:
                f: int = row[q] // self.rows[q][q]
                if f != 0:
                    row = pc.multiply(row, pc.power(self.rows[q], -f))
            out.append(row)
        return tuple(out)


@dataclass(eq=False)
class ExponentLattice(Flattenable):
    """A subgroup of a polycyclic group given by its canonical induced
    sequence in exponent coordinates.  On central free abelian layers this is
    the row Hermite normal form.

    """
    pc: PcPresentation = field(repr=False)
    """The ambient presentation."""

    rows: Tuple[Vector, ...] = field(default=())
    """The canonical rows in ascending pivot order."""

    def __post_init__(self):
        self._by_pivot: Dict[int, Vector] = {pivot(r): r for r in self.rows}

    @property
    def is_zero(self) -> bool:
        return len(self.rows) == 0

    @property
    def rank(self) -> int:
        """The number of rows (the Hirsch length plus the finite rows)."""
        return len(self.rows)

    def check_ambient(self, other: ExponentLattice):
        """:raises ParameterError: if ``other`` is over another presentation"""
        if self.pc is not other.pc:
            raise ParameterError(
                'Lattices are over different polycyclic presentations')

    def contains(self, vec: Sequence[int]) -> bool:
        """Whether the element ``vec`` is in the subgroup."""
        pc: PcPresentation = self.pc
        elem: Vector = tuple(vec)
        k: Optional[int] = pivot(elem)
        while k is not None:
            row: Vector = self._by_pivot.get(k)
            if row is None or elem[k] % row[k] != 0:
                return False
            elem = pc.multiply(pc.power(row, -(elem[k] // row[k])), elem)
            k = pivot(elem)
        return True

    def issubset(self, other: ExponentLattice) -> bool:
        self.check_ambient(other)
        return all(map(other.contains, self.rows))

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, ExponentLattice) and \
            self.pc is other.pc and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def asdict(self) -> Dict[str, Any]:
        return {'rows': list(map(list, self.rows)),
                'generators': list(map(self.pc.format_vector, self.rows))}

    def __str__(self) -> str:
        return '<' + ', '.join(map(self.pc.format_vector, self.rows)) + '>'


def subgroup_lattice(pc: PcPresentation, elems: Iterable[Sequence[int]],
                     normal: bool = False) -> ExponentLattice:
    """Return the subgroup generated by ``elems``, or its normal closure when
    ``normal`` is ``True``.

    """
    seq = InducedSequence(pc)
    for elem in elems:
        if len(elem) != pc.generator_count:
            raise ParameterError(
                f'Expecting {pc.generator_count} exponents: {elem}')
        seq.add(elem)
    seq.close(normal)
    return ExponentLattice(pc, seq.canonical())


def zero_lattice(pc: PcPresentation) -> ExponentLattice:
    return ExponentLattice(pc)


def full_lattice(pc: PcPresentation) -> ExponentLattice:
    return ExponentLattice(
        pc, tuple(map(pc.unit, range(pc.generator_count))))


def check_consistent(pc: PcPresentation):
    """:raises BaumslagSolitarError: if any overlap test fails"""
    bad: Tuple[str, ...] = pc.consistency_violations()
    if len(bad) > 0:
        raise BaumslagSolitarError(
            f'Inconsistent presentation, failed overlaps: {", ".join(bad)}')
