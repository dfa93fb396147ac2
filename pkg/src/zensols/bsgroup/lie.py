"""The free Lie ring of rank two over the integers: Hall bases, bracket
arithmetic, Witt ranks, the substitution ``y -> kappa y`` and the resulting
bounds on the graded quotients of the lower central series.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Any, Optional, Iterable
from dataclasses import dataclass, field
from functools import lru_cache
import logging
from sympy import Matrix, factorint, divisors
from .domain import Flattenable, BaumslagSolitarError, ParameterError, Config
from .presentation import BSParams

logger = logging.getLogger(__name__)

X_LEAF: int = 0
"""The leaf index of ``x`` (the image of ``t``)."""

Y_LEAF: int = 1
"""The leaf index of ``y`` (the image of ``a``)."""


@dataclass
class LieConfig(Config):
    """The ``lie`` section of the configuration."""

    check_index_up_to: int = field(default=8)
    """The largest degree for which :func:`lattice_index` is cross checked
    with the determinant of the substitution matrix.

    """
    @classmethod
    def instance(cls, data: Dict[str, Any]) -> LieConfig:
        return LieConfig(
            data=data,
            check_index_up_to=cls._get_int(
                data, 'check_index_up_to', 'index check degree', 8))


@dataclass(eq=False)
class HallTree(Flattenable):
    """A leaf (``x`` or ``y``) or a bracket of two trees.  Trees are totally
    ordered by degree, then recursively by left and right subtree, with
    ``y < x`` among the leaves.

    """
    leaf: Optional[int] = field(default=None)
    """:obj:`X_LEAF` or :obj:`Y_LEAF` for leaves, otherwise ``None``."""

    left: Optional[HallTree] = field(default=None)
    right: Optional[HallTree] = field(default=None)

    def __post_init__(self):
        if self.leaf is None:
            self.degree = self.left.degree + self.right.degree
            self.y_degree = self.left.y_degree + self.right.y_degree
            self.key = (self.degree, self.left.key, self.right.key)
        else:
            self.degree = 1
            self.y_degree = 1 if self.leaf == Y_LEAF else 0
            # y sorts before x
            self.key = (1, 0 if self.leaf == Y_LEAF else 1)
        self._hash = hash(self.key)

    @property
    def is_leaf(self) -> bool:
        return self.leaf is not None

    @property
    def is_hall(self) -> bool:
        """Whether this tree is in the Hall set: a node ``(u, v)`` needs both
        subtrees in the set, ``u > v`` and, when ``u = (u1, u2)``,
        ``u2 <= v``.

        """
        if self.is_leaf:
            return True
        u, v = self.left, self.right
        return u.is_hall and v.is_hall and u > v and \
            (u.is_leaf or u.right <= v)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, HallTree) and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: HallTree) -> bool:
        return self.key < other.key

    def __le__(self, other: HallTree) -> bool:
        return self.key <= other.key

    def __gt__(self, other: HallTree) -> bool:
        return self.key > other.key

    def __ge__(self, other: HallTree) -> bool:
        return self.key >= other.key

    def asdict(self) -> Dict[str, Any]:
        return {'tree': str(self), 'degree': self.degree,
                'y_degree': self.y_degree}

    def __str__(self) -> str:
        if self.is_leaf:
            return 'x' if self.leaf == X_LEAF else 'y'
        return f'[{self.left},{self.right}]'

    def __repr__(self) -> str:
        return str(self)


X: HallTree = HallTree(X_LEAF)
Y: HallTree = HallTree(Y_LEAF)


@lru_cache(maxsize=None)
def _hall_basis(c: int) -> Tuple[HallTree, ...]:
    if c == 1:
        return (Y, X)
    trees: List[HallTree] = []
    for i in range(1, c):
        for u in _hall_basis(i):
            for v in _hall_basis(c - i):
                if u > v and (u.is_leaf or u.right <= v):
                    trees.append(HallTree(left=u, right=v))
    return tuple(sorted(trees))


def hall_basis(c: int) -> Tuple[HallTree, ...]:
    """All Hall trees of degree ``c`` in ascending order."""
    if c < 1:
        raise ParameterError(f'Degree must be positive: {c}')
    return _hall_basis(c)


def _mobius(e: int) -> int:
    factors: Dict[int, int] = factorint(e)
    if any(map(lambda x: x > 1, factors.values())):
        return 0
    return -1 if len(factors) % 2 == 1 else 1


def witt_rank(c: int, rank: int = 2) -> int:
    """The rank of the degree ``c`` component of the free Lie ring given by
    the necklace formula ``(1/c) sum_{e | c} mobius(e) rank^(c/e)``.

    """
    if c < 1:
        raise ParameterError(f'Degree must be positive: {c}')
    return sum(map(lambda e: _mobius(e) * rank ** (c // e), divisors(c))) // c


@dataclass(eq=False)
class LieElement(Flattenable):
    """An integer combination of Hall basis trees.

    """
    terms: Dict[HallTree, int] = field(default_factory=dict)
    """The trees to their nonzero coefficients."""

    def __post_init__(self):
        self.terms = {t: c for t, c in self.terms.items() if c != 0}

    @staticmethod
    def of(tree: HallTree, coeff: int = 1) -> LieElement:
        if not tree.is_hall:
            raise ParameterError(f'Not a Hall tree: {tree}')
        return LieElement({tree: coeff})

    @staticmethod
    def combine(pairs: Iterable[Tuple[HallTree, int]]) -> LieElement:
        terms: Dict[HallTree, int] = {}
        for tree, coeff in pairs:
            terms[tree] = terms.get(tree, 0) + coeff
        return LieElement(terms)

    @property
    def is_zero(self) -> bool:
        return len(self.terms) == 0

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(set(map(lambda t: t.degree, self.terms))))

    def coefficient(self, tree: HallTree) -> int:
        return self.terms.get(tree, 0)

    def __add__(self, other: LieElement) -> LieElement:
        return LieElement.combine(
            tuple(self.terms.items()) + tuple(other.terms.items()))

    def __neg__(self) -> LieElement:
        return LieElement({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: LieElement) -> LieElement:
        return self + (-other)

    def __rmul__(self, scalar: int) -> LieElement:
        return LieElement({t: scalar * c for t, c in self.terms.items()})

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, LieElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def asdict(self) -> Dict[str, Any]:
        return {str(t): c for t, c in sorted(self.terms.items())}

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        return ' + '.join(map(lambda tc: f'{tc[1]}*{tc[0]}',
                              sorted(self.terms.items())))


@lru_cache(maxsize=None)
def _bracket_trees(h1: HallTree, h2: HallTree) -> Tuple[Tuple[HallTree, int], ...]:
    if h1 == h2:
        return ()
    if h1 < h2:
        return tuple(map(lambda tc: (tc[0], -tc[1]), _bracket_trees(h2, h1)))
    if h1.is_leaf or h1.right <= h2:
        return ((HallTree(left=h1, right=h2), 1),)
    # [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]]
    u1, u2 = h1.left, h1.right
    terms: Dict[HallTree, int] = {}
    for tree, coeff in _bracket_trees(u1, h2):
        for t2, c2 in _bracket_trees(tree, u2):
            terms[t2] = terms.get(t2, 0) + coeff * c2
    for tree, coeff in _bracket_trees(u2, h2):
        for t2, c2 in _bracket_trees(u1, tree):
            terms[t2] = terms.get(t2, 0) + coeff * c2
    return tuple(filter(lambda tc: tc[1] != 0, terms.items()))


def bracket(u: LieElement, v: LieElement) -> LieElement:
    """The bilinear Lie bracket rewritten into the Hall basis using
    antisymmetry and the Jacobi identity.

    """
    pairs: List[Tuple[HallTree, int]] = []
    for t1, c1 in u.terms.items():
        for t2, c2 in v.terms.items():
            for tree, coeff in _bracket_trees(t1, t2):
                pairs.append((tree, c1 * c2 * coeff))
    return LieElement.combine(pairs)


def psi_substitute(kappa: int, u: LieElement) -> LieElement:
    """Substitute ``kappa * y`` for ``y``, which scales each basis tree by
    ``kappa`` to the power of its ``y`` degree.

    """
    if kappa == 0:
        raise ParameterError('Substitution scalar must be nonzero')
    return LieElement({t: c * kappa ** t.y_degree for t, c in u.terms.items()})


def y_degree_sum(c: int) -> int:
    """The sum of the ``y`` degrees of the degree ``c`` Hall basis."""
    return sum(map(lambda t: t.y_degree, hall_basis(c)))


def psi_matrix(c: int, kappa: int) -> Matrix:
    """The matrix of the substitution on the degree ``c`` Hall basis."""
    basis: Tuple[HallTree, ...] = hall_basis(c)
    rows: List[List[int]] = []
    for tree in basis:
        image: LieElement = psi_substitute(kappa, LieElement.of(tree))
        rows.append(list(map(image.coefficient, basis)))
    return Matrix(rows)


def lattice_index(c: int, kappa: int, check_up_to: int = 8) -> int:
    """The index ``|kappa|^T_c`` of the image of the substitution in the
    degree ``c`` component, where ``T_c`` is :func:`y_degree_sum`.

    :param check_up_to: the largest degree for which the index is confirmed
                        with the determinant of :func:`psi_matrix`

    """
    if kappa == 0:
        raise ParameterError('Substitution scalar must be nonzero')
    index: int = abs(kappa) ** y_degree_sum(c)
    if c <= check_up_to:
        det: int = abs(int(psi_matrix(c, kappa).det()))
        if det != index:
            raise BaumslagSolitarError(
                f'Index {index} disagrees with determinant {det} ' +
                f'for degree {c}, kappa={kappa}')
    return index


def grc_order_bound(p: BSParams, c: int) -> int:
    """A multiple of the order of the degree ``c`` graded quotient of the
    lower central series: ``|delta|^T_c`` when ``delta != 0``, otherwise
    ``m^T_c``.

    :raises ParameterError: if ``c < 2`` since the first quotient is infinite

    """
    if c < 2:
        raise ParameterError(f'Graded quotients are finite only for c >= 2: {c}')
    base: int = abs(p.delta) if p.delta != 0 else p.m
    return base ** y_degree_sum(c)
