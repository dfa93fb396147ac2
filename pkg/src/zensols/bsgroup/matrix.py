"""Integer matrices with Smith and Hermite normal forms.  All arithmetic uses
``object`` typed numpy arrays so entries are arbitrary precision integers.

"""
from __future__ import annotations
__author__ = 'Paul Landes'
from typing import Tuple, List, Dict, Sequence, Iterable, Any, Optional
from dataclasses import dataclass, field
import logging
import numpy as np
from .domain import Flattenable, ParameterError

logger = logging.getLogger(__name__)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Extended Euclid's algorithm.

    :return: ``(g, s, t)`` with ``g = gcd(a, b) >= 0`` and ``s*a + t*b = g``

    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


@dataclass(eq=False)
class IntMatrix(Flattenable):
    """An integer matrix backed by an ``object`` typed numpy array.

    """
    array: np.ndarray = field()
    """The two dimensional array of Python integers."""

    @staticmethod
    def of(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> \
            IntMatrix:
        """Create a matrix from a sequence of rows.

        :param cols: the column count, needed when there are no rows

        """
        rows = list(map(lambda r: list(map(int, r)), rows))
        if len(rows) == 0:
            return IntMatrix(np.zeros((0, cols or 0), dtype=object))
        arr = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != arr.shape[1]:
                raise ParameterError(f'Ragged matrix row {i}: {row}')
            arr[i, :] = row
        return IntMatrix(arr)

    @staticmethod
    def identity(n: int) -> IntMatrix:
        return IntMatrix(np.eye(n, dtype=int).astype(object))

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def tolist(self) -> List[List[int]]:
        return list(map(lambda r: list(map(int, r)), self.array))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ParameterError(
                f'Shape mismatch: {self.array.shape} @ {other.array.shape}')
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntMatrix(np.zeros((self.rows, other.cols), dtype=int)
                             .astype(object))
        return IntMatrix(self.array.dot(other.array))

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, IntMatrix) and \
            self.array.shape == other.array.shape and \
            bool((self.array == other.array).all())

    def asdict(self) -> Dict[str, Any]:
        return {'rows': self.rows, 'cols': self.cols,
                'entries': self.tolist()}

    def __str__(self) -> str:
        return str(self.tolist())


@dataclass(eq=False)
class SmithForm(Flattenable):
    """The Smith normal form ``left @ matrix @ right = diag(divisors)``.

    """
    divisors: Tuple[int, ...] = field()
    """The nonnegative diagonal entries, each dividing the next (zeros last)."""

    left: IntMatrix = field()
    """The unimodular row transform."""

    right: IntMatrix = field()
    """The unimodular column transform."""

    left_inverse: IntMatrix = field()
    right_inverse: IntMatrix = field()

    def __iter__(self):
        return iter((self.divisors, self.left, self.right))

    def asdict(self) -> Dict[str, Any]:
        return {'divisors': list(self.divisors),
                'left': self.left.tolist(),
                'right': self.right.tolist()}


class _SmithReducer(object):
    """Carries out the elementary operations while tracking the transforms and
    their inverses.

    """
    def __init__(self, a: np.ndarray):
        rows, cols = a.shape
        self.d = a.copy()
        self.left = np.eye(rows, dtype=int).astype(object)
        self.left_inv = np.eye(rows, dtype=int).astype(object)
        self.right = np.eye(cols, dtype=int).astype(object)
        self.right_inv = np.eye(cols, dtype=int).astype(object)

    def swap_rows(self, i: int, k: int):
        if i != k:
            self.d[[i, k]] = self.d[[k, i]]
            self.left[[i, k]] = self.left[[k, i]]
            self.left_inv[:, [i, k]] = self.left_inv[:, [k, i]]

    def swap_cols(self, j: int, k: int):
        if j != k:
            self.d[:, [j, k]] = self.d[:, [k, j]]
            self.right[:, [j, k]] = self.right[:, [k, j]]
            self.right_inv[[j, k]] = self.right_inv[[k, j]]

    def add_row(self, i: int, k: int, q: int):
        """Row ``i`` += ``q`` times row ``k``."""
        self.d[i] += q * self.d[k]
        self.left[i] += q * self.left[k]
        self.left_inv[:, k] -= q * self.left_inv[:, i]

    def add_col(self, j: int, k: int, q: int):
        """Column ``j`` += ``q`` times column ``k``."""
        self.d[:, j] += q * self.d[:, k]
        self.right[:, j] += q * self.right[:, k]
        self.right_inv[k] -= q * self.right_inv[j]

    def negate_row(self, i: int):
        self.d[i] = -self.d[i]
        self.left[i] = -self.left[i]
        self.left_inv[:, i] = -self.left_inv[:, i]

    def _min_entry(self, t: int) -> Optional[Tuple[int, int]]:
        best: Tuple[int, int, int] = None
        rows, cols = self.d.shape
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(self.d[i, j])
                if v != 0 and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 1:
                        return best[1:]
        return None if best is None else best[1:]

    def reduce(self):
        d = self.d
        rows, cols = d.shape
        for t in range(min(rows, cols)):
            pos: Tuple[int, int] = self._min_entry(t)
            if pos is None:
                break
            self.swap_rows(t, pos[0])
            self.swap_cols(t, pos[1])
            while True:
                for i in range(t + 1, rows):
                    q = d[i, t] // d[t, t]
                    if q != 0:
                        self.add_row(i, t, -q)
                col: List[int] = [i for i in range(t + 1, rows) if d[i, t] != 0]
                if len(col) > 0:
                    self.swap_rows(t, min(col, key=lambda i: abs(d[i, t])))
                    continue
                for j in range(t + 1, cols):
                    q = d[t, j] // d[t, t]
                    if q != 0:
                        self.add_col(j, t, -q)
                row: List[int] = [j for j in range(t + 1, cols) if d[t, j] != 0]
                if len(row) > 0:
                    self.swap_cols(t, min(row, key=lambda j: abs(d[t, j])))
                    continue
                piv = d[t, t]
                bad: Optional[int] = None
                for i in range(t + 1, rows):
                    if any(map(lambda j: d[i, j] % piv != 0,
                               range(t + 1, cols))):
                        bad = i
                        break
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if d[t, t] < 0:
                self.negate_row(t)


def smith_normal_form(a: IntMatrix) -> SmithForm:
    """Diagonalize ``a`` with unimodular row and column transforms choosing
    the smallest absolute value entry as each pivot.

    :return: the divisors (one per diagonal position) with the transforms

    """
    red = _SmithReducer(a.array)
    red.reduce()
    n: int = min(a.rows, a.cols)
    divs: Tuple[int, ...] = tuple(map(lambda i: int(red.d[i, i]), range(n)))
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(f'smith form of {a.rows}x{a.cols} matrix: {divs}')
    return SmithForm(divs, IntMatrix(red.left), IntMatrix(red.right),
                     IntMatrix(red.left_inv), IntMatrix(red.right_inv))


def hermite_normal_form(vectors: Iterable[Sequence[int]], cols: int) -> \
        List[List[int]]:
    """Return the row Hermite normal form basis of the lattice spanned by
    ``vectors``: echelon rows with positive pivots and the entries above each
    pivot reduced into ``[0, pivot)``.

    """
    pivots: Dict[int, List[int]] = {}
    for vec0 in vectors:
        vec: List[int] = list(map(int, vec0))
        if len(vec) != cols:
            raise ParameterError(f'Expecting {cols} columns: {vec}')
        j: int = 0
        while j < cols:
            if vec[j] == 0:
                j += 1
                continue
            row: List[int] = pivots.get(j)
            if row is None:
                if vec[j] < 0:
                    vec = list(map(lambda x: -x, vec))
                pivots[j] = vec
                break
            a: int = row[j]
            b: int = vec[j]
            if b % a == 0:
                q: int = b // a
                for jj in range(j, cols):
                    vec[jj] -= q * row[jj]
            else:
                g, s, t = xgcd(a, b)
                ag: int = a // g
                bg: int = b // g
                for jj in range(j, cols):
                    x, y = row[jj], vec[jj]
                    row[jj] = s * x + t * y
                    vec[jj] = -bg * x + ag * y
            j += 1
    order: List[int] = sorted(pivots)
    for i, pj in enumerate(order):
        for pk in order[:i]:
            upper: List[int] = pivots[pk]
            q: int = upper[pj] // pivots[pj][pj]
            if q != 0:
                lower: List[int] = pivots[pj]
                for jj in range(pj, cols):
                    upper[jj] -= q * lower[jj]
    return list(map(lambda j: pivots[j], order))


def lattice_coordinates(basis: Sequence[Sequence[int]],
                        vec: Sequence[int]) -> Optional[List[int]]:
    """Solve ``y @ basis = vec`` for an echelon ``basis`` (as returned by
    :func:`hermite_normal_form`).

    :return: the coordinates or ``None`` if ``vec`` is not in the lattice

    """
    vec = list(map(int, vec))
    coords: List[int] = []
    for row in basis:
        j: int = next(filter(lambda k: row[k] != 0, range(len(row))))
        if any(map(lambda k: vec[k] != 0, range(j))):
            return None
        if vec[j] % row[j] != 0:
            return None
        q: int = vec[j] // row[j]
        coords.append(q)
        if q != 0:
            for k in range(j, len(vec)):
                vec[k] -= q * row[k]
    if any(vec):
        return None
    return coords


def row_times(vec: Sequence[int], mat: IntMatrix) -> List[int]:
    """Return the row vector product ``vec @ mat``."""
    if len(vec) != mat.rows:
        raise ParameterError(f'Shape mismatch: {len(vec)} @ {mat.rows}')
    out: List[int] = [0] * mat.cols
    arr: np.ndarray = mat.array
    for i, v in enumerate(vec):
        if v != 0:
            for j in range(mat.cols):
                out[j] += v * arr[i, j]
    return list(map(int, out))
