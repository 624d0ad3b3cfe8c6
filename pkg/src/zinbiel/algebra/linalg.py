"""Exact linear algebra over a :class:`ScalarField`.

Whole-matrix operations (rank, determinant, rref, nullspace, solve)
run on sympy's ``DomainMatrix`` over the field's own domain, so ℚ and
ℚ(params) share one code path. :class:`Echelon` keeps an incrementally grown
span for the series and section computations; over ℚ(params) it divides by
pivots that may vanish at special parameter values, and records each such
pivot as a side condition ``pivot != 0``.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..core.exceptions import DimensionError
from .scalar import Scalar, ScalarField

Vector = List[Scalar]
Matrix = List[List[Scalar]]


@dataclass
class Echelon:
    """Reduced row echelon form of a list of vectors."""

    space: ScalarField
    width: int
    rows: List[Vector] = field(default_factory=list)
    pivots: List[int] = field(default_factory=list)
    side_conditions: List[str] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Sequence[Scalar]) -> Vector:
        """Remainder of ``vector`` after eliminating every pivot column."""
        if len(vector) != self.width:
            raise DimensionError(
                f"Vector of length {len(vector)} in a space of dimension {self.width}"
            )
        rest = list(vector)
        for row, col in zip(self.rows, self.pivots):
            factor = rest[col]
            if factor:
                rest = [a - factor * b for a, b in zip(rest, row)]
        return rest

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return not any(self.reduce(vector))

    def add(self, vector: Sequence[Scalar]) -> bool:
        """Insert a vector; returns False when it was already in the span."""
        rest = self.reduce(vector)
        col = next((i for i, a in enumerate(rest) if a), None)
        if col is None:
            return False
        pivot = rest[col]
        if not self.space.is_constant(pivot):
            self.side_conditions.append(f"{self.space.format(pivot)} != 0")
        inverse = self.space.one / pivot
        rest = [a * inverse for a in rest]
        for index, row in enumerate(self.rows):
            factor = row[col]
            if factor:
                self.rows[index] = [a - factor * b for a, b in zip(row, rest)]
        position = next((i for i, p in enumerate(self.pivots) if p > col), len(self.pivots))
        self.rows.insert(position, rest)
        self.pivots.insert(position, col)
        return True

    def coordinates(self, vector: Sequence[Scalar]) -> Optional[Vector]:
        """Coefficients of ``vector`` on the echelon rows, or None if outside the span."""
        if not self.contains(vector):
            return None
        return [vector[col] for col in self.pivots]


def echelon(space: ScalarField, width: int, vectors: Sequence[Sequence[Scalar]]) -> Echelon:
    """Row-reduce ``vectors`` of length ``width``."""
    result = Echelon(space, width)
    for vector in vectors:
        result.add(vector)
    return result


def domain_matrix(space: ScalarField, rows: Sequence[Sequence[Scalar]], width: Optional[int] = None) -> DomainMatrix:
    """``rows`` as a dense DomainMatrix over the field's domain."""
    if width is None:
        width = len(rows[0]) if rows else 0
    if any(len(row) != width for row in rows):
        raise DimensionError(f"Rows of unequal length in a matrix of width {width}")
    if not rows:
        return DomainMatrix.zeros((0, width), space.domain)
    return DomainMatrix([[space.domain.convert(c) for c in row] for row in rows], (len(rows), width), space.domain)


def rref(space: ScalarField, rows: Sequence[Sequence[Scalar]], width: int) -> Tuple[Matrix, List[int]]:
    """Nonzero rows of the reduced row echelon form, and their pivot columns."""
    if not rows:
        return [], []
    reduced, pivots = domain_matrix(space, rows, width).rref()
    return reduced.to_list()[: len(pivots)], list(pivots)


def rank(space: ScalarField, matrix: Sequence[Sequence[Scalar]]) -> int:
    if not matrix:
        return 0
    return domain_matrix(space, matrix).rank()


def complement(outer: Echelon, inner: Echelon) -> List[Vector]:
    """Rows of ``outer`` spanning a complement of ``inner``, in pivot order."""
    chosen = Echelon(outer.space, outer.width, [], [], [])
    for row in inner.rows:
        chosen.add(row)
    picked: List[Vector] = []
    for row in outer.rows:
        if chosen.add(row):
            picked.append(list(row))
    return picked


def transpose(matrix: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*matrix)]


def determinant(space: ScalarField, matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise DimensionError("Determinant of a non-square matrix")
    if not size:
        return space.one
    return domain_matrix(space, matrix).det()


def nullspace(space: ScalarField, matrix: Sequence[Sequence[Scalar]], width: int) -> List[Vector]:
    """Basis of {x : matrix · x = 0}, one vector per free column with a 1 there."""
    rows, pivots = rref(space, matrix, width)
    basis = []
    for free in (c for c in range(width) if c not in pivots):
        vector = [space.zero] * width
        vector[free] = space.one
        for row, col in zip(rows, pivots):
            vector[col] = -row[free]
        basis.append(vector)
    return basis


def solve(
    space: ScalarField, columns: Sequence[Sequence[Scalar]], target: Sequence[Scalar]
) -> Optional[Vector]:
    """Coefficients c with Σ c_i columns[i] = target, or None."""
    width = len(columns)
    augmented = [[column[i] for column in columns] + [target[i]] for i in range(len(target))]
    rows, pivots = rref(space, augmented, width + 1)
    if width in pivots:
        return None
    solution = [space.zero] * width
    for row, col in zip(rows, pivots):
        solution[col] = row[width]
    return solution


def unit(space: ScalarField, size: int, index: int) -> Vector:
    vector = [space.zero] * size
    vector[index] = space.one
    return vector


def first_nonzero(vector: Sequence[Scalar]) -> Optional[int]:
    return next((i for i, a in enumerate(vector) if a), None)
