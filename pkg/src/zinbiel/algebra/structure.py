"""Finite-dimensional algebras given by sparse structure constants."""

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Sequence, Tuple

from ..core.exceptions import DimensionError, NotNilpotentError, ParameterError
from ..core.logging import get_logger, log_duration
from .linalg import Echelon, Vector, nullspace, unit
from .scalar import RATIONALS, Scalar, ScalarField

logger = get_logger(__name__)

Table = Dict[Tuple[int, int], Dict[int, Scalar]]
Product = Tuple[int, int, int, Any]


@dataclass(frozen=True, eq=False)
class Algebra:
    """An n-dimensional algebra; ``table[(i, j)][k]`` is the coefficient of e_k in e_i∘e_j.

    Indices are 0-based. Omitted entries are zero and stored entries never are.
    """

    space: ScalarField
    labels: Tuple[str, ...]
    table: Mapping[Tuple[int, int], Mapping[int, Scalar]]

    @classmethod
    def build(
        cls, space: ScalarField, labels: Sequence[str], products: Iterable[Product]
    ) -> "Algebra":
        """Collect (i, j, k, coefficient) entries, summing repeats and dropping zeros."""
        size = len(labels)
        if len(set(labels)) != size:
            raise DimensionError(f"Basis labels are not distinct: {list(labels)}")
        table: Table = {}
        for i, j, k, coeff in products:
            if not (0 <= i < size and 0 <= j < size and 0 <= k < size):
                raise DimensionError(f"Product index ({i}, {j}) -> {k} outside 0..{size - 1}")
            value = space.convert(coeff)
            if not value:
                continue
            column = table.setdefault((i, j), {})
            total = column.get(k, space.zero) + value
            if total:
                column[k] = total
            else:
                del column[k]
            if not column:
                del table[(i, j)]
        return cls(space, tuple(labels), table)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def params(self) -> Tuple[str, ...]:
        return self.space.params

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.space == other.space
            and self.labels == other.labels
            and {k: dict(v) for k, v in self.table.items()}
            == {k: dict(v) for k, v in other.table.items()}
        )

    def __hash__(self) -> int:
        return hash((self.space, self.labels, len(self.table)))

    def product(self, i: int, j: int) -> Mapping[int, Scalar]:
        return self.table.get((i, j), {})

    def basis(self, index: int) -> Vector:
        return unit(self.space, self.dim, index)

    def zero_vector(self) -> Vector:
        return [self.space.zero] * self.dim

    def entries(self) -> List[Tuple[int, int, int, Scalar]]:
        """Nonzero structure constants in (i, j, k) order."""
        return [
            (i, j, k, coeff)
            for (i, j), column in sorted(self.table.items())
            for k, coeff in sorted(column.items())
        ]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def format_vector(self, vector: Sequence[Scalar]) -> str:
        terms = []
        for k, coeff in enumerate(vector):
            if not coeff:
                continue
            text = self.space.format(coeff)
            if text == "1":
                terms.append(self.labels[k])
            elif text == "-1":
                terms.append(f"-{self.labels[k]}")
            elif " " in text:
                terms.append(f"({text})*{self.labels[k]}")
            else:
                terms.append(f"{text}*{self.labels[k]}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


class Defect(NamedTuple):
    """A basis triple where the Zinbiel identity fails; indices are 1-based."""

    triple: Tuple[int, int, int]
    vector: Vector


def multiply(a: Algebra, u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    """u∘v by bilinear extension of the structure constants."""
    if len(u) != a.dim or len(v) != a.dim:
        raise DimensionError(f"Vectors of length {len(u)}, {len(v)} in dimension {a.dim}")
    out = a.zero_vector()
    for (i, j), column in a.table.items():
        if not u[i] or not v[j]:
            continue
        weight = u[i] * v[j]
        for k, coeff in column.items():
            out[k] += weight * coeff
    return out


def _left_times(a: Algebra, i: int, column: Mapping[int, Scalar]) -> Dict[int, Scalar]:
    """e_i ∘ (Σ column[l] e_l)."""
    out: Dict[int, Scalar] = {}
    for l, weight in column.items():
        for k, coeff in a.product(i, l).items():
            out[k] = out.get(k, a.space.zero) + weight * coeff
    return out


def _right_times(a: Algebra, column: Mapping[int, Scalar], k: int) -> Dict[int, Scalar]:
    """(Σ column[l] e_l) ∘ e_k."""
    out: Dict[int, Scalar] = {}
    for l, weight in column.items():
        for m, coeff in a.product(l, k).items():
            out[m] = out.get(m, a.space.zero) + weight * coeff
    return out


def zinbiel_defects(a: Algebra) -> List[Defect]:
    """All triples with (e_i∘e_j)∘e_k ≠ e_i∘(e_j∘e_k) + e_i∘(e_k∘e_j)."""
    defects = []
    with log_duration(logger, "zinbiel_scan", dim=a.dim):
        for i, j, k in cartesian(range(a.dim), repeat=3):
            diff = _right_times(a, a.product(i, j), k)
            for m, coeff in _left_times(a, i, a.product(j, k)).items():
                diff[m] = diff.get(m, a.space.zero) - coeff
            for m, coeff in _left_times(a, i, a.product(k, j)).items():
                diff[m] = diff.get(m, a.space.zero) - coeff
            if any(diff.values()):
                vector = a.zero_vector()
                for m, coeff in diff.items():
                    vector[m] = coeff
                defects.append(Defect((i + 1, j + 1, k + 1), vector))
    if defects:
        logger.info("zinbiel_defects", count=len(defects), first=defects[0].triple)
    return defects


def is_zinbiel(a: Algebra) -> bool:
    return not zinbiel_defects(a)


def left_product_span(a: Algebra, subspace: Echelon) -> Echelon:
    """span{e_b ∘ w : b a basis index, w ∈ subspace}."""
    result = Echelon(a.space, a.dim)
    for b in range(a.dim):
        for row in subspace.rows:
            result.add(multiply(a, a.basis(b), row))
    return result


def lower_series(a: Algebra) -> List[Echelon]:
    """A^1 = A, A^{k+1} = A∘A^k, until the zero space or stabilization."""
    current = Echelon(a.space, a.dim)
    for i in range(a.dim):
        current.add(a.basis(i))
    series = [current]
    while current.rank:
        following = left_product_span(a, current)
        if following.rank == current.rank:
            break
        series.append(following)
        current = following
    return series


def series_dims(a: Algebra) -> List[int]:
    return [term.rank for term in lower_series(a)]


def nilindex(a: Algebra) -> int:
    """Smallest s with A^s = 0."""
    series = lower_series(a)
    if series[-1].rank:
        raise NotNilpotentError(
            f"Lower series stabilizes at dimension {series[-1].rank}; not nilpotent"
        )
    return len(series)


def is_null_filiform(a: Algebra) -> bool:
    """A nilpotent algebra with the maximal nilindex dim + 1."""
    try:
        return nilindex(a) == a.dim + 1
    except NotNilpotentError:
        return False


def annihilator_dims(a: Algebra) -> Tuple[int, int, int]:
    """Dimensions of the left, right and two-sided annihilators."""
    n = a.dim
    left_rows: List[Vector] = []
    right_rows: List[Vector] = []
    for j, k in cartesian(range(n), repeat=2):
        left_rows.append([a.product(x, j).get(k, a.space.zero) for x in range(n)])
        right_rows.append([a.product(j, y).get(k, a.space.zero) for y in range(n)])
    left = len(nullspace(a.space, left_rows, n))
    right = len(nullspace(a.space, right_rows, n))
    both = len(nullspace(a.space, left_rows + right_rows, n))
    return left, right, both


def specialize(a: Algebra, assignment: Mapping[str, Any]) -> Algebra:
    """Substitute parameter values; unbound parameters stay symbolic."""
    unknown = set(assignment) - set(a.params)
    if unknown:
        raise ParameterError(f"Algebra has no parameters {sorted(unknown)}")
    remaining = [p for p in a.params if p not in assignment]
    target = ScalarField(remaining) if remaining else RATIONALS
    products = [
        (i, j, k, a.space.evaluate(coeff, assignment, target))
        for i, j, k, coeff in a.entries()
    ]
    return Algebra.build(target, a.labels, products)


def with_space(a: Algebra, space: ScalarField) -> Algebra:
    """The same table read in a larger coefficient field."""
    if space == a.space:
        return a
    return Algebra.build(space, a.labels, [(i, j, k, space.convert(c)) for i, j, k, c in a.entries()])
