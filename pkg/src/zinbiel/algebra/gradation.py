"""The natural gradation gr(A) = ⊕ A^i / A^{i+1}."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..core.exceptions import InvariantError, NotNilpotentError, UnsupportedScopeError
from ..core.logging import get_logger
from .isomorphism import IsoResult, iso_search
from .linalg import Vector, complement, first_nonzero, solve, unit
from .structure import Algebra, lower_series, multiply

logger = get_logger(__name__)


@dataclass(frozen=True)
class GradedAlgebra:
    """gr(A) written on a lift of section bases of the lower series.

    ``sections[m]`` is the m-th basis vector of gr(A) expressed in the basis
    of the source algebra and ``degrees[m]`` is its degree.
    """

    algebra: Algebra
    degrees: Tuple[int, ...]
    sections: Tuple[Vector, ...]

    @property
    def component_dims(self) -> List[int]:
        top = max(self.degrees, default=0)
        return [self.degrees.count(d) for d in range(1, top + 1)]


def grading_dims(a: Algebra) -> List[int]:
    """dim A^i − dim A^{i+1} for i = 1 .. nilindex − 1."""
    dims = [term.rank for term in lower_series(a)]
    if dims[-1]:
        raise NotNilpotentError("Lower series does not reach zero")
    return [dims[i] - dims[i + 1] for i in range(len(dims) - 1)]


def _section_basis(a: Algebra) -> List[Tuple[int, Vector]]:
    series = lower_series(a)
    if series[-1].rank:
        raise NotNilpotentError("Natural gradation needs a nilpotent algebra")
    lifted = []
    for degree in range(1, len(series)):
        for vector in complement(series[degree - 1], series[degree]):
            lifted.append((degree, vector))
    lifted.sort(key=lambda item: (first_nonzero(item[1]), item[0]))
    return lifted


def _lifted_labels(a: Algebra, vectors: List[Vector]) -> Tuple[str, ...]:
    labels = []
    for vector in vectors:
        support = [k for k, c in enumerate(vector) if c]
        if len(support) != 1 or vector[support[0]] != a.space.one:
            return tuple(f"g{m + 1}" for m in range(len(vectors)))
        labels.append(a.labels[support[0]])
    return tuple(labels)


def natural_grading(a: Algebra) -> GradedAlgebra:
    """gr(A) with products truncated to their homogeneous degree."""
    series = lower_series(a)
    lifted = _section_basis(a)
    degrees = tuple(d for d, _ in lifted)
    sections = [v for _, v in lifted]
    columns = [list(v) for v in sections]
    inverse = []
    for k in range(a.dim):
        coords = solve(a.space, columns, unit(a.space, a.dim, k))
        if coords is None:
            raise InvariantError("Section vectors do not form a basis")
        inverse.append(coords)

    products = []
    for p, u in enumerate(sections):
        for q, v in enumerate(sections):
            target = degrees[p] + degrees[q]
            w = multiply(a, u, v)
            if not any(w):
                continue
            if target > len(series) or not series[target - 1].contains(w):
                raise InvariantError(
                    f"Product of degree-{degrees[p]} and degree-{degrees[q]} sections "
                    f"leaves A^{target}"
                )
            for m in range(a.dim):
                if degrees[m] != target:
                    continue
                coeff = sum(
                    (inverse[k][m] * w[k] for k in range(a.dim) if w[k]), a.space.zero
                )
                if coeff:
                    products.append((p, q, m, coeff))
    graded = Algebra.build(a.space, _lifted_labels(a, sections), products)
    logger.debug("natural_grading", components=[degrees.count(d) for d in sorted(set(degrees))])
    return GradedAlgebra(graded, degrees, tuple(sections))


def is_naturally_graded(a: Algebra, height: Optional[int] = None) -> IsoResult:
    """Search for a graded isomorphism A → gr(A)."""
    dims = grading_dims(a)
    if dims and dims[0] > 2:
        raise UnsupportedScopeError(
            f"{dims[0]} generators in degree 1; only one or two are supported"
        )
    return iso_search(a, natural_grading(a).algebra, height=height)
