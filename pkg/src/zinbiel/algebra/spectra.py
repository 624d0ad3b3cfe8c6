"""Left multiplication operators and the characteristic sequence.

The characteristic sequence is the lexicographically largest Jordan type of
L_x over x ∈ A∖A². Candidates come from a deterministic integer grid or a
seeded random sample. Since L_x^s(A) ⊆ A^{s+1}, the transpose of the graded
component dimensions bounds every Jordan type in dominance order; a
candidate attaining it is certified maximal and ends the search.
"""

import random
from dataclasses import dataclass
from enum import Enum
from itertools import product as cartesian
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from ..core.exceptions import NotNilpotentError, UnsupportedScopeError
from ..core.logging import get_logger, log_duration
from .linalg import Matrix, Vector, complement, domain_matrix
from .scalar import Scalar, ScalarField
from .structure import Algebra, lower_series, multiply

logger = get_logger(__name__)

Partition = Tuple[int, ...]


class AlgebraType(str, Enum):
    """Which block of the characteristic sequence the generator e₁ runs along."""

    I = "I"
    II = "II"


@dataclass(frozen=True)
class GridStrategy:
    """All integer combinations of height ≤ ``height`` on a complement of A²."""

    height: int = 3


@dataclass(frozen=True)
class RandomStrategy:
    """``samples`` random rational vectors of height ≤ ``height``, seeded."""

    samples: int = 64
    height: int = 10
    seed: int = 0


Strategy = Union[GridStrategy, RandomStrategy]


@dataclass(frozen=True)
class CharSequence:
    partition: Partition
    witness: Vector
    certified: bool
    candidates: int


@dataclass(frozen=True)
class JordanLayout:
    """Block sizes of L_x in basis order; ``adapted`` when the basis is a union of chains."""

    blocks: Partition
    adapted: bool


def left_multiplication(a: Algebra, x: Sequence[Scalar]) -> Matrix:
    """Matrix of L_x: column j holds the coordinates of x∘e_j."""
    columns = [multiply(a, x, a.basis(j)) for j in range(a.dim)]
    return [[columns[j][k] for j in range(a.dim)] for k in range(a.dim)]


def jordan_type(space: ScalarField, matrix: Matrix) -> Partition:
    """Jordan type of a nilpotent matrix from the ranks of its powers."""
    size = len(matrix)
    if not size:
        return ()
    operator = domain_matrix(space, matrix, size)
    ranks = [size]
    power = operator
    while ranks[-1]:
        if len(ranks) > size:
            raise NotNilpotentError("Operator is not nilpotent")
        ranks.append(power.rank())
        if ranks[-1] == ranks[-2]:
            raise NotNilpotentError("Operator is not nilpotent")
        power = operator.matmul(power)
    at_least = [ranks[s - 1] - ranks[s] for s in range(1, len(ranks))] + [0]
    parts: List[int] = []
    for s in range(len(at_least) - 1, 0, -1):
        parts.extend([s] * (at_least[s - 1] - at_least[s]))
    return tuple(parts)


def partition_upper_bound(a: Algebra) -> Optional[Partition]:
    """Transpose of the graded component dimensions, when those decrease."""
    dims = [term.rank for term in lower_series(a)]
    if dims[-1]:
        raise NotNilpotentError("Lower series does not reach zero")
    components = [dims[i] - dims[i + 1] for i in range(len(dims) - 1)]
    if any(components[i] < components[i + 1] for i in range(len(components) - 1)):
        return None
    return tuple(
        sum(1 for c in components if c > block) for block in range(components[0])
    )


def grid_candidates(a: Algebra, height: int) -> Iterator[Vector]:
    series = lower_series(a)
    section = complement(series[0], series[1]) if len(series) > 1 else series[0].rows
    section_dim = len(section)

    def key(coeffs: Tuple[int, ...]) -> tuple:
        return (
            max(abs(c) for c in coeffs),
            sum(1 for c in coeffs if c),
            tuple((c == 0, abs(c), c < 0) for c in coeffs),
        )

    grid = [
        coeffs
        for coeffs in cartesian(range(-height, height + 1), repeat=section_dim)
        if any(coeffs) and next(c for c in coeffs if c) > 0
    ]
    for coeffs in sorted(grid, key=key):
        vector = a.zero_vector()
        for c, row in zip(coeffs, section):
            if c:
                weight = a.space.convert(c)
                vector = [v + weight * r for v, r in zip(vector, row)]
        yield vector


def _random_candidates(a: Algebra, strategy: RandomStrategy) -> Iterator[Vector]:
    rng = random.Random(strategy.seed)
    series = lower_series(a)
    square = series[1] if len(series) > 1 else None
    produced = 0
    attempts = 0
    while produced < strategy.samples and attempts < 20 * max(strategy.samples, 1):
        attempts += 1
        vector = [
            a.space.rational(
                rng.randint(-strategy.height, strategy.height),
                rng.randint(1, strategy.height),
            )
            for _ in range(a.dim)
        ]
        if square is not None and square.contains(vector):
            continue
        produced += 1
        yield vector


def char_sequence(a: Algebra, strategy: Optional[Strategy] = None) -> CharSequence:
    """Largest Jordan type of L_x found among the strategy's candidates."""
    if not a.space.is_rational:
        raise UnsupportedScopeError(
            "Characteristic sequences need a specialized algebra; "
            f"bind the parameters {list(a.params)} first"
        )
    strategy = strategy or GridStrategy()
    bound = partition_upper_bound(a)
    candidates = (
        grid_candidates(a, strategy.height)
        if isinstance(strategy, GridStrategy)
        else _random_candidates(a, strategy)
    )
    best: Optional[Partition] = None
    witness: Vector = a.zero_vector()
    examined = 0
    with log_duration(logger, "char_sequence", dim=a.dim, strategy=repr(strategy)):
        for x in candidates:
            examined += 1
            found = jordan_type(a.space, left_multiplication(a, x))
            if best is None or found > best:
                best, witness = found, x
                if found == bound:
                    break
    if best is None:
        raise UnsupportedScopeError("No candidate outside A² was examined")
    logger.info("char_sequence", partition=best, certified=best == bound, candidates=examined)
    return CharSequence(best, witness, best == bound, examined)


def chain_length(a: Algebra, x: Sequence[Scalar]) -> int:
    """Largest m with L_x^{m-1}(x) ≠ 0; zero for x = 0."""
    if not any(x):
        return 0
    length = 1
    current = list(x)
    while True:
        current = multiply(a, x, current)
        if not any(current):
            return length
        length += 1
        if length > a.dim + 1:
            raise NotNilpotentError("L_x is not nilpotent")


def detect_type(a: Algebra, cs: CharSequence) -> AlgebraType:
    """Type I when the witness chain runs along the long block, II along the short one."""
    if len(cs.partition) != 2:
        raise UnsupportedScopeError(
            f"Characteristic sequence {cs.partition} does not have two blocks"
        )
    long_block, short_block = cs.partition
    length = chain_length(a, cs.witness)
    if length == long_block:
        return AlgebraType.I
    if length == short_block:
        return AlgebraType.II
    raise UnsupportedScopeError(
        f"Witness chain of length {length} matches neither block of {cs.partition}"
    )


def jordan_layout(a: Algebra, x: Sequence[Scalar]) -> JordanLayout:
    """Block sizes of L_x in the order their chains start along the basis."""
    images: List[Optional[int]] = []
    adapted = True
    for j in range(a.dim):
        column = multiply(a, x, a.basis(j))
        support = [k for k, c in enumerate(column) if c]
        if not support:
            images.append(None)
        elif len(support) == 1 and column[support[0]] == a.space.one:
            images.append(support[0])
        else:
            adapted = False
            break
    if adapted:
        targets = [k for k in images if k is not None]
        adapted = len(set(targets)) == len(targets)
    if not adapted:
        ordered = tuple(sorted(jordan_type(a.space, left_multiplication(a, x)), reverse=True))
        return JordanLayout(ordered, False)
    hit = set(k for k in images if k is not None)
    blocks = []
    for start in range(a.dim):
        if start in hit:
            continue
        size, current = 1, images[start]
        while current is not None:
            size += 1
            current = images[current]
        blocks.append(size)
    return JordanLayout(tuple(blocks), sum(blocks) == a.dim)
