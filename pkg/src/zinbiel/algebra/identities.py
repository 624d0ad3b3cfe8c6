"""Binomial identities, the β constraint system and the nonexistence certificate.

Type-II algebras of length n − p ≥ 2p + 2 would need β_0, ..., β_p with
β_0 = 1 satisfying

    Σ_{k=0}^{p} C_{p+i-1-k}^{i-1} β_k = 0    for i = 1 .. n − p − 1.

Rows i = 1 .. p + 1 form a unimodular matrix, so only β = 0 solves them and
the pinned β_0 = 1 cannot hold. Infeasibility is reported constructively: a
row combination λ with λᵀA = 0 and λᵀb = 1.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence

from ..core.exceptions import InvariantError, ParameterError
from ..core.logging import get_logger, log_duration
from .families import closed_form_beta
from .linalg import Matrix, Vector, determinant, nullspace, rank, rref, transpose
from .scalar import RATIONALS, Scalar, ScalarField, binomial

logger = get_logger(__name__)

CONTRADICTION = "β₀ forced to 0 but β₀ = 1"


class SolutionSet(str, Enum):
    UNIQUE = "unique"
    AFFINE = "affine"
    INFEASIBLE = "infeasible"


@dataclass
class LinearSystem:
    """A x = b with its exactly computed solution set.

    ``solution`` is a particular solution, ``kernel`` a basis of the
    homogeneous solutions and ``certificate`` a left combination proving
    1 = 0 when the system is infeasible.
    """

    space: ScalarField
    matrix: Matrix
    rhs: Vector
    status: SolutionSet
    rank: int
    solution: Optional[Vector] = None
    kernel: List[Vector] = field(default_factory=list)
    certificate: Optional[Vector] = None

    @property
    def unknowns(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def residuals(self, x: Sequence[Scalar]) -> Vector:
        """A x − b."""
        return [
            sum((a * v for a, v in zip(row, x)), self.space.zero) - b
            for row, b in zip(self.matrix, self.rhs)
        ]


def lemma_alternating_sum(n: int, a: int) -> Scalar:
    """Σ_{k=0}^{n} (−1)^k C_a^k C_{a+n-k-1}^{n-k}, which vanishes for n, a ≥ 1."""
    if n < 1 or a < 1:
        raise ParameterError(f"Alternating sum needs n, a >= 1, got n={n}, a={a}")
    total = sum((-1) ** k * binomial(a, k) * binomial(a + n - k - 1, n - k) for k in range(n + 1))
    return RATIONALS.convert(total)


def binomial_matrix(p: int) -> Matrix:
    """(p+1)×(p+1) matrix with entry C_{p+i-c}^{i} at row i, column c (0-based)."""
    if p < 2:
        raise ParameterError(f"Binomial matrix needs p >= 2, got {p}")
    return [
        [RATIONALS.convert(binomial(p + i - c, i)) for c in range(p + 1)] for i in range(p + 1)
    ]


def reduce_binomial_matrix(matrix: Sequence[Sequence[Scalar]]) -> Matrix:
    """Repeatedly subtract from each row the previous one.

    Pass s touches rows s .. p from the bottom up; after p passes row i of
    :func:`binomial_matrix` becomes (C_{p-c}^{i})_c, an anti-triangular
    matrix with unit anti-diagonal and the same determinant.
    """
    rows = [list(r) for r in matrix]
    for step in range(1, len(rows)):
        for i in range(len(rows) - 1, step - 1, -1):
            rows[i] = [a - b for a, b in zip(rows[i], rows[i - 1])]
    return rows


def expected_determinant(p: int) -> int:
    """(−1)^⌊(p+1)/2⌋, the sign of the anti-diagonal of the reduced matrix."""
    return -1 if ((p + 1) // 2) % 2 else 1


def solve_linear_system(
    space: ScalarField, matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]
) -> LinearSystem:
    """Solve A x = b exactly, with a Fredholm certificate when infeasible."""
    rows = [list(r) for r in matrix]
    if len(rows) != len(rhs):
        raise ParameterError(f"{len(rows)} rows but {len(rhs)} right-hand sides")
    width = len(rows[0]) if rows else 0
    system_rank = rank(space, rows)
    reduced, pivots = rref(space, [r + [b] for r, b in zip(rows, rhs)], width + 1)
    kernel = nullspace(space, rows, width)
    if width in pivots:
        certificate = None
        for vector in nullspace(space, transpose(rows), len(rows)) if width else []:
            weight = sum((l * b for l, b in zip(vector, rhs)), space.zero)
            if weight:
                certificate = [l / weight for l in vector]
                break
        if certificate is None:
            # no columns at all: any nonzero b is its own certificate
            index = next(i for i, b in enumerate(rhs) if b)
            certificate = [space.zero] * len(rows)
            certificate[index] = space.one / rhs[index]
        return LinearSystem(
            space, rows, list(rhs), SolutionSet.INFEASIBLE, system_rank, kernel=kernel,
            certificate=certificate,
        )
    solution = [space.zero] * width
    for row, col in zip(reduced, pivots):
        solution[col] = row[width]
    status = SolutionSet.UNIQUE if not kernel else SolutionSet.AFFINE
    return LinearSystem(space, rows, list(rhs), status, system_rank, solution, kernel)


def beta_constraint_system(p: int, rows: int, pin_beta0: bool = False) -> LinearSystem:
    """Rows i = 1 .. ``rows`` over β_0 .. β_p; with ``pin_beta0`` the row β_0 = 1 is adjoined."""
    if p < 3 or rows < 1:
        raise ParameterError(f"β system needs p >= 3 and rows >= 1, got p={p}, rows={rows}")
    matrix = [
        [RATIONALS.convert(binomial(p + i - 1 - k, i - 1)) for k in range(p + 1)]
        for i in range(1, rows + 1)
    ]
    rhs = [RATIONALS.zero] * rows
    if pin_beta0:
        matrix.append([RATIONALS.one] + [RATIONALS.zero] * p)
        rhs.append(RATIONALS.one)
    return solve_linear_system(RATIONALS, matrix, rhs)


@dataclass(frozen=True)
class Certificate:
    p: int
    determinant: Scalar
    reduced: Matrix
    system_rank: int
    unknowns: int
    infeasible: bool
    combination: Vector
    statement: str


def nonexistence_certificate(p: int) -> Certificate:
    """Certificate that no β_0 = 1 solves rows 1 .. p + 1 of the β system."""
    with log_duration(logger, "nonexistence_certificate", p=p):
        matrix = binomial_matrix(p)
        reduced = reduce_binomial_matrix(matrix)
        det = determinant(RATIONALS, matrix)
        if det != determinant(RATIONALS, reduced):
            raise InvariantError(f"Row reduction changed the determinant for p={p}")
        homogeneous = beta_constraint_system(p, p + 1)
        pinned = beta_constraint_system(p, p + 1, pin_beta0=True)
    combination = pinned.certificate or []
    if pinned.status is SolutionSet.INFEASIBLE:
        check = [
            sum((l * row[c] for l, row in zip(combination, pinned.matrix)), RATIONALS.zero)
            for c in range(pinned.unknowns)
        ]
        weight = sum((l * b for l, b in zip(combination, pinned.rhs)), RATIONALS.zero)
        if any(check) or weight != RATIONALS.one:
            raise InvariantError(f"Row combination for p={p} does not prove 1 = 0")
    logger.info("nonexistence_certificate", p=p, status=pinned.status.value, rank=homogeneous.rank)
    return Certificate(
        p=p,
        determinant=det,
        reduced=reduced,
        system_rank=homogeneous.rank,
        unknowns=homogeneous.unknowns,
        infeasible=pinned.status is SolutionSet.INFEASIBLE,
        combination=combination,
        statement=CONTRADICTION if pinned.status is SolutionSet.INFEASIBLE else "feasible",
    )


@dataclass
class IdentitySuite:
    max_n: int
    lemma_cases: int = 0
    lemma_failures: List[str] = field(default_factory=list)
    determinants: Dict[int, Scalar] = field(default_factory=dict)
    determinant_failures: List[str] = field(default_factory=list)
    constraint_row_failures: List[str] = field(default_factory=list)
    certificate_failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.lemma_failures
            or self.determinant_failures
            or self.constraint_row_failures
            or self.certificate_failures
        )


def run_identity_suite(max_n: int = 12, max_p: int = 8, witness_p: int = 6) -> IdentitySuite:
    """Check every identity exactly over the usual desk-scale ranges."""
    suite = IdentitySuite(max_n)
    with log_duration(logger, "identity_suite", max_n=max_n):
        for n in range(1, max_n + 1):
            for a in range(1, max_n + 1):
                suite.lemma_cases += 1
                if lemma_alternating_sum(n, a):
                    suite.lemma_failures.append(f"n={n}, a={a}")
        for p in range(2, max_p + 1):
            det = determinant(RATIONALS, binomial_matrix(p))
            suite.determinants[p] = det
            if det != expected_determinant(p):
                suite.determinant_failures.append(f"p={p}: {RATIONALS.format(det)}")
        for p in range(3, witness_p + 1):
            system = beta_constraint_system(p, p + 1)
            values = system.residuals(closed_form_beta(p, p))
            for i, value in enumerate(values, start=1):
                expected = 1 if i == p + 1 else 0
                if value != expected:
                    suite.constraint_row_failures.append(f"p={p}, i={i}: {RATIONALS.format(value)}")
            if not nonexistence_certificate(p).infeasible:
                suite.certificate_failures.append(f"p={p}")
    logger.info("identity_suite", ok=suite.ok, lemma_cases=suite.lemma_cases)
    return suite
