"""Linear consequences of the Zinbiel identity on partially known tables.

Every unknown product e_i∘e_j gets one fresh unknown per coordinate. Identity
instances are expanded over basis triples in lexicographic order; when an
instance only ever multiplies an unknown by a known constant its coordinates
are linear equations, which are reduced incrementally. A row reducing to
``0 = c`` with c ≠ 0 is a contradiction, and the basis vectors whose known
coefficients produced c are the ones the identity forces to zero.
"""

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from ..core.exceptions import DimensionError
from ..core.logging import get_logger, log_duration
from ..models import FamilyId, FamilyParams
from .families import build_family
from .scalar import RATIONALS, Scalar, ScalarField
from .structure import Algebra, Defect, multiply

logger = get_logger(__name__)

Pair = Tuple[int, int]
Unknown = Tuple[int, int, int]


class NonlinearTerm(Exception):
    """Raised when an expansion would multiply two unknowns."""


@dataclass
class LinearForm:
    """Σ coeffs[u]·u + constant."""

    space: ScalarField
    coeffs: Dict[Unknown, Scalar] = field(default_factory=dict)
    constant: Scalar = None

    def __post_init__(self) -> None:
        if self.constant is None:
            self.constant = self.space.zero

    @classmethod
    def of(cls, space: ScalarField, value: Scalar) -> "LinearForm":
        return cls(space, {}, space.convert(value))

    @classmethod
    def unknown(cls, space: ScalarField, u: Unknown) -> "LinearForm":
        return cls(space, {u: space.one})

    @property
    def is_constant(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs) or bool(self.constant)

    def scaled(self, factor: Scalar) -> "LinearForm":
        if not factor:
            return LinearForm(self.space)
        return LinearForm(
            self.space, {u: c * factor for u, c in self.coeffs.items()}, self.constant * factor
        )

    def add(self, other: "LinearForm") -> None:
        for u, c in other.coeffs.items():
            total = self.coeffs.get(u, self.space.zero) + c
            if total:
                self.coeffs[u] = total
            else:
                self.coeffs.pop(u, None)
        self.constant = self.constant + other.constant

    def times(self, other: "LinearForm") -> "LinearForm":
        if not self or not other:
            return LinearForm(self.space)
        if self.is_constant:
            return other.scaled(self.constant)
        if other.is_constant:
            return self.scaled(other.constant)
        raise NonlinearTerm

    def evaluate(self, values: Mapping[Unknown, Scalar]) -> Scalar:
        return self.constant + sum(
            (c * self.space.convert(values[u]) for u, c in self.coeffs.items()), self.space.zero
        )


@dataclass(frozen=True)
class PartialTable:
    """Known products as constants, unknown pairs as fresh unknowns, everything else zero."""

    space: ScalarField
    labels: Tuple[str, ...]
    known: Mapping[Pair, Mapping[int, Scalar]]
    unknown: FrozenSet[Pair]

    def __post_init__(self) -> None:
        n = len(self.labels)
        overlap = set(self.known) & set(self.unknown)
        if overlap:
            raise DimensionError(f"Pairs both known and unknown: {sorted(overlap)}")
        for i, j in set(self.known) | set(self.unknown):
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionError(f"Pair ({i}, {j}) outside 0..{n - 1}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def product(self, i: int, j: int) -> Dict[int, LinearForm]:
        if (i, j) in self.unknown:
            return {k: LinearForm.unknown(self.space, (i, j, k)) for k in range(self.dim)}
        return {k: LinearForm.of(self.space, c) for k, c in self.known.get((i, j), {}).items() if c}

    def unknowns(self) -> List[Unknown]:
        return [(i, j, k) for i, j in sorted(self.unknown) for k in range(self.dim)]

    def name(self, u: Unknown) -> str:
        i, j, k = u
        return f"u({self.labels[i]},{self.labels[j]};{self.labels[k]})"

    def format_form(self, form: LinearForm) -> str:
        terms = []
        for u in sorted(form.coeffs):
            text = self.space.format(form.coeffs[u])
            coeff = "" if text == "1" else "-" if text == "-1" else f"({text})*" if " " in text else f"{text}*"
            terms.append(f"{coeff}{self.name(u)}")
        if form.constant or not terms:
            terms.append(self.space.format(form.constant))
        return " + ".join(terms).replace("+ -", "- ")


def _times(t: PartialTable, left: Mapping[int, LinearForm], k: int) -> Dict[int, LinearForm]:
    """(Σ left[l] e_l) ∘ e_k."""
    out: Dict[int, LinearForm] = {}
    for l, weight in left.items():
        for m, value in t.product(l, k).items():
            out.setdefault(m, LinearForm(t.space)).add(weight.times(value))
    return out


def _left(t: PartialTable, i: int, right: Mapping[int, LinearForm]) -> Dict[int, LinearForm]:
    """e_i ∘ (Σ right[l] e_l)."""
    out: Dict[int, LinearForm] = {}
    for l, weight in right.items():
        for m, value in t.product(i, l).items():
            out.setdefault(m, LinearForm(t.space)).add(value.times(weight))
    return out


def _subtract(total: Dict[int, LinearForm], other: Mapping[int, LinearForm]) -> None:
    for m, form in other.items():
        total.setdefault(m, LinearForm(form.space)).add(form.scaled(-form.space.one))


def zinbiel_instance(t: PartialTable, i: int, j: int, k: int) -> Dict[int, LinearForm]:
    """(e_i∘e_j)∘e_k − e_i∘(e_j∘e_k) − e_i∘(e_k∘e_j)."""
    total = _times(t, t.product(i, j), k)
    _subtract(total, _left(t, i, t.product(j, k)))
    _subtract(total, _left(t, i, t.product(k, j)))
    return total


def derived_instance(t: PartialTable, i: int, j: int, k: int) -> Dict[int, LinearForm]:
    """(e_i∘e_j)∘e_k − (e_i∘e_k)∘e_j."""
    total = _times(t, t.product(i, j), k)
    _subtract(total, _times(t, t.product(i, k), j))
    return total


@dataclass(frozen=True)
class Constraint:
    """Coordinate ``coordinate`` (0-based) of one identity instance: ``form`` = 0."""

    instance: str
    coordinate: int
    form: LinearForm


@dataclass(frozen=True)
class Contradiction:
    instance: str
    forced_zero: List[str]
    combination: Dict[int, Scalar]


@dataclass
class _Row:
    pivot: Unknown
    coeffs: Dict[Unknown, Scalar]
    constant: Scalar
    provenance: Dict[int, Scalar]


class _Eliminator:
    """Reduced row echelon form over the unknowns, one constraint at a time.

    Each row remembers the combination of original constraints it came from.
    """

    def __init__(self, space: ScalarField) -> None:
        self.space = space
        self.rows: Dict[Unknown, _Row] = {}

    def add(self, index: int, form: LinearForm) -> Optional[Dict[int, Scalar]]:
        """Insert constraint ``index``; returns the provenance of ``0 = c`` when inconsistent."""
        coeffs = dict(form.coeffs)
        constant = form.constant
        provenance = {index: self.space.one}
        for u in sorted(coeffs):
            if u not in coeffs or u not in self.rows:
                continue
            factor = coeffs[u]
            row = self.rows[u]
            for v, c in row.coeffs.items():
                total = coeffs.get(v, self.space.zero) - factor * c
                if total:
                    coeffs[v] = total
                else:
                    coeffs.pop(v, None)
            constant = constant - factor * row.constant
            for source, c in row.provenance.items():
                total = provenance.get(source, self.space.zero) - factor * c
                if total:
                    provenance[source] = total
                else:
                    provenance.pop(source, None)
        if not coeffs:
            return provenance if constant else None
        pivot = min(coeffs)
        inverse = self.space.one / coeffs[pivot]
        new = _Row(
            pivot,
            {u: c * inverse for u, c in coeffs.items()},
            constant * inverse,
            {s: c * inverse for s, c in provenance.items()},
        )
        for row in self.rows.values():
            factor = row.coeffs.get(pivot)
            if not factor:
                continue
            for v, c in new.coeffs.items():
                total = row.coeffs.get(v, self.space.zero) - factor * c
                if total:
                    row.coeffs[v] = total
                else:
                    row.coeffs.pop(v, None)
            row.constant = row.constant - factor * new.constant
            for s, c in new.provenance.items():
                total = row.provenance.get(s, self.space.zero) - factor * c
                if total:
                    row.provenance[s] = total
                else:
                    row.provenance.pop(s, None)
        self.rows[pivot] = new
        return None


@dataclass
class DeductionResult:
    table: PartialTable
    constraints: List[Constraint] = field(default_factory=list)
    contradiction: Optional[Contradiction] = None
    instances_expanded: int = 0
    skipped_nonlinear: int = 0
    complete: bool = False
    _solved: Dict[Unknown, Tuple[Dict[Unknown, Scalar], Scalar]] = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self._solved)

    def value_of(self, u: Unknown) -> Optional[Scalar]:
        """The value the constraints force on ``u``, or None when it stays free."""
        entry = self._solved.get(u)
        if entry is None:
            return None
        others, constant = entry
        if others:
            return None
        return -constant

    def relation(self, constraint: Constraint) -> str:
        return f"{self.table.format_form(constraint.form)} = 0"


def _instances(dim: int) -> Iterator[Tuple[str, Tuple[int, int, int]]]:
    for triple in cartesian(range(dim), repeat=3):
        yield "zinbiel", triple
        yield "derived", triple


def propagate(t: PartialTable, budget: int = 500) -> DeductionResult:
    """Expand up to ``budget`` identity instances and reduce their linear coordinates."""
    result = DeductionResult(t)
    eliminator = _Eliminator(t.space)
    expanders = {"zinbiel": zinbiel_instance, "derived": derived_instance}
    total = 2 * t.dim ** 3
    with log_duration(logger, "propagate", dim=t.dim, budget=budget, unknowns=len(t.unknowns())):
        for kind, (i, j, k) in _instances(t.dim):
            if result.instances_expanded >= budget:
                break
            result.instances_expanded += 1
            name = f"{kind}({i + 1},{j + 1},{k + 1})"
            try:
                coordinates = expanders[kind](t, i, j, k)
            except NonlinearTerm:
                result.skipped_nonlinear += 1
                continue
            for m in sorted(coordinates):
                form = coordinates[m]
                if not form:
                    continue
                result.constraints.append(Constraint(name, m, form))
                inconsistent = eliminator.add(len(result.constraints) - 1, form)
                if inconsistent is not None:
                    forced = sorted(
                        {
                            result.constraints[s].coordinate
                            for s in inconsistent
                            if result.constraints[s].form.constant
                        }
                    )
                    result.contradiction = Contradiction(
                        name, [t.labels[c] for c in forced], inconsistent
                    )
                    break
            if result.contradiction is not None:
                break
    result.complete = result.contradiction is not None or result.instances_expanded >= total
    result._solved = {
        pivot: ({u: c for u, c in row.coeffs.items() if u != pivot}, row.constant)
        for pivot, row in eliminator.rows.items()
    }
    logger.info(
        "propagate",
        constraints=len(result.constraints),
        contradiction=result.contradiction.instance if result.contradiction else None,
        expanded=result.instances_expanded,
        skipped=result.skipped_nonlinear,
        complete=result.complete,
    )
    return result


def derived_identity_defects(a: Algebra) -> List[Defect]:
    """Triples with (e_i∘e_j)∘e_k ≠ (e_i∘e_k)∘e_j; empty for a Zinbiel algebra."""
    defects = []
    for i, j, k in cartesian(range(a.dim), repeat=3):
        left = multiply(a, multiply(a, a.basis(i), a.basis(j)), a.basis(k))
        right = multiply(a, multiply(a, a.basis(i), a.basis(k)), a.basis(j))
        diff = [x - y for x, y in zip(left, right)]
        if any(diff):
            defects.append(Defect((i + 1, j + 1, k + 1), diff))
    return defects


def from_algebra(a: Algebra, unknown: Iterable[Pair]) -> PartialTable:
    """Forget the listed products of a complete table."""
    hidden = frozenset(unknown)
    known = {pair: dict(column) for pair, column in a.table.items() if pair not in hidden}
    return PartialTable(a.space, a.labels, known, hidden)


def completion_values(a: Algebra, t: PartialTable) -> Dict[Unknown, Scalar]:
    """Values of every unknown of ``t`` read from a completed table ``a``."""
    return {(i, j, k): a.product(i, j).get(k, a.space.zero) for i, j, k in t.unknowns()}


def short_block_table(long_block: int = 4) -> PartialTable:
    """A single e_1 chain of length ``long_block`` + 1 with e_1∘e_1 = 0 and the rest unknown.

    This is the table a characteristic sequence with a block of size 1 in
    front would force; propagation shows the top vector must vanish.
    """
    n = long_block + 1
    if long_block < 2:
        raise DimensionError(f"Short-block table needs long_block >= 2, got {long_block}")
    labels = tuple(f"e{i}" for i in range(1, n + 1))
    known: Dict[Pair, Dict[int, Scalar]] = {(0, i): {i + 1: RATIONALS.one} for i in range(1, n - 1)}
    unknown = frozenset((i, j) for i in range(1, n) for j in range(n))
    return PartialTable(RATIONALS, labels, known, unknown)


def type_one_skeleton(n: int, p: int, beta1: Optional[object] = None) -> PartialTable:
    """Type-I table with e_1∘x, the e∘e products and f_1∘e_1 known; every other product unknown."""
    a = build_family(FamilyParams(family=FamilyId.A1, n=n, p=p, beta1=beta1))
    e_count = n - p
    f1 = e_count
    known_pairs = {(0, x) for x in range(n)}
    known_pairs |= {(i, j) for i in range(e_count) for j in range(e_count)}
    known_pairs.add((f1, 0))
    hidden = [(i, j) for i in range(n) for j in range(n) if (i, j) not in known_pairs]
    return from_algebra(a, hidden)


def unknown_named(t: PartialTable, left: str, right: str, target: str) -> Unknown:
    """The unknown for the ``target`` coordinate of ``left``∘``right``."""
    index = {label: position for position, label in enumerate(t.labels)}
    u = (index[left], index[right], index[target])
    if (u[0], u[1]) not in t.unknown:
        raise DimensionError(f"{left}∘{right} is not an unknown product")
    return u


def check_constraints(result: DeductionResult, values: Mapping[Unknown, Scalar]) -> List[Constraint]:
    """Constraints not satisfied by ``values``; empty for any Zinbiel completion."""
    return [c for c in result.constraints if c.form.evaluate(values)]
