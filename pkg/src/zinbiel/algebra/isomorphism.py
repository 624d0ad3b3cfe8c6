"""Isomorphism invariants, base changes and the graded isomorphism search.

A degree-1 base change sends the generators of a 2-generated (or
1-generated) algebra to combinations of the target's generators. Since
A_{k+1} = A_1∘A_k, every basis vector is a combination of right-nested
generator words g∘(g∘(…)), so the change extends to a unique linear map
which is then checked to be a bijective homomorphism.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import islice
from itertools import product as cartesian
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from ..core.config import get_search_defaults
from ..core.exceptions import BaseChangeError, DimensionError, UnsupportedScopeError
from ..core.logging import get_logger, log_duration
from .linalg import Echelon, Vector, complement, determinant, rank, solve, unit
from .scalar import Scalar, ScalarField, rational_grid
from .spectra import GridStrategy, Strategy, chain_length, char_sequence, grid_candidates
from .structure import Algebra, annihilator_dims, lower_series, multiply, with_space

logger = get_logger(__name__)

Word = Tuple[int, ...]
GENERATOR_NAMES = ("A", "B", "C", "D")


class IsoStatus(str, Enum):
    YES = "yes"
    NO = "no"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants; any difference proves non-isomorphism.

    The characteristic sequence and the longest chain come from a finite
    search. They only count as invariants when the search certified them:
    the sequence when it met its upper bound, the chain when it reached the
    ``chain_ceiling`` of nilindex minus one.
    """

    series_dims: Tuple[int, ...]
    char_sequence: Tuple[int, ...]
    max_chain_length: int
    square_rank: int
    commutator_rank: int
    left_annihilator_dim: int
    right_annihilator_dim: int
    annihilator_dim: int
    char_sequence_certified: bool = True
    chain_ceiling: int = 0

    def differences(self, other: "Fingerprint") -> List[str]:
        skipped = {"char_sequence_certified", "chain_ceiling"}
        if not (self.char_sequence_certified and other.char_sequence_certified):
            skipped.add("char_sequence")
        if self.max_chain_length < self.chain_ceiling or other.max_chain_length < other.chain_ceiling:
            skipped.add("max_chain_length")
        return [
            name
            for name in self.__dataclass_fields__
            if name not in skipped and getattr(self, name) != getattr(other, name)
        ]


@dataclass(frozen=True)
class BaseChange:
    """``matrix[r][s]``: coefficient of target generator s in the image of source generator r.

    For two generators the rows read e₁′ = A e₁ + B f₁, f₁′ = C e₁ + D f₁.
    """

    space: ScalarField
    matrix: Tuple[Tuple[Scalar, ...], ...]

    @classmethod
    def of(cls, space: ScalarField, *entries: Any) -> "BaseChange":
        size = {1: 1, 4: 2}.get(len(entries))
        if size is None:
            raise DimensionError("A base change has 1 or 4 entries")
        values = [space.convert(e) for e in entries]
        return cls(space, tuple(tuple(values[r * size:(r + 1) * size]) for r in range(size)))

    @classmethod
    def identity(cls, space: ScalarField, size: int) -> "BaseChange":
        return cls(space, tuple(tuple(unit(space, size, r)) for r in range(size)))

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def determinant(self) -> Scalar:
        return determinant(self.space, [list(row) for row in self.matrix])

    def entries(self) -> Dict[str, str]:
        flat = [c for row in self.matrix for c in row]
        return {name: self.space.format(c) for name, c in zip(GENERATOR_NAMES, flat)}


@dataclass(frozen=True)
class Violation:
    """A basis pair (1-based) where φ(e_i∘e_j) ≠ φ(e_i)∘φ(e_j)."""

    pair: Tuple[int, int]
    expected: Vector
    found: Vector


@dataclass(frozen=True)
class Extension:
    """Images φ(e_i) in the target basis, or the reason the extension fails."""

    images: Tuple[Vector, ...]
    violations: Tuple[Violation, ...] = ()
    reason: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.reason is None


@dataclass(frozen=True)
class IsoResult:
    status: IsoStatus
    base_change: Optional[BaseChange] = None
    differences: Tuple[str, ...] = ()
    residual: Tuple[str, ...] = ()
    nodes: int = 0
    complete: bool = False
    fingerprints: Tuple[Optional[Fingerprint], Optional[Fingerprint]] = (None, None)


def generators(a: Algebra) -> List[Vector]:
    """Section of A/A² chosen by echelon complement, in pivot order."""
    series = lower_series(a)
    if len(series) == 1:
        return [list(row) for row in series[0].rows]
    return complement(series[0], series[1])


def generator_words(a: Algebra, gens: Sequence[Vector]) -> Tuple[List[Word], List[Vector]]:
    """Right-nested generator words whose values form a basis of A."""
    span = Echelon(a.space, a.dim)
    words: List[Word] = []
    values: List[Vector] = []
    level: List[Tuple[Word, Vector]] = []
    for r, g in enumerate(gens):
        if span.add(g):
            level.append(((r,), list(g)))
    while level:
        words.extend(w for w, _ in level)
        values.extend(v for _, v in level)
        following = []
        for r, g in enumerate(gens):
            for word, value in level:
                product = multiply(a, g, value)
                if span.add(product):
                    following.append(((r,) + word, product))
        level = following
    if span.rank != a.dim:
        raise UnsupportedScopeError(
            f"Degree-1 generators span a subalgebra of dimension {span.rank} < {a.dim}"
        )
    return words, values


def _word_coordinates(a: Algebra, values: Sequence[Vector]) -> List[Vector]:
    """coords[i][w]: coefficient of word w in the expansion of e_i."""
    coords = []
    for i in range(a.dim):
        solution = solve(a.space, [list(v) for v in values], a.basis(i))
        if solution is None:
            raise UnsupportedScopeError("Generator words do not span the algebra")
        coords.append(solution)
    return coords


def _bilinear(
    table: Mapping[Tuple[int, int], Mapping[int, Any]], u: Sequence[Any], v: Sequence[Any], zero: Any
) -> List[Any]:
    out = [zero] * len(u)
    for (i, j), column in table.items():
        if not u[i] or not v[j]:
            continue
        weight = u[i] * v[j]
        for k, coeff in column.items():
            out[k] = out[k] + weight * coeff
    return out


def _evaluate_word(
    word: Word,
    images: Sequence[Sequence[Any]],
    table: Mapping[Tuple[int, int], Mapping[int, Any]],
    zero: Any,
) -> List[Any]:
    value = list(images[word[-1]])
    for r in reversed(word[:-1]):
        value = _bilinear(table, images[r], value, zero)
    return value


def _extend(
    src: Algebra,
    dst_table: Mapping[Tuple[int, int], Mapping[int, Any]],
    generator_images: Sequence[Sequence[Any]],
    convert: Callable[[Scalar], Any],
    zero: Any,
) -> Tuple[List[List[Any]], List[Tuple[int, int, List[Any], List[Any]]]]:
    """φ(e_i) for every basis vector and the homomorphism mismatches, over any ring."""
    words, values = generator_words(src, generators(src))
    coords = _word_coordinates(src, values)
    word_images = [_evaluate_word(w, generator_images, dst_table, zero) for w in words]
    size = len(generator_images[0])
    phi = []
    for i in range(src.dim):
        image = [zero] * size
        for w, c in enumerate(coords[i]):
            if c:
                weight = convert(c)
                image = [x + weight * y for x, y in zip(image, word_images[w])]
        phi.append(image)
    mismatches = []
    for i in range(src.dim):
        for j in range(src.dim):
            expected = [zero] * size
            for k, c in src.product(i, j).items():
                weight = convert(c)
                expected = [x + weight * y for x, y in zip(expected, phi[k])]
            found = _bilinear(dst_table, phi[i], phi[j], zero)
            if any(x != y for x, y in zip(expected, found)):
                mismatches.append((i, j, expected, found))
    return phi, mismatches


def extend_base_change(src: Algebra, dst: Algebra, bc: BaseChange) -> Extension:
    """Extend a degree-1 base change to all of ``src`` and test it."""
    space = src.space.union(dst.space).union(bc.space)
    src, dst = with_space(src, space), with_space(dst, space)
    if src.dim != dst.dim:
        return Extension((), reason=f"dimensions differ: {src.dim} vs {dst.dim}")
    src_gens, dst_gens = generators(src), generators(dst)
    if not (len(src_gens) == len(dst_gens) == bc.size):
        return Extension(
            (),
            reason=f"{len(src_gens)} and {len(dst_gens)} generators for a "
            f"{bc.size}x{bc.size} base change",
        )
    matrix = [[space.convert(c) for c in row] for row in bc.matrix]
    if not determinant(space, matrix):
        return Extension((), reason="base change is singular")
    images = []
    for row in matrix:
        image = dst.zero_vector()
        for c, g in zip(row, dst_gens):
            image = [x + c * y for x, y in zip(image, g)]
        images.append(image)
    phi, mismatches = _extend(src, dst.table, images, lambda c: c, space.zero)
    violations = tuple(
        Violation((i + 1, j + 1), expected, found) for i, j, expected, found in mismatches
    )
    if violations:
        first = violations[0]
        return Extension(
            tuple(phi),
            violations,
            reason=f"product e{first.pair[0]}∘e{first.pair[1]} is not preserved",
        )
    if rank(space, phi) != src.dim:
        return Extension(tuple(phi), reason="extension is not bijective")
    return Extension(tuple(phi))


def apply_base_change(a: Algebra, bc: BaseChange) -> Algebra:
    """Rewrite ``a`` in the basis generated by the changed generators.

    The new basis vector e_i′ is the expansion of e_i in generator words,
    evaluated on e₁′ = A e₁ + B f₁, f₁′ = C e₁ + D f₁. The result is
    isomorphic to ``a`` whenever the new vectors form a basis.
    """
    space = a.space.union(bc.space)
    a = with_space(a, space)
    gens = generators(a)
    if len(gens) != bc.size:
        raise BaseChangeError(f"{len(gens)} generators for a {bc.size}x{bc.size} base change")
    images = []
    for row in bc.matrix:
        image = a.zero_vector()
        for c, g in zip(row, gens):
            image = [x + space.convert(c) * y for x, y in zip(image, g)]
        images.append(image)
    words, values = generator_words(a, gens)
    coords = _word_coordinates(a, values)
    word_images = [_evaluate_word(w, images, a.table, space.zero) for w in words]
    basis = []
    for i in range(a.dim):
        vector = a.zero_vector()
        for w, c in enumerate(coords[i]):
            if c:
                vector = [x + c * y for x, y in zip(vector, word_images[w])]
        basis.append(vector)
    if rank(space, basis) != a.dim:
        raise BaseChangeError("Changed generators do not produce a basis")
    inverse = [solve(space, basis, a.basis(k)) for k in range(a.dim)]
    products = []
    for p, u in enumerate(basis):
        for q, v in enumerate(basis):
            w = multiply(a, u, v)
            for k, c in enumerate(w):
                if not c:
                    continue
                for m, weight in enumerate(inverse[k]):
                    if weight:
                        products.append((p, q, m, c * weight))
    return Algebra.build(space, a.labels, products)


def fingerprint(a: Algebra, strategy: Optional[Strategy] = None) -> Fingerprint:
    """Invariants used to certify non-isomorphism."""
    series = lower_series(a)
    dims = tuple(term.rank for term in series)
    cs = char_sequence(a, strategy or GridStrategy())
    ceiling = len(series) - 1
    longest = 0
    for x in grid_candidates(a, GridStrategy().height):
        longest = max(longest, chain_length(a, x))
        if longest >= ceiling:
            break

    section = generators(a)
    cube = Echelon(a.space, a.dim)
    if len(series) > 2:
        for row in series[2].rows:
            cube.add(row)
    symmetric = Echelon(a.space, a.dim, [list(r) for r in cube.rows], list(cube.pivots))
    skew = Echelon(a.space, a.dim, [list(r) for r in cube.rows], list(cube.pivots))
    for p, u in enumerate(section):
        for q, v in enumerate(section):
            if q < p:
                continue
            uv, vu = multiply(a, u, v), multiply(a, v, u)
            symmetric.add([x + y for x, y in zip(uv, vu)])
            if q > p:
                skew.add([x - y for x, y in zip(uv, vu)])
    left, right, both = annihilator_dims(a)
    return Fingerprint(
        series_dims=dims,
        char_sequence=cs.partition,
        max_chain_length=longest,
        square_rank=symmetric.rank - cube.rank,
        commutator_rank=skew.rank - cube.rank,
        left_annihilator_dim=left,
        right_annihilator_dim=right,
        annihilator_dim=both,
        char_sequence_certified=cs.certified,
        chain_ceiling=ceiling,
    )


class _GradedSearch:
    """Depth-first solver for the structure equations of a degree-1 base change."""

    def __init__(
        self,
        src: Algebra,
        dst: Algebra,
        poly_ring: Any,
        variables: Sequence[Any],
        height: int,
        node_budget: int,
    ) -> None:
        self.src = src
        self.dst = dst
        self.ring = poly_ring
        self.variables = list(variables)
        self.grid = list(rational_grid(height))
        self.node_budget = node_budget
        self.nodes = 0
        self.complete = True

    def normalize(self, equations: Sequence[Any]) -> Optional[List[Any]]:
        seen: Dict[Tuple, Any] = {}
        for eq in equations:
            if not eq:
                continue
            if eq.is_ground:
                return None
            monic = eq.monic()
            seen.setdefault(tuple(monic.terms()), monic)
        return [seen[key] for key in sorted(seen, key=str)]

    @staticmethod
    def total_degree(eq: Any) -> int:
        return max(sum(m) for m in eq.monoms())

    def present(self, eq: Any) -> List[Any]:
        return [x for x in self.variables if eq.degree(x) > 0]

    def run(self, equations: List[Any], entries: List[Any]) -> Optional[BaseChange]:
        self.nodes += 1
        if self.nodes > self.node_budget:
            self.complete = False
            return None
        reduced = self.normalize(equations)
        if reduced is None:
            return None
        if not reduced:
            return self.finish(entries)
        eq = min(reduced, key=lambda f: (self.total_degree(f), len(f.terms()), str(f)))
        rest = [f for f in reduced if f is not eq]
        present = self.present(eq)
        if self.total_degree(eq) == 1:
            var = present[-1]
            coeff = next(
                c for m, c in eq.terms() if m[self.variables.index(var)] == 1
            )
            value = (eq - var.mul_ground(coeff)).mul_ground(-1 / coeff)
            return self.bind(var, value, rest, entries)
        _, factors = eq.factor_list()
        distinct = [f for f, _ in factors if not f.is_ground]
        if len(distinct) > 1 or factors[0][1] > 1:
            distinct.sort(key=lambda f: (self.total_degree(f), len(f.terms()), str(f)))
            for factor in distinct:
                found = self.run([factor] + rest, entries)
                if found is not None:
                    return found
            return None
        if len(present) == 1:
            # irreducible over ℚ of degree ≥ 2: no rational point on this branch
            self.complete = False
            return None
        self.complete = False
        var = present[0]
        for value in self.grid:
            found = self.bind(var, self.ring.ground_new(value), rest + [eq], entries)
            if found is not None:
                return found
            if self.nodes > self.node_budget:
                break
        return None

    def bind(self, var: Any, value: Any, equations: List[Any], entries: List[Any]) -> Optional[BaseChange]:
        return self.run(
            [eq.compose(var, value) for eq in equations],
            [e.compose(var, value) for e in entries],
        )

    def finish(self, entries: List[Any]) -> Optional[BaseChange]:
        free = [x for x in self.variables if any(e.degree(x) > 0 for e in entries)]
        size = 2 if len(entries) == 4 else 1
        det = entries[0] * entries[3] - entries[1] * entries[2] if size == 2 else entries[0]
        if not det:
            return None
        values = self.grid[: max(3, min(len(self.grid), 9))]
        for point in islice(cartesian(values, repeat=len(free)), 2000):
            pairs = [(x, self.ring.ground_new(v)) for x, v in zip(free, point)]
            numeric = [e.compose(pairs) if pairs else e for e in entries]
            check = numeric[0] * numeric[3] - numeric[1] * numeric[2] if size == 2 else numeric[0]
            if not check:
                continue
            bc = BaseChange.of(self.src.space, *[QQ.convert(e.LC) for e in numeric])
            if extend_base_change(self.src, self.dst, bc).ok:
                return bc
        return None


def structure_equations(src: Algebra, dst: Algebra) -> Tuple[Any, List[Any], List[Any]]:
    """Polynomial conditions on the generator matrix for φ to be a homomorphism."""
    size = len(generators(src))
    names = GENERATOR_NAMES[: size * size]
    poly_ring, *variables = ring(",".join(names), QQ)

    def lift(c: Scalar) -> Any:
        return poly_ring.ground_new(QQ.convert(c))

    dst_table = {
        key: {k: lift(c) for k, c in column.items()} for key, column in dst.table.items()
    }
    dst_gens = generators(dst)
    images = []
    for r in range(size):
        image = [poly_ring.zero] * dst.dim
        for s, g in enumerate(dst_gens):
            image = [x + variables[r * size + s] * lift(y) for x, y in zip(image, g)]
        images.append(image)
    _, mismatches = _extend(src, dst_table, images, lift, poly_ring.zero)
    equations = []
    for _, _, expected, found in mismatches:
        equations.extend(x - y for x, y in zip(expected, found) if x != y)
    return poly_ring, variables, equations


def iso_search(
    src: Algebra,
    dst: Algebra,
    height: Optional[int] = None,
    node_budget: Optional[int] = None,
    strategy: Optional[Strategy] = None,
) -> IsoResult:
    """Decide isomorphism by invariants, then search degree-1 base changes."""
    defaults = get_search_defaults()
    height = height or defaults.iso_height
    node_budget = node_budget or defaults.iso_nodes
    for algebra in (src, dst):
        if not algebra.space.is_rational:
            raise UnsupportedScopeError("Isomorphism search needs specialized algebras")
    if src.dim != dst.dim:
        return IsoResult(IsoStatus.NO, differences=("dim",))
    with log_duration(logger, "fingerprints", dim=src.dim):
        fp_src, fp_dst = fingerprint(src, strategy), fingerprint(dst, strategy)
    differences = fp_src.differences(fp_dst)
    if differences:
        logger.info("iso_search", status="no", differences=differences)
        return IsoResult(IsoStatus.NO, differences=tuple(differences), fingerprints=(fp_src, fp_dst))
    size = len(generators(src))
    if size > 2:
        raise UnsupportedScopeError(f"{size} degree-1 generators; at most 2 are supported")

    identity = BaseChange.identity(src.space, size)
    if extend_base_change(src, dst, identity).ok:
        return IsoResult(IsoStatus.YES, identity, complete=True, fingerprints=(fp_src, fp_dst))

    with log_duration(logger, "graded_search", dim=src.dim, height=height):
        poly_ring, variables, equations = structure_equations(src, dst)
        search = _GradedSearch(src, dst, poly_ring, variables, height, node_budget)
        found = search.run(equations, list(variables))
    if found is not None:
        logger.info("iso_search", status="yes", nodes=search.nodes)
        return IsoResult(IsoStatus.YES, found, nodes=search.nodes, fingerprints=(fp_src, fp_dst))
    residual = search.normalize(equations) or []
    logger.info("iso_search", status="exhausted", nodes=search.nodes, complete=search.complete)
    return IsoResult(
        IsoStatus.EXHAUSTED,
        residual=tuple(str(eq.as_expr()) for eq in residual),
        nodes=search.nodes,
        complete=search.complete,
        fingerprints=(fp_src, fp_dst),
    )
