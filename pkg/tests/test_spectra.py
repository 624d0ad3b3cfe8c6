"""Tests for left multiplications and the characteristic sequence."""

import random

import pytest
import sympy

from zinbiel.algebra import families
from zinbiel.algebra.families import family_kind, printed_table_is_zinbiel, sample_instances
from zinbiel.algebra.scalar import RATIONALS
from zinbiel.algebra.spectra import (
    AlgebraType,
    GridStrategy,
    RandomStrategy,
    chain_length,
    char_sequence,
    detect_type,
    jordan_layout,
    jordan_type,
    left_multiplication,
    partition_upper_bound,
)
from zinbiel.algebra.structure import Algebra
from zinbiel.core.exceptions import NotNilpotentError, UnsupportedScopeError
from zinbiel.models import FamilyId, FamilyParams


def test_example_sequence(ex31: Algebra) -> None:
    cs = char_sequence(ex31, GridStrategy(2))
    assert cs.partition == (3, 1)
    assert cs.certified
    assert cs.candidates == 1
    assert ex31.format_vector(cs.witness) == "e1"


def test_example_type_and_layout(ex31: Algebra) -> None:
    cs = char_sequence(ex31)
    assert chain_length(ex31, cs.witness) == 1
    assert detect_type(ex31, cs) is AlgebraType.II
    layout = jordan_layout(ex31, cs.witness)
    assert layout.blocks == (1, 3)
    assert layout.adapted


def test_upper_bound(ex31: Algebra) -> None:
    assert partition_upper_bound(ex31) == (3, 1)


def test_random_strategy_is_reproducible(ex31: Algebra) -> None:
    strategy = RandomStrategy(samples=8, height=5, seed=7)
    first = char_sequence(ex31, strategy)
    second = char_sequence(ex31, strategy)
    assert first == second
    assert first.partition == (3, 1)


def test_type_one_family() -> None:
    a = families.build_family(FamilyParams(family=FamilyId.A1, n=8, p=3, beta1=0))
    cs = char_sequence(a)
    assert cs.partition == (5, 3)
    assert cs.certified
    assert detect_type(a, cs) is AlgebraType.I
    assert jordan_layout(a, cs.witness).blocks == (5, 3)


def test_parametric_algebra_needs_values() -> None:
    a = families.build_family(FamilyParams(family=FamilyId.A1, n=8, p=3))
    with pytest.raises(UnsupportedScopeError):
        char_sequence(a)


def test_jordan_type_of_a_non_nilpotent_operator() -> None:
    a = Algebra.build(RATIONALS, ["x"], [(0, 0, 0, 1)])
    with pytest.raises(NotNilpotentError):
        jordan_type(a.space, left_multiplication(a, a.basis(0)))


def test_null_filiform_has_a_single_block() -> None:
    a = families.build_family(FamilyParams(family=FamilyId.NF, n=5))
    cs = char_sequence(a)
    assert cs.partition == (5,)
    with pytest.raises(UnsupportedScopeError):
        detect_type(a, cs)


def test_zero_vector_has_no_chain(ex31: Algebra) -> None:
    assert chain_length(ex31, ex31.zero_vector()) == 0


@pytest.mark.parametrize(
    "params",
    [params for params in sample_instances(3) if printed_table_is_zinbiel(params)],
    ids=lambda p: p.describe(),
)
def test_family_sequence_and_type(params: FamilyParams) -> None:
    a = families.build_family(params)
    p = params.p
    cs = char_sequence(a)
    assert cs.partition == (a.dim - p, p)
    assert cs.certified
    assert detect_type(a, cs) is family_kind(params.family)


@pytest.mark.parametrize("scale", ["2", "-1", "1/3"])
def test_scaling_keeps_jordan_type(scale: str) -> None:
    a = families.build_family(FamilyParams(family=FamilyId.A3, n=8, p=3))
    factor = RATIONALS.convert(scale)
    e1, f1 = a.basis(0), a.basis(a.index("f1"))
    for x in (e1, f1, [u + v for u, v in zip(e1, f1)]):
        scaled = [factor * c for c in x]
        assert jordan_type(a.space, left_multiplication(a, scaled)) == jordan_type(
            a.space, left_multiplication(a, x)
        )


def sympy_blocks(rows: list) -> tuple:
    _, form = sympy.Matrix(rows).jordan_form()
    sizes, run = [], 1
    for i in range(form.rows - 1):
        if form[i, i + 1] == 1:
            run += 1
        else:
            sizes.append(run)
            run = 1
    sizes.append(run)
    return tuple(sorted(sizes, reverse=True))


@pytest.mark.parametrize("seed", range(12))
def test_jordan_type_matches_sympy(seed: int) -> None:
    rng = random.Random(seed)
    size = rng.randint(1, 5)
    upper = [[rng.choice((-1, 0, 1)) if j > i else 0 for j in range(size)] for i in range(size)]
    order = list(range(size))
    rng.shuffle(order)
    rows = [[upper[order[i]][order[j]] for j in range(size)] for i in range(size)]
    matrix = [[RATIONALS.convert(c) for c in row] for row in rows]
    assert jordan_type(RATIONALS, matrix) == sympy_blocks(rows)
