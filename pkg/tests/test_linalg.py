"""Tests for exact row reduction."""

import pytest

from zinbiel.algebra.linalg import (
    Echelon,
    complement,
    determinant,
    domain_matrix,
    echelon,
    nullspace,
    rank,
    solve,
    transpose,
)
from zinbiel.algebra.scalar import RATIONALS, ScalarField
from zinbiel.core.exceptions import DimensionError


def q(*values: int) -> list:
    return [RATIONALS.convert(v) for v in values]


def test_rank_and_membership() -> None:
    span = echelon(RATIONALS, 3, [q(1, 2, 3), q(2, 4, 6), q(0, 1, 1)])
    assert span.rank == 2
    assert span.contains(q(1, 3, 4))
    assert not span.contains(q(0, 0, 1))
    assert rank(RATIONALS, [q(1, 0), q(0, 1), q(1, 1)]) == 2
    assert rank(RATIONALS, []) == 0


def test_add_reports_new_vectors() -> None:
    span = Echelon(RATIONALS, 2)
    assert span.add(q(1, 1))
    assert not span.add(q(2, 2))
    assert span.pivots == [0]


def test_reduce_checks_width() -> None:
    with pytest.raises(DimensionError):
        Echelon(RATIONALS, 2).reduce(q(1, 2, 3))


def test_parametric_pivots_are_side_conditions() -> None:
    field = ScalarField(["b"])
    b = field.param("b")
    span = echelon(field, 2, [[b, field.one]])
    assert span.side_conditions == ["b != 0"]


def test_complement() -> None:
    outer = echelon(RATIONALS, 3, [q(1, 0, 0), q(0, 1, 0), q(0, 0, 1)])
    inner = echelon(RATIONALS, 3, [q(0, 1, 0)])
    picked = complement(outer, inner)
    assert len(picked) == 2
    assert echelon(RATIONALS, 3, picked + inner.rows).rank == 3


def test_determinant() -> None:
    assert determinant(RATIONALS, [q(0, 1), q(1, 0)]) == -1
    assert determinant(RATIONALS, [q(2, 1), q(4, 2)]) == 0
    assert determinant(RATIONALS, [q(1, 1, 1), q(3, 2, 1), q(6, 3, 1)]) == -1
    with pytest.raises(DimensionError):
        determinant(RATIONALS, [q(1, 2)])


def test_nullspace() -> None:
    basis = nullspace(RATIONALS, [q(1, 1, 0), q(0, 0, 1)], 3)
    assert basis == [q(-1, 1, 0)]


def test_solve() -> None:
    columns = [q(1, 0), q(1, 1)]
    assert solve(RATIONALS, columns, q(3, 2)) == q(1, 2)
    assert solve(RATIONALS, [q(1, 1)], q(1, 0)) is None


def test_transpose() -> None:
    assert transpose([q(1, 2), q(3, 4)]) == [q(1, 3), q(2, 4)]


def test_parametric_matrices() -> None:
    field = ScalarField(["b"])
    b, one = field.param("b"), field.one
    assert determinant(field, [[b, one], [one, b]]) == b * b - one
    assert rank(field, [[b, one], [b * b, b]]) == 1
    assert nullspace(field, [[b, b * b]], 2) == [[-b, one]]
    assert solve(field, [[b, field.zero], [field.zero, one]], [one, b]) == [one / b, b]


def test_domain_matrix_shape() -> None:
    assert domain_matrix(RATIONALS, [], 3).shape == (0, 3)
    assert domain_matrix(RATIONALS, [q(1, 2)]).shape == (1, 2)
    with pytest.raises(DimensionError):
        domain_matrix(RATIONALS, [q(1, 2), q(1)])
