"""Tests for the natural gradation."""

import pytest

from zinbiel.algebra import families
from zinbiel.algebra.families import printed_table_is_zinbiel, sample_instances
from zinbiel.algebra.gradation import grading_dims, is_naturally_graded, natural_grading
from zinbiel.algebra.isomorphism import IsoStatus
from zinbiel.algebra.scalar import RATIONALS
from zinbiel.algebra.structure import Algebra, is_zinbiel
from zinbiel.core.exceptions import NotNilpotentError, UnsupportedScopeError
from zinbiel.models import FamilyId, FamilyParams


def test_graded_example_is_unchanged(ex31: Algebra) -> None:
    graded = natural_grading(ex31)
    assert graded.component_dims == [2, 1, 1]
    assert graded.degrees == (1, 1, 2, 3)
    assert graded.algebra == ex31


def test_component_dims_of_a_family() -> None:
    a = families.build_family(FamilyParams(family=FamilyId.A1, n=9, p=3, beta1=0))
    assert grading_dims(a) == [2, 2, 2, 1, 1, 1]
    graded = natural_grading(a)
    assert graded.component_dims == [2, 2, 2, 1, 1, 1]
    assert is_zinbiel(graded.algebra)


def test_is_naturally_graded(ex31: Algebra) -> None:
    result = is_naturally_graded(ex31)
    assert result.status is IsoStatus.YES


def test_not_nilpotent() -> None:
    a = Algebra.build(RATIONALS, ["x"], [(0, 0, 0, 1)])
    with pytest.raises(NotNilpotentError):
        grading_dims(a)
    with pytest.raises(NotNilpotentError):
        natural_grading(a)


def test_too_many_generators() -> None:
    a = Algebra.build(RATIONALS, ["x", "y", "z"], [])
    with pytest.raises(UnsupportedScopeError):
        is_naturally_graded(a)


GRADED_SWEEP = [params for params in sample_instances(3) if printed_table_is_zinbiel(params)]


@pytest.mark.parametrize("params", GRADED_SWEEP, ids=lambda p: p.describe())
def test_families_are_naturally_graded(params: FamilyParams) -> None:
    a = families.build_family(params)
    p = params.p
    assert grading_dims(a) == [2] * p + [1] * (a.dim - 2 * p)
    assert natural_grading(a).algebra == a


def test_perturbed_table_is_not_naturally_graded() -> None:
    a = families.build_family(FamilyParams(family=FamilyId.A1, n=9, p=3, beta1=0))
    f1, e6 = a.index("f1"), a.index("e6")
    perturbed = Algebra.build(a.space, a.labels, list(a.entries()) + [(f1, f1, e6, 1)])
    assert grading_dims(perturbed) == grading_dims(a)
    assert natural_grading(perturbed).algebra == a
    result = is_naturally_graded(perturbed)
    assert result.status is IsoStatus.NO
    assert "left_annihilator_dim" in result.differences
