"""Tests for structure-constant tables and the lower series."""

import pytest

from zinbiel.algebra import families
from zinbiel.algebra.scalar import RATIONALS, ScalarField
from zinbiel.algebra.structure import (
    Algebra,
    annihilator_dims,
    is_null_filiform,
    is_zinbiel,
    multiply,
    nilindex,
    series_dims,
    specialize,
    with_space,
    zinbiel_defects,
)
from zinbiel.core.exceptions import DimensionError, NotNilpotentError, ParameterError
from zinbiel.models import FamilyId, FamilyParams


def test_build_sums_repeats_and_drops_zeros() -> None:
    a = Algebra.build(RATIONALS, ["x", "y"], [(0, 0, 1, 1), (0, 0, 1, 2), (1, 1, 0, 1), (1, 1, 0, -1)])
    assert a.entries() == [(0, 0, 1, RATIONALS.convert(3))]
    assert a.product(1, 1) == {}


def test_build_rejects_bad_input() -> None:
    with pytest.raises(DimensionError):
        Algebra.build(RATIONALS, ["x", "x"], [])
    with pytest.raises(DimensionError):
        Algebra.build(RATIONALS, ["x"], [(0, 0, 1, 1)])


def test_multiply_is_bilinear(ex31: Algebra) -> None:
    u = [RATIONALS.convert(c) for c in (1, 2, 0, 0)]
    v = [RATIONALS.convert(c) for c in (3, 1, 1, 0)]
    # (e1 + 2e2)∘(3e1 + e2 + e3) = e3 + e4 - 6e3
    assert ex31.format_vector(multiply(ex31, u, v)) == "-5*e3 + e4"
    with pytest.raises(DimensionError):
        multiply(ex31, u[:2], v)


def test_format_vector(ex31: Algebra) -> None:
    vector = [RATIONALS.convert(c) for c in (1, -1, 0, 0)]
    vector[2] = RATIONALS.rational(1, 2)
    assert ex31.format_vector(vector) == "e1 - e2 + 1/2*e3"
    assert ex31.format_vector(ex31.zero_vector()) == "0"


def test_example_is_zinbiel(ex31: Algebra) -> None:
    assert zinbiel_defects(ex31) == []
    assert series_dims(ex31) == [4, 2, 1, 0]
    assert nilindex(ex31) == 4
    assert not is_null_filiform(ex31)


def test_defects_of_a_non_zinbiel_table() -> None:
    a = Algebra.build(RATIONALS, ["x"], [(0, 0, 0, 1)])
    defects = zinbiel_defects(a)
    assert [d.triple for d in defects] == [(1, 1, 1)]
    assert a.format_vector(defects[0].vector) == "-x"
    assert not is_zinbiel(a)
    with pytest.raises(NotNilpotentError):
        nilindex(a)
    assert not is_null_filiform(a)


def test_null_filiform() -> None:
    a = families.build_family(FamilyParams(family=FamilyId.NF, n=5))
    assert is_zinbiel(a)
    assert series_dims(a) == [5, 4, 3, 2, 1, 0]
    assert is_null_filiform(a)


def test_annihilators(ex31: Algebra) -> None:
    assert annihilator_dims(ex31) == (2, 1, 1)


def test_lower_series_of_a_type_one_family() -> None:
    a = families.build_family(FamilyParams(family=FamilyId.A1, n=9, p=3, beta1=0))
    assert series_dims(a) == [9, 7, 5, 3, 2, 1, 0]
    assert nilindex(a) == 7


def test_specialize() -> None:
    a = families.build_family(FamilyParams(family=FamilyId.A1, n=8, p=3))
    assert a.params == ("beta1",)
    b = specialize(a, {"beta1": "1/2"})
    assert b.space.is_rational
    assert b == families.build_family(FamilyParams(family=FamilyId.A1, n=8, p=3, beta1="1/2"))
    with pytest.raises(ParameterError):
        specialize(a, {"gamma1": 1})


def test_with_space(ex31: Algebra) -> None:
    wider = with_space(ex31, ScalarField(["t"]))
    assert wider.params == ("t",)
    assert wider.entries()[0][:3] == ex31.entries()[0][:3]
    assert with_space(ex31, RATIONALS) is ex31
