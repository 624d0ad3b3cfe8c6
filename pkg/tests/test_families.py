"""Tests for the family constructors and their restrictions."""

import pytest

from zinbiel.algebra import families
from zinbiel.algebra.families import (
    beta_sequence,
    build,
    build_family,
    closed_form_beta,
    family_kind,
    printed_table_is_zinbiel,
    restriction_residuals,
    sample_instances,
)
from zinbiel.algebra.scalar import RATIONALS, ScalarField
from zinbiel.algebra.spectra import AlgebraType
from zinbiel.algebra.structure import Algebra, is_zinbiel
from zinbiel.core.exceptions import ParameterError
from zinbiel.models import FamilyId, FamilyParams


def coefficient(a: Algebra, left: str, right: str, target: str) -> object:
    return a.product(a.index(left), a.index(right)).get(a.index(target), a.space.zero)


def formatted(values: list) -> list:
    return [RATIONALS.format(v) for v in values]


class TestBetaSequence:
    def test_recurrence(self) -> None:
        assert formatted(beta_sequence(4, -2, 4)) == ["1", "-2", "1", "0"]
        assert formatted(beta_sequence(3, -3, 4)) == ["1", "-3", "3", "-1"]
        assert formatted(beta_sequence(3, 1, 3)) == ["1", "1", "1"]

    def test_closed_form_agrees(self) -> None:
        for top in range(1, 7):
            assert beta_sequence(top, -top, top + 1) == closed_form_beta(top, top)

    def test_symbolic(self) -> None:
        field = ScalarField(["beta1"])
        betas = beta_sequence(3, field.param("beta1"), 3, field)
        assert field.format(betas[2]) == "1/2*beta1**2 + 1/2*beta1"

    def test_bad_arguments(self) -> None:
        with pytest.raises(ParameterError):
            beta_sequence(0, 1, 3)
        with pytest.raises(ParameterError):
            beta_sequence(3, 1, 0)


class TestBuild:
    def test_example(self, ex31: Algebra) -> None:
        assert ex31.dim == 4
        assert coefficient(ex31, "e2", "e1", "e3") == -1

    def test_type_two_witness_family(self) -> None:
        a = build("W31", n=10, p=3)
        assert a.labels[:4] == ("e1", "e2", "e3", "f1")
        assert coefficient(a, "f1", "e1", "f2") == -3

    def test_binomial_f_products(self) -> None:
        a = build(FamilyId.A3, FamilyParams(family=FamilyId.A3, n=8, p=3))
        assert coefficient(a, "f1", "f2", "f3") == 1
        assert coefficient(a, "f2", "f1", "f3") == 2
        assert build("A3", n=8, p=3) == a

    def test_symbolic_parameters(self) -> None:
        a = build_family(FamilyParams(family=FamilyId.A7, p=3))
        assert a.params == ("delta1", "gamma1")
        assert a.dim == 7
        b = build_family(FamilyParams(family=FamilyId.A7, p=3, gamma1=1, delta1="1/2"))
        assert b.space.is_rational

    def test_family_mismatch(self) -> None:
        with pytest.raises(ParameterError):
            build("A1", FamilyParams(family=FamilyId.A3, n=8, p=3))

    @pytest.mark.parametrize(
        "fields, message",
        [
            (dict(family=FamilyId.A1, n=8, p=2), "p >= 3"),
            (dict(family=FamilyId.A1, n=7, p=3), "n >= 8"),
            (dict(family=FamilyId.A4, n=8, p=3), "n = 7"),
            (dict(family=FamilyId.T1, p=3, beta1=0), "beta1 in"),
            (dict(family=FamilyId.T1, p=3), "integer beta1"),
            (dict(family=FamilyId.T1, p=3, beta1="1/2"), "must be an integer"),
            (dict(family=FamilyId.T9, p=3), "t"),
            (dict(family=FamilyId.A1, n=8, p=3, t=3), "takes no t"),
            (dict(family=FamilyId.A3, n=8, p=3, beta1=2), "fixes beta1"),
            (dict(family=FamilyId.A1, n=8, p=3, gamma1=1), "takes no gamma1"),
            (dict(family=FamilyId.EX31, n=5), "4-dimensional"),
            (dict(family=FamilyId.NF), "needs n"),
        ],
    )
    def test_parameter_errors(self, fields: dict, message: str) -> None:
        with pytest.raises(ParameterError, match=message):
            build_family(FamilyParams(**fields))

    def test_family_kind(self) -> None:
        assert family_kind(FamilyId.A1) is AlgebraType.I
        assert family_kind(FamilyId.T4) is AlgebraType.II
        assert family_kind(FamilyId.EX31) is None


SWEEP = [params for p in (3, 4, 5) for params in sample_instances(p)]


class TestIdentity:
    @pytest.mark.parametrize("params", SWEEP, ids=lambda p: p.describe())
    def test_sample_instances(self, params: FamilyParams) -> None:
        assert is_zinbiel(build_family(params)) == printed_table_is_zinbiel(params)

    @pytest.mark.parametrize(
        "params",
        [FamilyParams(family=FamilyId.T7, p=3)]
        + [FamilyParams(family=FamilyId.T10, p=p, t=t) for p in (3, 4) for t in range(3, p + 2)],
        ids=lambda p: p.describe(),
    )
    def test_printed_table_defect(self, params: FamilyParams) -> None:
        assert not printed_table_is_zinbiel(params)
        assert not is_zinbiel(build_family(params))

    def test_sweep_covers_every_family(self) -> None:
        assert {params.family for params in SWEEP} == set(families.RULES)

    def test_free_beta_stays_zinbiel_symbolically(self) -> None:
        assert is_zinbiel(build_family(FamilyParams(family=FamilyId.A5, p=3)))


class TestResiduals:
    @pytest.mark.parametrize(
        "params",
        [
            FamilyParams(family=FamilyId.A1, n=8, p=3, beta1=0),
            FamilyParams(family=FamilyId.A3, n=8, p=3),
            FamilyParams(family=FamilyId.W31, n=10, p=3),
            FamilyParams(family=FamilyId.W31, n=13, p=4),
        ],
        ids=lambda p: p.describe(),
    )
    def test_all_vanish(self, params: FamilyParams) -> None:
        residuals = restriction_residuals(params.family, params)
        assert residuals
        assert [r.name for r in residuals if r.value] == []

    @pytest.mark.parametrize("params", SWEEP, ids=lambda p: p.describe())
    def test_sweep_vanishes(self, params: FamilyParams) -> None:
        residuals = restriction_residuals(params.family, params)
        assert [r.name for r in residuals if r.value] == []

    def test_witness_rows_are_checked(self) -> None:
        names = [r.name for r in restriction_residuals("W31", FamilyParams(family=FamilyId.W31, p=3))]
        assert [n for n in names if n.startswith("beta row")] == [
            "beta row[1]", "beta row[2]", "beta row[3]"
        ]

    def test_perturbed_table_is_caught(self) -> None:
        a = build("A3", n=8, p=3)
        f1, f2, f3 = a.index("f1"), a.index("f2"), a.index("f3")
        broken = Algebra.build(
            a.space,
            a.labels,
            [(i, j, k, c) for i, j, k, c in a.entries()] + [(f1, f2, f3, 1)],
        )
        residuals = families.residuals_of(broken, FamilyId.A3)
        assert any(r.value for r in residuals)

    def test_fixtures_have_no_restrictions(self, ex31: Algebra) -> None:
        assert families.residuals_of(ex31, FamilyId.EX31) == []
