"""Tests for exact scalars."""

from fractions import Fraction

import pytest

from zinbiel.algebra.scalar import RATIONALS, ScalarField, binomial, rational_grid
from zinbiel.core.exceptions import ScalarError, SchemaError


class TestRationals:
    def test_parse_reduces(self) -> None:
        assert RATIONALS.format(RATIONALS.parse("3/6")) == "1/2"
        assert RATIONALS.format(RATIONALS.parse("-4/2")) == "-2"
        assert RATIONALS.format(RATIONALS.parse(" 7 ")) == "7"

    def test_zero_denominator_is_schema_error(self) -> None:
        with pytest.raises(SchemaError):
            RATIONALS.parse("1/0")

    def test_floats_rejected(self) -> None:
        with pytest.raises(SchemaError):
            RATIONALS.parse("0.5")

    def test_undeclared_parameter_rejected(self) -> None:
        with pytest.raises(SchemaError, match="undeclared"):
            RATIONALS.parse("2*beta1")

    def test_convert(self) -> None:
        assert RATIONALS.convert(Fraction(2, 4)) == RATIONALS.rational(1, 2)
        assert RATIONALS.convert(3) == RATIONALS.parse("3")
        with pytest.raises(ScalarError):
            RATIONALS.convert(True)
        with pytest.raises(ScalarError):
            RATIONALS.rational(1, 0)


class TestParametricField:
    def test_params_sorted_and_distinct(self) -> None:
        field = ScalarField(["delta1", "gamma1", "delta1"])
        assert field.params == ("delta1", "gamma1")
        assert not field.is_rational

    def test_invalid_name(self) -> None:
        with pytest.raises(SchemaError):
            ScalarField(["1x"])

    def test_format_polynomial(self) -> None:
        field = ScalarField(["beta1"])
        x = field.param("beta1")
        assert field.format(2 * x + 1) == "2*beta1 + 1"
        assert field.format(-x) == "-beta1"

    def test_format_parses_back(self) -> None:
        field = ScalarField(["beta1", "gamma1"])
        b, g = field.param("beta1"), field.param("gamma1")
        for value in (b / (b + 1), (b - g) * (b + g) / 3, field.rational(-5, 7), b**2 * g):
            assert field.parse(field.format(value)) == value

    def test_constant_detection(self) -> None:
        field = ScalarField(["beta1"])
        assert field.is_constant(field.convert(4))
        assert not field.is_constant(field.param("beta1"))

    def test_evaluate(self) -> None:
        field = ScalarField(["beta1"])
        x = field.param("beta1")
        assert field.evaluate(2 * x + 1, {"beta1": "1/2"}) == RATIONALS.rational(2)

    def test_evaluate_unbound(self) -> None:
        field = ScalarField(["beta1"])
        with pytest.raises(ScalarError, match="unbound"):
            field.evaluate(field.param("beta1"), {})

    def test_evaluate_vanishing_denominator(self) -> None:
        field = ScalarField(["beta1"])
        x = field.param("beta1")
        with pytest.raises(ScalarError, match="vanishes"):
            field.evaluate(1 / (x + 1), {"beta1": -1})

    def test_partial_evaluation_keeps_target_params(self) -> None:
        field = ScalarField(["beta1", "gamma1"])
        target = ScalarField(["gamma1"])
        value = field.param("beta1") * field.param("gamma1")
        assert target.format(field.evaluate(value, {"beta1": 3}, target)) == "3*gamma1"

    def test_union(self) -> None:
        assert ScalarField(["a"]).union(ScalarField(["b"])).params == ("a", "b")
        field = ScalarField(["a"])
        assert field.union(ScalarField(["a"])) is field

    def test_undeclared_param(self) -> None:
        with pytest.raises(ScalarError):
            ScalarField(["a"]).param("b")


class TestBinomial:
    def test_values(self) -> None:
        assert binomial(5, 2) == 10
        assert binomial(0, 0) == 1
        assert binomial(3, 5) == 0
        assert binomial(3, -1) == 0

    def test_negative_top(self) -> None:
        with pytest.raises(ScalarError):
            binomial(-1, 0)


def test_rational_grid_order() -> None:
    assert [RATIONALS.format(q) for q in rational_grid(2)] == ["0", "1", "-1", "2", "-2", "1/2", "-1/2"]
