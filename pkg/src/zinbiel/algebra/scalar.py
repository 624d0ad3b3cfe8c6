"""Exact scalars.

A :class:`ScalarField` is either the rationals or the field of rational
functions in a declared, ordered set of parameters. Elements are native
sympy domain elements (``QQ`` numbers or ``FracElement`` values), so the
usual arithmetic operators apply and no floating point is ever involved.
"""

import math
import re
from fractions import Fraction
from typing import Any, Dict, Iterator, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement

from ..core.exceptions import ScalarError, SchemaError

Scalar = Any

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")
_EXPR_RE = re.compile(r"^[0-9A-Za-z_+\-*/^(). ]+$")
_PARAM_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_TRANSFORMS = standard_transformations + (convert_xor,)


class ScalarField:
    """Coefficient field ℚ or ℚ(params)."""

    def __init__(self, params: Sequence[str] = ()) -> None:
        names = tuple(sorted(set(params)))
        for name in names:
            if not _PARAM_RE.match(name):
                raise SchemaError(f"Invalid parameter name {name!r}")
        self.params: Tuple[str, ...] = names
        self.symbols: Tuple[sympy.Symbol, ...] = tuple(sympy.Symbol(n) for n in names)
        self.domain = QQ.frac_field(*self.symbols) if names else QQ

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ScalarField) and self.params == other.params

    def __hash__(self) -> int:
        return hash(self.params)

    def __repr__(self) -> str:
        return f"ScalarField({list(self.params)!r})"

    @property
    def is_rational(self) -> bool:
        """True for the parameter-free field ℚ."""
        return not self.params

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def rational(self, numerator: int, denominator: int = 1) -> Scalar:
        """The element numerator/denominator."""
        if denominator == 0:
            raise ScalarError(f"Zero denominator in {numerator}/0")
        return self.convert(QQ(numerator, denominator))

    def param(self, name: str) -> Scalar:
        """The generator of the declared parameter ``name``."""
        if name not in self.params:
            raise ScalarError(f"Parameter {name!r} is not declared in {self!r}")
        return self.domain.from_sympy(sympy.Symbol(name))

    def convert(self, value: Any) -> Scalar:
        """Coerce ints, Fractions, strings, sympy numbers and sub-field elements."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise ScalarError("Booleans are not scalars")
        if isinstance(value, int):
            return self.domain.convert(value)
        if isinstance(value, Fraction):
            value = QQ(value.numerator, value.denominator)
        if isinstance(value, FracElement):
            if self.params and value.field == self.domain.field:
                return value
            return self._from_sympy(self._as_expr(value))
        if QQ.of_type(value):
            return value if not self.params else self.domain.convert_from(value, QQ)
        if isinstance(value, sympy.Basic):
            return self._from_sympy(value)
        raise ScalarError(f"Cannot convert {value!r} to a scalar")

    def parse(self, text: str) -> Scalar:
        """Parse canonical text ("p/q", or a rational expression in the params)."""
        match = _RATIONAL_RE.match(text)
        if match:
            numerator = int(match.group(1))
            denominator = int(match.group(2) or 1)
            if denominator == 0:
                raise SchemaError(f"Scalar {text!r} has a zero denominator")
            return self.convert(QQ(numerator, denominator))
        if not _EXPR_RE.match(text):
            raise SchemaError(f"Scalar {text!r} contains unsupported characters")
        local = {name: sym for name, sym in zip(self.params, self.symbols)}
        try:
            expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
        except Exception as e:
            raise SchemaError(f"Cannot parse scalar {text!r}: {e}") from e
        if not isinstance(expr, sympy.Expr) or expr.has(sympy.zoo, sympy.nan, sympy.oo):
            raise SchemaError(f"Scalar {text!r} is not a finite value")
        if expr.atoms(sympy.Float):
            raise SchemaError(f"Scalar {text!r} uses floating point")
        unknown = {str(s) for s in expr.free_symbols} - set(self.params)
        if unknown:
            raise SchemaError(
                f"Scalar {text!r} uses undeclared parameters {sorted(unknown)}"
            )
        try:
            return self._from_sympy(expr)
        except ScalarError as e:
            raise SchemaError(e.message) from e

    def format(self, value: Scalar) -> str:
        """Canonical text of an element; parses back to the same element."""
        if not self.params:
            return _format_rational(int(QQ.numer(value)), int(QQ.denom(value)))
        numerator, denominator = sympy.fraction(sympy.cancel(self._as_expr(value)))
        num_terms = self._sorted_terms(numerator)
        den_terms = self._sorted_terms(denominator)
        lead = den_terms[0][1]
        num_text = self._format_poly([(m, c / lead) for m, c in num_terms])
        den_text = self._format_poly([(m, c / lead) for m, c in den_terms])
        if den_text == "1":
            return num_text
        return f"({num_text})/({den_text})"

    def is_zero(self, value: Scalar) -> bool:
        return not value

    def is_constant(self, value: Scalar) -> bool:
        """True when ``value`` does not depend on the parameters."""
        if not self.params:
            return True
        return bool(value.numer.is_ground and value.denom.is_ground)

    def evaluate(
        self,
        value: Scalar,
        assignment: Mapping[str, Any],
        target: Optional["ScalarField"] = None,
    ) -> Scalar:
        """Substitute parameter values; the result lives in ``target`` (ℚ by default)."""
        target = target or RATIONALS
        if not self.params:
            return target.convert(value)
        subs = {}
        for name, sym in zip(self.params, self.symbols):
            if name in assignment:
                subs[sym] = RATIONALS.domain.to_sympy(RATIONALS.convert(assignment[name]))
            elif name not in target.params:
                raise ScalarError(f"Parameter {name!r} is unbound")
        expr = self._as_expr(value)
        numerator, denominator = sympy.fraction(sympy.cancel(expr))
        den_value = sympy.expand(denominator.subs(subs))
        if den_value == 0:
            raise ScalarError(f"Denominator of {self.format(value)} vanishes at {subs}")
        return target._from_sympy(sympy.cancel(numerator.subs(subs) / den_value))

    def union(self, other: "ScalarField") -> "ScalarField":
        """Smallest field containing both parameter sets."""
        if other.params == self.params:
            return self
        return ScalarField(self.params + other.params)

    def _as_expr(self, value: Scalar) -> sympy.Expr:
        if isinstance(value, FracElement):
            return value.as_expr()
        return QQ.to_sympy(value)

    def _from_sympy(self, expr: sympy.Basic) -> Scalar:
        try:
            return self.domain.from_sympy(expr)
        except Exception as e:
            raise ScalarError(f"{expr} is not an element of {self!r}") from e

    def _sorted_terms(self, expr: sympy.Expr) -> list:
        poly = sympy.Poly(expr, *self.symbols, domain="QQ")
        terms = [(monom, sympy.Rational(coeff)) for monom, coeff in poly.terms()]
        return sorted(terms, key=lambda t: (t[0], sum(t[0])), reverse=True)

    def _format_poly(self, terms: list) -> str:
        if not terms:
            return "0"
        text = ""
        for position, (monom, coeff) in enumerate(terms):
            negative = coeff < 0
            body = self._format_term(monom, -coeff if negative else coeff)
            if position == 0:
                text = f"-{body}" if negative else body
            else:
                text += f" - {body}" if negative else f" + {body}"
        return text

    def _format_term(self, monom: Tuple[int, ...], coeff: sympy.Rational) -> str:
        factors = [
            name if power == 1 else f"{name}**{power}"
            for name, power in zip(self.params, monom)
            if power
        ]
        number = _format_rational(int(coeff.p), int(coeff.q))
        if not factors:
            return number
        if coeff == 1:
            return "*".join(factors)
        return f"{number}*" + "*".join(factors)


RATIONALS = ScalarField()


def _format_rational(numerator: int, denominator: int) -> str:
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


def binomial(top: int, bottom: int) -> int:
    """C_top^bottom for integer top ≥ 0; zero when bottom lies outside [0, top]."""
    if top < 0:
        raise ScalarError(f"Binomial coefficient with negative top {top}")
    if bottom < 0 or bottom > top:
        return 0
    return math.comb(top, bottom)


def rational_grid(height: int) -> Iterator[Scalar]:
    """Rationals p/q with max(|p|, q) ≤ height, by increasing height."""
    yield QQ(0)
    for h in range(1, height + 1):
        seen: Dict[Tuple[int, int], None] = {}
        for numerator, denominator in [(h, q) for q in range(1, h + 1)] + [
            (p, h) for p in range(1, h)
        ]:
            if math.gcd(numerator, denominator) != 1:
                continue
            if (numerator, denominator) in seen:
                continue
            seen[(numerator, denominator)] = None
            yield QQ(numerator, denominator)
            yield QQ(-numerator, denominator)
