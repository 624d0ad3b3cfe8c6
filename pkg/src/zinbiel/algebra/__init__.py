"""Exact computations on Zinbiel algebras."""

from .deduction import PartialTable, derived_identity_defects, propagate
from .families import build, build_family, restriction_residuals
from .gradation import is_naturally_graded, natural_grading
from .isomorphism import BaseChange, IsoStatus, extend_base_change, fingerprint, iso_search
from .scalar import RATIONALS, ScalarField
from .spectra import AlgebraType, GridStrategy, RandomStrategy, char_sequence, detect_type
from .structure import Algebra, lower_series, nilindex, zinbiel_defects

__all__ = [
    "Algebra",
    "AlgebraType",
    "BaseChange",
    "GridStrategy",
    "IsoStatus",
    "PartialTable",
    "RATIONALS",
    "RandomStrategy",
    "ScalarField",
    "build",
    "build_family",
    "char_sequence",
    "derived_identity_defects",
    "detect_type",
    "extend_base_change",
    "fingerprint",
    "is_naturally_graded",
    "iso_search",
    "lower_series",
    "natural_grading",
    "nilindex",
    "propagate",
    "restriction_residuals",
    "zinbiel_defects",
]
