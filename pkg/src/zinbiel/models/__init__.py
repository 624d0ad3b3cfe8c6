"""Data models for the Zinbiel toolkit.

Interchange documents use 1-based basis indices and scalars in canonical
text form ("p/q", or a rational expression in the declared parameters).
"""

from __future__ import annotations

from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import FORMAT_VERSION

ScalarText = Union[int, str]


class FamilyId(str, Enum):
    """Named families of the classification and two fixtures."""

    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    A7 = "A7"
    A8 = "A8"
    A9 = "A9"
    A10 = "A10"
    A11 = "A11"
    A12 = "A12"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"
    T5 = "T5"
    T6 = "T6"
    T7 = "T7"
    T8 = "T8"
    T9 = "T9"
    T10 = "T10"
    EX31 = "EX31"
    NF = "NF"
    W31 = "W31"


class FamilyParams(BaseModel):
    """Parameters selecting one member of a family.

    Unset scalar parameters of families that allow them are carried
    symbolically in the coefficient field.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    family: FamilyId = Field(..., description="Family name")
    n: Optional[int] = Field(default=None, ge=1, description="Dimension")
    p: Optional[int] = Field(default=None, ge=1, description="Short block length")
    t: Optional[int] = Field(default=None, ge=1, description="Dimension offset n - 2p")
    beta1: Optional[ScalarText] = Field(default=None, description="Value of beta_1")
    gamma1: Optional[ScalarText] = Field(default=None, description="Value of gamma_1")
    delta1: Optional[ScalarText] = Field(default=None, description="Value of delta_1")
    delta_pm1: Optional[ScalarText] = Field(
        default=None, description="Value of delta_{p-1}"
    )

    def describe(self) -> str:
        fields = self.model_dump(exclude_none=True, exclude={"family"})
        inner = ", ".join(f"{k}={v}" for k, v in fields.items())
        return f"{self.family.value}({inner})"


class TermEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    k: int = Field(..., ge=1, description="Target basis index")
    coeff: str = Field(..., description="Canonical scalar text")


class ProductEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    i: int = Field(..., ge=1, description="Left basis index")
    j: int = Field(..., ge=1, description="Right basis index")
    terms: List[TermEntry] = Field(default_factory=list)


class PairEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    i: int = Field(..., ge=1)
    j: int = Field(..., ge=1)


class AlgebraDocument(BaseModel):
    """JSON form of a structure-constant table."""

    model_config = ConfigDict(extra="forbid")

    version: int = Field(..., description="Format version")
    dim: int = Field(..., ge=1, description="Dimension")
    labels: List[str] = Field(..., description="Basis labels")
    params: List[str] = Field(default_factory=list, description="Declared parameters")
    products: List[ProductEntry] = Field(default_factory=list)
    degrees: Optional[List[int]] = Field(default=None, description="Degree per basis vector")

    @model_validator(mode="after")
    def validate_indices(self) -> AlgebraDocument:
        """Labels match the dimension and every index is in range."""
        if len(self.labels) != self.dim:
            raise ValueError(f"{len(self.labels)} labels for dimension {self.dim}")
        if len(set(self.labels)) != self.dim:
            raise ValueError("labels must be distinct")
        for entry in self.products:
            indices = [entry.i, entry.j] + [term.k for term in entry.terms]
            if max(indices) > self.dim:
                raise ValueError(f"product ({entry.i}, {entry.j}) indexes past dimension {self.dim}")
        if self.degrees is not None and len(self.degrees) != self.dim:
            raise ValueError(f"{len(self.degrees)} degrees for dimension {self.dim}")
        return self


class PartialTableDocument(BaseModel):
    """JSON form of a partially known table; unlisted pairs are known zero."""

    model_config = ConfigDict(extra="forbid")

    version: int = Field(..., description="Format version")
    dim: int = Field(..., ge=1)
    labels: List[str] = Field(...)
    known: List[ProductEntry] = Field(default_factory=list)
    unknown: List[PairEntry] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_pairs(self) -> PartialTableDocument:
        """Known and unknown pairs are disjoint and in range."""
        if len(self.labels) != self.dim:
            raise ValueError(f"{len(self.labels)} labels for dimension {self.dim}")
        known = {(e.i, e.j) for e in self.known}
        unknown = {(e.i, e.j) for e in self.unknown}
        if known & unknown:
            raise ValueError(f"pairs both known and unknown: {sorted(known & unknown)}")
        for i, j in known | unknown:
            if max(i, j) > self.dim:
                raise ValueError(f"pair ({i}, {j}) indexes past dimension {self.dim}")
        return self


class RunConfig(BaseModel):
    """Everything that determines a command's output."""

    model_config = ConfigDict(extra="forbid")

    command: str
    inputs: List[str] = Field(default_factory=list)
    grid_height: Optional[int] = None
    samples: Optional[int] = None
    sample_height: Optional[int] = None
    seed: Optional[int] = None
    budget: Optional[int] = None
    height: Optional[int] = None
    format_version: int = FORMAT_VERSION


class DefectEntry(BaseModel):
    triple: List[int]
    value: str


class VerifyReport(BaseModel):
    config: RunConfig
    dim: int
    zinbiel: bool
    defect_count: int
    defects: List[DefectEntry] = Field(default_factory=list)
    series_dims: List[int]
    nilindex: Optional[int] = None
    null_filiform: bool = False
    annihilator_dims: List[int] = Field(default_factory=list)


class CharSequenceReport(BaseModel):
    config: RunConfig
    partition: List[int]
    witness: str
    certified: bool
    candidates: int
    chain_length: int
    algebra_type: Optional[str] = None
    layout: List[int] = Field(default_factory=list)
    layout_adapted: bool = False


class GradingReport(BaseModel):
    config: RunConfig
    component_dims: List[int]
    degrees: List[int]
    sections: List[str]
    output: Optional[str] = None


class IsoReport(BaseModel):
    config: RunConfig
    status: str
    base_change: Optional[Dict[str, str]] = None
    differences: List[str] = Field(default_factory=list)
    residual: List[str] = Field(default_factory=list)
    nodes: int = 0
    complete: bool = False


class ConstraintEntry(BaseModel):
    instance: str
    coordinate: int
    relation: str


class ContradictionEntry(BaseModel):
    instance: str
    forced_zero: List[str]


class DeductionReport(BaseModel):
    config: RunConfig
    constraints: List[ConstraintEntry] = Field(default_factory=list)
    contradiction: Optional[ContradictionEntry] = None
    instances_expanded: int = 0
    skipped_nonlinear: int = 0
    complete: bool = True
    rank: int = 0


class CertificateReport(BaseModel):
    config: RunConfig
    p: int
    determinant: str
    reduced_first_row: List[str]
    reduced_last_row: List[str]
    system_rank: int
    unknowns: int
    infeasible: bool
    combination: List[str]
    statement: str


class ResidualEntry(BaseModel):
    name: str
    value: str


class ResidualReport(BaseModel):
    config: RunConfig
    family: str
    residuals: List[ResidualEntry] = Field(default_factory=list)
    all_zero: bool = True


class IdentitySuiteReport(BaseModel):
    config: RunConfig
    max_n: int
    lemma_cases: int
    lemma_failures: List[str] = Field(default_factory=list)
    determinants: Dict[str, str] = Field(default_factory=dict)
    determinant_failures: List[str] = Field(default_factory=list)
    constraint_row_failures: List[str] = Field(default_factory=list)
    certificate_failures: List[str] = Field(default_factory=list)
    ok: bool = True
