"""Pydantic models for every JSON document radinv reads or writes."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from . import config

Entry = Union[int, str]

CertificateKind = Literal["mp", "group", "core", "drazin", "bc", "outer"]


class MatrixModel(BaseModel):
    """Exact matrix: integer or "p/q" entries, optionally modulo ``modulus``."""

    model_config = ConfigDict(extra="forbid")

    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    entries: List[List[Entry]]
    modulus: Optional[int] = Field(None, ge=2)

    @field_validator("entries", mode="before")
    @classmethod
    def _validate_entries(cls, entries: Any) -> Any:
        if not isinstance(entries, list):
            return entries
        for row in entries:
            if not isinstance(row, list):
                continue
            for value in row:
                if isinstance(value, bool):
                    raise ValueError("boolean entries are not numbers")
                if not isinstance(value, (int, str)):
                    continue
                try:
                    Fraction(value)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ValueError(f"entry {value!r} is not an integer or p/q fraction") from exc
        return entries

    @model_validator(mode="after")
    def _validate_shape(self) -> "MatrixModel":
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} matrix")
        return self


class DualMatrixModel(BaseModel):
    """A + εA0 as its real and dual parts."""

    model_config = ConfigDict(extra="forbid")

    real: MatrixModel
    dual: MatrixModel

    @model_validator(mode="after")
    def _validate_parts(self) -> "DualMatrixModel":
        if (self.real.rows, self.real.cols) != (self.dual.rows, self.dual.cols):
            raise ValueError("real and dual parts must have the same shape")
        if self.real.modulus != self.dual.modulus:
            raise ValueError("real and dual parts must share the modulus")
        return self


class SeriesModel(BaseModel):
    """Truncated matrix power series a_0 + a_1 x + ... with x^order = 0."""

    model_config = ConfigDict(extra="forbid")

    order: int = Field(..., ge=1)
    coefficients: List[MatrixModel]

    @model_validator(mode="after")
    def _validate_coefficients(self) -> "SeriesModel":
        if not self.coefficients:
            raise ValueError("a series needs at least its constant coefficient")
        if len(self.coefficients) > self.order:
            raise ValueError(f"{len(self.coefficients)} coefficients exceed order {self.order}")
        first = self.coefficients[0]
        for coefficient in self.coefficients[1:]:
            if (coefficient.rows, coefficient.cols, coefficient.modulus) != (first.rows, first.cols, first.modulus):
                raise ValueError("all coefficients must share shape and modulus")
        return self


class VerdictModel(BaseModel):
    """Residuals of the defining equations, evaluated at the padded size ``size``."""

    model_config = ConfigDict(extra="forbid")

    kind: str
    passed: bool
    size: int = Field(..., ge=0)
    residuals: Dict[str, DualMatrixModel]
    failures: List[str] = Field(default_factory=list)
    first_failure: Optional[str] = None


class CertificateModel(BaseModel):
    """A dual generalized inverse, or a certified reason why it does not exist."""

    model_config = ConfigDict(extra="forbid")

    kind: CertificateKind
    exists: bool
    input: DualMatrixModel
    b: Optional[DualMatrixModel] = None
    c: Optional[DualMatrixModel] = None
    witness: Optional[DualMatrixModel] = None
    reason: Optional[str] = None
    residual: Optional[DualMatrixModel] = None
    closed_form_path: Optional[DualMatrixModel] = None
    verdict: Optional[VerdictModel] = None
    padding: Optional[int] = Field(None, ge=1)
    padded_witness: Optional[DualMatrixModel] = None
    index: Optional[int] = Field(None, ge=0)
    l: Optional[int] = Field(None, ge=0)
    a_plus: Optional[MatrixModel] = None
    b_plus: Optional[MatrixModel] = None
    c_plus: Optional[MatrixModel] = None

    @model_validator(mode="after")
    def _validate_outcome(self) -> "CertificateModel":
        if self.exists and self.witness is None:
            raise ValueError("an existence certificate needs a witness")
        if not self.exists and (self.witness is not None or self.reason is None):
            raise ValueError("a nonexistence certificate needs a reason and no witness")
        if self.kind in ("bc", "outer") and (self.b is None or self.c is None):
            raise ValueError(f"{self.kind} certificates need both prescriptions b and c")
        if self.padded_witness is not None and (self.witness is None or self.padding is None):
            raise ValueError("a padded witness needs the witness and the padding it was computed at")
        return self


class SplitModel(BaseModel):
    """Â = (I + εA1) A (I + εA2), or the residual proving Â is not regular."""

    model_config = ConfigDict(extra="forbid")

    input: DualMatrixModel
    regular: bool
    residual: MatrixModel
    reflexive_inverse: Optional[DualMatrixModel] = None
    left: Optional[MatrixModel] = None
    right: Optional[MatrixModel] = None

    @model_validator(mode="after")
    def _validate_split(self) -> "SplitModel":
        if self.regular != (self.left is not None and self.right is not None):
            raise ValueError("left and right factors are present exactly for regular inputs")
        return self


class CampaignParams(BaseModel):
    """Campaign parameters mirrored from radinv.finite_ring.campaign."""

    model_config = ConfigDict(extra="forbid")

    theorem: str
    ring: str
    budget: int = Field(config.EXHAUSTIVE_LIMIT, ge=1)
    trials: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def _validate_sampling(self) -> "CampaignParams":
        if self.seed is not None and self.trials is None:
            raise ValueError("a seed only applies to sampled campaigns; pass trials too")
        return self


class CounterexampleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    elements: List[str]
    reason: str


class CampaignReportModel(BaseModel):
    """Outcome of one theorem campaign."""

    model_config = ConfigDict(extra="forbid")

    theorem_id: str
    ring: str
    mode: Literal["exhaustive", "sampled"]
    tuples_tested: int = Field(..., ge=0)
    skipped: int = Field(0, ge=0)
    seed: Optional[int] = None
    trials: Optional[int] = None
    passed: bool
    counterexamples: List[CounterexampleModel] = Field(default_factory=list)
