"""IO helpers: JSON documents to domain objects and back."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError

from .core import VerdictReport
from .dualmat import DualInverseCertificate, DualMatrix, RadicalSplit, RegularityCertificate
from .errors import InputError
from .finite_ring import CampaignReport
from .matrices import Matrix, MatrixRing
from .models import (
    CampaignReportModel,
    CertificateModel,
    CounterexampleModel,
    DualMatrixModel,
    MatrixModel,
    SeriesModel,
    SplitModel,
    VerdictModel,
)
from .rings import Elem
from .series import TruncatedSeriesRing

ModelT = TypeVar("ModelT", bound=BaseModel)


def load_json(path: str | Path) -> Any:
    """Read a JSON file; missing files and bad syntax surface as InputError."""
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise InputError(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def save_json(path: str | Path, payload: Any) -> None:
    """Write ``payload`` as indented JSON, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=2, exclude_none=True)
    else:
        text = json.dumps(payload, indent=2)
    path.write_text(text + "\n")


def load_model(path: str | Path, model: Type[ModelT]) -> ModelT:
    try:
        return model.model_validate(load_json(path))
    except ValidationError as exc:
        raise InputError(f"{path} is not a valid {model.__name__}: {exc}") from exc


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


def matrix_to_model(M: Matrix) -> MatrixModel:
    return MatrixModel(rows=M.rows, cols=M.cols, entries=M.to_lists(), modulus=M.modulus)


def matrix_from_model(model: MatrixModel) -> Matrix:
    return Matrix.from_rows(model.entries, modulus=model.modulus, cols=model.cols)


def dual_to_model(A: DualMatrix) -> DualMatrixModel:
    return DualMatrixModel(real=matrix_to_model(A.real), dual=matrix_to_model(A.dual))


def dual_from_model(model: DualMatrixModel) -> DualMatrix:
    return DualMatrix(matrix_from_model(model.real), matrix_from_model(model.dual))


def load_dual_matrix(path: str | Path) -> DualMatrix:
    """Read Dual JSON, or Matrix JSON taken as a dual matrix with zero dual part."""
    data = load_json(path)
    try:
        if isinstance(data, dict) and "real" in data:
            return dual_from_model(DualMatrixModel.model_validate(data))
        return DualMatrix.from_real(matrix_from_model(MatrixModel.model_validate(data)))
    except ValidationError as exc:
        raise InputError(f"{path} is neither Matrix nor DualMatrix JSON: {exc}") from exc


def load_matrix(path: str | Path) -> Matrix:
    return matrix_from_model(load_model(path, MatrixModel))


def series_from_model(model: SeriesModel) -> Elem:
    first = model.coefficients[0]
    if first.rows != first.cols:
        raise InputError("series coefficients must be square")
    space = TruncatedSeriesRing(MatrixRing(first.rows, first.modulus), model.order)
    return space.series([matrix_from_model(c) for c in model.coefficients])


def series_to_model(x: Elem) -> SeriesModel:
    space = x.space
    if not isinstance(space, TruncatedSeriesRing) or not isinstance(space.base, MatrixRing):
        raise InputError("only matrix series serialize to TruncatedSeries JSON")
    return SeriesModel(order=space.order, coefficients=[matrix_to_model(c) for c in x.value])


# ---------------------------------------------------------------------------
# Certificates and reports
# ---------------------------------------------------------------------------


def _optional_dual(A: Optional[DualMatrix]) -> Optional[DualMatrixModel]:
    return None if A is None else dual_to_model(A)


def _optional_matrix(M: Optional[Matrix]) -> Optional[MatrixModel]:
    return None if M is None else matrix_to_model(M)


def verdict_to_model(report: VerdictReport, size: int) -> VerdictModel:
    residuals: Dict[str, DualMatrixModel] = {label: dual_to_model(value.value) for label, value in report.residuals}
    return VerdictModel(
        kind=report.kind.label,
        passed=report.passed,
        size=size,
        residuals=residuals,
        failures=list(report.failures),
        first_failure=report.first_failure,
    )


def certificate_to_model(cert: DualInverseCertificate) -> CertificateModel:
    verdict = None
    if cert.report is not None:
        size = max(max(M.shape) for M in (cert.input, cert.b, cert.c) if M is not None) or 1
        verdict = verdict_to_model(cert.report, size)
    return CertificateModel(
        kind=cert.kind,  # type: ignore[arg-type]
        exists=cert.exists,
        input=dual_to_model(cert.input),
        b=_optional_dual(cert.b),
        c=_optional_dual(cert.c),
        witness=_optional_dual(cert.witness),
        reason=cert.reason,
        residual=_optional_dual(cert.residual),
        closed_form_path=_optional_dual(cert.closed_form_path),
        verdict=verdict,
        padding=cert.padding,
        padded_witness=_optional_dual(cert.padded_witness),
        index=cert.index,
        l=cert.l,
        a_plus=_optional_matrix(cert.a_plus),
        b_plus=_optional_matrix(cert.b_plus),
        c_plus=_optional_matrix(cert.c_plus),
    )


def split_to_model(A: DualMatrix, cert: RegularityCertificate, split: Optional[RadicalSplit]) -> SplitModel:
    return SplitModel(
        input=dual_to_model(A),
        regular=cert.regular,
        residual=matrix_to_model(cert.residual),
        reflexive_inverse=_optional_dual(cert.reflexive_inverse),
        left=None if split is None else matrix_to_model(split.left),
        right=None if split is None else matrix_to_model(split.right),
    )


def campaign_to_model(report: CampaignReport) -> CampaignReportModel:
    return CampaignReportModel(
        theorem_id=report.theorem_id,
        ring=report.ring.label,
        mode=report.mode,  # type: ignore[arg-type]
        tuples_tested=report.tuples_tested,
        skipped=report.skipped,
        seed=report.seed,
        trials=report.trials,
        passed=report.passed,
        counterexamples=[CounterexampleModel(elements=list(c.elements), reason=c.reason) for c in report.counterexamples],
    )
