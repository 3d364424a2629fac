from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.models.function_kind import FunctionKind
from app.schemas.report import ComplexPoint, ScanGrid


class EvaluationRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    kind: FunctionKind
    lam: float = Field(..., gt=-1, alias="lambda")
    mu: float
    z: ComplexPoint
    abs_tol: float = Field(1e-15, gt=0)


class EvaluationResponse(BaseModel):
    kind: FunctionKind
    z: ComplexPoint
    value: ComplexPoint
    tail_bound: float
    terms_used: int
    method: str
    certified: bool


class CertifyRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    claim: str = Field("all", description="Claim id (e.g. t21-ratio) or 'all'")
    lam: float = Field(..., gt=-1, alias="lambda")
    mu: float
    n: int = Field(0, ge=0)
    grid: Optional[ScanGrid] = None
