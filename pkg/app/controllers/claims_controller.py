from typing import Any, Dict, List, Optional

from fastapi import APIRouter, Query

from app.schemas.claim import ClaimList
from app.schemas.params import WrightParams
from app.schemas.report import RemarkAdjudication, ScanGrid
from app.services.bounds_catalog import bounds_catalog
from app.services.verifier_service import verifier_service

router = APIRouter(tags=["claims"])


@router.get("/claims", response_model=ClaimList)
def get_claims(
    lam: float = Query(..., gt=-1, alias="lambda", description="lambda > -1"),
    mu: float = Query(..., description="mu"),
    n: int = Query(0, ge=0, description="Partial-sum index"),
):
    """Every claim instantiated at (lambda, mu, n), flagged valid or invalid."""
    return bounds_catalog.claim_list(WrightParams(lam=lam, mu=mu), n)


@router.get("/claims/registry")
def get_claim_registry() -> List[Dict[str, Any]]:
    """The claim table: formulas, hypotheses and citations."""
    return bounds_catalog.registry_document()


@router.post("/remark", response_model=RemarkAdjudication)
def adjudicate_remark(grid: Optional[ScanGrid] = None):
    """Infima behind the closed-form example at lambda = 1, mu = 5/2."""
    return verifier_service.adjudicate_remark(grid)
