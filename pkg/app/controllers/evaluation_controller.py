from fastapi import APIRouter

from app.schemas.evaluation import CertifyRequest, EvaluationRequest, EvaluationResponse
from app.schemas.report import CertificationDocument
from app.services.evaluation_service import EvaluationService

router = APIRouter(tags=["evaluation"])


@router.post("/evaluate", response_model=EvaluationResponse)
def evaluate(request: EvaluationRequest):
    """Evaluate a Wright-family function with its truncation bound."""
    evaluation_service = EvaluationService()
    return evaluation_service.evaluate(request)


@router.post("/certify", response_model=CertificationDocument)
def certify(request: CertifyRequest):
    """Certify one claim or all claims at the given parameters."""
    evaluation_service = EvaluationService()
    return evaluation_service.certify(request)
