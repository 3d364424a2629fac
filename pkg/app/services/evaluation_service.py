import logging

from app.exceptions import InvalidParametersError
from app.models.claim import ClaimId
from app.schemas.evaluation import CertifyRequest, EvaluationRequest, EvaluationResponse
from app.schemas.params import WrightParams
from app.schemas.report import CertificationDocument, ComplexPoint, ScanGrid
from app.services.bounds_catalog import bounds_catalog
from app.services.coefficient_stream import get_stream
from app.services.report_service import report_service
from app.services.verifier_service import verifier_service

logger = logging.getLogger(__name__)


class EvaluationService:
    """Request-level entry points shared by the HTTP controllers."""

    def evaluate(self, request: EvaluationRequest) -> EvaluationResponse:
        """Evaluate one function kind at one point"""
        stream = get_stream(request.kind, WrightParams(lam=request.lam, mu=request.mu))
        result = stream.evaluate(request.z.value, request.abs_tol)
        return EvaluationResponse(
            kind=request.kind,
            z=request.z,
            value=ComplexPoint.from_complex(result.value),
            tail_bound=result.tail_bound,
            terms_used=result.terms_used,
            method=result.method.value,
            certified=result.certified,
        )

    def certify(self, request: CertifyRequest) -> CertificationDocument:
        """Certify one claim (all of its variants) or every claim"""
        params = WrightParams(lam=request.lam, mu=request.mu)
        grid = request.grid or ScanGrid()
        if request.claim == "all":
            reports = verifier_service.certify_all(params, request.n, grid)
        else:
            try:
                claim_id = ClaimId(request.claim)
            except ValueError:
                raise InvalidParametersError(
                    f"Unknown claim {request.claim!r}",
                    predicate=f"claim in {[c.value for c in ClaimId]} or 'all'",
                )
            reports = [
                verifier_service.certify_row(row, params, request.n, grid)
                for row in bounds_catalog.repository.variants(claim_id)
            ]
        logger.info(f"Certified {len(reports)} claim rows for {params}, n={request.n}")
        return report_service.document(reports)
