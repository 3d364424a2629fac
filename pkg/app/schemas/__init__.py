from .params import WrightParams
from .series import TailMethod, TailEstimate, TruncatedValue
from .claim import BoundClaim, ClaimList
from .report import (
    ComplexPoint, ScanGrid, CertificationReport, CertificationDocument,
    RemarkInequality, RemarkAdjudication,
)
from .evaluation import EvaluationRequest, EvaluationResponse, CertifyRequest

__all__ = [
    "WrightParams",
    "TailMethod", "TailEstimate", "TruncatedValue",
    "BoundClaim", "ClaimList",
    "ComplexPoint", "ScanGrid", "CertificationReport", "CertificationDocument",
    "RemarkInequality", "RemarkAdjudication",
    "EvaluationRequest", "EvaluationResponse", "CertifyRequest",
]
