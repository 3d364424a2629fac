from .bounds_catalog import BoundsCatalogService, bounds_catalog
from .coefficient_stream import CoefficientStream, get_stream, make_stream
from .evaluation_service import EvaluationService
from .figure_service import FigureService, figure_service
from .report_service import ReportService, report_service
from .verifier_service import VerifierService, verifier_service

__all__ = [
    "BoundsCatalogService", "bounds_catalog",
    "CoefficientStream", "get_stream", "make_stream",
    "EvaluationService",
    "FigureService", "figure_service",
    "ReportService", "report_service",
    "VerifierService", "verifier_service",
]
