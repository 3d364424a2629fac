from .evaluation_controller import router as evaluation_router
from .claims_controller import router as claims_router

__all__ = ["evaluation_router", "claims_router"]
