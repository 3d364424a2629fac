from .function_kind import FunctionKind, Normalization
from .claim import ClaimId, ClaimVariant, ClaimShape, Driver, Verdict

__all__ = [
    "FunctionKind", "Normalization",
    "ClaimId", "ClaimVariant", "ClaimShape", "Driver", "Verdict",
]
