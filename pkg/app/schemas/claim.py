from typing import Optional

from pydantic import BaseModel, Field

from app.models.claim import ClaimId, ClaimShape, ClaimVariant
from app.schemas.params import WrightParams


class BoundClaim(BaseModel):
    id: ClaimId
    variant: ClaimVariant = ClaimVariant.STATEMENT
    shape: ClaimShape
    params: WrightParams
    n: int = Field(0, ge=0, description="Partial-sum index; ignored by modulus claims")
    bound: Optional[float] = Field(None, description="None when the formula is singular at params")
    valid: bool
    formula: str
    hypothesis: str
    citation: str


class ClaimList(BaseModel):
    claims: list[BoundClaim]
    total: int
