import logging
import math
from typing import Any, Dict, Iterable, List, Optional

from app.exceptions import InvalidParametersError
from app.models.claim import ClaimId, ClaimVariant, Driver
from app.repositories.claim_repository import ClaimDefinition, ClaimRepository
from app.schemas.claim import BoundClaim, ClaimList
from app.schemas.params import WrightParams

logger = logging.getLogger(__name__)


class BoundsCatalogService:
    """Instantiates the claim table at concrete (lambda, mu, n)."""

    def __init__(self, repository: Optional[ClaimRepository] = None):
        self.repository = repository or ClaimRepository()

    def definition(self, claim_id: ClaimId, variant: ClaimVariant = ClaimVariant.STATEMENT) -> ClaimDefinition:
        """Get a claim row, raising when the variant does not exist"""
        row = self.repository.get_claim(claim_id, variant)
        if row is None:
            raise InvalidParametersError(
                f"Claim {claim_id.value} has no {variant.value} variant",
                predicate=f"variant in {[r.variant.value for r in self.repository.variants(claim_id)]}",
            )
        return row

    @staticmethod
    def driver_value(row: ClaimDefinition, params: WrightParams) -> float:
        return params.mu if row.driver is Driver.MU else params.lambda_plus_mu

    @staticmethod
    def is_valid(row: ClaimDefinition, params: WrightParams) -> bool:
        if row.fixed_params is not None:
            return (params.lam, params.mu) == row.fixed_params
        return BoundsCatalogService.driver_value(row, params) > row.threshold

    @staticmethod
    def _formula_value(row: ClaimDefinition, driver: float) -> Optional[float]:
        try:
            value = float(row.formula(driver))
        except ZeroDivisionError:
            return None
        return value if math.isfinite(value) else None

    def instantiate(self, row: ClaimDefinition, params: WrightParams, n: int = 0) -> BoundClaim:
        driver = self.driver_value(row, params)
        return BoundClaim(
            id=row.id,
            variant=row.variant,
            shape=row.shape,
            params=params,
            n=row.fixed_n if row.fixed_n is not None else n,
            bound=self._formula_value(row, driver),
            valid=self.is_valid(row, params),
            formula=row.formula_text,
            hypothesis=row.hypothesis,
            citation=row.citation,
        )

    def bound_value(
        self,
        claim_id: ClaimId,
        params: WrightParams,
        n: int = 0,
        variant: ClaimVariant = ClaimVariant.STATEMENT,
    ) -> BoundClaim:
        """Formula value and hypothesis check; validity is reported, never enforced"""
        return self.instantiate(self.definition(claim_id, variant), params, n)

    def enumerate_claims(self, params: WrightParams, n: int = 0) -> List[BoundClaim]:
        """Every row in table order, proof variants directly after their statement"""
        claims = [self.instantiate(row, params, n) for row in self.repository.get_multi()]
        logger.debug(f"Enumerated {len(claims)} claims at {params}, n={n}")
        return claims

    def claim_list(self, params: WrightParams, n: int = 0) -> ClaimList:
        claims = self.enumerate_claims(params, n)
        return ClaimList(claims=claims, total=len(claims))

    def sample_params(self, row: ClaimDefinition, lambdas: Iterable[float]) -> List[WrightParams]:
        """Hypothesis-satisfying parameter points for sweeps, sorted by (lambda, mu)"""
        if row.fixed_params is not None:
            lam, mu = row.fixed_params
            return [WrightParams(lam=lam, mu=mu)]
        points = []
        for lam in lambdas:
            for value in row.samples:
                mu = value if row.driver is Driver.MU else value - lam
                points.append(WrightParams(lam=lam, mu=mu))
        return sorted(set(points), key=lambda p: (p.lam, p.mu))

    def registry_document(self) -> List[Dict[str, Any]]:
        """JSON-shaped listing of the table itself, independent of parameters"""
        document = []
        for row in self.repository.get_multi():
            document.append({
                "id": row.id.value,
                "variant": row.variant.value,
                "shape": row.shape.value,
                "driver": row.driver.value,
                "formula": row.formula_text,
                "hypothesis": row.hypothesis,
                "citation": row.citation,
                "numerator": row.numerator.describe(),
                "denominator": row.denominator.describe() if row.denominator else None,
            })
        return document


bounds_catalog = BoundsCatalogService()


def bound_value(claim_id: ClaimId, params: WrightParams, n: int = 0,
                variant: ClaimVariant = ClaimVariant.STATEMENT) -> BoundClaim:
    return bounds_catalog.bound_value(claim_id, params, n, variant)


def enumerate_claims(params: WrightParams, n: int = 0) -> List[BoundClaim]:
    return bounds_catalog.enumerate_claims(params, n)
