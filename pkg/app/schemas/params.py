from pydantic import BaseModel, ConfigDict, Field


class WrightParams(BaseModel):
    """The (lambda, mu) pair of W_{lambda,mu}; real mu only."""

    model_config = ConfigDict(frozen=True, populate_by_name=True, allow_inf_nan=False)

    lam: float = Field(..., gt=-1, alias="lambda", description="lambda > -1 keeps the series entire")
    mu: float

    @property
    def lambda_plus_mu(self) -> float:
        return self.lam + self.mu

    def __str__(self) -> str:
        return f"lambda={self.lam!r}, mu={self.mu!r}"
