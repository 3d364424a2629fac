"""The claim table: every inequality as one row of data.

A row names the bound formula (a function of its driver, mu or lambda+mu),
the strict hypothesis `driver > threshold`, and the series it constrains.
"""
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from app.models.claim import ClaimId, ClaimShape, ClaimVariant, Driver
from app.models.function_kind import FunctionKind
from app.repositories.base_repository import BaseRepository

NF = FunctionKind.NORM_FIRST
NFD = FunctionKind.NORM_FIRST_DERIV
ALEX = FunctionKind.ALEXANDER_FIRST
NS = FunctionKind.NORM_SECOND
NSD = FunctionKind.NORM_SECOND_DERIV

REMARK_PARAMS = (1.0, 2.5)


@dataclass(frozen=True)
class SeriesRef:
    """One side of a claim: the full series or its n-th partial sum, times scale."""

    kind: FunctionKind
    partial: bool = False
    scale: float = 1.0

    def describe(self, n_symbol: str = "n") -> str:
        name = self.kind.value + (f"_{n_symbol}" if self.partial else "")
        return name if self.scale == 1.0 else f"{self.scale!r}*{name}"


@dataclass(frozen=True)
class ClaimDefinition:
    id: ClaimId
    variant: ClaimVariant
    shape: ClaimShape
    driver: Driver
    threshold: float
    formula: Callable[[float], float]
    formula_text: str
    hypothesis: str
    citation: str
    numerator: SeriesRef
    denominator: Optional[SeriesRef] = None
    samples: Tuple[float, ...] = ()
    fixed_params: Optional[Tuple[float, float]] = None
    fixed_n: Optional[int] = None

    @property
    def key(self) -> Tuple[ClaimId, ClaimVariant]:
        return self.id, self.variant


def _modulus(claim_id, kind, driver, threshold, formula, text, hypothesis, citation, samples,
             variant=ClaimVariant.STATEMENT) -> ClaimDefinition:
    return ClaimDefinition(
        id=claim_id, variant=variant, shape=ClaimShape.MODULUS, driver=driver,
        threshold=threshold, formula=formula, formula_text=text, hypothesis=hypothesis,
        citation=citation, numerator=SeriesRef(kind), samples=samples,
    )


def _ratio_pair(ratio_id, inverse_id, kind, driver, threshold, ratio, ratio_text,
                inverse, inverse_text, hypothesis, citation, samples) -> List[ClaimDefinition]:
    full, partial = SeriesRef(kind), SeriesRef(kind, partial=True)
    return [
        ClaimDefinition(
            id=ratio_id, variant=ClaimVariant.STATEMENT, shape=ClaimShape.RATIO, driver=driver,
            threshold=threshold, formula=ratio, formula_text=ratio_text, hypothesis=hypothesis,
            citation=citation, numerator=full, denominator=partial, samples=samples,
        ),
        ClaimDefinition(
            id=inverse_id, variant=ClaimVariant.STATEMENT, shape=ClaimShape.RATIO, driver=driver,
            threshold=threshold, formula=inverse, formula_text=inverse_text, hypothesis=hypothesis,
            citation=citation, numerator=partial, denominator=full, samples=samples,
        ),
    ]


def _radius(claim_id, kind, driver, threshold, formula, text, hypothesis, samples) -> ClaimDefinition:
    return ClaimDefinition(
        id=claim_id, variant=ClaimVariant.STATEMENT, shape=ClaimShape.RADIUS, driver=driver,
        threshold=threshold, formula=formula, formula_text=text, hypothesis=hypothesis,
        citation="Concluding remark: radii of starlikeness of the partial sums",
        numerator=SeriesRef(kind, partial=True), samples=samples,
    )


def _build_rows() -> List[ClaimDefinition]:
    mu, x = Driver.MU, Driver.LAMBDA_PLUS_MU
    rows = [
        _modulus(ClaimId.L1I, NF, mu, 0.5, lambda m: (2 * m + 1) / (2 * m - 1),
                 "(2mu+1)/(2mu-1)", "lambda > -1, mu > 1/2", "Lemma 1(i)", (0.75, 1.5, 2.5, 4.0)),
        _modulus(ClaimId.L1II, NFD, mu, 1.0, lambda m: (m + 1) / (m - 1),
                 "(mu+1)/(mu-1)", "lambda > -1, mu > 1", "Lemma 1(ii)", (1.5, 2.5, 4.0)),
        _modulus(ClaimId.L1III, ALEX, mu, 0.5, lambda m: 2 * m / (2 * m - 1),
                 "2mu/(2mu-1)", "lambda > -1, mu > 1/2", "Lemma 1(iii)", (0.75, 1.5, 4.0)),
        _modulus(ClaimId.L2I, NS, x, 0.5, lambda s: 2 * s / (2 * s - 1),
                 "2(lambda+mu)/(2(lambda+mu)-1)", "lambda > -1, lambda+mu > 1/2",
                 "Lemma 2(i), statement", (0.75, 1.5, 3.0)),
        _modulus(ClaimId.L2I, NS, x, 0.5, lambda s: (2 * s + 1) / (2 * s - 1),
                 "(2(lambda+mu)+1)/(2(lambda+mu)-1)", "lambda > -1, lambda+mu > 1/2",
                 "Lemma 2(i), proof", (0.75, 1.5, 3.0), variant=ClaimVariant.PROOF),
        _modulus(ClaimId.L2II, NSD, x, 0.5, lambda s: (2 * s + 1) / (2 * s - 1),
                 "(2(lambda+mu)+1)/(2(lambda+mu)-1)", "lambda > -1, lambda+mu > 1/2",
                 "Lemma 2(ii), statement", (0.75, 1.5, 3.0)),
        _modulus(ClaimId.L2II, NSD, x, 1.0, lambda s: (s + 1) / (s - 1),
                 "(lambda+mu+1)/(lambda+mu-1)", "lambda > -1, lambda+mu > 1",
                 "Lemma 2(ii), proof", (1.5, 3.0), variant=ClaimVariant.PROOF),
    ]
    rows += _ratio_pair(
        ClaimId.T21_RATIO, ClaimId.T21_INVERSE, NF, mu, 1.5,
        lambda m: (2 * m - 3) / (2 * m - 1), "(2mu-3)/(2mu-1)",
        lambda m: (2 * m - 1) / (2 * m + 1), "(2mu-1)/(2mu+1)",
        "lambda > -1, mu > 3/2", "Theorem 2.1", (1.6, 2.5, 4.0),
    )
    rows += _ratio_pair(
        ClaimId.T22_RATIO, ClaimId.T22_INVERSE, NFD, mu, 3.0,
        lambda m: (m - 3) / (m - 1), "(mu-3)/(mu-1)",
        lambda m: (m - 1) / (m + 1), "(mu-1)/(mu+1)",
        "lambda > -1, mu > 3", "Theorem 2.2", (3.5, 5.0),
    )
    rows += _ratio_pair(
        ClaimId.T23_RATIO, ClaimId.T23_INVERSE, ALEX, mu, 1.0,
        lambda m: (2 * m - 2) / (2 * m - 1), "(2mu-2)/(2mu-1)",
        lambda m: (2 * m - 1) / (2 * m), "(2mu-1)/(2mu)",
        # Lemma 1(iii) alone only needs mu > 1/2; the stated mu > 1 is kept
        "lambda > -1, mu > 1", "Theorem 2.3", (1.2, 2.5, 4.0),
    )
    rows += _ratio_pair(
        ClaimId.T31_RATIO, ClaimId.T31_INVERSE, NS, x, 1.0,
        lambda s: (2 * s - 2) / (2 * s - 1), "(2(lambda+mu)-2)/(2(lambda+mu)-1)",
        lambda s: (2 * s - 1) / (2 * s), "(2(lambda+mu)-1)/(2(lambda+mu))",
        "lambda > -1, lambda+mu > 1", "Theorem 3.1", (1.2, 2.0, 4.0),
    )
    rows += _ratio_pair(
        ClaimId.T32_RATIO, ClaimId.T32_INVERSE, NSD, x, 1.5,
        lambda s: (2 * s - 3) / (2 * s - 1), "(2(lambda+mu)-3)/(2(lambda+mu)-1)",
        lambda s: (2 * s - 1) / (2 * s + 1), "(2(lambda+mu)-1)/(2(lambda+mu)+1)",
        "lambda > -1, lambda+mu > 3/2", "Theorem 3.2", (1.6, 2.5, 4.0),
    )
    # Printed as Re f >= 2/3 and Re(1/f) >= 1/2 with f = (4/3) W(w)/w, w = -z.
    rows += [
        ClaimDefinition(
            id=ClaimId.R24_RATIO, variant=ClaimVariant.STATEMENT, shape=ClaimShape.RATIO,
            driver=mu, threshold=1.5, formula=lambda m: 2.0 / 3.0, formula_text="2/3",
            hypothesis="lambda = 1, mu = 5/2, n = 0", citation="Remark 2.4, first inequality",
            numerator=SeriesRef(NF, scale=4.0 / 3.0), denominator=SeriesRef(NF, partial=True),
            fixed_params=REMARK_PARAMS, fixed_n=0,
        ),
        ClaimDefinition(
            id=ClaimId.R24_INVERSE, variant=ClaimVariant.STATEMENT, shape=ClaimShape.RATIO,
            driver=mu, threshold=1.5, formula=lambda m: 0.5, formula_text="1/2",
            hypothesis="lambda = 1, mu = 5/2, n = 0", citation="Remark 2.4, second inequality",
            numerator=SeriesRef(NF, partial=True, scale=0.75), denominator=SeriesRef(NF),
            fixed_params=REMARK_PARAMS, fixed_n=0,
        ),
    ]
    rows += [
        _radius(ClaimId.STAR_RADIUS_FIRST, NF, mu, 1.0, lambda m: (m - 1) / (m + 1),
                "(mu-1)/(mu+1)", "lambda > -1, mu > 1", (2.0, 3.0, 5.0)),
        _radius(ClaimId.STAR_RADIUS_SECOND, NS, x, 0.5, lambda s: (2 * s - 1) / (2 * s + 1),
                "(2(lambda+mu)-1)/(2(lambda+mu)+1)", "lambda > -1, lambda+mu > 1/2", (1.5, 2.0, 4.0)),
    ]
    return rows


class ClaimRepository(BaseRepository[ClaimDefinition]):
    def __init__(self):
        super().__init__(_build_rows(), key=lambda row: row.key)

    def get_claim(self, claim_id: ClaimId, variant: ClaimVariant = ClaimVariant.STATEMENT) -> Optional[ClaimDefinition]:
        """Get the row of one claim variant"""
        return self.get((claim_id, variant))

    def variants(self, claim_id: ClaimId) -> List[ClaimDefinition]:
        """Statement row first, then any proof-variant rows"""
        return self.get_multi(id=claim_id)
