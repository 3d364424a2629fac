from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from app.config import settings
from app.models.claim import Verdict
from app.schemas.claim import BoundClaim


class ComplexPoint(BaseModel):
    re: float
    im: float

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexPoint":
        return cls(re=float(z.real), im=float(z.imag))

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


class ScanGrid(BaseModel):
    boundary_points: int = Field(default_factory=lambda: settings.boundary_points, ge=64)
    radii: List[float] = Field(default_factory=lambda: list(settings.radii), min_length=1)
    half_plane_only: bool = True

    @field_validator("boundary_points")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError("boundary_points must be a power of two")
        return value

    @field_validator("radii")
    @classmethod
    def _sorted_unit_radii(cls, value: List[float]) -> List[float]:
        if any(not 0.0 < r <= 1.0 for r in value):
            raise ValueError("radii must lie in (0, 1]")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("radii must be strictly ascending")
        return value


class CertificationReport(BaseModel):
    claim: BoundClaim
    grid: ScanGrid
    observed_min: float
    observed_max: Optional[float] = None
    margin: Optional[float] = None
    numeric_slack: float
    denominator_zero_suspected: bool = False
    min_abs_denominator: Optional[float] = None
    argmin_z: ComplexPoint
    scan_radius: Optional[float] = None
    verdict: Verdict
    exploratory: bool = False
    tail_certified: bool = True
    notes: List[str] = []


class CertificationDocument(BaseModel):
    reports: List[CertificationReport]
    total: int


class RemarkInequality(BaseModel):
    function: str
    description: str
    observed_min: float
    argmin_z: ComplexPoint
    holds_two_thirds: bool
    holds_one_half: bool


class RemarkAdjudication(BaseModel):
    inequalities: List[RemarkInequality]
    theorem_ratio: CertificationReport
    theorem_inverse: CertificationReport
    remark_ratio: CertificationReport
    remark_inverse: CertificationReport
    closed_form_residual_printed_sign: float
    closed_form_residual_flipped_sign: float
    summary: str
