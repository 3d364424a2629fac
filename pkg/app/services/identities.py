"""Closed forms that cross-check the series engine.

W_{1,5/2} reduces to elementary functions and W_{1,v+1} to the Bessel
function J_v.  Note the printed closed form below is the *negative* of
W_{1,5/2}(-z): both sides are z + O(z^2) only after flipping the sign.
"""
import cmath
import math
from typing import Optional, Tuple

from app.config import settings
from app.models.function_kind import FunctionKind
from app.services.coefficient_stream import make_stream
from app.services.special_functions import reciprocal_gamma

CLOSED_FORM_SERIES_RADIUS = 1e-4
_CLOSED_FORM_TAYLOR_TERMS = 8


def closed_form_remark(z: complex) -> complex:
    """(3/4) (sin(2 sqrt z)/(2 sqrt z) - cos(2 sqrt z)); equals -W_{1,5/2}(-z)."""
    z = complex(z)
    if abs(z) < CLOSED_FORM_SERIES_RADIUS:
        # (3/4) sum_{k>=1} (-1)^(k+1) 2k (4z)^k / (2k+1)!
        total = 0j
        power = 1 + 0j
        for k in range(1, _CLOSED_FORM_TAYLOR_TERMS + 1):
            power *= 4.0 * z
            total += (-1) ** (k + 1) * 2 * k * power / math.factorial(2 * k + 1)
        return 0.75 * total
    t = 2.0 * cmath.sqrt(z)
    return 0.75 * (cmath.sin(t) / t - cmath.cos(t))


def remark_ratio_function(z: complex) -> complex:
    """f(z) = (sin(2 sqrt z) - 2 sqrt z cos(2 sqrt z)) / (2 z sqrt z), with f(0) = 4/3."""
    z = complex(z)
    if z == 0:
        return 4.0 / 3.0 + 0j
    return closed_form_remark(z) * 4.0 / (3.0 * z)


def bessel_identity_check(v: float, z: complex, abs_tol: Optional[float] = None) -> Tuple[complex, complex]:
    """((z/2)^v W_{1,v+1}(-z^2/4), sum_m (-1)^m (z/2)^(2m+v) / (m! Gamma(m+v+1))).

    The exponent is v: the series form fixes it, whatever the prefactor is
    printed as.
    """
    z = complex(z)
    tol = settings.default_tolerance if abs_tol is None else abs_tol
    half = z / 2.0
    prefactor = half ** v if v != 0 else 1 + 0j

    stream = make_stream(FunctionKind.RAW, 1.0, v + 1.0)
    wright_side = prefactor * stream.evaluate(-z * z / 4.0, tol).value

    terms = []
    for m in range(settings.term_cap):
        term = (-1) ** m * half ** (2 * m) * prefactor * reciprocal_gamma(m + 1.0) * reciprocal_gamma(m + v + 1.0)
        terms.append(term)
        # |z/2| <= 1/2, so once a term is this small the rest is smaller still
        if m > 0 and abs(term) < tol * 1e-3:
            break
    bessel_side = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return wright_side, bessel_side
