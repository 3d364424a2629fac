"""Coefficient streams of the Wright-family series and their truncation control.

Every kind is written as

    f(z) = z^p * (h + sum_{m >= 1} c_m z^m)

with p = 1 for values (head z), p = 0 for derivatives and the raw series, and
h = 1 except for the raw series (h = 1/Gamma(mu)).  The bracket is the
*reduced* series; ratio scans work on it so that every normalized ratio is
exactly 1 at z = 0.
"""
import logging
import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from app.config import settings
from app.exceptions import DomainError, InvalidParametersError, NonConvergenceError
from app.models.function_kind import FunctionKind, Normalization
from app.schemas.params import WrightParams
from app.schemas.series import TailEstimate, TailMethod, TruncatedValue
from app.services.special_functions import (
    GAMMA_MIN_ARGUMENT,
    LOG_PI,
    log_abs_reciprocal_gamma,
    log_gamma,
    reciprocal_gamma,
)

logger = logging.getLogger(__name__)

UNIT_DISC_SLACK = 1e-9
GEOMETRIC_TARGET = 0.5
# explicit sums of |c_m| are inflated by this factor to cover their own rounding
ROUNDING_GUARD = 1.0 + 1e-12


def validate_params(kind: FunctionKind, params: WrightParams) -> None:
    """Raise InvalidParametersError when params fail the kind's validity predicate."""
    if kind.normalization is Normalization.FIRST and not params.mu > 0.0:
        raise InvalidParametersError(
            f"{kind.value} requires mu > 0 (normalization Gamma(mu) z W), got {params}",
            predicate="lambda > -1, mu > 0",
        )
    if kind.normalization is Normalization.SECOND and not params.lambda_plus_mu > 0.0:
        raise InvalidParametersError(
            f"{kind.value} requires lambda + mu > 0 (normalization Gamma(lambda+mu)[W - 1/Gamma(mu)]), got {params}",
            predicate="lambda > -1, lambda + mu > 0",
        )


@dataclass(frozen=True)
class _TailAnchor:
    index: int
    remainder: float
    method: TailMethod


class CoefficientStream:
    """The coefficients c_m (m >= 1) of one function kind at fixed (lambda, mu)."""

    def __init__(self, kind: FunctionKind, params: WrightParams, term_cap: Optional[int] = None):
        validate_params(kind, params)
        self.kind = kind
        self.params = params
        self.term_cap = term_cap if term_cap is not None else settings.term_cap

        if kind.normalization is Normalization.FIRST:
            self._log_scale = log_gamma(params.mu)
        elif kind.normalization is Normalization.SECOND:
            self._log_scale = log_gamma(params.lambda_plus_mu)
        else:
            self._log_scale = 0.0
        self.head = reciprocal_gamma(params.mu) if kind is FunctionKind.RAW else 1.0

        self._coefficients: List[float] = [0.0]
        self._lock = threading.Lock()
        self._anchor: Optional[_TailAnchor] = None
        self._anchor_searched = False
        self._terms_needed: Dict[float, Tuple[int, TailEstimate]] = {}

    def __repr__(self) -> str:
        return f"<CoefficientStream(kind='{self.kind.value}', {self.params})>"

    # ----- coefficient formula -----

    def gamma_argument(self, m: int) -> float:
        lam, mu = self.params.lam, self.params.mu
        if self.kind.normalization is Normalization.SECOND:
            return lam * (m + 1) + mu
        return lam * m + mu

    def _log_factorial_factor(self, m: int) -> float:
        kind = self.kind
        if kind in (FunctionKind.RAW, FunctionKind.NORM_FIRST, FunctionKind.NORM_SECOND_DERIV):
            return -log_gamma(m + 1.0)
        if kind is FunctionKind.NORM_FIRST_DERIV:
            return math.log(m + 1.0) - log_gamma(m + 1.0)
        return -log_gamma(m + 2.0)

    def factor_ratio(self, m: int) -> float:
        """Ratio of consecutive factorial factors F(m+1)/F(m)."""
        if self.kind is FunctionKind.NORM_FIRST_DERIV:
            return (m + 2.0) / ((m + 1.0) ** 2)
        if self.kind in (FunctionKind.ALEXANDER_FIRST, FunctionKind.NORM_SECOND):
            return 1.0 / (m + 2.0)
        return 1.0 / (m + 1.0)

    def _compute(self, m: int) -> float:
        log_abs, sign = log_abs_reciprocal_gamma(self.gamma_argument(m))
        if sign == 0:
            return 0.0
        log_value = self._log_scale + self._log_factorial_factor(m) + log_abs
        if log_value > 709.0:
            return math.copysign(math.inf, sign)
        return sign * math.exp(log_value)

    def coefficient(self, m: int) -> float:
        if m < 1:
            raise DomainError(f"coefficient index must be >= 1, got {m}")
        if m >= len(self._coefficients):
            with self._lock:
                for k in range(len(self._coefficients), m + 1):
                    self._coefficients.append(self._compute(k))
        return self._coefficients[m]

    def coefficients(self, n: int) -> List[float]:
        """[c_1, ..., c_n]."""
        if n <= 0:
            return []
        self.coefficient(n)
        return self._coefficients[1:n + 1]

    def _explicit_tail(self, first: int, last: int) -> float:
        if last < first:
            return 0.0
        self.coefficient(last)
        return ROUNDING_GUARD * math.fsum(abs(c) for c in self._coefficients[first:last + 1])

    # ----- tail majorants -----

    def lemma_geometry(self) -> Optional[Tuple[float, float]]:
        """(a, rho) of the lemma-proof majorant |c_m| <= a rho^(m-1), or None if rho >= 1."""
        kind, mu, x = self.kind, self.params.mu, self.params.lambda_plus_mu
        if kind is FunctionKind.RAW:
            if not mu > 0.5:
                return None
            return reciprocal_gamma(mu) / mu, 1.0 / (2.0 * mu)
        driver = x if kind.normalization is Normalization.SECOND else mu
        if kind in (FunctionKind.NORM_FIRST_DERIV, FunctionKind.NORM_SECOND_DERIV):
            if not driver > 1.0:
                return None
            return 2.0 / driver, 1.0 / driver
        if not driver > 0.5:
            return None
        rho = 1.0 / (2.0 * driver)
        if kind is FunctionKind.ALEXANDER_FIRST:
            return rho, rho
        return 1.0 / driver, rho

    def lemma_tail(self, after_n: int) -> float:
        geometry = self.lemma_geometry()
        if geometry is None:
            raise InvalidParametersError(
                f"lemma majorant for {self.kind.value} has geometric ratio >= 1 at {self.params}",
                predicate=self._lemma_predicate(),
            )
        a, rho = geometry
        return a * rho ** after_n / (1.0 - rho)

    def _lemma_predicate(self) -> str:
        if self.kind is FunctionKind.NORM_FIRST_DERIV:
            return "Lemma 1(ii): mu > 1"
        if self.kind is FunctionKind.NORM_SECOND_DERIV:
            return "Lemma 2(ii) proof: lambda + mu > 1"
        if self.kind is FunctionKind.NORM_SECOND:
            return "Lemma 2(i): lambda + mu > 1/2"
        if self.kind is FunctionKind.ALEXANDER_FIRST:
            return "Lemma 1(iii): mu > 1/2"
        return "Lemma 1(i): mu > 1/2"

    def _ratio_applies(self, after_n: int) -> bool:
        lam = self.params.lam
        if lam < 0.0:
            return False
        # Gamma(x) <= Gamma(x + lambda) once x passes the minimum of Gamma
        return lam == 0.0 or self.gamma_argument(after_n + 1) >= GAMMA_MIN_ARGUMENT

    def _ratio_remainder(self, after_n: int) -> float:
        return abs(self.coefficient(after_n + 1)) / (1.0 - self.factor_ratio(after_n + 1))

    def _reflection_ratio(self, after_n: int) -> float:
        s = -self.params.lam
        delta = 1.0 if self.kind.normalization is Normalization.SECOND else 0.0
        offset = max(0.0, 1.0 - self.params.mu + s * (delta - 1.0))
        kappa = 2.0 if self.kind is FunctionKind.NORM_FIRST_DERIV else 1.0
        k = after_n + 2.0
        return kappa * (s + offset / k) ** s * k ** (s - 1.0)

    def _reflection_applies(self, after_n: int) -> bool:
        if not -1.0 < self.params.lam < 0.0:
            return False
        if self.gamma_argument(after_n + 1) >= 0.0:
            return False
        return self._reflection_ratio(after_n) <= GEOMETRIC_TARGET

    def _reflection_remainder(self, after_n: int) -> float:
        # |1/Gamma(x)| <= Gamma(1 - x)/pi for x < 0, and Gamma(y + s)/Gamma(y) <= y^s
        m = after_n + 1
        log_majorant = (
            self._log_scale
            + self._log_factorial_factor(m)
            + log_gamma(1.0 - self.gamma_argument(m))
            - LOG_PI
        )
        return math.exp(min(log_majorant, 709.0)) / (1.0 - self._reflection_ratio(after_n))

    def _tail_anchor(self) -> Optional[_TailAnchor]:
        if self._anchor_searched:
            return self._anchor
        anchor = None
        for k in range(self.term_cap + 1):
            if self._ratio_applies(k):
                anchor = _TailAnchor(k, self._ratio_remainder(k), TailMethod.RATIO)
                break
            if self._reflection_applies(k):
                anchor = _TailAnchor(k, self._reflection_remainder(k), TailMethod.REFLECTION)
                break
        if anchor is None:
            logger.warning(f"No certified tail anchor within {self.term_cap} terms for {self!r}")
        self._anchor = anchor
        self._anchor_searched = True
        return anchor

    def _anchored_tail(self, after_n: int, anchor: _TailAnchor) -> float:
        if after_n < anchor.index:
            return self._explicit_tail(after_n + 1, anchor.index) + anchor.remainder
        if anchor.method is TailMethod.RATIO:
            return self._ratio_remainder(after_n)
        return self._reflection_remainder(after_n)

    def _heuristic_tail(self, after_n: int) -> float:
        for m in range(after_n + 1, self.term_cap + 1):
            current, following = abs(self.coefficient(m)), abs(self.coefficient(m + 1))
            if current > 0.0 and following <= GEOMETRIC_TARGET * current:
                return self._explicit_tail(after_n + 1, m - 1) + current / (1.0 - GEOMETRIC_TARGET)
        raise NonConvergenceError(
            f"ratio test never dropped below {GEOMETRIC_TARGET} within {self.term_cap} terms for {self!r}",
            term_cap=self.term_cap,
        )

    def tail_estimate(self, after_n: int, method: Optional[TailMethod] = None) -> TailEstimate:
        """Upper bound on sum_{m > after_n} |c_m|, valid for all |z| <= 1."""
        if after_n < 0:
            raise DomainError(f"after_n must be >= 0, got {after_n}")
        lemma_certified = self.params.lam >= 1.0

        if method is TailMethod.LEMMA:
            return TailEstimate(self.lemma_tail(after_n), TailMethod.LEMMA, lemma_certified)
        if method is TailMethod.HEURISTIC:
            return TailEstimate(self._heuristic_tail(after_n), TailMethod.HEURISTIC, False)
        if method is None and lemma_certified and self.lemma_geometry() is not None:
            return TailEstimate(self.lemma_tail(after_n), TailMethod.LEMMA, True)

        anchor = self._tail_anchor()
        if anchor is not None and method in (None, anchor.method):
            return TailEstimate(self._anchored_tail(after_n, anchor), anchor.method, True)
        if method is not None:
            raise InvalidParametersError(
                f"tail method '{method.value}' does not apply to {self!r}",
                predicate=method.value,
            )
        return TailEstimate(self._heuristic_tail(after_n), TailMethod.HEURISTIC, False)

    def tail_majorant(self, after_n: int, method: Optional[TailMethod] = None) -> float:
        return self.tail_estimate(after_n, method).bound

    def terms_needed(self, abs_tol: float) -> Tuple[int, TailEstimate]:
        """Smallest N whose tail majorant is <= abs_tol, with that majorant."""
        if not abs_tol > 0.0:
            raise DomainError(f"abs_tol must be > 0, got {abs_tol!r}")
        cached = self._terms_needed.get(abs_tol)
        if cached is not None:
            return cached

        start = 0
        geometry = self.lemma_geometry()
        if self.params.lam >= 1.0 and geometry is not None:
            a, rho = geometry
            if a > 0.0:
                # closed-form jump, then the loop confirms
                start = max(0, int(math.log(abs_tol * (1.0 - rho) / a) / math.log(rho)) - 1)
        for n in range(start, self.term_cap + 1):
            estimate = self.tail_estimate(n)
            if estimate.bound <= abs_tol:
                if not estimate.certified:
                    logger.warning(f"Heuristic tail bound used for {self!r} at {n} terms")
                result = (n, estimate)
                self._terms_needed[abs_tol] = result
                return result
        raise NonConvergenceError(
            f"tail majorant of {self!r} stayed above {abs_tol!r} for {self.term_cap} terms",
            term_cap=self.term_cap,
        )

    # ----- evaluation -----

    def _check_argument(self, z: complex) -> None:
        if abs(z) > 1.0 + UNIT_DISC_SLACK:
            raise DomainError(f"|z| must be <= 1, got |z| = {abs(z)!r}")

    def _fsum_terms(self, z: complex, n: int) -> complex:
        power = z if self.kind.head_power else 1.0 + 0.0j
        terms = [self.head * power]
        for c in self.coefficients(n):
            power *= z
            terms.append(c * power)
        return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))

    def evaluate(self, z: complex, abs_tol: Optional[float] = None) -> TruncatedValue:
        z = complex(z)
        self._check_argument(z)
        n, estimate = self.terms_needed(settings.default_tolerance if abs_tol is None else abs_tol)
        return TruncatedValue(
            value=self._fsum_terms(z, n),
            tail_bound=estimate.bound,
            terms_used=n,
            method=estimate.method,
            certified=estimate.certified,
        )

    def partial_sum(self, n: int, z: complex) -> complex:
        if n < 0:
            raise DomainError(f"partial sum index must be >= 0, got {n}")
        return self._fsum_terms(complex(z), n)

    def _reduced_polynomial(self, n: int) -> np.ndarray:
        return np.array([self.head] + self.coefficients(n), dtype=float)

    def _restore_head_power(self, reduced: np.ndarray, zs: np.ndarray) -> np.ndarray:
        return reduced * zs if self.kind.head_power else reduced

    def partial_sum_many(self, n: int, zs: np.ndarray, reduced: bool = False) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        values = P.polyval(zs, self._reduced_polynomial(n))
        return values if reduced else self._restore_head_power(values, zs)

    def evaluate_many(
        self, zs: np.ndarray, abs_tol: Optional[float] = None, reduced: bool = False
    ) -> Tuple[np.ndarray, TailEstimate]:
        """Vectorized evaluation for scans; Horner on the cached coefficients."""
        zs = np.asarray(zs, dtype=complex)
        if zs.size and float(np.max(np.abs(zs))) > 1.0 + UNIT_DISC_SLACK:
            raise DomainError("evaluate_many requires every |z| <= 1")
        n, estimate = self.terms_needed(settings.default_tolerance if abs_tol is None else abs_tol)
        return self.partial_sum_many(n, zs, reduced=reduced), estimate

    def log_derivative_partial_many(self, n: int, zs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """(z q_n'(z), q_n(z)) of the reduced partial sum q_n."""
        zs = np.asarray(zs, dtype=complex)
        poly = self._reduced_polynomial(n)
        weighted = poly * np.arange(poly.size, dtype=float)
        return P.polyval(zs, weighted), P.polyval(zs, poly)


@lru_cache(maxsize=512)
def get_stream(kind: FunctionKind, params: WrightParams, term_cap: Optional[int] = None) -> CoefficientStream:
    return CoefficientStream(kind, params, term_cap)


def make_stream(kind: FunctionKind, lam: float, mu: float, term_cap: Optional[int] = None) -> CoefficientStream:
    return get_stream(kind, WrightParams(lam=lam, mu=mu), term_cap)


def coefficient(stream: CoefficientStream, m: int) -> float:
    return stream.coefficient(m)


def tail_majorant(stream: CoefficientStream, after_n: int, method: Optional[TailMethod] = None) -> float:
    return stream.tail_majorant(after_n, method)


def evaluate(stream: CoefficientStream, z: complex, abs_tol: Optional[float] = None) -> TruncatedValue:
    return stream.evaluate(z, abs_tol)


def partial_sum(stream: CoefficientStream, n: int, z: complex) -> complex:
    return stream.partial_sum(n, z)
