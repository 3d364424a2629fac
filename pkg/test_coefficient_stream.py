import math

import mpmath
import numpy as np
import pytest

from app.exceptions import DomainError, InvalidParametersError, NonConvergenceError
from app.models.function_kind import FunctionKind, Normalization
from app.schemas.params import WrightParams
from app.schemas.series import TailMethod
from app.services.coefficient_stream import (
    CoefficientStream,
    coefficient,
    evaluate,
    make_stream,
    partial_sum,
    tail_majorant,
)
from conftest import random_disc_points

NF = FunctionKind.NORM_FIRST


def wright_oracle(lam, mu, z, terms=200):
    """W_{lambda,mu}(z) summed in 30-digit arithmetic."""
    with mpmath.workdps(30):
        z = mpmath.mpc(z.real, z.imag)
        total = mpmath.mpf(0)
        for m in range(terms):
            total += z ** m * mpmath.rgamma(lam * m + mu) / mpmath.factorial(m)
        return complex(total)


# (scale, first index, weight, exponent offset) of each kind as sum_k scale w(k) z^(k+e) / (k! Gamma(lambda k + mu))
DEFINING_SUMS = {
    FunctionKind.RAW: (lambda lam, mu: 1, 0, lambda k: 1, 0),
    NF: (lambda lam, mu: mpmath.gamma(mu), 0, lambda k: 1, 1),
    FunctionKind.NORM_FIRST_DERIV: (lambda lam, mu: mpmath.gamma(mu), 0, lambda k: k + 1, 0),
    FunctionKind.ALEXANDER_FIRST: (lambda lam, mu: mpmath.gamma(mu), 0, lambda k: mpmath.mpf(1) / (k + 1), 1),
    FunctionKind.NORM_SECOND: (lambda lam, mu: mpmath.gamma(lam + mu), 1, lambda k: 1, 0),
    FunctionKind.NORM_SECOND_DERIV: (lambda lam, mu: mpmath.gamma(lam + mu), 1, lambda k: k, -1),
}


def defining_sum(kind, lam, mu, z, max_terms=2000):
    """The kind summed from its definition until five terms in a row fall below 1e-25."""
    scale_of, first, weight, offset = DEFINING_SUMS[kind]
    with mpmath.workdps(20):
        z = mpmath.mpc(z.real, z.imag)
        scale = scale_of(lam, mu)
        total, small = mpmath.mpc(0), 0
        for k in range(first, max_terms):
            term = scale * weight(k) * z ** (k + offset) * mpmath.rgamma(lam * k + mu) / mpmath.factorial(k)
            total += term
            small = small + 1 if abs(term) < 1e-25 else 0
            if small >= 5 and k > 20:
                return complex(total)
    raise AssertionError(f"defining sum of {kind.value} did not settle at lambda={lam}, mu={mu}")


def kind_oracle(kind, lam, mu, z):
    if kind is FunctionKind.RAW:
        return wright_oracle(lam, mu, z)
    if kind is NF:
        return complex(mpmath.gamma(mu)) * z * wright_oracle(lam, mu, z)
    if kind is FunctionKind.NORM_SECOND:
        return complex(mpmath.gamma(lam + mu)) * (wright_oracle(lam, mu, z) - complex(mpmath.rgamma(mu)))
    raise ValueError(kind)


class TestCoefficients:
    def test_norm_first_second_coefficient(self):
        assert make_stream(NF, 1.0, 1.0).coefficient(2) == pytest.approx(0.25, rel=1e-13)

    def test_lambda_zero_collapses_to_factorials(self):
        stream = make_stream(NF, 0.0, 3.3)
        for m in range(1, 12):
            assert stream.coefficient(m) == pytest.approx(1.0 / math.factorial(m), rel=1e-12)

    def test_alexander_first_coefficient(self):
        assert make_stream(FunctionKind.ALEXANDER_FIRST, 1.0, 2.5).coefficient(1) == pytest.approx(0.2, rel=1e-13)

    def test_derivative_and_second_kind_coefficients(self):
        assert make_stream(FunctionKind.NORM_FIRST_DERIV, 1.0, 4.0).coefficient(1) == pytest.approx(0.5, rel=1e-13)
        assert make_stream(FunctionKind.NORM_SECOND, 1.0, 4.0).coefficient(1) == pytest.approx(0.1, rel=1e-13)

    def test_gamma_pole_gives_zero_coefficient(self):
        # lambda m + mu = -1 at m = 3
        assert make_stream(NF, -0.5, 0.5).coefficient(3) == 0.0

    def test_index_must_be_positive(self):
        with pytest.raises(DomainError):
            make_stream(NF, 1.0, 2.5).coefficient(0)

    def test_invalid_normalization_rejected(self):
        with pytest.raises(InvalidParametersError):
            make_stream(NF, 1.0, -0.5)
        with pytest.raises(InvalidParametersError):
            make_stream(FunctionKind.NORM_SECOND, -0.5, 0.4)


class TestTailMajorant:
    def test_lemma_geometric_remainders(self):
        stream = make_stream(NF, 1.0, 2.5)
        assert stream.tail_majorant(0) == pytest.approx(0.5, rel=1e-13)
        assert stream.tail_majorant(1) == pytest.approx(0.1, rel=1e-13)
        assert stream.tail_estimate(0).method is TailMethod.LEMMA

    def test_tail_decreases_to_zero(self):
        stream = make_stream(FunctionKind.NORM_SECOND_DERIV, 1.5, 1.0)
        tails = [stream.tail_majorant(n) for n in range(40)]
        assert all(b <= a for a, b in zip(tails, tails[1:]))
        assert tails[-1] < 1e-15

    def test_tail_bounds_explicit_remainder(self):
        for lam, mu in [(0.0, 0.7), (0.5, 1.2), (1.0, 2.5), (2.0, 0.8), (-0.5, 2.5)]:
            stream = make_stream(NF, lam, mu)
            for n in (0, 1, 3, 8):
                remainder = math.fsum(abs(c) for c in stream.coefficients(300)[n:])
                assert remainder <= stream.tail_majorant(n) * (1 + 1e-12) + 1e-300

    def test_explicit_lemma_method_needs_geometry(self):
        with pytest.raises(InvalidParametersError):
            make_stream(NF, 1.0, 0.4).tail_majorant(0, TailMethod.LEMMA)

    def test_lemma_below_lambda_one_is_not_certified(self):
        estimate = make_stream(NF, 0.0, 2.5).tail_estimate(2, TailMethod.LEMMA)
        assert estimate.certified is False

    def test_negative_after_n(self):
        with pytest.raises(DomainError):
            make_stream(NF, 1.0, 2.5).tail_majorant(-1)


class TestEvaluate:
    def test_values_at_center(self):
        value = make_stream(NF, 0.7, 1.9).evaluate(0j, 1e-12)
        assert value.value == 0
        assert value.tail_bound <= 1e-12
        assert make_stream(FunctionKind.NORM_FIRST_DERIV, 0.7, 1.9).evaluate(0j).value == pytest.approx(1.0)

    def test_raw_series_at_one(self):
        value = make_stream(FunctionKind.RAW, 1.0, 1.0).evaluate(1.0)
        assert value.value.real == pytest.approx(2.2795853023360673, abs=1e-14)
        assert value.value.imag == 0.0
        assert value.certified

    def test_conjugate_symmetry(self, rng):
        stream = make_stream(FunctionKind.NORM_SECOND, 0.3, 1.1)
        for z in random_disc_points(rng, 20):
            assert stream.evaluate(z.conjugate()).value == pytest.approx(stream.evaluate(z).value.conjugate(), abs=1e-15)

    @pytest.mark.parametrize("kind", [FunctionKind.RAW, NF, FunctionKind.NORM_SECOND])
    @pytest.mark.parametrize("lam,mu", [(0.0, 1.5), (0.5, 0.8), (1.0, 2.5), (2.0, 1.0), (3.0, 0.9), (-0.5, 2.5)])
    def test_matches_high_precision_oracle(self, rng, kind, lam, mu):
        stream = make_stream(kind, lam, mu)
        for z in random_disc_points(rng, 8):
            truncated = stream.evaluate(z, 1e-14)
            expected = kind_oracle(kind, lam, mu, z)
            assert abs(truncated.value - expected) <= truncated.tail_bound + 1e-13

    def test_derivative_matches_finite_difference(self, rng):
        h = 1e-5
        value = make_stream(NF, 1.0, 2.5)
        derivative = make_stream(FunctionKind.NORM_FIRST_DERIV, 1.0, 2.5)
        second = make_stream(FunctionKind.NORM_SECOND, 0.5, 1.5)
        second_derivative = make_stream(FunctionKind.NORM_SECOND_DERIV, 0.5, 1.5)
        for z in random_disc_points(rng, 100, max_radius=0.8):
            fd = (value.evaluate(z + h).value - value.evaluate(z - h).value) / (2 * h)
            assert abs(derivative.evaluate(z).value - fd) < 1e-7
            fd = (second.evaluate(z + h).value - second.evaluate(z - h).value) / (2 * h)
            assert abs(second_derivative.evaluate(z).value - fd) < 1e-7

    def test_alexander_derivative_is_quotient(self, rng):
        h = 1e-5
        value = make_stream(NF, 1.0, 2.5)
        alexander = make_stream(FunctionKind.ALEXANDER_FIRST, 1.0, 2.5)
        for z in random_disc_points(rng, 100, max_radius=0.8, min_radius=0.2):
            fd = (alexander.evaluate(z + h).value - alexander.evaluate(z - h).value) / (2 * h)
            assert abs(value.evaluate(z).value / z - fd) < 1e-7

    def test_outside_disc_rejected(self):
        with pytest.raises(DomainError):
            make_stream(NF, 1.0, 2.5).evaluate(1.5)

    def test_term_cap_exhaustion(self):
        stream = CoefficientStream(NF, WrightParams(lam=0.5, mu=2.5), term_cap=3)
        with pytest.raises(NonConvergenceError) as info:
            stream.evaluate(0.5)
        assert info.value.term_cap == 3

    def test_evaluate_many_agrees_with_scalar(self, rng):
        stream = make_stream(FunctionKind.ALEXANDER_FIRST, 2.0, 0.9)
        zs = random_disc_points(rng, 16)
        values, estimate = stream.evaluate_many(zs)
        for z, v in zip(zs, values):
            assert v == pytest.approx(stream.evaluate(z).value, abs=1e-15)
        assert estimate.certified


class TestPartialSum:
    def test_zeroth_partial_sum_is_identity(self):
        z = 0.3 + 0.4j
        assert make_stream(NF, 1.0, 2.5).partial_sum(0, z) == z

    def test_single_term(self):
        assert make_stream(NF, 1.0, 1.0).partial_sum(1, 1.0) == pytest.approx(2.0)

    def test_converges_to_value(self, rng):
        stream = make_stream(NF, 1.0, 2.5)
        for z in random_disc_points(rng, 10):
            truncated = stream.evaluate(z)
            assert abs(stream.partial_sum(60, z) - truncated.value) <= truncated.tail_bound + 1e-14

    def test_vectorized_reduced_form(self):
        stream = make_stream(NF, 1.0, 2.5)
        zs = np.array([0.5, -0.25 + 0.5j, 1j])
        reduced = stream.partial_sum_many(3, zs, reduced=True)
        full = stream.partial_sum_many(3, zs)
        assert np.allclose(full, reduced * zs, atol=1e-15)
        assert full[0] == pytest.approx(stream.partial_sum(3, 0.5))

    def test_negative_index(self):
        with pytest.raises(DomainError):
            make_stream(NF, 1.0, 2.5).partial_sum(-1, 0.5)


class TestTruncationSoundness:
    def test_certified_tail_covers_remainder(self):
        rng = np.random.default_rng(7)
        kinds = list(DEFINING_SUMS)
        checked = 0
        for _ in range(1000):
            kind = kinds[rng.integers(len(kinds))]
            lam = float(rng.uniform(-0.95, 3.0))
            driver = float(rng.uniform(0.05, 4.0))
            mu = driver - lam if kind.normalization is Normalization.SECOND else driver
            n = int(rng.integers(0, 13))
            [z] = random_disc_points(rng, 1)
            stream = CoefficientStream(kind, WrightParams(lam=lam, mu=mu))
            try:
                estimate = stream.tail_estimate(n)
            except NonConvergenceError:
                continue
            if not estimate.certified:
                continue
            expected = defining_sum(kind, lam, mu, complex(z))
            rounding = 1e-12 * (1.0 + abs(expected) + math.fsum(abs(c) for c in stream.coefficients(n)))
            assert abs(expected - stream.partial_sum(n, z)) <= estimate.bound + rounding, (kind, lam, mu, n, z)
            checked += 1
        assert checked >= 600


class TestModuleFunctions:
    def test_match_stream_methods(self):
        stream = make_stream(NF, 1.0, 2.5)
        assert coefficient(stream, 1) == pytest.approx(0.4, rel=1e-13)
        assert tail_majorant(stream, 0) == pytest.approx(0.5, rel=1e-13)
        assert partial_sum(stream, 1, 0.5) == pytest.approx(0.5 + 0.4 * 0.25)
        truncated = evaluate(stream, 0.5)
        assert abs(truncated.value - kind_oracle(NF, 1.0, 2.5, 0.5 + 0j)) <= truncated.tail_bound + 1e-15

    def test_zero_tolerance_is_rejected(self):
        stream = make_stream(NF, 1.0, 2.5)
        with pytest.raises(DomainError):
            stream.evaluate(0.5, abs_tol=0.0)
        with pytest.raises(DomainError):
            stream.evaluate_many(np.array([0.5]), abs_tol=0.0)
