"""Unit tests for exact single-group Curie-Weiss quantities."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cwvote.domain.curie_weiss import (
    abs_moment,
    abs_moment_inverse,
    dlog_partition,
    kappa_info,
    log_magnetization_weights,
    log_partition,
    magnetization_pmf,
    moment_s2,
    theta_inverse,
    var_s2,
    zero_probability,
)
from cwvote.domain.errors import (
    InvalidPopulationError,
    OutOfRangeError,
    UnsupportedOrderError,
)
from cwvote.domain.models import ExtendedCoupling

EPS = np.finfo(float).eps


class TestKappaInfo:
    """Test cases for kappa_info."""

    def test_even_population(self) -> None:
        """Test that even N has κ = 0 attained by the balanced configurations."""
        info = kappa_info(2)
        assert info.kappa == 0
        assert info.upsilon_cardinality == 2

    def test_odd_population(self) -> None:
        """Test that odd N has κ = 1."""
        info = kappa_info(3)
        assert info.kappa == 1
        assert info.upsilon_cardinality == 3

    def test_large_population_is_exact(self) -> None:
        """Test that |Υ| is an exact integer for large N."""
        assert kappa_info(100).upsilon_cardinality == math.comb(100, 50)

    @pytest.mark.parametrize("N", [1, 0, -3])
    def test_rejects_small_population(self, N: int) -> None:
        """Test that N < 2 is rejected."""
        with pytest.raises(InvalidPopulationError):
            kappa_info(N)


class TestPartition:
    """Test cases for the partition function."""

    def test_zero_coupling_closed_form(self) -> None:
        """Test ln Z = N ln 2 at β = 0."""
        assert log_partition(7, 0.0) == pytest.approx(7 * math.log(2), rel=1e-15)

    def test_two_voters(self) -> None:
        """Test Z = 2e + 2 for N = 2, β = 1."""
        assert log_partition(2, 1.0) == pytest.approx(math.log(2 * math.e + 2), rel=1e-14)

    def test_large_population_is_finite(self) -> None:
        """Test that N = 5000 with a large coupling stays finite."""
        value = log_partition(5000, 3.0)
        assert math.isfinite(value)
        assert value > 5000 * math.log(2)

    def test_log_weights_shape(self) -> None:
        """Test the N+1 log-weights."""
        weights = log_magnetization_weights(4, 0.0)
        assert weights.shape == (5,)
        np.testing.assert_allclose(np.exp(weights), [1, 4, 6, 4, 1])

    def test_infinite_coupling_rejected(self) -> None:
        """Test that ln Z needs a finite coupling."""
        with pytest.raises(OutOfRangeError):
            log_partition(3, math.inf)

    def test_derivative_of_log_partition(self) -> None:
        """Test d ln Z/dβ = E S²/(2N) against central differences."""
        h = 1e-6
        numeric = (log_partition(6, 0.7 + h) - log_partition(6, 0.7 - h)) / (2 * h)
        assert dlog_partition(6, 0.7) == pytest.approx(numeric, rel=1e-7)


class TestMagnetizationPmf:
    """Test cases for magnetization_pmf."""

    def test_zero_coupling_is_binomial(self) -> None:
        """Test that β = 0 gives the symmetric binomial law."""
        pmf = magnetization_pmf(2, 0.0)
        assert pmf.as_dict() == pytest.approx({-2: 0.25, 0: 0.5, 2: 0.25})

    def test_probabilities_sum_to_one(self) -> None:
        """Test normalization for a range of couplings."""
        for beta in (-3.0, 0.0, 0.4, 2.5):
            assert magnetization_pmf(9, beta).probs.sum() == pytest.approx(1.0, abs=1e-14)

    def test_symmetric(self) -> None:
        """Test P(S = s) = P(S = -s)."""
        pmf = magnetization_pmf(8, 1.3)
        np.testing.assert_allclose(pmf.probs, pmf.probs[::-1], rtol=1e-14)

    def test_unachievable_value(self) -> None:
        """Test that values of the wrong parity have probability 0."""
        pmf = magnetization_pmf(3, 0.5)
        assert pmf.prob(0) == 0.0
        assert pmf.prob(5) == 0.0

    def test_arrays_are_read_only(self) -> None:
        """Test that cached arrays cannot be modified."""
        pmf = magnetization_pmf(4, 0.2)
        with pytest.raises(ValueError, match="read-only"):
            pmf.probs[0] = 1.0

    def test_cumulative_ends_at_one(self) -> None:
        """Test the cumulative table."""
        cdf = magnetization_pmf(5, 0.9).cumulative()
        assert cdf[-1] == 1.0
        assert np.all(np.diff(cdf) >= 0)

    def test_concentration_at_strong_coupling(self) -> None:
        """Test that mass concentrates on ±N for large β."""
        pmf = magnetization_pmf(4, 30.0)
        assert pmf.prob(4) + pmf.prob(-4) > 1 - 1e-6


class TestMoments:
    """Test cases for moment_s2, var_s2 and abs_moment."""

    def test_second_moment_at_zero_coupling(self) -> None:
        """Test E S² = N at β = 0."""
        assert moment_s2(5, 0.0) == 5.0
        assert moment_s2(10_000, 0.0) == 10_000.0

    def test_second_moment_two_voters(self) -> None:
        """Test E S² = 4e/(e+1) for N = 2, β = 1."""
        assert moment_s2(2, 1.0) == pytest.approx(4 * math.e / (math.e + 1), rel=1e-14)

    def test_second_moment_infinite_couplings(self) -> None:
        """Test the extension θ(-∞) = κ and θ(+∞) = N²."""
        assert moment_s2(3, ExtendedCoupling.neg_infinity()) == 1.0
        assert moment_s2(4, ExtendedCoupling.neg_infinity()) == 0.0
        assert moment_s2(3, ExtendedCoupling.pos_infinity()) == 9.0

    def test_variance_closed_form(self) -> None:
        """Test 𝕍 S² = 2N² - 2N at β = 0."""
        assert var_s2(3, 0.0) == 12.0
        assert var_s2(3, 1e-300) == pytest.approx(12.0, rel=1e-12)

    def test_absolute_moments_three_voters(self) -> None:
        """Test E|S| = 1.5 and E|S|³ = 7.5 for N = 3, β = 0."""
        assert abs_moment(3, 0.0, 1) == pytest.approx(1.5, rel=1e-14)
        assert abs_moment(3, 0.0, 3) == pytest.approx(7.5, rel=1e-14)

    def test_absolute_moment_limits(self) -> None:
        """Test E|S| at infinite couplings."""
        assert abs_moment(7, ExtendedCoupling.pos_infinity()) == 7.0
        assert abs_moment(4, ExtendedCoupling.neg_infinity()) == 0.0
        assert abs_moment(5, ExtendedCoupling.neg_infinity(), 3) == 1.0

    def test_unsupported_order(self) -> None:
        """Test that only orders 1 and 3 are supported."""
        with pytest.raises(UnsupportedOrderError):
            abs_moment(3, 0.0, 2)

    def test_zero_probability(self) -> None:
        """Test P(S = 0) across parities and limits."""
        assert zero_probability(2, 0.0) == pytest.approx(0.5)
        assert zero_probability(3, 0.0) == 0.0
        assert zero_probability(4, ExtendedCoupling.neg_infinity()) == 1.0
        assert zero_probability(4, ExtendedCoupling.pos_infinity()) == 0.0

    @pytest.mark.parametrize("N", [5, 10, 20])
    @pytest.mark.parametrize("beta", [-1.0, 0.0, 0.5, 1.5])
    def test_theta_derivative_identity(self, N: int, beta: float) -> None:
        """Test θ'(β) = 𝕍 S²/(2N) against central differences."""
        h = 1e-5
        numeric = (moment_s2(N, beta + h) - moment_s2(N, beta - h)) / (2 * h)
        assert var_s2(N, beta) / (2 * N) == pytest.approx(numeric, rel=1e-6)

    @settings(max_examples=60, deadline=None)
    @given(
        N=st.integers(min_value=2, max_value=40),
        beta=st.floats(min_value=-5, max_value=5),
        step=st.floats(min_value=0.01, max_value=1.0),
    )
    def test_theta_increasing(self, N: int, beta: float, step: float) -> None:
        """Test that θ_N is strictly increasing away from saturation."""
        assert moment_s2(N, beta) < moment_s2(N, beta + step)

    @settings(max_examples=60, deadline=None)
    @given(
        N=st.integers(min_value=2, max_value=40),
        beta=st.floats(min_value=-5, max_value=5),
        step=st.floats(min_value=0.01, max_value=1.0),
    )
    def test_absolute_moment_increasing(self, N: int, beta: float, step: float) -> None:
        """Test that β ↦ E|S| is strictly increasing."""
        assert abs_moment(N, beta) < abs_moment(N, beta + step)


class TestThetaInverse:
    """Test cases for theta_inverse."""

    def test_boundaries(self) -> None:
        """Test that κ and N² map to the infinite couplings."""
        assert theta_inverse(3, 1.0).is_neg_infinity
        assert theta_inverse(4, 0.0).is_neg_infinity
        assert theta_inverse(3, 9.0).is_pos_infinity

    def test_independence_point(self) -> None:
        """Test that T = N gives β̂ = 0."""
        assert theta_inverse(6, 6.0) == ExtendedCoupling.finite(0.0)

    @pytest.mark.parametrize("t", [0.5, 9.5, -1.0])
    def test_out_of_range(self, t: float) -> None:
        """Test that t outside [κ, N²] is rejected."""
        with pytest.raises(OutOfRangeError):
            theta_inverse(3, t)

    @settings(max_examples=150, deadline=None)
    @given(N=st.integers(min_value=2, max_value=50), beta=st.floats(min_value=-10, max_value=10))
    def test_round_trip(self, N: int, beta: float) -> None:
        """Test θ⁻¹(θ(β)) = β up to the conditioning of θ."""
        theta = moment_s2(N, beta)
        slope = var_s2(N, beta) / (2 * N)
        tolerance = 1e-9 + 64 * EPS * theta / slope
        recovered = theta_inverse(N, theta)
        assert recovered.is_finite
        assert abs(recovered.value - beta) <= tolerance

    def test_absolute_moment_inverse(self) -> None:
        """Test the inverse of β ↦ E|S|."""
        y = abs_moment(7, 0.8)
        assert abs_moment_inverse(7, y).value == pytest.approx(0.8, abs=1e-9)
        assert abs_moment_inverse(7, 7.0).is_pos_infinity
        assert abs_moment_inverse(7, 1.0).is_neg_infinity
        with pytest.raises(OutOfRangeError):
            abs_moment_inverse(7, 7.5)
