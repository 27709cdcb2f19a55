"""Acceptance checks of the exact computations against independent oracles."""

import math

import numpy as np
import pytest
from scipy.special import logsumexp
from scipy.stats import chisquare

from cwvote.domain.curie_weiss import (
    abs_moment,
    log_partition,
    magnetization_pmf,
    moment_s2,
    theta_inverse,
    var_s2,
)
from cwvote.domain.large_deviations import (
    delta_atypical,
    entropy_s2,
    make_rate_context,
)
from cwvote.domain.models import GroupSpec
from cwvote.domain.oracle import brute_force_deficit, brute_force_moments
from cwvote.domain.sampler import sample_configurations, sample_magnetizations, substream
from cwvote.domain.voting import democracy_deficit, optimal_weights

pytestmark = pytest.mark.slow

EPS = np.finfo(float).eps
BETAS = [-2.0, -0.5, 0.0, 0.5, 1.0, 2.0]


def grid_sup(N: int, beta: float, x: float) -> float:
    """sup over t in [-30, 30] of x t - Λ(t), refined around the best grid point."""
    pmf = magnetization_pmf(N, beta)
    squares = (pmf.support * pmf.support).astype(float)

    def objective(ts: np.ndarray) -> np.ndarray:
        return x * ts - logsumexp(np.outer(ts, squares) + pmf.log_probs, axis=1)

    coarse = np.linspace(-30.0, 30.0, 60001)
    best = coarse[int(np.argmax(objective(coarse)))]
    return float(np.max(objective(np.linspace(best - 1e-3, best + 1e-3, 2001))))


class TestEnumerationEquivalence:
    """Level sums against the 2^N enumeration."""

    @pytest.mark.parametrize("N", range(2, 13))
    def test_moments(self, N: int) -> None:
        """Test ln Z, θ_N, 𝕍 S², E|S| and E|S|³ within 1e-12 relative."""
        for beta in BETAS:
            reference = brute_force_moments(N, beta)
            assert log_partition(N, beta) == pytest.approx(reference.log_z, rel=1e-12)
            assert moment_s2(N, beta) == pytest.approx(reference.es2, rel=1e-12)
            assert var_s2(N, beta) == pytest.approx(
                reference.es4 - reference.es2**2, rel=1e-12
            )
            assert abs_moment(N, beta, 1) == pytest.approx(reference.eabs, rel=1e-12)
            assert abs_moment(N, beta, 3) == pytest.approx(reference.eabs3, rel=1e-12)

    def test_twelve_voters(self) -> None:
        """Test the 4096-term partition sum at β = 0.7."""
        assert log_partition(12, 0.7) == pytest.approx(
            brute_force_moments(12, 0.7).log_z, rel=1e-12
        )

    @pytest.mark.parametrize(("N1", "N2"), [(2, 3), (3, 3), (4, 5), (6, 6), (5, 2)])
    def test_deficit(self, N1: int, N2: int) -> None:
        """Test the closed-form deficit for two groups of up to six voters."""
        model = [GroupSpec(N1, 0.7), GroupSpec(N2, -0.3)]
        for weights in ([1.0, 1.0], [0.5, 2.5], [0.0, 3.0]):
            assert democracy_deficit(model, weights) == pytest.approx(
                brute_force_deficit(model, weights), rel=1e-12
            )


class TestMomentIdentities:
    """Closed-form and differential identities of θ_N."""

    @pytest.mark.parametrize("N", [2, 17, 1000, 10_000])
    def test_independent_second_moment(self, N: int) -> None:
        """Test E_{0,N} S² = N."""
        assert moment_s2(N, 0.0) == pytest.approx(N, rel=1e-10)

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_strictly_increasing(self, N: int) -> None:
        """Test strict growth of θ_N on a 400-point grid over [-20, 20]."""
        values = [moment_s2(N, beta) for beta in np.linspace(-20.0, 20.0, 400)]
        assert all(later > earlier for earlier, later in zip(values, values[1:]))

    @pytest.mark.parametrize(("N", "beta"), [(6, 0.4), (11, -1.3), (30, 0.9), (7, 3.0)])
    def test_derivative(self, N: int, beta: float) -> None:
        """Test θ'_N = 𝕍 S² / (2N) against centered differences."""
        h = 1e-4
        numeric = (moment_s2(N, beta + h) - moment_s2(N, beta - h)) / (2 * h)
        assert var_s2(N, beta) / (2 * N) == pytest.approx(numeric, rel=1e-6)

    def test_round_trip(self) -> None:
        """Test θ_N⁻¹(θ_N(β)) = β on N ∈ {2, …, 50} and β ∈ [-10, 10].

        The tolerance is 1e-9 plus the error that rounding of θ_N itself
        induces where θ_N is flat.
        """
        for N in range(2, 51):
            for beta in np.linspace(-10.0, 10.0, 21):
                theta = moment_s2(N, beta)
                recovered = theta_inverse(N, theta)
                slope = var_s2(N, beta) / (2 * N)
                tolerance = 1e-9 + 64 * EPS * theta / slope
                assert abs(recovered.value - beta) <= tolerance, (N, beta)


class TestEntropySuite:
    """Properties of the entropy function Λ*_{S²}."""

    CASES = [(3, 0.5), (5, -0.4), (8, 1.2), (2, 1.0)]

    @pytest.mark.parametrize(("N", "beta"), CASES)
    def test_zero_at_mean(self, N: int, beta: float) -> None:
        """Test Λ*(E S²) = 0."""
        ctx = make_rate_context(N, beta)
        assert entropy_s2(ctx, moment_s2(N, beta)) == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize(("N", "beta"), CASES)
    def test_shape(self, N: int, beta: float) -> None:
        """Test non-negativity, strictly monotone wings and +∞ outside the range."""
        ctx = make_rate_context(N, beta)
        low, high = N % 2, N * N
        mean = moment_s2(N, beta)
        left = [entropy_s2(ctx, float(x)) for x in np.linspace(low, mean, 12)[:-1]]
        right = [entropy_s2(ctx, float(x)) for x in np.linspace(mean, high, 12)[1:]]
        assert min(left + right) >= 0.0
        assert all(a > b for a, b in zip(left, left[1:]))
        assert all(a < b for a, b in zip(right, right[1:]))
        assert entropy_s2(ctx, low - 1e-9) == math.inf
        assert entropy_s2(ctx, high + 1e-9) == math.inf

    @pytest.mark.parametrize(("N", "beta"), CASES[:3])
    def test_grid_oracle(self, N: int, beta: float) -> None:
        """Test agreement with a refined grid supremum inside (κ², N²)."""
        ctx = make_rate_context(N, beta)
        low, high = N % 2, N * N
        margin = 0.05 * (high - low)
        for x in np.linspace(low + margin, high - margin, 15):
            assert entropy_s2(ctx, float(x)) == pytest.approx(
                grid_sup(N, beta, float(x)), abs=1e-7
            )

    @pytest.mark.parametrize(("N", "beta"), [(2, 1.0), (3, 0.5)])
    def test_delta(self, N: int, beta: float) -> None:
        """Test δ = min{Λ*(N), Λ*(N²)} with the grid oracle at N."""
        ctx = make_rate_context(N, beta)
        unanimity = -math.log(magnetization_pmf(N, beta).prob(N) * 2)
        expected = min(grid_sup(N, beta, float(N)), unanimity)
        delta = delta_atypical(ctx)
        assert delta > 0
        assert delta == pytest.approx(expected, abs=1e-7)


class TestVotingExactness:
    """Exact properties of council weights."""

    def test_weight_ordering(self) -> None:
        """Test that equal-size groups are ordered by coupling."""
        betas = np.linspace(-3.0, 3.0, 61)
        weights = optimal_weights([GroupSpec(7, float(b)) for b in betas if b >= 0]).weights
        assert all(a < b for a, b in zip(weights, weights[1:]))
        absolute = [abs_moment(7, float(b)) for b in betas]
        assert all(a < b for a, b in zip(absolute, absolute[1:]))

    @pytest.mark.parametrize(
        "model",
        [
            [GroupSpec(3, 0.5), GroupSpec(5, 1.0)],
            [GroupSpec(7, 0.0), GroupSpec(9, 0.3), GroupSpec(3, 2.0)],
        ],
    )
    def test_zero_gradient(self, model: list[GroupSpec]) -> None:
        """Test that the deficit is stationary at w = E|S| for odd groups."""
        weights = optimal_weights(model).weights
        h = 1e-4
        for index in range(len(model)):
            up = list(weights)
            down = list(weights)
            up[index] += h
            down[index] -= h
            gradient = (democracy_deficit(model, up) - democracy_deficit(model, down)) / (2 * h)
            assert abs(gradient) < 1e-8


class TestSamplerExactness:
    """Goodness of fit and reproducibility of the sampler."""

    @pytest.mark.parametrize(
        ("N", "beta"), [(6, 0.0), (6, 1.0), (11, 0.5), (8, 0.9), (5, -1.0), (10, 1.5)]
    )
    def test_margin_law(self, N: int, beta: float) -> None:
        """Test the margin frequencies with a chi-square test at 1e-3."""
        n = 100_000
        margins = sample_magnetizations(N, beta, n, substream(2024, N))
        pmf = magnetization_pmf(N, beta)
        observed = np.array([np.count_nonzero(margins == s) for s in pmf.support])
        expected = pmf.probs * n
        keep = expected >= 5
        observed_kept = np.append(observed[keep], observed[~keep].sum())
        expected_kept = np.append(expected[keep], expected[~keep].sum())
        if expected_kept[-1] == 0:
            observed_kept, expected_kept = observed_kept[:-1], expected_kept[:-1]
        expected_kept *= observed_kept.sum() / expected_kept.sum()
        assert chisquare(observed_kept, expected_kept).pvalue > 1e-3

    def test_vote_placement_is_uniform(self) -> None:
        """Test that positive votes are spread evenly over positions."""
        batch = sample_configurations([GroupSpec(9, 0.4)], 50_000, seed=99)
        assert batch.configurations is not None
        positives = (batch.configurations == 1).sum(axis=0)
        assert chisquare(positives).pvalue > 1e-3

    def test_configurations_uniform_given_margin(self) -> None:
        """Test that the three configurations with S = 1 are equally likely."""
        batch = sample_configurations([GroupSpec(3, 1.0)], 100_000, seed=5)
        assert batch.configurations is not None
        margin_one = batch.configurations[batch.configurations.sum(axis=1) == 1]
        total = len(margin_one)
        assert total > 10_000

        # the single -1 vote sits at position 0, 1 or 2
        counts = np.array([(margin_one[:, i] == -1).sum() for i in range(3)])
        assert counts.sum() == total
        sigma = math.sqrt(total * (1 / 3) * (2 / 3))
        for count in counts:
            assert abs(count - total / 3) < 4 * sigma

    def test_reruns_are_identical(self) -> None:
        """Test byte-identical output for repeated seeds."""
        model = [GroupSpec(5, 0.8), GroupSpec(7, 1.2)]
        first = sample_configurations(model, 5_000, seed=42)
        second = sample_configurations(model, 5_000, seed=42)
        assert first.configurations is not None
        assert second.configurations is not None
        assert first.configurations.tobytes() == second.configurations.tobytes()
