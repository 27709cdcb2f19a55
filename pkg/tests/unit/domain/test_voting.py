"""Unit tests for council votes, the democracy deficit and council weights."""

import math

import pytest

from cwvote.domain.curie_weiss import abs_moment, magnetization_pmf, moment_s2
from cwvote.domain.errors import (
    InvalidSetError,
    OutOfRangeError,
    PreconditionError,
    ShapeError,
)
from cwvote.domain.estimator import multi_group_estimate, summarize
from cwvote.domain.large_deviations import make_rate_context, rate_j
from cwvote.domain.models import (
    ClosedInterval,
    ExtendedCoupling,
    GroupSpec,
    TailKind,
    WeightSource,
)
from cwvote.domain.voting import (
    council_votes,
    deficit_at,
    democracy_deficit,
    estimate_weights,
    optimal_weights,
    plug_in_weights,
    rate_h,
    weight_tail_bound,
    weight_variance,
)


class TestCouncil:
    """Test cases for council_votes."""

    def test_ties_go_negative(self) -> None:
        """Test sign with S = 0 mapped to -1."""
        assert council_votes([3, 0, -1, 2]) == [1, -1, -1, 1]


class TestDeficit:
    """Test cases for the democracy deficit."""

    def test_single_group_closed_form(self) -> None:
        """Test E S² - 2w E|S| + w² = 0.75 for N = 3, β = 0, w = 1.5."""
        assert democracy_deficit([GroupSpec(3, 0.0)], [1.5]) == pytest.approx(0.75)

    def test_zero_weight(self) -> None:
        """Test that with no weight the deficit is E S̄²."""
        model = [GroupSpec(3, 0.4), GroupSpec(5, 0.1)]
        expected = moment_s2(3, 0.4) + moment_s2(5, 0.1)
        assert democracy_deficit(model, [0.0, 0.0]) == pytest.approx(expected)

    def test_tie_cross_terms(self) -> None:
        """Test the cross term w_λ w_μ P(S_λ=0) P(S_μ=0) for two even groups."""
        model = [GroupSpec(2, 0.0), GroupSpec(2, 0.0)]
        # E S² = 2, E|S| = 1, P(S = 0) = 1/2
        per_group = 2.0 - 2.0 * 1.0 + 1.0
        expected = 2 * per_group + 2 * (0.5 * 0.5)
        assert democracy_deficit(model, [1.0, 1.0]) == pytest.approx(expected)

    def test_infinite_coupling(self) -> None:
        """Test that an infinite coupling behaves like unanimity."""
        value = deficit_at([3], [ExtendedCoupling.pos_infinity()], [3.0])
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_length_mismatch(self) -> None:
        """Test that one weight per group is required."""
        with pytest.raises(ShapeError):
            democracy_deficit([GroupSpec(3, 0.0)], [1.0, 2.0])
        with pytest.raises(ShapeError):
            deficit_at([], [], [])


class TestOptimalWeights:
    """Test cases for optimal_weights."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        self.model = [GroupSpec(3, 0.5), GroupSpec(5, 1.1), GroupSpec(7, 0.0)]

    def test_weights_are_absolute_moments(self) -> None:
        """Test w_λ = E|S_λ| and the reported deficit."""
        report = optimal_weights(self.model)
        assert report.weights == [abs_moment(spec.N, spec.beta) for spec in self.model]
        assert all(group.source is WeightSource.EXACT for group in report.groups)
        assert report.deficit == pytest.approx(democracy_deficit(self.model, report.weights))

    def test_minimizes_deficit_for_odd_groups(self) -> None:
        """Test that perturbing any weight increases the deficit."""
        report = optimal_weights(self.model)
        for index in range(len(self.model)):
            for shift in (-0.05, 0.05):
                weights = list(report.weights)
                weights[index] += shift
                assert democracy_deficit(self.model, weights) > report.deficit

    def test_negative_coupling(self) -> None:
        """Test that a negative coupling is rejected with its group index."""
        with pytest.raises(PreconditionError) as excinfo:
            optimal_weights([GroupSpec(3, 0.5), GroupSpec(4, -0.2)])
        assert excinfo.value.group_index == 1

    def test_empty_model(self) -> None:
        """Test that a model needs groups."""
        with pytest.raises(ShapeError):
            optimal_weights([])


class TestWeightVariance:
    """Test cases for weight_variance."""

    @pytest.mark.parametrize(
        ("N", "expected"),
        [(2, 1.0), (3, 0.75)],
    )
    def test_independence(self, N: int, expected: float) -> None:
        """Test υ² at β = 0 against hand-computed values."""
        assert weight_variance(N, 0.0) == pytest.approx(expected)

    def test_moment_formula(self) -> None:
        """Test υ² = (E|S|³ - E|S| E S²)² / 𝕍 S² away from zero."""
        pmf = magnetization_pmf(6, 0.8)
        abs1 = float(pmf.probs @ abs(pmf.support))
        abs3 = float(pmf.probs @ abs(pmf.support) ** 3)
        second = float(pmf.probs @ pmf.support**2)
        fourth = float(pmf.probs @ pmf.support**4)
        expected = (abs3 - abs1 * second) ** 2 / (fourth - second**2)
        assert weight_variance(6, 0.8) == pytest.approx(expected, rel=1e-9)

    def test_degenerate_law(self) -> None:
        """Test that a numerically degenerate law yields 0."""
        assert weight_variance(4, 1e4) == pytest.approx(0.0, abs=1e-12)

    def test_infinite_coupling(self) -> None:
        """Test that υ² needs a finite coupling."""
        with pytest.raises(OutOfRangeError):
            weight_variance(4, math.inf)


class TestPlugIn:
    """Test cases for estimate_weights and plug_in_weights."""

    def test_finite_estimate(self) -> None:
        """Test ŵ, its standard error and interval for a finite β̂."""
        weight = estimate_weights(5, ExtendedCoupling.finite(0.7), n=200)
        assert weight.source is WeightSource.ESTIMATED
        assert weight.w == pytest.approx(abs_moment(5, 0.7))
        assert weight.upsilon_sq == pytest.approx(weight_variance(5, 0.7))
        assert weight.std_error == pytest.approx(math.sqrt(weight_variance(5, 0.7) / 200))
        assert weight.ci is not None
        assert weight.ci.contains(weight.w)

    def test_infinite_estimate(self) -> None:
        """Test that an infinite β̂ yields ŵ ∈ {κ, N} without an interval."""
        upper = estimate_weights(5, ExtendedCoupling.pos_infinity(), n=10)
        lower = estimate_weights(5, ExtendedCoupling.neg_infinity(), n=10)
        assert upper.w == 5.0
        assert lower.w == 1.0
        assert upper.ci is None
        assert upper.std_error is None

    def test_from_report(self) -> None:
        """Test plug-in weights and deficit at the estimated couplings."""
        report = multi_group_estimate(summarize([(3, 5.0), (4, 16.0)], n=20))
        weights = plug_in_weights(report)
        assert [group.N for group in weights.groups] == [3, 4]
        assert weights.groups[1].w == 4.0
        assert weights.deficit == pytest.approx(
            deficit_at(
                [3, 4],
                [group.beta_hat for group in report.groups],
                weights.weights,
            )
        )


class TestWeightRate:
    """Test cases for rate_h and weight_tail_bound."""

    def setup_method(self) -> None:
        """Set up test fixtures."""
        self.ctx = make_rate_context(5, 0.6)
        self.center = abs_moment(5, 0.6)

    def test_zero_at_true_weight(self) -> None:
        """Test H(E|S|) = 0."""
        assert rate_h(self.ctx, self.center) == pytest.approx(0.0, abs=1e-12)

    def test_outside_range(self) -> None:
        """Test +∞ outside [κ, N]."""
        assert rate_h(self.ctx, 0.5) == math.inf
        assert rate_h(self.ctx, 5.5) == math.inf

    def test_unanimity_endpoint(self) -> None:
        """Test H(N) = J(+∞)."""
        assert rate_h(self.ctx, 5.0) == pytest.approx(rate_j(self.ctx, math.inf))

    def test_nan(self) -> None:
        """Test that NaN is rejected."""
        with pytest.raises(OutOfRangeError):
            rate_h(self.ctx, math.nan)

    def test_bound(self) -> None:
        """Test P{ŵ ∈ K} ≤ 2 exp(-n H(a)) for K = [a, ∞)."""
        a = self.center + 0.5
        bound = weight_tail_bound(self.ctx, 40, (ClosedInterval(a, math.inf),))
        assert bound.kind is TailKind.CLOSED_SET_WEIGHT
        assert bound.groups == 1
        assert bound.bound == pytest.approx(2 * math.exp(-40 * rate_h(self.ctx, a)))

    def test_unreachable_set(self) -> None:
        """Test that a set beyond N gives a zero bound, or 2 when n = 0."""
        ctx = make_rate_context(5, 0.5)
        unreachable = (ClosedInterval(6.0, math.inf),)
        assert weight_tail_bound(ctx, 10, unreachable).bound == 0.0
        assert weight_tail_bound(ctx, 0, unreachable).bound == 2.0

    def test_set_containing_weight(self) -> None:
        """Test that K ∋ E|S| is rejected."""
        with pytest.raises(InvalidSetError):
            weight_tail_bound(self.ctx, 40, (ClosedInterval(1.0, 5.0),))
