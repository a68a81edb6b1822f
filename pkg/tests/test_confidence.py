"""Confidence radius and UCB/LCB estimator checks, including coverage."""

import math

import numpy as np
import pytest

from banditalloc.confidence import (
    ArmStatistics,
    ConfidenceParams,
    lcb_cost,
    lcb_cost_all,
    rad,
    ucb_reward,
    ucb_reward_all,
)


def make_stats(reward_means, cost_means, counts, null_index):
    reward_means = np.asarray(reward_means, dtype=float)
    cost_means = np.atleast_2d(np.asarray(cost_means, dtype=float).T).T
    stats = ArmStatistics(len(reward_means), cost_means.shape[1], null_index)
    stats.counts = np.asarray(counts, dtype=np.int64)
    stats.reward_sum = reward_means * stats.counts_plus()
    stats.cost_sum = cost_means * stats.counts_plus()[:, None]
    return stats


class TestRad:
    def test_zero_variance_leaves_additive_term(self):
        for n in (1, 7, 1000):
            for delta in (0.5, 0.01, 1e-4):
                assert rad(0.0, n, delta) == pytest.approx(4 * math.log(1 / delta) / n, rel=1e-12)

    def test_unit_case(self):
        assert rad(1.0, 1, math.exp(-1)) == pytest.approx(math.sqrt(2) + 4, abs=1e-12)

    def test_hand_value(self):
        assert rad(0.25, 400, 0.01) == pytest.approx(0.121924, abs=1e-6)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            rad(-0.1, 10, 0.1)
        with pytest.raises(ValueError):
            rad(0.5, 0, 0.1)
        with pytest.raises(ValueError):
            rad(0.5, 10, 0.0)
        with pytest.raises(ValueError):
            rad(0.5, 10, 1.0)

    def test_shrinks_in_n_and_grows_in_confidence(self):
        values = [rad(0.3, n, 0.05) for n in (1, 2, 5, 20, 100, 5000)]
        assert all(a > b for a, b in zip(values, values[1:]))
        by_delta = [rad(0.3, 50, d) for d in (0.5, 0.1, 0.01, 1e-5)]
        assert all(a < b for a, b in zip(by_delta, by_delta[1:]))


class TestConfidenceParams:
    def test_validation(self):
        ConfidenceParams(0.05)
        with pytest.raises(ValueError):
            ConfidenceParams(0.0)
        with pytest.raises(ValueError):
            ConfidenceParams(1.0)


class TestUcbLcb:
    def test_unpulled_arm_caps_at_one(self):
        stats = make_stats([0, 0, 0], [[0], [0], [0]], [0, 0, 0], null_index=2)
        # rad(0, 1, delta) = 4 log(1/delta) >= 1 whenever delta <= e^{-1/4}
        assert ucb_reward(stats, 0, 0.05) == 1.0

    def test_hand_ucb(self):
        stats = make_stats([0.5, 0], [[0.2], [0]], [100, 0], null_index=1)
        assert ucb_reward(stats, 0, 0.01) == pytest.approx(0.898813, abs=1e-5)

    def test_null_action_pinned(self):
        stats = make_stats([0.5, 0.9], [[0.2], [0.0]], [100, 50], null_index=1)
        assert ucb_reward(stats, 1, 0.01) == 0.0
        assert lcb_cost(stats, 1, 0, 0.01) == 0.0

    def test_null_resource_is_zero_for_all_arms(self):
        stats = make_stats([0.5, 0.9, 0], [[0.9], [0.8], [0]], [400, 400, 7], null_index=2)
        d = stats.num_resources
        for a in range(3):
            assert lcb_cost(stats, a, d, 0.01) == 0.0

    def test_unpulled_arm_floors_at_zero(self):
        stats = make_stats([0, 0], [[0], [0]], [0, 0], null_index=1)
        assert lcb_cost(stats, 0, 0, 0.05) == 0.0

    def test_hand_lcb(self):
        stats = make_stats([0.1, 0], [[0.9], [0]], [400, 0], null_index=1)
        expected = 0.9 - rad(0.9, 400, 0.01)
        assert lcb_cost(stats, 0, 0, 0.01) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(0.709992, abs=1e-5)

    def test_bounds_stay_in_unit_interval(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            k = rng.integers(2, 6)
            stats = make_stats(
                rng.uniform(0, 1, k),
                rng.uniform(0, 1, (k, 2)),
                rng.integers(0, 50, k),
                null_index=int(k - 1),
            )
            delta = float(rng.uniform(0.001, 0.5))
            for a in range(k):
                assert 0.0 <= ucb_reward(stats, a, delta) <= 1.0
                for i in range(3):
                    assert 0.0 <= lcb_cost(stats, a, i, delta) <= 1.0

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(11)
        stats = make_stats(
            rng.uniform(0, 1, 5), rng.uniform(0, 1, (5, 3)), rng.integers(0, 30, 5), 4
        )
        delta = 0.02
        ucb_vec = ucb_reward_all(stats, delta)
        lcb_vec = lcb_cost_all(stats, delta)
        for a in range(5):
            assert ucb_vec[a] == pytest.approx(ucb_reward(stats, a, delta), abs=1e-12)
            for i in range(3):
                assert lcb_vec[a, i] == pytest.approx(lcb_cost(stats, a, i, delta), abs=1e-12)


class TestCoverage:
    def test_monte_carlo_violation_rate(self):
        # Bernoulli samples stress the radius hardest; each (mean, n) cell
        # contributes independent checks of both the upper and lower bound.
        rng = np.random.default_rng(2024)
        delta = 0.05
        trials = 0
        violations = 0
        for mean in (0.1, 0.3, 0.5, 0.7, 0.9):
            for n in (1, 3, 10, 30, 100):
                reps = 500
                draws = rng.binomial(n, mean, size=reps) / n
                radius = np.array([rad(v, n, delta) for v in draws])
                upper = np.minimum(draws + radius, 1.0)
                lower = np.maximum(draws - radius, 0.0)
                violations += int(np.sum(upper < mean)) + int(np.sum(lower > mean))
                trials += 2 * reps
        assert trials >= 10_000
        bound = 3 * delta + 4 * math.sqrt(3 * delta * (1 - 3 * delta) / trials)
        assert violations / trials <= bound
