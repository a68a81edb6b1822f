"""Confidence radius and per-arm UCB/LCB estimators.

The radius function combines a variance-scaled square-root term with an
additive 1/N term, which keeps the bound valid down to a single sample for
outcomes supported in [0, 1].  Reward estimates are inflated into upper
confidence bounds and consumption estimates deflated into lower confidence
bounds; the null action's bounds are pinned to its known zero outcomes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def rad(v: float, n: int, delta: float) -> float:
    """Confidence radius sqrt(2*v*log(1/delta)/n) + 4*log(1/delta)/n."""
    if v < 0:
        raise ValueError(f"v must be non-negative, got {v}")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    log_term = math.log(1.0 / delta)
    return math.sqrt(2.0 * v * log_term / n) + 4.0 * log_term / n


@dataclass
class ConfidenceParams:
    """Failure probability per individual confidence check."""

    delta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")


@dataclass
class ArmStatistics:
    """Pull counts and running per-unit outcome sums for every action."""

    num_actions: int
    num_resources: int
    null_index: int
    counts: np.ndarray = field(init=False)
    reward_sum: np.ndarray = field(init=False)
    cost_sum: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.counts = np.zeros(self.num_actions, dtype=np.int64)
        self.reward_sum = np.zeros(self.num_actions)
        self.cost_sum = np.zeros((self.num_actions, self.num_resources))

    def update(self, action: int, unit_reward: float, unit_cost: np.ndarray) -> None:
        self.counts[action] += 1
        self.reward_sum[action] += unit_reward
        self.cost_sum[action] += unit_cost

    def counts_plus(self) -> np.ndarray:
        return np.maximum(self.counts, 1)

    def mean_reward(self) -> np.ndarray:
        return self.reward_sum / self.counts_plus()

    def mean_cost(self) -> np.ndarray:
        return self.cost_sum / self.counts_plus()[:, None]


def ucb_reward(stats: ArmStatistics, action: int, delta: float) -> float:
    """Optimistic per-unit reward estimate, capped at 1; exactly 0 for the null action."""
    if action == stats.null_index:
        return 0.0
    n = max(int(stats.counts[action]), 1)
    mean = min(max(stats.reward_sum[action] / n, 0.0), 1.0)
    return min(mean + rad(mean, n, delta), 1.0)


def lcb_cost(stats: ArmStatistics, action: int, resource: int, delta: float) -> float:
    """Pessimistic per-unit consumption estimate, floored at 0.

    `resource` ranges over 0..d where index d is the phantom null resource,
    whose consumption is 0 for every action.
    """
    if resource == stats.num_resources:
        return 0.0
    if action == stats.null_index:
        return 0.0
    n = max(int(stats.counts[action]), 1)
    mean = min(max(stats.cost_sum[action, resource] / n, 0.0), 1.0)
    return max(mean - rad(mean, n, delta), 0.0)


def ucb_reward_all(stats: ArmStatistics, delta: float) -> np.ndarray:
    """Vectorized ucb_reward over all actions."""
    n = stats.counts_plus()
    # Window subtraction can leave sample means epsilon outside [0, 1].
    mean = np.clip(stats.reward_sum / n, 0.0, 1.0)
    log_term = -math.log(delta)
    radius = np.sqrt(2.0 * mean * log_term / n) + 4.0 * log_term / n
    out = np.minimum(mean + radius, 1.0)
    out[stats.null_index] = 0.0
    return out


def lcb_cost_all(stats: ArmStatistics, delta: float) -> np.ndarray:
    """Vectorized lcb_cost over all (action, real resource) pairs, shape (K, d)."""
    n = stats.counts_plus()[:, None]
    mean = np.clip(stats.cost_sum / n, 0.0, 1.0)
    log_term = -math.log(delta)
    radius = np.sqrt(2.0 * mean * log_term / n) + 4.0 * log_term / n
    out = np.maximum(mean - radius, 0.0)
    out[stats.null_index, :] = 0.0
    return out
