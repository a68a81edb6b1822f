"""Hand-built deterministic benchmark instances.

Two families: a pair of two-action instances that differ only in their demand
sequences (one front-loaded, one flat), and a parametric pair built around a
given prediction and error margin whose total demands straddle the prediction.
Both have closed-form optimal values, which makes them exact test targets for
the LP benchmark and the simulator.
"""

from __future__ import annotations

import numpy as np

from .demand import FixedDemand
from .model import EnvironmentSpec


def fixture_demand_shift(which: int, horizon: int) -> tuple[EnvironmentSpec, np.ndarray]:
    """Two deterministic actions r=(1, 3/4), c=(1, 1/2), budget T/2.

    Variant 1 demands 1 for the first half and 1/16 afterwards; variant 2
    demands 1 throughout.
    """
    if which not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    if horizon % 2 != 0 or horizon < 2:
        raise ValueError("horizon must be a positive even integer")
    if which == 1:
        demand = np.concatenate(
            [np.ones(horizon // 2), np.full(horizon // 2, 1.0 / 16.0)]
        )
    else:
        demand = np.ones(horizon)
    spec = EnvironmentSpec(
        num_actions=3,
        num_resources=1,
        mean_reward=np.array([1.0, 0.75, 0.0]),
        mean_cost=np.array([[1.0], [0.5], [0.0]]),
        normalized_budget=0.5,
        horizon=horizon,
        demand_model=FixedDemand(demand),
        null_index=2,
        deterministic_outcomes=True,
    )
    return spec, demand


def fixture_prediction_pair(
    q_prefix: np.ndarray,
    prediction: float,
    epsilon: float,
    horizon: int,
    t0: int,
    demand_bounds: tuple[float, float] | None = None,
) -> tuple[tuple[EnvironmentSpec, np.ndarray], tuple[EnvironmentSpec, np.ndarray]]:
    """Two instances sharing a prefix whose totals are prediction -/+ epsilon.

    Action costs are chosen so that the first instance is optimally served by
    the expensive action and the second by the cheap one; the budget equals
    the smaller total.  `demand_bounds` is the demand range the tails must
    stay inside (defaults to the prefix range widened to admit the tails);
    margins infeasible for those bounds are rejected.
    """
    q_prefix = np.asarray(q_prefix, dtype=float)
    if t0 != len(q_prefix):
        raise ValueError("t0 must equal the prefix length")
    if not 1 <= t0 < horizon:
        raise ValueError("t0 must lie strictly inside the horizon")
    prefix_sum = float(q_prefix.sum())
    tail_len = horizon - t0
    if demand_bounds is not None:
        q_lo, q_hi = demand_bounds
        limit = min(
            prediction - prefix_sum - q_lo * tail_len,
            q_hi * tail_len - (prediction - prefix_sum),
            prediction / 2.0,
        )
    else:
        limit = min(prediction - prefix_sum, prediction / 2.0)
    if not 0 < epsilon <= limit:
        raise ValueError(f"epsilon {epsilon} violates the feasibility bound {limit}")

    cost_ratio = (prediction - epsilon) / (prediction + epsilon)
    budget = prediction - epsilon

    def build(total: float) -> tuple[EnvironmentSpec, np.ndarray]:
        tail_value = (total - prefix_sum) / tail_len
        demand = np.concatenate([q_prefix, np.full(tail_len, tail_value)])
        spec = EnvironmentSpec(
            num_actions=3,
            num_resources=1,
            mean_reward=np.array([1.0, (1.0 + cost_ratio) / 2.0, 0.0]),
            mean_cost=np.array([[1.0], [cost_ratio], [0.0]]),
            normalized_budget=budget / horizon,
            horizon=horizon,
            demand_model=FixedDemand(demand),
            null_index=2,
            deterministic_outcomes=True,
        )
        return spec, demand

    return build(prediction - epsilon), build(prediction + epsilon)
