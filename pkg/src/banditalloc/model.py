"""Core domain types and the round-by-round simulation loop.

A run walks the horizon delivering, in order: the total-demand prediction,
the policy's action, and the sampled feedback.  The first round whose
cumulative consumption pushes any resource over budget is the stopping round:
it is still played and observed, but its reward is excluded and the null
action is forced for the remainder of the horizon.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .demand import DemandModel, OutcomeSampler, realize_demand
from .rng import substream


@dataclass
class EnvironmentSpec:
    """Ground truth a run is judged against."""

    num_actions: int
    num_resources: int
    mean_reward: np.ndarray
    mean_cost: np.ndarray
    normalized_budget: float
    horizon: int
    demand_model: DemandModel
    null_index: int
    outcome_sigma: float = 1.0
    deterministic_outcomes: bool = False

    def __post_init__(self) -> None:
        self.mean_reward = np.asarray(self.mean_reward, dtype=float)
        self.mean_cost = np.asarray(self.mean_cost, dtype=float)
        if self.mean_cost.ndim == 1:
            self.mean_cost = self.mean_cost[:, None]
        if self.num_actions < 1 or self.num_resources < 1:
            raise ValueError("need at least one action and one resource")
        if self.mean_reward.shape != (self.num_actions,):
            raise ValueError("mean_reward has the wrong shape")
        if self.mean_cost.shape != (self.num_actions, self.num_resources):
            raise ValueError("mean_cost has the wrong shape")
        if np.any(self.mean_reward < 0) or np.any(self.mean_reward > 1):
            raise ValueError("mean rewards must lie in [0, 1]")
        if np.any(self.mean_cost < 0) or np.any(self.mean_cost > 1):
            raise ValueError("mean costs must lie in [0, 1]")
        if not 0 <= self.null_index < self.num_actions:
            raise ValueError("spec must declare a null action index")
        if self.mean_reward[self.null_index] != 0 or np.any(self.mean_cost[self.null_index] != 0):
            raise ValueError("the null action must have zero reward and zero cost")
        if self.normalized_budget <= 0:
            raise ValueError("normalized budget must be positive")
        if self.horizon < 1:
            raise ValueError("horizon must be at least one round")

    @property
    def budget(self) -> float:
        return self.normalized_budget * self.horizon

    def outcome_sampler(self) -> OutcomeSampler:
        return OutcomeSampler(
            mean_reward=self.mean_reward,
            mean_cost=self.mean_cost,
            null_index=self.null_index,
            sigma=self.outcome_sigma,
            deterministic=self.deterministic_outcomes,
        )


@dataclass
class RoundFeedback:
    """What the decision maker sees at the end of one round."""

    t: int
    demand: float
    unit_reward: float
    unit_cost: np.ndarray
    prediction: float


@dataclass
class TrajectoryLog:
    """Complete record of one run."""

    actions: np.ndarray
    demand: np.ndarray
    unit_rewards: np.ndarray
    unit_costs: np.ndarray
    rewards: np.ndarray
    consumptions: np.ndarray
    predictions: np.ndarray
    dual_weights: np.ndarray
    tau: int
    total_reward: float
    realized_total_demand: float

    @property
    def horizon(self) -> int:
        return len(self.demand)


class Policy(Protocol):
    """Sequential decision rule; deterministic given its inputs and RNG stream."""

    def reset(self, spec: EnvironmentSpec, delta: float) -> None: ...

    def select(self, t: int, prediction: float) -> int: ...

    def observe(self, feedback: RoundFeedback, action: int) -> None: ...


class PredictionOracle(Protocol):
    """Produces a total-demand prediction from the observed demand prefix."""

    def reset(self) -> None: ...

    def predict(self, prefix: np.ndarray, t: int, horizon: int) -> float: ...


def sample_outcome_table(
    spec: EnvironmentSpec, seed: int, rep: int = 0
) -> np.ndarray:
    """Pre-draw per-unit outcomes for every (round, action), shape (T, K, d+1).

    Indexing outcomes by (round, action) rather than by pull order lets
    different policies replay the identical randomness, so cross-policy
    comparisons are paired.
    """
    sampler = spec.outcome_sampler()
    table = np.zeros((spec.horizon, spec.num_actions, spec.num_resources + 1))
    for action in range(spec.num_actions):
        rng = substream(seed, f"outcomes:{action}", rep)
        table[:, action, :] = sampler.sample_horizon(action, spec.horizon, rng)
    return table


def simulate_run(
    spec: EnvironmentSpec,
    policy: Policy,
    oracle: PredictionOracle,
    seed: int,
    delta: float | None = None,
    demand: np.ndarray | None = None,
    outcomes: np.ndarray | None = None,
    rep: int = 0,
) -> TrajectoryLog:
    """Execute one full run of `policy` against `spec`.

    `demand` and `outcomes` may be supplied by a harness to share randomness
    across policies; otherwise they are derived from `seed`.
    """
    horizon = spec.horizon
    budget = spec.budget
    if delta is None:
        delta = 1.0 / horizon
    if demand is None:
        demand = realize_demand(spec.demand_model, horizon, substream(seed, "demand", rep))
    demand = np.asarray(demand, dtype=float)
    if len(demand) != horizon:
        raise ValueError("demand sequence length does not match the horizon")
    if outcomes is None:
        outcomes = sample_outcome_table(spec, seed, rep)

    policy.reset(spec, delta)
    oracle.reset()

    d = spec.num_resources
    actions = np.full(horizon, spec.null_index, dtype=np.int64)
    unit_rewards = np.zeros(horizon)
    unit_costs = np.zeros((horizon, d))
    rewards = np.zeros(horizon)
    consumptions = np.zeros((horizon, d))
    predictions = np.zeros(horizon)
    dual_weights = np.zeros((horizon, d + 1))
    spent = np.zeros(d)
    tau = horizon + 1
    mu = np.full(d + 1, 1.0 / (d + 1))

    for t in range(1, horizon + 1):
        if t >= tau:
            dual_weights[t - 1] = mu
            continue
        prediction = oracle.predict(demand[: t - 1], t, horizon)
        action = policy.select(t, prediction)
        if not 0 <= action < spec.num_actions:
            raise ValueError(f"policy selected an invalid action {action}")
        q_t = demand[t - 1]
        unit = outcomes[t - 1, action]
        realized_cost = q_t * unit[1:]
        spent += realized_cost

        actions[t - 1] = action
        predictions[t - 1] = prediction
        unit_rewards[t - 1] = unit[0]
        unit_costs[t - 1] = unit[1:]
        rewards[t - 1] = q_t * unit[0]
        consumptions[t - 1] = realized_cost
        mu = getattr(policy, "dual_weights", mu)
        dual_weights[t - 1] = mu

        feedback = RoundFeedback(
            t=t,
            demand=q_t,
            unit_reward=unit[0],
            unit_cost=unit[1:].copy(),
            prediction=prediction,
        )
        policy.observe(feedback, action)

        if np.any(spent > budget):
            tau = t

    total_reward = float(rewards[: tau - 1].sum())
    return TrajectoryLog(
        actions=actions,
        demand=demand,
        unit_rewards=unit_rewards,
        unit_costs=unit_costs,
        rewards=rewards,
        consumptions=consumptions,
        predictions=predictions,
        dual_weights=dual_weights,
        tau=tau,
        total_reward=total_reward,
        realized_total_demand=float(demand.sum()),
    )


def compute_metrics(log: TrajectoryLog, opt_lp_value: float) -> tuple[float, float]:
    """(regret, competitive ratio) of a run against the fluid benchmark."""
    if opt_lp_value <= 0:
        raise ValueError(f"benchmark value must be positive, got {opt_lp_value}")
    regret = opt_lp_value - log.total_reward
    ratio = log.total_reward / opt_lp_value
    return regret, ratio


class ScriptedPolicy:
    """Replays a fixed action sequence; used for hand-built checks."""

    def __init__(self, actions: list[int] | np.ndarray):
        self._actions = list(actions)

    def reset(self, spec: EnvironmentSpec, delta: float) -> None:
        self._cursor = 0
        self._null = spec.null_index

    def select(self, t: int, prediction: float) -> int:
        if self._cursor < len(self._actions):
            action = self._actions[self._cursor]
        else:
            action = self._null
        self._cursor += 1
        return action

    def observe(self, feedback: RoundFeedback, action: int) -> None:
        pass


class NullPolicy(ScriptedPolicy):
    """Always plays the null action."""

    def __init__(self) -> None:
        super().__init__([])

