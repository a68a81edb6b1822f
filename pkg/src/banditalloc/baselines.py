"""Comparison policies for the benchmarking tables.

These are reconstructions: the literature fixes their shapes (a primal-dual
ratio rule, a sliding-window variant, and a budget-blind optimistic rule) but
not every constant, so all free parameters are exposed and logged through the
experiment config rather than hard-coded.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np

from .confidence import ArmStatistics, lcb_cost_all, ucb_reward_all
from .hedge import HedgeState, hedge_step
from .model import EnvironmentSpec, RoundFeedback
from .policy_oaucb import composite_scores

_DENOM_FLOOR = 1e-9


class PrimalDualBwkPolicy:
    """Ratio rule: optimistic reward per unit of weight-priced pessimistic cost.

    Resource weights grow multiplicatively with the accumulated pessimistic
    consumption of the chosen actions, so scarce resources price themselves up.
    """

    name = "pdb"

    def __init__(self, eps_mw: float | None = None):
        self.eps_mw_config = eps_mw

    def reset(self, spec: EnvironmentSpec, delta: float) -> None:
        self.spec = spec
        self.delta = delta
        self.stats = ArmStatistics(spec.num_actions, spec.num_resources, spec.null_index)
        if self.eps_mw_config is not None:
            self.eps_mw = self.eps_mw_config
        else:
            self.eps_mw = math.sqrt(math.log(spec.num_resources) / spec.budget)
        self.log_weights = np.zeros(spec.num_resources)
        self._round_robin = [
            a for a in range(spec.num_actions) if a != spec.null_index
        ]

    def select(self, t: int, prediction: float) -> int:
        if self._round_robin:
            return self._round_robin.pop(0)
        ucb_r = ucb_reward_all(self.stats, self.delta)
        lcb_c = lcb_cost_all(self.stats, self.delta)
        shifted = self.log_weights - self.log_weights.max()
        weights = np.exp(shifted)
        weights /= weights.sum()
        priced_cost = np.maximum(lcb_c @ weights, _DENOM_FLOOR)
        ratio = ucb_r / priced_cost
        ratio[self.spec.null_index] = 0.0
        return int(np.argmax(ratio))

    def observe(self, feedback: RoundFeedback, action: int) -> None:
        lcb_c = lcb_cost_all(self.stats, self.delta)
        self.log_weights += math.log1p(self.eps_mw) * lcb_c[action]
        self.stats.update(action, feedback.unit_reward, feedback.unit_cost)


class WindowedStatistics:
    """Arm statistics restricted to the most recent `window` rounds."""

    def __init__(self, num_actions: int, num_resources: int, null_index: int, window: int):
        self.window = window
        self.stats = ArmStatistics(num_actions, num_resources, null_index)
        self._buffer: deque[tuple[int, float, np.ndarray]] = deque()

    def update(self, action: int, unit_reward: float, unit_cost: np.ndarray) -> None:
        self.stats.update(action, unit_reward, unit_cost)
        self._buffer.append((action, unit_reward, unit_cost.copy()))
        while len(self._buffer) > self.window:
            old_action, old_reward, old_cost = self._buffer.popleft()
            self.stats.counts[old_action] -= 1
            self.stats.reward_sum[old_action] -= old_reward
            self.stats.cost_sum[old_action] -= old_cost


class SlidingWindowUcbPolicy:
    """The composite-score rule run on windowed statistics and a naive forecast.

    The total-demand prediction is the running demand mean scaled to the
    horizon, so the policy never consumes an external oracle.
    """

    name = "sw-ucb"

    def __init__(self, window: int | None = None, window_scale: float = 4.0):
        self.window_config = window
        self.window_scale = window_scale

    def reset(self, spec: EnvironmentSpec, delta: float) -> None:
        self.spec = spec
        self.delta = delta
        self.budget = spec.budget
        if self.window_config is not None:
            self.window = self.window_config
        else:
            self.window = max(1, int(self.window_scale * math.ceil(math.sqrt(spec.horizon))))
        self.windowed = WindowedStatistics(
            spec.num_actions, spec.num_resources, spec.null_index, self.window
        )
        self.hedge = HedgeState(dims=spec.num_resources + 1)
        self._beta = np.ones(spec.num_resources + 1)
        self._beta[-1] = 0.0
        self._q_sum = 0.0
        self._q_count = 0
        self._max_q_seen = 0.0
        self._lcb_selected: np.ndarray | None = None

    @property
    def dual_weights(self) -> np.ndarray:
        return self.hedge.weights

    def _own_prediction(self) -> float:
        if self._q_count == 0:
            return 0.0
        return (self._q_sum / self._q_count) * self.spec.horizon

    def select(self, t: int, prediction: float) -> int:
        qhat = max(self._own_prediction(), self._max_q_seen, 1e-9)
        ucb_r = ucb_reward_all(self.windowed.stats, self.delta)
        lcb_c = lcb_cost_all(self.windowed.stats, self.delta)
        scores = composite_scores(ucb_r, lcb_c, self.hedge.weights, qhat, self.budget)
        self._lcb_selected = lcb_c
        return int(np.argmax(scores))

    def observe(self, feedback: RoundFeedback, action: int) -> None:
        qhat = max(self._own_prediction(), self._max_q_seen, 1e-9)
        lcb_c = self._lcb_selected
        if lcb_c is None:
            lcb_c = lcb_cost_all(self.windowed.stats, self.delta)
        lcb_vec = np.append(lcb_c[action], 0.0)
        scale = feedback.demand * qhat / self.budget
        gradient = scale * ((self.budget / qhat) * self._beta - lcb_vec)
        self.windowed.update(action, feedback.unit_reward, feedback.unit_cost)
        hedge_step(self.hedge, gradient)
        self._q_sum += feedback.demand
        self._q_count += 1
        self._max_q_seen = max(self._max_q_seen, feedback.demand)
        self._lcb_selected = None


class GreedyUcbPolicy:
    """Budget-blind control: always the highest optimistic reward."""

    name = "greedy"

    def reset(self, spec: EnvironmentSpec, delta: float) -> None:
        self.spec = spec
        self.delta = delta
        self.stats = ArmStatistics(spec.num_actions, spec.num_resources, spec.null_index)

    def select(self, t: int, prediction: float) -> int:
        return int(np.argmax(ucb_reward_all(self.stats, self.delta)))

    def observe(self, feedback: RoundFeedback, action: int) -> None:
        self.stats.update(action, feedback.unit_reward, feedback.unit_cost)
