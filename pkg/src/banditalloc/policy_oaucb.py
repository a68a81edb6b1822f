"""Prediction-aware optimistic policy for budgeted allocation.

Each round the policy scores every action by an optimistic reward estimate
minus a prediction-scaled opportunity cost: the dual weights value the
resources, and the predicted total demand over the budget converts per-unit
consumption into forgone future reward.  After feedback, the dual weights are
advanced by the scale-free hedge on a gradient that mixes the realized demand
with the prediction, so resources that are being consumed faster than budget
pace gain weight.
"""

from __future__ import annotations

import numpy as np

from .confidence import ArmStatistics, lcb_cost_all, ucb_reward_all
from .hedge import HedgeState, hedge_step
from .model import EnvironmentSpec, RoundFeedback


def composite_scores(
    ucb_r: np.ndarray,
    lcb_c: np.ndarray,
    dual_weights: np.ndarray,
    prediction: float,
    budget: float,
) -> np.ndarray:
    """Optimistic reward minus prediction-scaled opportunity cost, per action.

    Only the real-resource coordinates of the dual weights enter: the null
    resource is consumed by nothing, so its lower bound is identically zero.
    """
    pressure = prediction / budget
    return ucb_r - pressure * (lcb_c @ dual_weights[:-1])


class OaUcbPolicy:
    """Optimistic allocation with online-advice-scaled dual updates."""

    name = "oaucb"

    def __init__(self, prediction_floor: float = 1e-9):
        self.prediction_floor = prediction_floor

    def reset(self, spec: EnvironmentSpec, delta: float) -> None:
        self.spec = spec
        self.delta = delta
        self.budget = spec.budget
        self.stats = ArmStatistics(spec.num_actions, spec.num_resources, spec.null_index)
        self.hedge = HedgeState(dims=spec.num_resources + 1)
        self.remaining = np.full(spec.num_resources, spec.budget)
        self._beta = np.ones(spec.num_resources + 1)
        self._beta[-1] = 0.0
        self._max_q_seen = 0.0
        self._lcb_selected: np.ndarray | None = None

    @property
    def dual_weights(self) -> np.ndarray:
        return self.hedge.weights

    def _effective_prediction(self, prediction: float) -> float:
        return max(prediction, self._max_q_seen, self.prediction_floor)

    def select(self, t: int, prediction: float) -> int:
        qhat = self._effective_prediction(prediction)
        ucb_r = ucb_reward_all(self.stats, self.delta)
        lcb_c = lcb_cost_all(self.stats, self.delta)
        scores = composite_scores(ucb_r, lcb_c, self.hedge.weights, qhat, self.budget)
        self._lcb_selected = lcb_c
        return int(np.argmax(scores))

    def observe(self, feedback: RoundFeedback, action: int) -> None:
        qhat = self._effective_prediction(feedback.prediction)
        # The gradient uses the same bounds the selection saw, i.e. the
        # lower bounds computed before this round's statistics update.
        lcb_c = self._lcb_selected
        if lcb_c is None:
            lcb_c = lcb_cost_all(self.stats, self.delta)
        lcb_vec = np.append(lcb_c[action], 0.0)
        scale = feedback.demand * qhat / self.budget
        gradient = scale * ((self.budget / qhat) * self._beta - lcb_vec)
        self.stats.update(action, feedback.unit_reward, feedback.unit_cost)
        hedge_step(self.hedge, gradient)
        self.remaining -= feedback.demand * feedback.unit_cost
        self._max_q_seen = max(self._max_q_seen, feedback.demand)
        self._lcb_selected = None
