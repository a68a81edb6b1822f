"""Scale-free exponential-weights learner over the probability simplex.

The learning rate is not tuned ahead of time: each step's mixability gap is
accumulated into eta, so the algorithm adapts to the observed gradient scale.
While eta is still zero the weights follow the leader (uniform over the
argmax of the accumulated negated gradients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class HedgeState:
    """Weights plus the accumulators driving the adaptive learning rate."""

    dims: int
    theta: np.ndarray = field(init=False)
    eta: float = field(init=False, default=0.0)
    kappa: float = field(init=False)
    weights: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        if self.dims < 1:
            raise ValueError(f"dims must be positive, got {self.dims}")
        self.theta = np.zeros(self.dims)
        self.kappa = math.sqrt(math.log(self.dims)) if self.dims > 1 else 0.0
        self.weights = np.full(self.dims, 1.0 / self.dims)


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max()
    ex = np.exp(shifted)
    return ex / ex.sum()


def _mixability_gap(state: HedgeState, g: np.ndarray) -> float:
    mu = state.weights
    if state.eta == 0.0:
        # Follow-the-leader limit: the mix-loss collapses to the best
        # gradient coordinate among the currently supported ones.
        support_min = g[mu > 0.0].min()
        return float(g @ mu - support_min)
    z = -g / state.eta
    zmax = z.max()
    mix = state.eta * (zmax + math.log(float(np.sum(mu * np.exp(z - zmax)))))
    return max(float(mix + g @ mu), 0.0)


def hedge_step(state: HedgeState, g: np.ndarray) -> float:
    """Advance the learner by one gradient; returns the mixability gap."""
    g = np.asarray(g, dtype=float)
    if g.shape != (state.dims,):
        raise ValueError(f"gradient must have shape ({state.dims},), got {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("gradient must be finite")
    if state.dims == 1:
        state.theta -= g
        return 0.0

    rho = _mixability_gap(state, g)
    state.theta = state.theta - g
    state.eta = state.eta + rho / (state.kappa**2)
    if state.eta == 0.0:
        leaders = state.theta == state.theta.max()
        state.weights = leaders / leaders.sum()
    else:
        state.weights = _softmax(state.theta / state.eta)
    return rho


def hedge_regret_bound(gradients: list[np.ndarray] | np.ndarray, dims: int) -> float:
    """Certified regret budget 2*sqrt((4 + ln m) * sum_t ||g_t||_inf^2)."""
    total = 0.0
    for g in gradients:
        total += float(np.max(np.abs(g))) ** 2
    return 2.0 * math.sqrt((4.0 + math.log(dims)) * total)
