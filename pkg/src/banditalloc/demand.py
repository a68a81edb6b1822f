"""Demand-sequence generators and the per-unit outcome sampler.

Two demand processes are provided: a linear trend with bounded uniform noise
and a first-order autoregression with Gaussian noise.  Per-unit outcomes are
drawn coordinatewise from normals truncated to [0, 1] whose location is
calibrated (by bisection) so the post-truncation mean hits the configured
action means exactly.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

logger = logging.getLogger(__name__)


@dataclass
class LinearDemandParams:
    """q_t = alpha + beta*t + xi_t with xi_t ~ Uniform[-half_width, half_width]."""

    alpha: float
    beta: float
    half_width: float = 0.0

    def __post_init__(self) -> None:
        if self.half_width < 0:
            raise ValueError("noise half-width must be non-negative")
        if self.alpha <= self.half_width:
            raise ValueError("alpha must exceed the noise half-width")
        if self.beta <= 0:
            raise ValueError("beta must be positive")


@dataclass
class Ar1DemandParams:
    """q_t = alpha + beta*q_{t-1} + xi_t with xi_t ~ Normal(0, sigma^2).

    `q_init` seeds the recursion (it is the value just before the first
    generated round, so q_1 = alpha + beta*q_init + xi_1).
    """

    alpha: float
    beta: float
    sigma: float
    q_init: float

    def __post_init__(self) -> None:
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if abs(self.beta) >= 1:
            raise ValueError("|beta| must be below 1")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if self.q_init < 0:
            raise ValueError("q_init must be non-negative")
        # Positivity of the generated sequence is only high-probability;
        # warn when the stationary level sits close to the noise scale.
        if self.sigma > 0:
            margin = self.sigma * math.sqrt(2.0 * math.log(2000.0) / (1.0 - self.beta**2))
            level = min(self.q_init, self.alpha / (1.0 - self.beta)) if self.q_init > 0 else self.alpha / (
                1.0 - self.beta
            )
            if level <= margin:
                logger.warning(
                    "AR(1) demand may go non-positive: level %.3f vs noise margin %.3f",
                    level,
                    margin,
                )

    @property
    def stationary_mean(self) -> float:
        return self.alpha / (1.0 - self.beta)


@dataclass
class FixedDemand:
    """An explicit demand sequence (used by the hand-built benchmark instances)."""

    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        if np.any(self.values < 0):
            raise ValueError("demand values must be non-negative")


DemandModel = LinearDemandParams | Ar1DemandParams | FixedDemand


def gen_linear(params: LinearDemandParams, horizon: int, rng: np.random.Generator) -> np.ndarray:
    """Sample a linear-trend demand sequence of length `horizon`."""
    t = np.arange(1, horizon + 1, dtype=float)
    noise = rng.uniform(-params.half_width, params.half_width, size=horizon)
    q = params.alpha + params.beta * t + noise
    if params.alpha + params.beta - params.half_width <= 0:
        raise ValueError("parameters admit non-positive demand")
    return q


def gen_ar1(params: Ar1DemandParams, horizon: int, rng: np.random.Generator) -> np.ndarray:
    """Sample an AR(1) demand sequence; negative values are floored at zero."""
    noise = rng.normal(0.0, params.sigma, size=horizon) if params.sigma > 0 else np.zeros(horizon)
    q = np.empty(horizon)
    prev = params.q_init
    floored = 0
    for t in range(horizon):
        value = params.alpha + params.beta * prev + noise[t]
        if value < 0:
            value = 0.0
            floored += 1
        q[t] = value
        prev = value
    if floored:
        logger.warning("AR(1) demand floored %d negative draws at zero", floored)
    return q


def realize_demand(model: DemandModel, horizon: int, rng: np.random.Generator) -> np.ndarray:
    if isinstance(model, LinearDemandParams):
        return gen_linear(model, horizon, rng)
    if isinstance(model, Ar1DemandParams):
        return gen_ar1(model, horizon, rng)
    if isinstance(model, FixedDemand):
        if len(model.values) != horizon:
            raise ValueError("fixed demand sequence length does not match the horizon")
        return model.values.copy()
    raise TypeError(f"unknown demand model {type(model)!r}")


def _truncnorm_mean(loc: float, sigma: float) -> float:
    a = (0.0 - loc) / sigma
    b = (1.0 - loc) / sigma
    return float(stats.truncnorm.mean(a, b, loc=loc, scale=sigma))


def calibrate_truncnorm_location(target_mean: float, sigma: float = 1.0) -> float:
    """Location parameter whose [0,1]-truncated normal mean equals `target_mean`."""
    if not 0.0 < target_mean < 1.0:
        raise ValueError(f"target mean must lie strictly in (0, 1), got {target_mean}")
    lo, hi = -60.0, 61.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _truncnorm_mean(mid, sigma) < target_mean:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass
class OutcomeSampler:
    """Per-action sampler of (reward, consumptions) on [0,1]^(d+1).

    Coordinates with mean exactly 0 or 1 are deterministic; all other
    coordinates use a truncated normal whose post-truncation mean matches the
    configured action means.  The null action returns all zeros.
    """

    mean_reward: np.ndarray
    mean_cost: np.ndarray
    null_index: int
    sigma: float = 1.0
    deterministic: bool = False
    _locations: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.mean_reward = np.asarray(self.mean_reward, dtype=float)
        self.mean_cost = np.asarray(self.mean_cost, dtype=float)
        means = self._target_matrix()
        if np.any(means < 0) or np.any(means > 1):
            raise ValueError("outcome means must lie in [0, 1]")
        self._locations = np.full_like(means, np.nan)
        if not self.deterministic:
            for idx, m in np.ndenumerate(means):
                if idx[0] == self.null_index or m in (0.0, 1.0):
                    continue
                self._locations[idx] = calibrate_truncnorm_location(m, self.sigma)

    def _target_matrix(self) -> np.ndarray:
        return np.column_stack([self.mean_reward, self.mean_cost])

    def sample(self, action: int, rng: np.random.Generator) -> np.ndarray:
        """One (reward, cost_1..cost_d) draw for `action`."""
        return self.sample_horizon(action, 1, rng)[0]

    def sample_horizon(self, action: int, horizon: int, rng: np.random.Generator) -> np.ndarray:
        """Draws for `horizon` rounds of `action`, shape (horizon, d+1)."""
        means = self._target_matrix()[action]
        out = np.tile(means, (horizon, 1))
        if action == self.null_index or self.deterministic:
            if action == self.null_index:
                out[:] = 0.0
            return out
        for coord, m in enumerate(means):
            if m in (0.0, 1.0):
                continue
            loc = self._locations[action, coord]
            a = (0.0 - loc) / self.sigma
            b = (1.0 - loc) / self.sigma
            out[:, coord] = stats.truncnorm.rvs(
                a, b, loc=loc, scale=self.sigma, size=horizon, random_state=rng
            )
        return out
