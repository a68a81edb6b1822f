"""Network revenue management: price-vector actions over shared resources.

Each arriving customer independently buys each product with a probability
given by the choice model at the posted price vector; production consumes
resources through a fixed matrix.  The pricing policy estimates per-customer
purchase probabilities, scores each price vector by optimistic revenue minus
prediction-scaled resource opportunity cost, and updates dual weights with
the same scale-free hedge as the generic allocation policy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .confidence import rad
from .demand import DemandModel, realize_demand
from .hedge import HedgeState, hedge_step
from .lpbench import LpSolution, solve_opt_lp
from .model import TrajectoryLog
from .rng import substream


@dataclass
class ChoiceModel:
    """Per-customer purchase probabilities as a function of the price vector.

    Kinds: 'linear' (intercepts - slopes * p), 'exponential'
    (scales * exp(-rates * p)), 'logit' (scale * exp(-rates * p) normalized by
    1 + sum of exponentials), and 'table' (explicit probabilities per price
    index, for instances defined pointwise).
    """

    kind: str
    intercepts: np.ndarray | None = None
    slopes: np.ndarray | None = None
    scales: np.ndarray | None = None
    rates: np.ndarray | None = None
    logit_scale: float = 1.0
    table: np.ndarray | None = None

    def evaluate(self, price: np.ndarray, price_index: int | None = None) -> np.ndarray:
        price = np.asarray(price, dtype=float)
        if self.kind == "linear":
            lam = np.asarray(self.intercepts) - np.asarray(self.slopes) * price
        elif self.kind == "exponential":
            scales = np.ones_like(price) if self.scales is None else np.asarray(self.scales)
            lam = scales * np.exp(-np.asarray(self.rates) * price)
        elif self.kind == "logit":
            ex = np.exp(-np.asarray(self.rates) * price)
            lam = self.logit_scale * ex / (1.0 + ex.sum())
        elif self.kind == "table":
            if price_index is None:
                raise ValueError("table choice model needs the price index")
            lam = np.atleast_1d(np.asarray(self.table, dtype=float)[price_index])
        else:
            raise ValueError(f"unknown choice model kind {self.kind!r}")
        if np.any(lam < 0) or np.any(lam > 1):
            raise ValueError(f"choice probabilities {lam} fall outside [0, 1]")
        return lam


@dataclass
class NrmSpec:
    """A pricing instance: price menu, consumption matrix, and demand process."""

    num_products: int
    num_resources: int
    consumption: np.ndarray  # shape (d, J): rows are resources
    prices: np.ndarray  # shape (K, J), excluding the null price
    choice_model: ChoiceModel
    normalized_budget: float
    horizon: int
    demand_model: DemandModel

    def __post_init__(self) -> None:
        self.consumption = np.asarray(self.consumption, dtype=float)
        self.prices = np.asarray(self.prices, dtype=float)
        if self.prices.ndim == 1:
            self.prices = self.prices[:, None]
        if self.consumption.shape != (self.num_resources, self.num_products):
            raise ValueError("consumption matrix must be resources x products")
        if self.prices.shape[1] != self.num_products:
            raise ValueError("price vectors must have one entry per product")
        if np.any(self.consumption < 0):
            raise ValueError("consumption entries must be non-negative")
        if self.normalized_budget <= 0 or self.horizon < 1:
            raise ValueError("invalid budget or horizon")
        # Fail fast if any price drives the choice model outside [0, 1].
        for k in range(self.num_prices):
            self.purchase_probs(k)

    @property
    def num_prices(self) -> int:
        return len(self.prices)

    @property
    def null_index(self) -> int:
        return self.num_prices

    @property
    def num_actions(self) -> int:
        return self.num_prices + 1

    @property
    def budget(self) -> float:
        return self.normalized_budget * self.horizon

    def purchase_probs(self, price_index: int) -> np.ndarray:
        if price_index == self.null_index:
            return np.zeros(self.num_products)
        return self.choice_model.evaluate(self.prices[price_index], price_index)

    def mean_revenue(self) -> np.ndarray:
        """Expected revenue per customer for each price vector."""
        return np.array(
            [float(self.prices[k] @ self.purchase_probs(k)) for k in range(self.num_prices)]
        )

    def mean_consumption(self) -> np.ndarray:
        """Expected per-customer resource use for each price vector, shape (K, d)."""
        return np.array(
            [self.consumption @ self.purchase_probs(k) for k in range(self.num_prices)]
        )


def sample_nrm_demand(
    spec: NrmSpec, price_index: int, q_t: float, rng: np.random.Generator
) -> np.ndarray:
    """Product purchase counts for one round: Binomial(round(q_t), lambda_j)."""
    n = max(int(round(q_t)), 0)
    if price_index == spec.null_index or n == 0:
        return np.zeros(spec.num_products, dtype=np.int64)
    lam = spec.purchase_probs(price_index)
    return rng.binomial(n, lam).astype(np.int64)


def sample_purchase_table(spec: NrmSpec, seed: int, demand: np.ndarray, rep: int = 0) -> np.ndarray:
    """Pre-draw purchases for every (round, price), shape (T, K+1, J).

    As with the generic outcome table, indexing by (round, price) pairs the
    randomness across policies.
    """
    horizon = spec.horizon
    table = np.zeros((horizon, spec.num_actions, spec.num_products), dtype=np.int64)
    counts = np.maximum(np.round(demand).astype(np.int64), 0)
    for k in range(spec.num_prices):
        rng = substream(seed, f"purchases:{k}", rep)
        lam = spec.purchase_probs(k)
        for j in range(spec.num_products):
            table[:, k, j] = rng.binomial(counts, lam[j])
    return table


@dataclass
class PriceStatistics:
    """Pull counts per price and running sums of per-customer purchase rates."""

    num_prices: int
    num_products: int
    counts: np.ndarray = field(init=False)
    rate_sum: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.counts = np.zeros(self.num_prices, dtype=np.int64)
        self.rate_sum = np.zeros((self.num_prices, self.num_products))

    def update(self, price_index: int, purchases: np.ndarray, q_t: float) -> None:
        if round(q_t) == 0:
            return
        self.counts[price_index] += 1
        self.rate_sum[price_index] += np.clip(purchases / q_t, 0.0, 1.0)

    def bounds(self, delta: float) -> tuple[np.ndarray, np.ndarray]:
        """(UCB, LCB) on the purchase probabilities, both clamped to [0, 1]."""
        n = np.maximum(self.counts, 1)
        mean = self.rate_sum / n[:, None]
        log_term = -math.log(delta)
        radius = np.sqrt(2.0 * mean * log_term / n[:, None]) + 4.0 * log_term / n[:, None]
        ucb = np.clip(mean + radius, 0.0, 1.0)
        lcb = np.clip(mean - radius, 0.0, 1.0)
        return ucb, lcb


class OaUcbDpPolicy:
    """Dynamic-pricing variant of the prediction-aware optimistic policy."""

    name = "oaucb-dp"

    def __init__(self, prediction_floor: float = 1e-9):
        self.prediction_floor = prediction_floor

    def reset(self, spec: NrmSpec, delta: float) -> None:
        self.spec = spec
        self.delta = delta
        self.budget = spec.budget
        self.stats = PriceStatistics(spec.num_prices, spec.num_products)
        self.hedge = HedgeState(dims=spec.num_resources + 1)
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
        ucb, lcb = self.stats.bounds(self.delta)
        resource_lcb = lcb @ self.spec.consumption.T  # (K, d)
        revenue = np.einsum("kj,kj->k", ucb, self.spec.prices)
        mu = self.hedge.weights[:-1]
        scores = revenue - (qhat / self.budget) * (resource_lcb @ mu)
        scores = np.append(scores, 0.0)  # null price: no revenue, no cost
        self._lcb_selected = resource_lcb
        return int(np.argmax(scores))

    def observe(self, price_index: int, purchases: np.ndarray, q_t: float, prediction: float) -> None:
        qhat = self._effective_prediction(prediction)
        if self._lcb_selected is None:
            _, lcb = self.stats.bounds(self.delta)
            self._lcb_selected = lcb @ self.spec.consumption.T
        if price_index == self.spec.null_index:
            lcb_vec = np.zeros(self.spec.num_resources + 1)
        else:
            lcb_vec = np.append(self._lcb_selected[price_index], 0.0)
            self.stats.update(price_index, purchases, q_t)
        scale = q_t * qhat / self.budget
        gradient = scale * ((self.budget / qhat) * self._beta - lcb_vec)
        hedge_step(self.hedge, gradient)
        self._max_q_seen = max(self._max_q_seen, q_t)
        self._lcb_selected = None


class GreedyPricePolicy:
    """Budget-blind pricing: always the highest optimistic revenue."""

    name = "greedy"

    def reset(self, spec: NrmSpec, delta: float) -> None:
        self.spec = spec
        self.delta = delta
        self.stats = PriceStatistics(spec.num_prices, spec.num_products)

    def select(self, t: int, prediction: float) -> int:
        ucb, _ = self.stats.bounds(self.delta)
        revenue = np.einsum("kj,kj->k", ucb, self.spec.prices)
        return int(np.argmax(np.append(revenue, 0.0)))

    def observe(self, price_index: int, purchases: np.ndarray, q_t: float, prediction: float) -> None:
        if price_index != self.spec.null_index:
            self.stats.update(price_index, purchases, q_t)


def nrm_opt_lp(spec: NrmSpec, total_demand: float) -> LpSolution:
    """Fluid benchmark on the induced per-customer revenue/consumption."""
    revenue = np.append(spec.mean_revenue(), 0.0)
    consumption = np.vstack([spec.mean_consumption(), np.zeros(spec.num_resources)])
    return solve_opt_lp(
        revenue, consumption, total_demand, spec.budget, null_index=spec.null_index
    )


def simulate_nrm_run(
    spec: NrmSpec,
    policy,
    oracle,
    seed: int,
    delta: float | None = None,
    demand: np.ndarray | None = None,
    purchases: np.ndarray | None = None,
    rep: int = 0,
) -> TrajectoryLog:
    """One pricing run; same stopping and accounting contract as the generic loop."""
    horizon = spec.horizon
    budget = spec.budget
    if delta is None:
        delta = 1.0 / horizon
    if demand is None:
        demand = realize_demand(spec.demand_model, horizon, substream(seed, "demand", rep))
    demand = np.asarray(demand, dtype=float)
    if purchases is None:
        purchases = sample_purchase_table(spec, seed, demand, rep)

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
        price_index = policy.select(t, prediction)
        if not 0 <= price_index <= spec.null_index:
            raise ValueError(f"policy selected an invalid price index {price_index}")
        q_t = demand[t - 1]
        bought = purchases[t - 1, price_index]
        if price_index == spec.null_index:
            revenue = 0.0
            used = np.zeros(d)
        else:
            revenue = float(spec.prices[price_index] @ bought)
            used = spec.consumption @ bought
        spent += used

        actions[t - 1] = price_index
        predictions[t - 1] = prediction
        rewards[t - 1] = revenue
        consumptions[t - 1] = used
        unit_rewards[t - 1] = revenue / q_t if q_t > 0 else 0.0
        unit_costs[t - 1] = used / q_t if q_t > 0 else np.zeros(d)
        mu = getattr(policy, "dual_weights", mu)
        dual_weights[t - 1] = mu

        policy.observe(price_index, bought, q_t, prediction)

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
