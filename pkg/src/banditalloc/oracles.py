"""Total-demand prediction oracles.

Each oracle maps the observed demand prefix q_1..q_{t-1} to a prediction of
the full-horizon total Q.  The trend oracle fits a line by least squares and
extrapolates; the autoregressive oracle fits the recursion coefficients by
ridge regression and rolls the fitted recursion forward.  A refresh wrapper
recomputes only at power-of-two rounds, and static reference oracles
(clairvoyant and constant-offset) probe sensitivity to advice quality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_BETA_CLAMP = 0.999


class LeastSquaresLinearOracle:
    """Fits q_s ~ a + b*s and predicts the prefix sum plus the fitted tail.

    The regression needs three points to be trustworthy; below that the
    prediction falls back to mean extrapolation, and to `q0_guess * T` on an
    empty prefix.
    """

    def __init__(self, q0_guess: float = 1.0):
        self.q0_guess = q0_guess
        self.reset()

    def reset(self) -> None:
        self._seen = 0
        self._sum_q = 0.0
        self._sum_sq = 0.0  # sum of s * q_s

    def _consume(self, prefix: np.ndarray) -> None:
        if len(prefix) < self._seen:
            self.reset()
        new = np.asarray(prefix[self._seen :], dtype=float)
        if new.size:
            s = np.arange(self._seen + 1, self._seen + new.size + 1, dtype=float)
            self._sum_q += float(new.sum())
            self._sum_sq += float((s * new).sum())
            self._seen += new.size

    def predict(self, prefix: np.ndarray, t: int, horizon: int) -> float:
        self._consume(prefix)
        n = t - 1
        if n == 0:
            return self.q0_guess * horizon
        if n <= 2:
            return (self._sum_q / n) * horizon
        sum_s = n * (n + 1) / 2.0
        sum_s2 = n * (n + 1) * (2 * n + 1) / 6.0
        denom = n * sum_s2 - sum_s**2
        slope = (n * self._sum_sq - sum_s * self._sum_q) / denom
        intercept = (self._sum_q - slope * sum_s) / n
        tail_len = horizon - t + 1
        tail_sum_s = (horizon * (horizon + 1) - (t - 1) * t) / 2.0
        return self._sum_q + intercept * tail_len + slope * tail_sum_s


@dataclass
class RidgeState:
    """Running ridge-regression accumulators for the AR(1) fit."""

    ridge_lambda: float = 1.0
    v: np.ndarray = field(init=False)
    zeta: np.ndarray = field(init=False)
    last_q: float = field(init=False, default=0.0)
    seen: int = field(init=False, default=0)
    prefix_sum: float = field(init=False, default=0.0)

    def __post_init__(self) -> None:
        if self.ridge_lambda <= 0:
            raise ValueError("ridge regularizer must be positive")
        self.v = self.ridge_lambda * np.eye(2)
        self.zeta = np.zeros(2)

    def absorb(self, q: float) -> None:
        z_prev = np.array([1.0, self.last_q])
        self.v += np.outer(z_prev, z_prev)
        self.zeta += z_prev * q
        self.last_q = q
        self.prefix_sum += q
        self.seen += 1

    def coefficients(self) -> tuple[float, float]:
        alpha, beta = np.linalg.solve(self.v, self.zeta)
        return float(alpha), float(np.clip(beta, -_BETA_CLAMP, _BETA_CLAMP))


class Ar1RidgeOracle:
    """Fits q_s ~ a + b*q_{s-1} by ridge regression and rolls it forward.

    The fitted recursion (with q_0 = 0 convention) gives a closed-form tail:
    the fitted slope is clamped inside (-1, 1) so the stationary level
    a / (1 - b) stays finite.
    """

    def __init__(self, ridge_lambda: float = 1.0, q0_guess: float = 1.0):
        self.ridge_lambda = ridge_lambda
        self.q0_guess = q0_guess
        self.reset()

    def reset(self) -> None:
        self.state = RidgeState(ridge_lambda=self.ridge_lambda)

    def _consume(self, prefix: np.ndarray) -> None:
        if len(prefix) < self.state.seen:
            self.reset()
        for q in prefix[self.state.seen :]:
            self.state.absorb(float(q))

    def predict(self, prefix: np.ndarray, t: int, horizon: int) -> float:
        self._consume(prefix)
        n = t - 1
        if n == 0:
            return self.q0_guess * horizon
        if n <= 1:
            return (self.state.prefix_sum / n) * horizon
        alpha, beta = self.state.coefficients()
        phi = alpha / (1.0 - beta)
        tail_len = horizon - t + 1
        geom = (beta - beta**tail_len) / (1.0 - beta) if beta != 0.0 else 0.0
        level_term = tail_len - beta + beta ** (tail_len + 1)
        return self.state.prefix_sum + geom * self.state.last_q + phi * level_term


class PowerOfTwoRefresh:
    """Recompute the wrapped oracle only at rounds t = 2^k; reuse otherwise."""

    def __init__(self, inner):
        self.inner = inner
        self.reset()

    def reset(self) -> None:
        self.inner.reset()
        self._cached = None

    def predict(self, prefix: np.ndarray, t: int, horizon: int) -> float:
        refresh = t == 1 or (t >= 2 and t & (t - 1) == 0)
        if refresh or self._cached is None:
            self._cached = self.inner.predict(prefix, t, horizon)
        return self._cached


class StaticOffsetOracle:
    """Returns true total + x*T every round; x = 0 is the clairvoyant oracle."""

    def __init__(self, true_total: float, offset: float = 0.0):
        self.true_total = true_total
        self.offset = offset

    def reset(self) -> None:
        pass

    def predict(self, prefix: np.ndarray, t: int, horizon: int) -> float:
        return self.true_total + self.offset * horizon
