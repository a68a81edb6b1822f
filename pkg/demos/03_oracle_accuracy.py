#!/usr/bin/env python3
"""Prediction oracles watched in isolation: how fast the total-demand
estimate converges, and what the power-of-two refresh schedule costs."""

import numpy as np

from banditalloc import Ar1DemandParams, Ar1RidgeOracle, LinearDemandParams, PowerOfTwoRefresh
from banditalloc.demand import realize_demand
from banditalloc.oracles import LeastSquaresLinearOracle
from banditalloc.rng import substream

horizon = 4096
reps = 20

print("=== autoregressive demand, ridge-fit oracle ===")
params = Ar1DemandParams(alpha=12.0, beta=0.5, sigma=2.0, q_init=24.0)
checkpoints = [8, 32, 128, 512, 2048, 4096]
errors = {t: [] for t in checkpoints}
for rep in range(reps):
    q = realize_demand(params, horizon, substream(3, "demand", rep))
    total = q.sum()
    oracle = PowerOfTwoRefresh(Ar1RidgeOracle())
    for t in checkpoints:
        pred = oracle.predict(q[: t - 1], t, horizon)
        errors[t].append(abs(pred - total) / total)
print(f"true total is about {24 * horizon:,.0f}; relative error of the prediction:")
for t in checkpoints:
    print(f"  t={t:5d}   |Q_hat - Q|/Q = {np.mean(errors[t]):.4f}")

print("\n=== linearly growing demand, least-squares oracle ===")
lin = LinearDemandParams(alpha=5.0, beta=0.5, half_width=2.0)
ts = np.array([64, 256, 1024, 4096])
lin_errors = np.zeros((reps, len(ts)))
for rep in range(reps):
    q = realize_demand(lin, 8192, substream(4, "demand", rep))
    total = q.sum()
    oracle = LeastSquaresLinearOracle()
    for j, t in enumerate(ts):
        lin_errors[rep, j] = abs(oracle.predict(q[: t - 1], int(t), 8192) - total)
mean = lin_errors.mean(axis=0)
slope = np.polyfit(np.log(ts), np.log(mean), 1)[0]
for t, err in zip(ts, mean):
    print(f"  t={t:5d}   |Q_hat - Q| = {err:12,.0f}")
print(f"log-log decay slope: {slope:.2f}  (close to -1.5: error shrinks like t^-3/2)")
