#!/usr/bin/env python3
"""Desk-scale benchmark: the prediction-aware policy against the baselines
on the 4-arm, 1-resource instance with autoregressive demand."""

from banditalloc.harness import ExperimentConfig, run_experiment

config = ExperimentConfig(
    preset="paper-bwk-d1",
    reps=10,
    seed=7,
    horizon=2000,
    normalized_budget=15.0,
)

print("running 10 replications of each policy (shared demand + outcome draws)...")
rows, aggregates = run_experiment(config)

print(f"\n{'policy':<10} {'oracle':<8} {'regret':>18} {'competitive ratio':>20} {'stop round':>12}")
for agg in aggregates:
    regret = f"{agg['regret_mean']:9.1f} ± {agg['regret_stderr']:6.1f}"
    ratio = f"{agg['cr_mean']:.3f} ± {agg['cr_stderr']:.3f}"
    print(f"{agg['algo']:<10} {agg['oracle']:<8} {regret:>18} {ratio:>20} {agg['tau_mean']:>12.1f}")

print(
    "\nThe prediction-aware policy prices resource consumption against the"
    "\npredicted total demand, so it paces its budget to the full horizon;"
    "\nthe ratio rule chases per-cost reward density and the windowed variant"
    "\nforgets too fast for its cost bounds to ever bind."
)
