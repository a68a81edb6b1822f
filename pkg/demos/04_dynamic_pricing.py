#!/usr/bin/env python3
"""Dynamic pricing with limited inventory: choose one of six prices each
round; purchases consume stock; selling stops when the shelf is empty."""

import numpy as np

from banditalloc.harness import PRESETS
from banditalloc.nrm import GreedyPricePolicy, OaUcbDpPolicy, nrm_opt_lp, simulate_nrm_run
from banditalloc.demand import realize_demand
from banditalloc.oracles import Ar1RidgeOracle, PowerOfTwoRefresh
from banditalloc.rng import substream
from banditalloc.nrm import sample_purchase_table

spec = PRESETS["paper-nrm-single"].build(2000, 10.0)
prices = spec.prices[:, 0]
lam = np.array([spec.purchase_probs(k)[0] for k in range(spec.num_prices)])

print("price menu and per-customer purchase probability:")
for p, l in zip(prices, lam):
    print(f"  ${p:4.0f}  ->  {l:.1f}   (expected revenue {p * l:4.1f} / customer)")

demand = realize_demand(spec.demand_model, spec.horizon, substream(5, "demand", 0))
purchases = sample_purchase_table(spec, 5, demand)
benchmark = nrm_opt_lp(spec, float(demand.sum()))
print(f"\ninventory {spec.budget:,.0f} units, about {demand.sum():,.0f} customers expected")
print(f"best stationary price mix earns {benchmark.value:,.0f}")

for name, policy in [("prediction-aware", OaUcbDpPolicy()), ("revenue-greedy", GreedyPricePolicy())]:
    log = simulate_nrm_run(
        spec,
        policy,
        PowerOfTwoRefresh(Ar1RidgeOracle()),
        seed=5,
        delta=0.05,
        demand=demand,
        purchases=purchases,
    )
    counts = np.bincount(log.actions[: log.tau - 1], minlength=spec.num_actions)
    favorite = int(np.argmax(counts[: spec.num_prices]))
    print(
        f"\n{name:>16}: revenue {log.total_reward:12,.0f}"
        f"  (ratio {log.total_reward / benchmark.value:.3f}),"
        f" stopped at round {log.tau}, favorite price ${prices[favorite]:.0f}"
    )

print(
    "\nThe greedy rule gravitates to the highest-revenue price and sells out"
    "\nearly; pricing the inventory against the demand forecast shifts volume"
    "\ntoward higher prices and keeps the shelf stocked longer."
)
