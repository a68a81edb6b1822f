"""Online resource allocation with bandit feedback and total-demand predictions.

A simulation library for budgeted sequential allocation where per-round
outcomes are scaled by an exogenous, time-varying demand volume.  Includes
the prediction-aware optimistic policy and its dynamic-pricing variant,
prediction oracles for linear-trend and AR(1) demand, baseline policies, an
exact fluid LP benchmark, and a replication harness with CSV output.
"""

from .baselines import GreedyUcbPolicy, PrimalDualBwkPolicy, SlidingWindowUcbPolicy
from .confidence import ArmStatistics, ConfidenceParams, lcb_cost, rad, ucb_reward
from .demand import (
    Ar1DemandParams,
    FixedDemand,
    LinearDemandParams,
    OutcomeSampler,
    gen_ar1,
    gen_linear,
)
from .fixtures import fixture_demand_shift, fixture_prediction_pair
from .hedge import HedgeState, hedge_regret_bound, hedge_step
from .lpbench import LpSolution, enumerate_vertices_oracle, solve_opt_lp
from .model import (
    EnvironmentSpec,
    NullPolicy,
    RoundFeedback,
    ScriptedPolicy,
    TrajectoryLog,
    compute_metrics,
    simulate_run,
)
from .nrm import (
    ChoiceModel,
    GreedyPricePolicy,
    NrmSpec,
    OaUcbDpPolicy,
    PriceStatistics,
    nrm_opt_lp,
    sample_nrm_demand,
    simulate_nrm_run,
)
from .oracles import (
    Ar1RidgeOracle,
    LeastSquaresLinearOracle,
    PowerOfTwoRefresh,
    RidgeState,
    StaticOffsetOracle,
)
from .policy_oaucb import OaUcbPolicy, composite_scores

__all__ = [
    "Ar1DemandParams",
    "Ar1RidgeOracle",
    "ArmStatistics",
    "ChoiceModel",
    "ConfidenceParams",
    "EnvironmentSpec",
    "FixedDemand",
    "GreedyPricePolicy",
    "GreedyUcbPolicy",
    "HedgeState",
    "LeastSquaresLinearOracle",
    "LinearDemandParams",
    "LpSolution",
    "NrmSpec",
    "NullPolicy",
    "OaUcbDpPolicy",
    "OaUcbPolicy",
    "OutcomeSampler",
    "PowerOfTwoRefresh",
    "PriceStatistics",
    "PrimalDualBwkPolicy",
    "RidgeState",
    "RoundFeedback",
    "ScriptedPolicy",
    "SlidingWindowUcbPolicy",
    "StaticOffsetOracle",
    "TrajectoryLog",
    "composite_scores",
    "compute_metrics",
    "enumerate_vertices_oracle",
    "fixture_demand_shift",
    "fixture_prediction_pair",
    "gen_ar1",
    "gen_linear",
    "hedge_regret_bound",
    "hedge_step",
    "lcb_cost",
    "nrm_opt_lp",
    "rad",
    "sample_nrm_demand",
    "simulate_nrm_run",
    "simulate_run",
    "solve_opt_lp",
    "ucb_reward",
]
