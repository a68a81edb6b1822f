"""Acceptance suite.

One test per acceptance criterion, each asserting its stated tolerance and
runtime budget and printing a PASS line (run with `pytest -s` to see them
inline).  Statistical criteria use fixed seeds and the replication counts
given in the criteria.
"""

import math
import time

import numpy as np
import pytest

from banditalloc.demand import Ar1DemandParams, FixedDemand, LinearDemandParams, realize_demand
from banditalloc.fixtures import fixture_demand_shift
from banditalloc.harness import ExperimentConfig, run_experiment
from banditalloc.hedge import HedgeState, hedge_regret_bound, hedge_step
from banditalloc.lpbench import enumerate_vertices_oracle, solve_opt_lp
from banditalloc.model import EnvironmentSpec, RoundFeedback
from banditalloc.nrm import ChoiceModel, NrmSpec, OaUcbDpPolicy
from banditalloc.oracles import Ar1RidgeOracle, LeastSquaresLinearOracle
from banditalloc.policy_oaucb import OaUcbPolicy
from banditalloc.confidence import rad
from banditalloc.rng import substream

SEED = 20250811


def report(number: int, name: str, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number:02d} {name}: PASS{suffix}")


def agg_by(aggregates, **match):
    hits = [
        a for a in aggregates if all(a[k] == v for k, v in match.items())
    ]
    assert len(hits) == 1, (match, aggregates)
    return hits[0]


def test_01_confidence_radius_exactness():
    start = time.perf_counter()
    for n in (1, 10, 400):
        for delta in (0.5, 0.05, 0.001):
            assert rad(0.0, n, delta) == pytest.approx(4 * math.log(1 / delta) / n, rel=1e-12)
    assert rad(1.0, 1, math.exp(-1)) == pytest.approx(math.sqrt(2) + 4, abs=1e-12)
    assert rad(0.25, 400, 0.01) == pytest.approx(0.121924, abs=1e-6)
    assert time.perf_counter() - start < 5.0
    report(1, "confidence radius exactness")


def test_02_lp_benchmark():
    start = time.perf_counter()
    spec, demand = fixture_demand_shift(2, 1000)
    flat = solve_opt_lp(spec.mean_reward, spec.mean_cost, demand.sum(), spec.budget, spec.null_index)
    assert flat.value == pytest.approx(750.0, abs=1e-12)

    spec, demand = fixture_demand_shift(1, 640)
    front = solve_opt_lp(spec.mean_reward, spec.mean_cost, demand.sum(), spec.budget, spec.null_index)
    assert front.value == pytest.approx(330.0, abs=1e-7)

    rng = np.random.default_rng(SEED)
    for _ in range(1000):
        k = int(rng.integers(2, 7))
        d = int(rng.integers(1, 4))
        r = rng.uniform(0, 1, k)
        c = rng.uniform(0, 1, (k, d))
        null = int(rng.integers(0, k))
        r[null] = 0.0
        c[null] = 0.0
        total = float(rng.uniform(1, 500))
        budget = float(rng.uniform(0.05, 1.2) * total)
        sol = solve_opt_lp(r, c, total, budget, null)
        brute = enumerate_vertices_oracle(r, c, total, budget)
        assert sol.value == pytest.approx(brute, abs=1e-7 * max(1.0, abs(brute)))
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    report(2, "LP benchmark vs vertex oracle", f"{elapsed:.1f}s")


def test_03_hedge_regret_bound():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 1)
    horizon = 500
    dims = (2, 5, 10)
    for trial in range(1000):
        m = dims[trial % 3]
        grads = rng.uniform(-3.0, 3.0, size=(horizon, m))
        state = HedgeState(m)
        realized = 0.0
        for g in grads:
            realized += float(g @ state.weights)
            hedge_step(state, g)
        regret = realized - grads.sum(axis=0).min()
        assert regret <= hedge_regret_bound(grads, m) + 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(3, "adaptive hedge regret bound", f"1000 trials, {elapsed:.1f}s")


def test_04_confidence_coverage():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 2)
    delta = 0.05
    trials = 0
    violations = 0
    for mean in (0.05, 0.2, 0.5, 0.8, 0.95):
        for n in (1, 2, 5, 20, 100, 400):
            reps = 400
            draws = rng.binomial(n, mean, size=reps) / n
            radius = np.sqrt(2 * draws * math.log(1 / delta) / n) + 4 * math.log(1 / delta) / n
            upper = np.minimum(draws + radius, 1.0)
            lower = np.maximum(draws - radius, 0.0)
            violations += int(np.sum(upper < mean)) + int(np.sum(lower > mean))
            trials += 2 * reps
    assert trials >= 10_000
    rate = violations / trials
    bound = 3 * delta + 4 * math.sqrt(3 * delta * (1 - 3 * delta) / trials)
    assert rate <= bound
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    report(4, "confidence coverage", f"rate {rate:.4f} <= {bound:.4f}")


def test_05_linear_oracle_error_decay():
    start = time.perf_counter()
    params = LinearDemandParams(alpha=5.0, beta=0.5, half_width=2.0)
    horizon = 8192
    reps = 50
    ts = np.unique(np.round(np.geomspace(64, 4096, 25)).astype(int))
    errors = np.zeros((reps, len(ts)))
    for rep in range(reps):
        q = realize_demand(params, horizon, substream(SEED + 3, "demand", rep))
        total = q.sum()
        oracle = LeastSquaresLinearOracle()
        for j, t in enumerate(ts):
            errors[rep, j] = abs(oracle.predict(q[: t - 1], int(t), horizon) - total)
    slope = float(np.polyfit(np.log(ts), np.log(errors.mean(axis=0)), 1)[0])
    assert -1.8 <= slope <= -1.2
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(5, "linear-trend oracle decay", f"loglog slope {slope:.2f}")


def test_06_ar1_oracle_error_decay():
    start = time.perf_counter()
    params = Ar1DemandParams(alpha=12.0, beta=0.5, sigma=2.0, q_init=24.0)
    horizon = 4096
    reps = 50
    early, late = [], []
    for rep in range(reps):
        q = realize_demand(params, horizon, substream(SEED + 4, "demand", rep))
        total = q.sum()
        oracle = Ar1RidgeOracle()
        t_early, t_late = horizon // 16, horizon // 2
        early.append(abs(oracle.predict(q[: t_early - 1], t_early, horizon) - total) / total)
        late.append(abs(oracle.predict(q[: t_late - 1], t_late, horizon) - total) / total)
    ratio = float(np.mean(late) / np.mean(early))
    assert ratio <= 0.5
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(6, "autoregressive oracle decay", f"ratio {ratio:.3f}")


def test_07_benchmark_table_trend():
    start = time.perf_counter()
    cfg = ExperimentConfig(
        preset="paper-bwk-d1",
        reps=20,
        seed=SEED,
        horizon=2000,
        normalized_budget=15.0,
        policies=[{"kind": "oaucb"}, {"kind": "pdb"}, {"kind": "sw-ucb"}],
        oracles=[{"kind": "alg2"}],
    )
    _, aggregates = run_experiment(cfg)
    oaucb = agg_by(aggregates, algo="oaucb")
    pdb = agg_by(aggregates, algo="pdb")
    swucb = agg_by(aggregates, algo="sw-ucb")
    assert oaucb["cr_mean"] >= 0.90
    assert oaucb["regret_mean"] < pdb["regret_mean"]
    assert oaucb["regret_mean"] < swucb["regret_mean"]
    elapsed = time.perf_counter() - start
    assert elapsed < 180.0
    report(
        7,
        "benchmark trend vs baselines",
        f"cr {oaucb['cr_mean']:.3f}, regret {oaucb['regret_mean']:.0f} "
        f"vs pdb {pdb['regret_mean']:.0f} / sw-ucb {swucb['regret_mean']:.0f}",
    )


def test_08_prediction_quality_monotonicity():
    start = time.perf_counter()
    cfg = ExperimentConfig(
        preset="paper-bwk-d1",
        reps=20,
        seed=SEED,
        horizon=2000,
        normalized_budget=15.0,
        policies=[{"kind": "oaucb"}],
        oracles=[{"kind": "alg2"}, {"kind": "offset", "x": 5.0}, {"kind": "offset", "x": 20.0}],
    )
    _, aggregates = run_experiment(cfg)
    refresh = agg_by(aggregates, oracle="alg2")
    plus5 = agg_by(aggregates, oracle="offset+5")
    plus20 = agg_by(aggregates, oracle="offset+20")
    assert refresh["cr_mean"] >= plus20["cr_mean"]
    assert plus5["cr_mean"] >= plus20["cr_mean"]
    elapsed = time.perf_counter() - start
    assert elapsed < 180.0
    report(
        8,
        "prediction-quality monotonicity",
        f"cr alg2 {refresh['cr_mean']:.3f} / +5T {plus5['cr_mean']:.3f} / +20T {plus20['cr_mean']:.3f}",
    )


def test_09_sublinear_regret_trend():
    start = time.perf_counter()
    cfg = ExperimentConfig(
        preset="paper-bwk-d1",
        reps=20,
        seed=SEED,
        normalized_budget=15.0,
        policies=[{"kind": "oaucb"}],
        oracles=[{"kind": "clairvoyant"}],
        sweep={"T": [2000, 4000, 8000]},
    )
    _, aggregates = run_experiment(cfg)
    points = sorted(
        ((a["T"], a["regret_mean"] / a["T"], a["regret_stderr"] / a["T"]) for a in aggregates)
    )
    for (_, rate_a, se_a), (_, rate_b, se_b) in zip(points, points[1:]):
        pooled = math.sqrt(se_a**2 + se_b**2)
        assert rate_b < rate_a + pooled
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    rates = ", ".join(f"T={t}: {r:.3f}" for t, r, _ in points)
    report(9, "sublinear regret trend", rates)


def test_10_pricing_beats_greedy():
    start = time.perf_counter()
    cfg = ExperimentConfig(
        preset="paper-nrm-single",
        reps=20,
        seed=SEED,
        horizon=2000,
        normalized_budget=10.0,
        policies=[{"kind": "oaucb-dp"}, {"kind": "greedy"}],
        oracles=[{"kind": "alg2"}],
    )
    _, aggregates = run_experiment(cfg)
    pricing = agg_by(aggregates, algo="oaucb-dp")
    greedy = agg_by(aggregates, algo="greedy")
    assert pricing["cr_mean"] >= greedy["cr_mean"]
    assert 0.6 <= pricing["cr_mean"] <= 1.0
    elapsed = time.perf_counter() - start
    assert elapsed < 180.0
    report(
        10,
        "pricing vs budget-blind greedy",
        f"cr {pricing['cr_mean']:.3f} vs {greedy['cr_mean']:.3f}",
    )


def test_11_structural_reduction():
    start = time.perf_counter()
    horizon, q, total = 100, 10.0, 1000.0
    lam = np.array([0.9, 0.6, 0.3])
    nrm_spec = NrmSpec(
        num_products=1,
        num_resources=1,
        consumption=np.array([[1.0]]),
        prices=np.ones((3, 1)),
        choice_model=ChoiceModel(kind="table", table=lam[:, None]),
        normalized_budget=4.0,
        horizon=horizon,
        demand_model=FixedDemand(np.full(horizon, q)),
    )
    generic_spec = EnvironmentSpec(
        num_actions=4,
        num_resources=1,
        mean_reward=np.append(lam, 0.0),
        mean_cost=np.append(lam, 0.0)[:, None],
        normalized_budget=4.0,
        horizon=horizon,
        demand_model=FixedDemand(np.full(horizon, q)),
        null_index=3,
    )
    pricing = OaUcbDpPolicy()
    generic = OaUcbPolicy()
    pricing.reset(nrm_spec, 0.05)
    generic.reset(generic_spec, 0.05)
    rng = substream(SEED + 5, "purchases")
    for t in range(1, horizon + 1):
        a_pricing = pricing.select(t, total)
        a_generic = generic.select(t, total)
        assert a_pricing == a_generic, f"sequences diverge at round {t}"
        if a_pricing == nrm_spec.null_index:
            bought = np.zeros(1)
        else:
            bought = rng.binomial(int(q), lam[a_pricing], size=1).astype(float)
        unit = float(bought[0]) / q
        pricing.observe(a_pricing, bought, q, total)
        generic.observe(
            RoundFeedback(
                t=t, demand=q, unit_reward=unit, unit_cost=np.array([unit]), prediction=total
            ),
            a_generic,
        )
    assert time.perf_counter() - start < 5.0
    report(11, "pricing reduces to generic policy", "100 identical rounds")
