"""Exact fluid benchmark: best stationary action mix under the budget caps.

Maximizes Q * r.u over the action simplex subject to Q * c.u <= B per
resource.  The instance is tiny (a handful of actions and resources), so a
dense tableau simplex with Bland's anti-cycling rule is both simple and
robust.  A brute-force vertex enumerator doubles as an independent test
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

_PIVOT_TOL = 1e-9
_MAX_ITERS = 10_000


@dataclass
class LpSolution:
    value: float
    mix: np.ndarray
    binding: list[int]
    status: str


def solve_opt_lp(
    r: np.ndarray,
    c: np.ndarray,
    total_demand: float,
    budget: float,
    null_index: int | None = None,
) -> LpSolution:
    """Solve max Q*r.u s.t. Q*c.u <= B*1, u in the simplex.

    The simplex equality is relaxed to sum(u) <= 1 and any leftover mass is
    assigned to `null_index` afterwards; because the null action earns and
    consumes nothing this padding changes neither objective nor feasibility,
    and it makes the all-slack tableau start feasible.
    """
    r = np.asarray(r, dtype=float)
    c = np.asarray(c, dtype=float)
    if c.ndim == 1:
        c = c[:, None]
    num_actions, num_resources = c.shape
    if r.shape != (num_actions,):
        raise ValueError("r and c disagree on the number of actions")
    if total_demand <= 0:
        raise ValueError(f"total demand must be positive, got {total_demand}")
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    if np.any(r < 0) or np.any(c < 0) or not (np.all(np.isfinite(r)) and np.all(np.isfinite(c))):
        raise ValueError("rewards and costs must be finite and non-negative")

    # Tableau rows: d budget constraints then the mass constraint sum(u) <= 1.
    num_rows = num_resources + 1
    a_mat = np.vstack([total_demand * c.T, np.ones((1, num_actions))])
    rhs = np.concatenate([np.full(num_resources, budget), [1.0]])
    objective = total_demand * r

    tableau = np.zeros((num_rows + 1, num_actions + num_rows + 1))
    tableau[:num_rows, :num_actions] = a_mat
    tableau[:num_rows, num_actions : num_actions + num_rows] = np.eye(num_rows)
    tableau[:num_rows, -1] = rhs
    tableau[-1, :num_actions] = -objective
    basis = list(range(num_actions, num_actions + num_rows))

    for _ in range(_MAX_ITERS):
        reduced = tableau[-1, :-1]
        entering_candidates = np.nonzero(reduced < -_PIVOT_TOL)[0]
        if entering_candidates.size == 0:
            break
        entering = int(entering_candidates[0])  # Bland: smallest index
        col = tableau[:num_rows, entering]
        rows = np.nonzero(col > _PIVOT_TOL)[0]
        if rows.size == 0:
            raise RuntimeError("benchmark LP is unbounded; inputs are invalid")
        ratios = tableau[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + _PIVOT_TOL]
        leaving = int(min(tied, key=lambda i: basis[i]))  # Bland on ties
        pivot = tableau[leaving, entering]
        tableau[leaving] /= pivot
        for i in range(num_rows + 1):
            if i != leaving and abs(tableau[i, entering]) > 0.0:
                tableau[i] -= tableau[i, entering] * tableau[leaving]
        basis[leaving] = entering
    else:
        raise RuntimeError("simplex failed to converge")

    mix = np.zeros(num_actions)
    for row, var in enumerate(basis):
        if var < num_actions:
            mix[var] = tableau[row, -1]
    mix = np.maximum(mix, 0.0)
    if null_index is not None:
        mix[null_index] += max(1.0 - mix.sum(), 0.0)
    value = float(objective @ mix)
    spent = total_demand * (c.T @ mix)
    binding = [i for i in range(num_resources) if spent[i] >= budget - 1e-7]
    return LpSolution(value=value, mix=mix, binding=binding, status="optimal")


def enumerate_vertices_oracle(
    r: np.ndarray,
    c: np.ndarray,
    total_demand: float,
    budget: float,
) -> float:
    """Brute-force the LP over all basic feasible mixes; test oracle only."""
    r = np.asarray(r, dtype=float)
    c = np.asarray(c, dtype=float)
    if c.ndim == 1:
        c = c[:, None]
    num_actions, num_resources = c.shape
    if num_actions + num_resources > 12:
        raise ValueError("instance too large for vertex enumeration")

    # Constraints besides sum(u) = 1: u_a = 0 (one per action) and tight
    # budgets.  A vertex activates K-1 of them alongside the mass equality.
    rows = [("zero", a) for a in range(num_actions)] + [("budget", i) for i in range(num_resources)]
    best = -np.inf
    for combo in combinations(range(len(rows)), num_actions - 1):
        system = np.zeros((num_actions, num_actions))
        rhs = np.zeros(num_actions)
        system[0, :] = 1.0
        rhs[0] = 1.0
        for k, idx in enumerate(combo, start=1):
            kind, which = rows[idx]
            if kind == "zero":
                system[k, which] = 1.0
            else:
                system[k, :] = total_demand * c[:, which]
                rhs[k] = budget
        try:
            u = np.linalg.solve(system, rhs)
        except np.linalg.LinAlgError:
            continue
        if np.any(u < -1e-9):
            continue
        if np.any(total_demand * (c.T @ u) > budget + 1e-7):
            continue
        best = max(best, float(total_demand * (r @ u)))
    return best
