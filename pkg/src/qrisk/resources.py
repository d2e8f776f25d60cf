"""Analytic quantum-resource model for the polynomial-threshold VaR method.

T-depth of one probability-encoding iteration, worst-case amplitude
estimation cost, end-to-end T-depth, and the logical clock rate a QPU
would need to match a classical scenario-pricing desk.  All formulas are
closed-form; the (degree, eps_A) parameter search couples them to simulated
estimation errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.stats import norm

from .ae import iqae_bound


@dataclass(frozen=True)
class CostParams:
    """Cost-model constants.

    ``t_s`` (scenario-loading T-depth) is the free variable of the
    advantage study; ``t_a`` is the published pricing-oracle T-depth and
    ``eps_r`` the rotation-synthesis precision, each rotation costing
    3*log2(1/eps_r) T gates.
    """

    t_s: float = 0.0
    t_a: float = 3900.0
    eps_r: float = 1e-7
    classical_seconds_per_scenario: float = 1.0
    advantage_reference_rate_hz: float = 4.5e7

    def __post_init__(self):
        if self.t_s < 0 or self.t_a <= 0:
            raise ValueError("T-depths must be nonnegative (t_a positive)")
        if not 0.0 < self.eps_r < 1.0:
            raise ValueError("eps_r must lie in (0, 1)")
        if self.classical_seconds_per_scenario <= 0:
            raise ValueError("classical pricing time must be positive")
        if self.advantage_reference_rate_hz <= 0:
            raise ValueError("reference rate must be positive")


@dataclass(frozen=True)
class ResourcePlan:
    """End-to-end cost summary for one VaR configuration."""

    d: int
    eps_a: float
    k: float
    per_iteration_t_depth: float
    total_t_depth: float
    total_oracle_calls: int
    clock_rate_hz: float


def rotation_t_depth(eps_r: float) -> float:
    """T-depth of one synthesized Rz rotation at precision eps_r."""
    return 3.0 * math.log2(1.0 / eps_r)


def iteration_t_depth(params: CostParams, d: int) -> float:
    """T-depth of one encoding iteration: T_S + d*T_A + d*T_R."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    return params.t_s + d * params.t_a + d * rotation_t_depth(params.eps_r)


def total_t_depth(params: CostParams, d: int, eps_a: float, k: float,
                  alpha_k: float) -> float:
    """End-to-end T-depth over k estimation rounds at accuracy eps_a.

    (2.8 k / eps_a) * ln((2/alpha_k) * log2(pi/(4 eps_a))) * T_iteration;
    the 2.8 counts two circuit invocations (forward and inverse) per
    estimation oracle call.
    """
    if k < 1:
        raise ValueError(f"round count must be >= 1, got {k}")
    if not 0.0 < eps_a < math.pi / 4:
        raise ValueError(f"eps_a must lie in (0, pi/4), got {eps_a}")
    if not 0.0 < alpha_k < 1.0:
        raise ValueError(f"alpha_k must lie in (0, 1), got {alpha_k}")
    inner = math.log2(math.pi / (4 * eps_a))
    arg = (2.0 / alpha_k) * inner
    if arg <= 1.0:
        raise ValueError("log argument <= 1: eps_a too close to pi/4 for this alpha_k")
    return (2.8 * k / eps_a) * math.log(arg) * iteration_t_depth(params, d)


def t_depth_from_oracle_calls(params: CostParams, d: int, ae_oracle_calls: int) -> float:
    """Trace-based end-to-end T-depth: 2 circuit invocations per AE call."""
    return 2.0 * ae_oracle_calls * iteration_t_depth(params, d)


def clock_rate_for_parity(params: CostParams, total_depth: float,
                          n_scenarios: int) -> float:
    """Logical T-gate rate matching a classical desk pricing n scenarios."""
    if n_scenarios < 1:
        raise ValueError(f"need at least one scenario, got {n_scenarios}")
    return total_depth / (n_scenarios * params.classical_seconds_per_scenario)


def scenario_loading_cost(n: int, eps: float, c1: float = 1.0,
                          c2: float = 1.0) -> tuple[float, float]:
    """Order-of-magnitude loading cost: (c1*(log2 n + log2(1/eps)), c2*n).

    The constants are calibration knobs, not predictions; treat the output
    as scaling guidance only.
    """
    if n < 1:
        raise ValueError(f"need at least one scenario, got {n}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return c1 * (math.log2(n) + math.log2(1.0 / eps)), c2 * n


DEFAULT_DEGREE_GRID = (200, 400, 600, 800, 1000)
DEFAULT_EPS_A_GRID = (6e-4, 1.2e-3, 2.5e-3, 5e-3)


@dataclass(frozen=True)
class AdvantageProtocol:
    """Matched-error study configuration.

    Scenario sets are sampled from N(mean, sd^2); quantum and classical
    errors are measured against the analytic 1-alpha quantile, pooling runs
    over ``dist_means`` (estimation quality depends on where the true
    quantile lands relative to the bisection lattice).
    """

    n_scenarios: int = 50_000
    alpha: float = 0.99
    sd: float = 0.09
    dist_means: tuple = (0.45, 0.48, 0.5, 0.52, 0.55)
    repetitions: int = 200
    eps_p: float = 2e-3
    seed: int = 7
    degree_grid: tuple = DEFAULT_DEGREE_GRID
    eps_a_grid: tuple = DEFAULT_EPS_A_GRID
    confidence_level: float = 0.95


class NoFeasibleParametersError(RuntimeError):
    """No (d, eps_A) cell reached the classical target error."""

    def __init__(self, message: str, best_error: float, table: list):
        super().__init__(message)
        self.best_error = best_error
        self.table = table


def classical_target_error(protocol: AdvantageProtocol) -> float:
    """Classical benchmark error: 68th-percentile |VaR - analytic quantile|.

    Scenario prices carry N(0, eps_p^2) pricing noise, mirroring a desk
    that prices each scenario to finite accuracy.
    """
    from .engine import var_classical
    from .scenarios import add_pricing_noise, sample_normal_scenarios

    errors = []
    mean = protocol.dist_means[len(protocol.dist_means) // 2]
    for rep in range(protocol.repetitions):
        seed = protocol.seed + 1000 * rep
        sset = sample_normal_scenarios(protocol.n_scenarios, mean, protocol.sd, seed)
        sset = add_pricing_noise(sset, protocol.eps_p, seed + 1)
        estimate = var_classical(sset, protocol.alpha)
        exact = norm.ppf(1.0 - protocol.alpha, mean, protocol.sd)
        errors.append(abs(estimate - exact))
    return float(np.percentile(errors, 68))


def _quantum_cell_error(protocol: AdvantageProtocol, d: int, eps_a: float,
                        ) -> tuple[float, float, float]:
    """Simulate one grid cell; returns (eps_q, k_avg, ae_calls_avg)."""
    from .ae import PrecisionSchedule
    from .engine import var_qsp
    from .scenarios import sample_normal_scenarios

    schedule = PrecisionSchedule(
        eps_final=eps_a,
        total_failure_budget=1.0 - protocol.confidence_level,
    )
    errors, rounds, calls = [], [], []
    reps_per_mean = max(1, protocol.repetitions // len(protocol.dist_means))
    for mean_idx, mean in enumerate(protocol.dist_means):
        exact = norm.ppf(1.0 - protocol.alpha, mean, protocol.sd)
        for rep in range(reps_per_mean):
            seed = protocol.seed + 1000 * rep + 77_000 * mean_idx
            sset = sample_normal_scenarios(protocol.n_scenarios, mean,
                                           protocol.sd, seed)
            result = var_qsp(sset, protocol.alpha, d=d, schedule=schedule)
            errors.append(abs(result.var_estimate_value() - exact))
            rounds.append(result.rounds)
            calls.append(result.ae_oracle_calls)
    return (float(np.percentile(errors, 68)), float(np.mean(rounds)),
            float(np.mean(calls)))


def search_matching_params(protocol: AdvantageProtocol,
                           target_error: float | None = None,
                           params: CostParams | None = None):
    """Grid-search (d, eps_A) for classical-parity estimation error.

    Every cell runs the simulation protocol; among cells with quantum error
    at or below the classical target, the one with the smallest end-to-end
    T-depth wins.  Returns (plan, cell_table) where the table rows are
    (d, eps_a, eps_q, k_avg, ae_calls_avg, feasible).
    """
    if params is None:
        params = CostParams()
    if target_error is None:
        target_error = classical_target_error(protocol)
    table = []
    for d in protocol.degree_grid:
        for eps_a in protocol.eps_a_grid:
            eps_q, k_avg, ae_calls = _quantum_cell_error(protocol, d, eps_a)
            feasible = eps_q <= target_error
            table.append((d, eps_a, eps_q, k_avg, ae_calls, feasible))
    feasible_cells = [row for row in table if row[5]]
    if not feasible_cells:
        best = min(row[2] for row in table)
        raise NoFeasibleParametersError(
            f"no grid cell reaches target error {target_error:.3e}; "
            f"best achieved {best:.3e}", best, table)

    def cell_depth(row):
        d, eps_a, _, _, ae_calls, _ = row
        return t_depth_from_oracle_calls(params, d, int(round(ae_calls)))

    best_row = min(feasible_cells, key=cell_depth)
    d, eps_a, eps_q, k_avg, ae_calls, _ = best_row
    depth = cell_depth(best_row)
    plan = ResourcePlan(
        d=d,
        eps_a=eps_a,
        k=k_avg,
        per_iteration_t_depth=iteration_t_depth(params, d),
        total_t_depth=depth,
        total_oracle_calls=int(round(ae_calls)),
        clock_rate_hz=clock_rate_for_parity(params, depth, protocol.n_scenarios),
    )
    return plan, table


def clock_rate_sweep(plan: ResourcePlan, n_scenarios: int, t_s_values,
                     params: CostParams | None = None) -> list[dict]:
    """Clock-rate-vs-loading-depth curve for a fixed matched-error plan."""
    if params is None:
        params = CostParams()
    rows = []
    for t_s in t_s_values:
        p = replace(params, t_s=float(t_s))
        depth = t_depth_from_oracle_calls(p, plan.d, plan.total_oracle_calls)
        rows.append({
            "n_scenarios": n_scenarios,
            "t_s": float(t_s),
            "d": plan.d,
            "eps_a": plan.eps_a,
            "k": plan.k,
            "clock_rate_hz": clock_rate_for_parity(p, depth, n_scenarios),
        })
    return rows
