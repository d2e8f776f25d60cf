"""Amplitude estimation simulated as an interval oracle.

An estimation round at target half-width eps_k and failure budget alpha_k
returns an interval [p_low, p_high] around the true probability, together
with the worst-case oracle-call count of iterative amplitude estimation.
The refinement loop shrinks eps_k geometrically until the comparison
against a target probability is decided or the final accuracy is reached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AEInterval:
    """One simulated estimation round."""

    p_low: float
    p_high: float
    eps_k: float
    alpha_k: float
    oracle_calls: int
    circuit_depth_factor: int

    def __post_init__(self):
        if self.p_low > self.p_high:
            raise ValueError("interval bounds out of order")
        if self.p_high - self.p_low > 2 * self.eps_k + 1e-12:
            raise ValueError("interval wider than 2*eps_k")
        if not (0.0 <= self.p_low <= 1.0 and 0.0 <= self.p_high <= 1.0):
            raise ValueError("interval bounds must lie in [0, 1]")


def iqae_bound(eps_a: float, alpha_k: float) -> int:
    """Worst-case oracle calls for one estimation run:
    ceil((1.4/eps) * ln((2/alpha) * log2(pi/(4 eps)))).
    """
    if not 0.0 < eps_a < math.pi / 4:
        raise ValueError(f"eps_a must lie in (0, pi/4), got {eps_a}")
    if not 0.0 < alpha_k < 1.0:
        raise ValueError(f"alpha_k must lie in (0, 1), got {alpha_k}")
    inner = math.log2(math.pi / (4 * eps_a))
    arg = (2.0 / alpha_k) * inner
    if arg <= 1.0:
        raise ValueError("log argument <= 1; eps_a too close to pi/4 for this alpha_k")
    return math.ceil((1.4 / eps_a) * math.log(arg))


def ae_interval(true_p: float, eps_k: float, alpha_k: float,
                rng: np.random.Generator | None = None) -> AEInterval:
    """Simulate one estimation round around true_p.

    Deterministic mode (rng None) centers the interval exactly on true_p,
    matching the simulation protocol; stochastic mode perturbs the center
    by a truncated N(0, (eps_k/2)^2) draw for robustness studies.
    """
    if not 0.0 <= true_p <= 1.0:
        raise ValueError(f"true_p must lie in [0, 1], got {true_p}")
    calls = iqae_bound(eps_k, alpha_k)  # also validates eps_k, alpha_k
    center = true_p
    if rng is not None:
        shift = rng.normal(0.0, eps_k / 2)
        center = true_p + float(np.clip(shift, -eps_k, eps_k))
    return AEInterval(
        p_low=max(0.0, center - eps_k),
        p_high=min(1.0, center + eps_k),
        eps_k=eps_k,
        alpha_k=alpha_k,
        oracle_calls=calls,
        circuit_depth_factor=math.ceil(math.pi / (4 * eps_k)),
    )


class BudgetExhaustedError(RuntimeError):
    """The failure-probability allocation ran out before reaching eps_final."""


@dataclass(frozen=True)
class PrecisionSchedule:
    """Geometric refinement schedule with a total failure budget.

    ``alpha_allocation`` 'uniform' splits the budget evenly over the
    max_rounds x steps grid; 'geometric' weights later (smaller-eps) steps
    more heavily, shaving the constant on the expensive rounds.
    """

    eps_final: float
    eps_start: float = 0.1
    shrink: float = 0.5
    alpha_allocation: str = "uniform"
    total_failure_budget: float = 0.05
    max_rounds: int = 30

    def __post_init__(self):
        if not 0.0 < self.eps_final <= self.eps_start:
            raise ValueError("need 0 < eps_final <= eps_start")
        if not 0.0 < self.shrink < 1.0:
            raise ValueError("shrink factor must lie in (0, 1)")
        if self.alpha_allocation not in ("uniform", "geometric"):
            raise ValueError(f"unknown alpha allocation {self.alpha_allocation!r}")
        if not 0.0 < self.total_failure_budget < 1.0:
            raise ValueError("total failure budget must lie in (0, 1)")
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")

    def eps_sequence(self) -> list[float]:
        """eps_start, eps_start*shrink, ... clipped to end exactly at eps_final."""
        seq = []
        eps = self.eps_start
        while eps > self.eps_final and not math.isclose(eps, self.eps_final,
                                                        rel_tol=1e-12):
            seq.append(eps)
            eps *= self.shrink
        seq.append(self.eps_final)
        return seq

    def alpha_table(self) -> np.ndarray:
        """Per-(round, step) failure allocation summing to the total budget."""
        steps = len(self.eps_sequence())
        if self.alpha_allocation == "uniform":
            table = np.full((self.max_rounds, steps),
                            self.total_failure_budget / (self.max_rounds * steps))
        else:
            weights = 2.0 ** np.arange(steps)
            weights /= weights.sum()
            table = np.tile(weights, (self.max_rounds, 1))
            table *= self.total_failure_budget / self.max_rounds
        return table


def refine_until_decided(true_p: float, target: float, schedule: PrecisionSchedule,
                         round_index: int = 0,
                         rng: np.random.Generator | None = None,
                         ) -> tuple[str, list[AEInterval]]:
    """Shrink eps_k until the comparison with target is decided.

    Returns ('below'|'above'|'converged', trace).  'below' means the whole
    final interval sits under the target; 'converged' means the target is
    still inside the interval at eps_final.
    """
    if round_index >= schedule.max_rounds:
        raise BudgetExhaustedError(
            f"round {round_index} exceeds the {schedule.max_rounds}-round budget"
        )
    alphas = schedule.alpha_table()[round_index]
    trace: list[AEInterval] = []
    for eps_k, alpha_k in zip(schedule.eps_sequence(), alphas):
        interval = ae_interval(true_p, eps_k, alpha_k, rng=rng)
        trace.append(interval)
        if interval.p_high < target:
            return "below", trace
        if interval.p_low > target:
            return "above", trace
    return "converged", trace
