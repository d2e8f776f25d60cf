"""Canonical amplitude-estimation outcome law for the digitized VaR encoding.

Encoding a scenario price V into an m-qubit register via canonical QAE
yields a distribution over grid angles theta/pi = j/M rather than the exact
value.  The comparator then acts on the noisy register, so each scenario
leaks some probability across the threshold.  All comparisons here happen
in theta/pi units on the folded grid [0, 1/2].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Below this |sin|, the outcome kernel is at its removable singularity and
# evaluates to its analytic limit 1.
_SINGULARITY_EPS = 1e-15


@dataclass(frozen=True)
class QaeGrid:
    """m-qubit estimation grid over theta/pi in [0, 1)."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"need at least one qubit, got m={self.m}")

    @property
    def size(self) -> int:
        return 2**self.m


def _phase_kernel(m_size: int, x: float) -> np.ndarray:
    """Outcome pmf q_j(x) = sin^2(M(j/M - x)pi) / (M^2 sin^2((j/M - x)pi)).

    This is the squared Dirichlet kernel of an exact phase x measured on an
    M-point grid; it sums to 1 over j for any x.
    """
    j = np.arange(m_size)
    diff = j / m_size - x
    s = np.sin(np.pi * diff)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.sin(m_size * np.pi * diff) ** 2 / (m_size**2 * s**2)
    q[np.abs(s) < _SINGULARITY_EPS] = 1.0
    return q


def value_to_phase(value: float) -> float:
    """Map an amplitude-encoded value V to theta/pi = arcsin(sqrt(V))/pi."""
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"value must lie in [0, 1], got {value}")
    return float(np.arcsin(np.sqrt(value)) / np.pi)


def qae_pmf(value: float, m: int) -> np.ndarray:
    """Folded canonical-QAE outcome pmf for one scenario value.

    Canonical QAE produces the phases theta/pi and 1 - theta/pi with equal
    weight; mirrored indices j and M - j are summed so the returned pmf
    lives on the folded grid j/M, j = 0..M/2, covering theta/pi in [0, 1/2].
    """
    grid = QaeGrid(m)
    x = value_to_phase(value)
    m_size = grid.size
    full = 0.5 * (_phase_kernel(m_size, x) + _phase_kernel(m_size, 1.0 - x))
    half = m_size // 2
    folded = np.zeros(half + 1)
    folded[0] = full[0]
    folded[half] = full[half]
    folded[1:half] = full[1:half] + full[-1:half:-1]
    return folded


def prob_below_qae(scenario_set, m: int, mu: float) -> float:
    """Probability the comparator flags theta_i <= arcsin(sqrt(mu)).

    Aggregates, over scenarios, the folded-pmf mass at grid angles at or
    below the threshold angle (ties count as below).
    """
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    grid = QaeGrid(m)
    m_size = grid.size
    x_mu = value_to_phase(mu)
    # folded grid index of the last angle j/M <= x_mu, with float-safe slack
    cutoff = int(np.floor(x_mu * m_size + 1e-12))
    cutoff = min(cutoff, m_size // 2)
    total = 0.0
    for value, p in zip(scenario_set.values, scenario_set.probs):
        total += p * float(qae_pmf(value, m)[: cutoff + 1].sum())
    return total


def prob_below_qae_batch(values: np.ndarray, probs: np.ndarray, m: int, mu: float,
                         chunk: int = 512) -> float:
    """Vectorized prob_below_qae over raw value/prob arrays.

    Identical semantics to prob_below_qae; used by the bisection driver
    where the per-scenario python loop would dominate.
    """
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    m_size = 2**m
    x_mu = value_to_phase(mu)
    cutoff = min(int(np.floor(x_mu * m_size + 1e-12)), m_size // 2)
    j = np.arange(m_size)
    total = 0.0
    for lo in range(0, len(values), chunk):
        v = values[lo:lo + chunk]
        p = probs[lo:lo + chunk]
        x = np.arcsin(np.sqrt(v)) / np.pi
        for phase in (x, 1.0 - x):
            diff = j[None, :] / m_size - phase[:, None]
            s = np.sin(np.pi * diff)
            with np.errstate(divide="ignore", invalid="ignore"):
                q = np.sin(m_size * np.pi * diff) ** 2 / (m_size**2 * s**2)
            q[np.abs(s) < _SINGULARITY_EPS] = 1.0
            # fold indices above M/2 onto M - j, then take mass below cutoff
            below = q[:, : cutoff + 1].sum(axis=1)
            if cutoff >= 1:
                lo_mirror = max(m_size - cutoff, m_size // 2 + 1)
                below += q[:, lo_mirror:].sum(axis=1)
            total += 0.5 * float(np.dot(p, below))
    return total


def qae_encoding_oracle_calls(m: int) -> int:
    """Pricing-oracle invocations for one m-qubit QAE encoding circuit: 2^m + 1."""
    if m < 1:
        raise ValueError(f"need at least one qubit, got m={m}")
    return 2**m + 1
