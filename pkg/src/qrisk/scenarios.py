"""Scenario-price generation.

Scenario sets hold normalized portfolio values V(s_i) in [0, 1] with
occurrence probabilities.  Generators cover the simulation protocol (normal
sampling, pricing noise) and a toy single-asset expectation-value pricing
model driven by relative spot tweaks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

PROB_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ScenarioSet:
    """Scenario values in [0, 1] with normalized probabilities.

    ``encoding`` optionally carries the tweak vector that defines each
    scenario; ``clamp_count`` records how many raw values were clamped into
    [0, 1] during generation.
    """

    values: np.ndarray
    probs: np.ndarray
    encoding: np.ndarray | None = None
    clamp_count: int = 0

    def __post_init__(self):
        values = np.atleast_1d(np.asarray(self.values, dtype=float))
        probs = np.atleast_1d(np.asarray(self.probs, dtype=float))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)
        if values.shape != probs.shape:
            raise ValueError("values and probs must have matching lengths")
        if len(values) == 0:
            raise ValueError("scenario set must be nonempty")
        if np.any(probs < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities must sum to 1, got {probs.sum()!r}")
        if np.any(values < 0) or np.any(values > 1):
            raise ValueError("scenario values must lie in [0, 1]")
        if self.encoding is not None:
            enc = np.atleast_2d(np.asarray(self.encoding, dtype=float))
            if enc.shape[0] != len(values):
                raise ValueError("encoding must supply one tweak vector per scenario")
            object.__setattr__(self, "encoding", enc)

    def __len__(self) -> int:
        return len(self.values)


def _clamp_unit(raw: np.ndarray) -> tuple[np.ndarray, int]:
    clamped = np.clip(raw, 0.0, 1.0)
    return clamped, int(np.sum((raw < 0.0) | (raw > 1.0)))


def sample_normal_scenarios(n: int, mean: float, sd: float, seed: int) -> ScenarioSet:
    """Draw n i.i.d. normal scenario prices, clamped to [0, 1], uniform probs."""
    if n < 1:
        raise ValueError(f"need at least one scenario, got {n}")
    if sd <= 0:
        raise ValueError(f"sd must be positive, got {sd}")
    rng = np.random.default_rng(seed)
    values, clamps = _clamp_unit(rng.normal(mean, sd, size=n))
    return ScenarioSet(values=values, probs=np.full(n, 1.0 / n), clamp_count=clamps)


def add_pricing_noise(scenario_set: ScenarioSet, eps_p: float, seed: int) -> ScenarioSet:
    """Perturb each value with independent N(0, eps_p^2) pricing noise."""
    if eps_p < 0:
        raise ValueError(f"eps_p must be nonnegative, got {eps_p}")
    if eps_p == 0:
        return scenario_set
    rng = np.random.default_rng(seed)
    raw = scenario_set.values + rng.normal(0.0, eps_p, size=len(scenario_set))
    values, clamps = _clamp_unit(raw)
    return ScenarioSet(
        values=values,
        probs=scenario_set.probs,
        encoding=scenario_set.encoding,
        clamp_count=scenario_set.clamp_count + clamps,
    )


@dataclass(frozen=True)
class PricingModel:
    """Single-asset lognormal pricing model for a call-style payoff.

    ``value_scale`` normalizes expected prices into [0, 1]; ``path_points``
    controls the terminal-distribution discretization.
    """

    spot: float
    vol: float
    rate: float
    maturity: float
    strike: float = 0.0
    path_points: int = 1000
    value_scale: float = 1.0

    def __post_init__(self):
        if self.spot <= 0:
            raise ValueError("spot must be positive")
        if self.vol < 0:
            raise ValueError("vol must be nonnegative")
        if self.maturity <= 0:
            raise ValueError("maturity must be positive")
        if self.strike < 0:
            raise ValueError("strike must be nonnegative")
        if self.path_points < 1:
            raise ValueError("path_points must be >= 1")
        if self.value_scale <= 0:
            raise ValueError("value_scale must be positive")


def _terminal_nodes(model: PricingModel, tweak: float) -> np.ndarray:
    """Equal-probability terminal prices at mid-quantiles of the lognormal.

    Mid-quantile nodes (j + 1/2)/n make the node probabilities exactly
    uniform and the expectation error O(1/n^2) for smooth payoffs.
    """
    if 1.0 + tweak <= 0:
        raise ValueError(f"tweak {tweak} would make the spot nonpositive")
    s0 = model.spot * (1.0 + tweak)
    if model.vol == 0.0:
        return np.array([s0 * np.exp(model.rate * model.maturity)])
    u = (np.arange(model.path_points) + 0.5) / model.path_points
    z = norm.ppf(u)
    drift = (model.rate - 0.5 * model.vol**2) * model.maturity
    return s0 * np.exp(drift + model.vol * np.sqrt(model.maturity) * z)


def expected_discounted_payoff(model: PricingModel, tweak: float) -> float:
    """E[e^{-rT} max(S_T - K, 0)] under the tweaked spot, unnormalized."""
    nodes = _terminal_nodes(model, tweak)
    payoff = np.maximum(nodes - model.strike, 0.0)
    return float(np.exp(-model.rate * model.maturity) * payoff.mean())


def price_expectation(model: PricingModel, tweak: float = 0.0) -> float:
    """Normalized expected price in [0, 1] for a single tweaked instrument."""
    raw = expected_discounted_payoff(model, tweak) / model.value_scale
    return float(np.clip(raw, 0.0, 1.0))


def scenarios_from_tweaks(models, tweaks, probs) -> ScenarioSet:
    """Price a portfolio under spot-tweak scenarios.

    ``models`` may be a single PricingModel or a sequence (one per
    instrument); portfolio values are summed payoffs normalized by the
    combined value scale.  Tweak vectors are kept as the scenario encoding;
    only the first risk factor prices.
    """
    if isinstance(models, PricingModel):
        models = [models]
    tweaks = np.atleast_1d(np.asarray(tweaks, dtype=float))
    probs = np.atleast_1d(np.asarray(probs, dtype=float))
    if tweaks.ndim == 1:
        tweak_vectors = tweaks[:, None]
    else:
        tweak_vectors = tweaks
    if len(tweak_vectors) != len(probs):
        raise ValueError("tweaks and probs must have matching lengths")
    if abs(probs.sum() - 1.0) > PROB_TOL or np.any(probs < 0):
        raise ValueError("scenario probabilities must be normalized and nonnegative")
    total_scale = sum(m.value_scale for m in models)
    raw = np.array(
        [
            sum(expected_discounted_payoff(m, t[0]) for m in models) / total_scale
            for t in tweak_vectors
        ]
    )
    values, clamps = _clamp_unit(raw)
    return ScenarioSet(
        values=values, probs=probs, encoding=tweak_vectors, clamp_count=clamps
    )
