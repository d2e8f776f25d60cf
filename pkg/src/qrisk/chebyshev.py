"""Chebyshev basis utilities for definite-parity polynomials.

Threshold polynomials are represented as coefficient vectors over the even
(or odd) Chebyshev subfamily.  Evaluation uses backward (Clenshaw)
recurrence, which stays stable for degrees in the thousands; expanding into
the power basis is never done.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Inputs this close to +-1 are clamped instead of rejected: grid endpoints
# routinely round a few ulp outside the domain.
DOMAIN_SLACK = 1e-12

# |P| may exceed 1 by at most this much before a series is rejected as a
# QSP polynomial.
BOUND_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ChebSeries:
    """Definite-parity Chebyshev series.

    For even parity ``coeffs[k]`` multiplies T_{2k}, so a degree-d series
    carries d/2 + 1 coefficients.  For odd parity ``coeffs[k]`` multiplies
    T_{2k+1}.
    """

    coeffs: np.ndarray
    degree: int
    parity: str = "even"
    _max_abs_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
        object.__setattr__(self, "coeffs", coeffs)
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("series coefficients must be finite")
        if self.parity == "even":
            if self.degree % 2 != 0 or self.degree < 0:
                raise ValueError("even-parity series needs an even nonnegative degree")
            expected = self.degree // 2 + 1
        else:
            if self.degree % 2 != 1:
                raise ValueError("odd-parity series needs an odd degree")
            expected = (self.degree + 1) // 2
        if len(coeffs) != expected:
            raise ValueError(
                f"degree {self.degree} ({self.parity}) needs {expected} coefficients, "
                f"got {len(coeffs)}"
            )

    def max_abs(self, n_points: int | None = None) -> float:
        """Max |P(x)| over a dense Chebyshev verification grid on [-1, 1]."""
        if n_points is None:
            n_points = max(4 * self.degree + 1, 2001)
        key = n_points
        if key not in self._max_abs_cache:
            grid = cheb_grid(n_points)
            self._max_abs_cache[key] = float(np.max(np.abs(eval_series(self, grid))))
        return self._max_abs_cache[key]

    def is_bounded(self, tol: float = BOUND_TOL) -> bool:
        """Boundedness certificate: |P| <= 1 + tol on the verification grid."""
        return self.max_abs() <= 1.0 + tol

    def to_json_dict(self) -> dict:
        return {
            "parity": self.parity,
            "degree": self.degree,
            "coeffs": self.coeffs.tolist(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ChebSeries":
        return cls(
            coeffs=np.asarray(data["coeffs"], dtype=float),
            degree=int(data["degree"]),
            parity=data["parity"],
        )


def cheb_grid(m: int) -> np.ndarray:
    """Chebyshev grid x_j = -cos(j*pi/(M-1)), j = 0..M-1, ascending on [-1, 1]."""
    if m < 2:
        raise ValueError(f"grid size must be >= 2, got {m}")
    return -np.cos(np.arange(m) * np.pi / (m - 1))


def _clamp_domain(x: np.ndarray) -> np.ndarray:
    if np.any(np.abs(x) > 1.0 + DOMAIN_SLACK):
        worst = float(np.max(np.abs(x)))
        raise ValueError(f"evaluation point outside [-1, 1]: |x| = {worst}")
    return np.clip(x, -1.0, 1.0)


def eval_series(series: ChebSeries, x) -> np.ndarray | float:
    """Evaluate a definite-parity Chebyshev series at x in [-1, 1].

    Even series use the identity T_{2k}(x) = T_k(2x^2 - 1) and run Clenshaw
    backward recurrence on the half-length series; odd series run Clenshaw
    on the full interleaved coefficient vector.
    """
    scalar = np.isscalar(x)
    xv = _clamp_domain(np.atleast_1d(np.asarray(x, dtype=float)))
    if series.parity == "even":
        y = 2.0 * xv * xv - 1.0
        out = _clenshaw(series.coeffs, y)
    else:
        full = np.zeros(series.degree + 1)
        full[1::2] = series.coeffs
        out = _clenshaw(full, xv)
    return float(out[0]) if scalar else out


def _clenshaw(coeffs: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Backward recurrence for sum_k c_k T_k(y)."""
    b1 = np.zeros_like(y)
    b2 = np.zeros_like(y)
    y2 = 2.0 * y
    for c in coeffs[:0:-1]:
        b1, b2 = y2 * b1 - b2 + c, b1
    return y * b1 - b2 + coeffs[0]


def basis_matrix(points, degree: int, parity: str = "even") -> np.ndarray:
    """Matrix A with A[j, k] = T_{2k}(x_j) (even) or T_{2k+1}(x_j) (odd).

    Built from the trigonometric definition T_n(cos t) = cos(n t), which is
    exactly bounded by 1 and well conditioned for LP constraint rows.
    """
    x = _clamp_domain(np.atleast_1d(np.asarray(points, dtype=float)))
    if parity == "even":
        if degree % 2 != 0:
            raise ValueError(f"even parity requires even degree, got {degree}")
        orders = 2 * np.arange(degree // 2 + 1)
    elif parity == "odd":
        if degree % 2 != 1:
            raise ValueError(f"odd parity requires odd degree, got {degree}")
        orders = 2 * np.arange((degree + 1) // 2) + 1
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    theta = np.arccos(x)
    return np.cos(np.outer(theta, orders))
