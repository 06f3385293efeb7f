"""Growth exponents of ``F(sigma + it, alpha)`` on vertical lines."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .degree1 import Degree1Function
from .errors import DomainError, PoleError
from .twist import linear_twist, normalize_alpha

WINDOW = 1.0
SAMPLES = 16


@dataclass(frozen=True)
class GrowthFit:
    mu_hat: float
    fit_residual: float
    mu_plus: float
    mu_minus: float
    heights: tuple
    log_max_plus: tuple
    log_max_minus: tuple

    def __iter__(self):
        yield self.mu_hat
        yield self.fit_residual


def _window_max(F: Degree1Function, alpha: float, sigma: float, t: float) -> float:
    ts = t + np.linspace(0.0, WINDOW, SAMPLES)
    pole_t = -F.theta
    if sigma == 1.0 and np.any(np.abs(ts - pole_t) < 0.05):
        ts = ts + WINDOW  # shifted window away from the pole
    return max(abs(linear_twist(F, complex(sigma, float(u)), alpha).value) for u in ts)


def _slope(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return float(coef[0]), float(math.sqrt(np.mean(resid ** 2)))


def lindelof_estimate(F: Degree1Function, alpha: float, sigma: float, T_max: float = 2.0 ** 13) -> GrowthFit:
    """Least-squares slope of ``log max |F|`` against ``log t`` at ``t = 2^4, ..., T_max``.

    Each sign of ``t`` is fitted on its own and ``mu_hat`` is the larger
    slope; ``fit_residual`` is the larger root-mean-square residual.
    """
    if T_max < 2 ** 8:
        raise DomainError(f"T_max must be at least 256, got {T_max}")
    alpha = normalize_alpha(alpha)
    js = range(4, int(math.floor(math.log2(T_max))) + 1)
    heights = np.array([2.0 ** j for j in js])
    plus, minus = [], []
    for t in heights:
        try:
            plus.append(math.log(_window_max(F, alpha, sigma, t)))
            minus.append(math.log(_window_max(F, alpha, sigma, -t - WINDOW)))
        except PoleError as exc:  # pragma: no cover - windows never reach the pole for |t| >= 16
            raise DomainError(str(exc)) from exc
    x = np.log(heights)
    mp, rp = _slope(x, np.array(plus))
    mm, rm = _slope(x, np.array(minus))
    return GrowthFit(max(mp, mm), max(rp, rm), mp, mm, tuple(heights), tuple(plus), tuple(minus))
