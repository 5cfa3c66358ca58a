"""Exact extremum M_a of f over alpha and the closed-form inequity bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidOffset
from .fourier import (DEFAULT_POLICY, SeriesResult, TruncationPolicy,
                      _check_n, _check_series_offset, f_series, weighted_terms)
from .geometry import PizzaConfig

SCAN_POINTS = 720
STRICT_MARGIN = 1e-15


@dataclass(frozen=True)
class ExtremumReport:
    m_a: float
    argmax_alpha: float
    sign_at_argmax: int
    bound_m: float
    bound_g: float
    truncation_bound: float
    f_at_argmax: float
    scan_max: float
    scan_argmax: float


def below_bound(x: float, bound: float) -> bool:
    """Floating stand-in for the strict ``x < bound``."""
    return x <= bound + STRICT_MARGIN


def _check_bound_args(a, n):
    if not 0.0 < a < 1.0:
        raise InvalidOffset(f"offset a must satisfy 0 < a < 1, got {a}")
    _check_n(n)


def bound_m(a: float, n: int) -> float:
    """Upper bound a^(n-1) / (2 (1 - a^2) (1 - a^(2n))) on M_a."""
    _check_bound_args(a, n)
    return a ** (n - 1) / (2.0 * (1.0 - a * a) * (1.0 - a ** (2 * n)))


def bound_g(a: float, n: int) -> float:
    """Upper bound a^n / (2 (1 - a^2) (1 - a^(2n))) on |g| for every alpha."""
    _check_bound_args(a, n)
    return a ** n / (2.0 * (1.0 - a * a) * (1.0 - a ** (2 * n)))


def m_a(a: float, n: int, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesResult:
    """M_a = sum over odd multiples m of n of (4n / (pi m)) |P_m(a)|.

    Shares the truncation, and therefore the tail bound, of the f-series.
    """
    _check_n(n)
    _check_series_offset(a)
    wt = weighted_terms(a, n, policy)
    value = math.fsum(abs(w) for w in wt.weighted)
    return SeriesResult(value, wt.truncation_bound, {"m": len(wt.ms), "j": wt.j_terms})


def sign_at_argmax(n: int) -> int:
    """Sign of f at alpha = pi/(2n): +1 when n = 3 mod 4, -1 when n = 1 mod 4."""
    _check_n(n)
    return 1 if n % 4 == 3 else -1


def alpha_scan(a: float, n: int, points: int = SCAN_POINTS,
               policy: TruncationPolicy = DEFAULT_POLICY):
    """Evaluate f on ``points`` equispaced angles covering one period 2*pi/n."""
    alphas = np.arange(points) * (2.0 * math.pi / n / points)
    values = np.array([f_series(PizzaConfig(x, a, n), policy).value for x in alphas])
    return alphas, values


def extremum(a: float, n: int, policy: TruncationPolicy = DEFAULT_POLICY,
             scan_points: int = SCAN_POINTS) -> ExtremumReport:
    ma = m_a(a, n, policy)
    argmax = math.pi / (2 * n)
    at = f_series(PizzaConfig(argmax, a, n), policy)
    alphas, values = alpha_scan(a, n, scan_points, policy)
    i = int(np.argmax(np.abs(values)))
    return ExtremumReport(
        m_a=ma.value,
        argmax_alpha=argmax,
        sign_at_argmax=sign_at_argmax(n),
        bound_m=bound_m(a, n),
        bound_g=bound_g(a, n),
        truncation_bound=ma.truncation_bound,
        f_at_argmax=at.value,
        scan_max=float(abs(values[i])),
        scan_argmax=float(alphas[i]),
    )
