"""The pizza model: unit disc centred at (a, 0), cut by 2n rays from the origin.

Rays sit at ``alpha + k*pi/n`` for k = 0..2n-1.  Slice k (1-based) is bounded
by the rays at ``alpha + (k-1)*pi/n`` and ``alpha + k*pi/n``; odd slices form
the set B, even slices the set A.  The inequity g is area(A) - area(B).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import InvalidOffset, InvalidSliceCount, DomainError, ZeroFrequency
from .quadrature import DEFAULT_ABS_TOL, quad

TWO_PI = 2.0 * math.pi

QUADRATURE = "quadrature"
CLOSED_FORM = "closed_form"
METHODS = (QUADRATURE, CLOSED_FORM)


def _check_offset(a):
    if not 0.0 <= a < 1.0:
        raise InvalidOffset(f"offset a must satisfy 0 <= a < 1, got {a}")


@dataclass(frozen=True)
class PizzaConfig:
    """Slicing geometry ``(alpha, a, n)``; alpha is reduced into [0, 2*pi)."""

    alpha: float
    a: float
    n: int

    def __post_init__(self):
        _check_offset(self.a)
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise InvalidSliceCount(f"n must be a positive integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        alpha = math.fmod(float(self.alpha), TWO_PI)
        if alpha < 0.0:
            alpha += TWO_PI
        if alpha >= TWO_PI:  # fmod of a tiny negative number can round up to 2*pi
            alpha = 0.0
        object.__setattr__(self, "alpha", alpha)

    @property
    def half_angle(self) -> float:
        """Angular width pi/n of one slice."""
        return math.pi / self.n

    def slice_bounds(self, k: int) -> Tuple[float, float]:
        if not 1 <= k <= 2 * self.n:
            raise DomainError(f"slice index must be in 1..{2 * self.n}, got {k}")
        w = self.half_angle
        return self.alpha + (k - 1) * w, self.alpha + k * w


@dataclass(frozen=True)
class SliceAreaReport:
    areas: Tuple[float, ...]
    even_total: float
    odd_total: float
    inequity: float


def radius(theta, a):
    """Distance from the origin to the crust along direction ``theta``.

    Works elementwise on numpy arrays.
    """
    _check_offset(a)
    s = np.sin(theta)
    return a * np.cos(theta) + np.sqrt(1.0 - a * a * s * s)


def _area_antiderivative(theta, a):
    # d/dtheta of this equals radius(theta, a)**2.  |a sin(theta)| < 1, so
    # asin stays on its principal branch and needs no unwrapping.
    s = math.sin(theta)
    root = math.sqrt(1.0 - a * a * s * s)
    return theta + 0.5 * a * a * math.sin(2.0 * theta) + a * s * root + math.asin(a * s)


def slice_area_closed_form(cfg: PizzaConfig, k: int) -> float:
    lo, hi = cfg.slice_bounds(k)
    return 0.5 * (_area_antiderivative(hi, cfg.a) - _area_antiderivative(lo, cfg.a))


def slice_area_quadrature(cfg: PizzaConfig, k: int, abs_tol: float = DEFAULT_ABS_TOL) -> float:
    lo, hi = cfg.slice_bounds(k)
    a = cfg.a
    res = quad(lambda t: radius(t, a) ** 2, lo, hi, abs_tol=abs_tol)
    return 0.5 * res.value


def _area_fn(method):
    if method == QUADRATURE:
        return slice_area_quadrature
    if method == CLOSED_FORM:
        return slice_area_closed_form
    raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")


def slice_areas(cfg: PizzaConfig, method: str = CLOSED_FORM) -> SliceAreaReport:
    area = _area_fn(method)
    areas = tuple(area(cfg, k) for k in range(1, 2 * cfg.n + 1))
    even = math.fsum(areas[1::2])
    odd = math.fsum(areas[0::2])
    return SliceAreaReport(areas, even, odd, even - odd)


def inequity_direct(cfg: PizzaConfig, method: str = QUADRATURE) -> float:
    """Even-slice area minus odd-slice area, computed slice by slice."""
    return slice_areas(cfg, method).inequity


def step_function(theta: float, cfg: PizzaConfig) -> int:
    """+1 on even-numbered slices, -1 on odd ones; endpoints take the right limit."""
    t = math.fmod(theta - cfg.alpha, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    k = int(t // cfg.half_angle) + 1
    return 1 if k % 2 == 0 else -1


def step_fourier_coefficient_numeric(m: int, cfg: PizzaConfig) -> complex:
    """Integral of s(theta) * exp(-i m theta) over one period.

    Summed slice by slice from the exact antiderivative of exp(-i m theta).
    """
    if m == 0:
        raise ZeroFrequency("m must be nonzero")
    total = 0j
    for k in range(1, 2 * cfg.n + 1):
        lo, hi = cfg.slice_bounds(k)
        piece = (cmath.exp(-1j * m * hi) - cmath.exp(-1j * m * lo)) / (-1j * m)
        total += piece if k % 2 == 0 else -piece
    return total


def step_fourier_coefficient_lemma(m: int, cfg: PizzaConfig) -> complex:
    """Closed form of the same integral: -4n/(m i) e^{-i m alpha} for m/n odd, else 0."""
    if m == 0:
        raise ZeroFrequency("m must be nonzero")
    n = cfg.n
    if m % n != 0 or (m // n) % 2 == 0:
        return 0j
    return (-4.0 * n / (m * 1j)) * cmath.exp(-1j * m * cfg.alpha)
