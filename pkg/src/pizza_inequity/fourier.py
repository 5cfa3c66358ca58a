"""Series representation of the pizza inequity.

    f(alpha, a, n) = g(alpha, a, n) / a
                   = sum over m = n, 3n, 5n, ... of (4n / (pi m)) P_m(a) sin(m alpha)

    P_m(x) = sum_{j >= 1} c_{2j}(m) x^{2j}

The coefficients c_{2j}(m) are exact rational multiples of pi, built from
integer binomials and the half-integer binomial C(1/2, j).  Every nonzero
coefficient of P_m shares the sign (-1)^((m+1)/2), and |c_{2j}(m)| <= pi/8.
That uniform bound gives the geometric tail estimates used to truncate both
the j-sum and the m-sum rigorously.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from .errors import (BudgetExhausted, EvenN, InvalidCoefficientIndex,
                     InvalidOffset, InvalidSliceCount, NEqualsOne, NearSingular)
from .geometry import PizzaConfig
from .quadrature import quad

COEFFICIENT_BOUND = math.pi / 8  # |c_{2j}(m)| <= |c_2(3)| = pi/8
NEAR_SINGULAR_A = 0.999


def binomial(t: int, u: int) -> int:
    """Integer C(t, u), zero when u < 0 or u > t."""
    if u < 0 or u > t:
        return 0
    return math.comb(t, u)


_half_binomials = [Fraction(1)]
_half_lock = threading.Lock()


def half_binomial(j: int) -> Fraction:
    """Exact C(1/2, j) from C(1/2, j+1) = C(1/2, j) (1/2 - j) / (j + 1)."""
    if j < 0:
        raise InvalidCoefficientIndex(f"j must be nonnegative, got {j}")
    with _half_lock:
        while len(_half_binomials) <= j:
            i = len(_half_binomials) - 1
            _half_binomials.append(_half_binomials[i] * (Fraction(1, 2) - i) / (i + 1))
        return _half_binomials[j]


@dataclass(frozen=True)
class CoefficientKey:
    """Index of c_{2j}(m): the coefficient of x^{2j} in P_m.

    ``n`` is optional; when given, m must be an odd multiple of it.
    """

    m: int
    j: int
    n: Optional[int] = None

    def __post_init__(self):
        if self.m < 3 or self.m % 2 == 0:
            raise InvalidCoefficientIndex(f"m must be odd and >= 3, got {self.m}")
        if self.j < 1:
            raise InvalidCoefficientIndex(f"j must be >= 1, got {self.j}")
        if self.n is not None:
            _check_n(self.n)
            if self.m % self.n != 0 or (self.m // self.n) % 2 == 0:
                raise InvalidCoefficientIndex(
                    f"m={self.m} is not an odd multiple of n={self.n}")


@dataclass(frozen=True)
class CoefficientValue:
    """c_{2j}(m) = multiplier * pi, with ``multiplier`` exact."""

    multiplier: Fraction
    value: float
    sign: int
    is_leading: bool


@dataclass(frozen=True)
class TruncationPolicy:
    target_abs_error: float = 1e-12
    max_j_per_m: int = 10_000
    max_m_terms: int = 1_000

    def __post_init__(self):
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class SeriesResult:
    value: float
    truncation_bound: float
    terms_used: Dict[str, int] = field(default_factory=dict)


def coefficient_sign(m: int) -> int:
    return 1 if ((m + 1) // 2) % 2 == 0 else -1


def _multiplier(m: int, j: int) -> Fraction:
    diff = binomial(2 * j, (2 * j - m + 1) // 2) - binomial(2 * j, (2 * j - m - 1) // 2)
    return coefficient_sign(m) * abs(half_binomial(j)) * diff / Fraction(4) ** j


def coefficient_closed_form(key: CoefficientKey) -> CoefficientValue:
    mult = _multiplier(key.m, key.j)
    sign = (mult > 0) - (mult < 0)
    return CoefficientValue(mult, float(mult) * math.pi, sign, 2 * key.j == key.m - 1)


def coefficient_numeric(key: CoefficientKey, tol: float = 1e-13) -> float:
    """c_{2j}(m) from its defining integral; an oracle for the closed form only."""
    m, j = key.m, key.j
    res = quad(lambda t: np.cos(t) * np.cos(m * t) * np.sin(t) ** (2 * j),
               0.0, 2 * math.pi, abs_tol=tol)
    return (-1) ** j * float(half_binomial(j)) * res.value


def leading_coefficient(m: int) -> CoefficientValue:
    """c_{m-1}(m) = (-1)^((m+1)/2) (pi / 2^(m-1)) |C(1/2, (m-1)/2)|."""
    if m < 3 or m % 2 == 0:
        raise InvalidCoefficientIndex(f"m must be odd and >= 3, got {m}")
    mult = coefficient_sign(m) * abs(half_binomial((m - 1) // 2)) / Fraction(2) ** (m - 1)
    return CoefficientValue(mult, float(mult) * math.pi, coefficient_sign(m), True)


def _check_n(n):
    if n == 1:
        raise NEqualsOne("n must exceed 1")
    if n < 1:
        raise InvalidSliceCount(f"n must be a positive odd integer, got {n}")
    if n % 2 == 0:
        raise EvenN(f"the series needs odd n, got {n}")


def _check_series_offset(a):
    if not 0.0 < a < 1.0:
        raise InvalidOffset(f"offset a must satisfy 0 < a < 1, got {a}")
    if a >= NEAR_SINGULAR_A:
        raise NearSingular(f"a={a} is too close to 1 (limit {NEAR_SINGULAR_A})")


def _j_tail(a2: float, last_j: int) -> float:
    # pi/8 * sum_{j > last_j} a^{2j}
    return COEFFICIENT_BOUND * a2 ** (last_j + 1) / (1.0 - a2)


def _scaled_leading(m: int) -> Tuple[float, int]:
    """|c_{m-1}(m)| / pi as (x, e) with value x * 2**e, computed exactly then rounded.

    |C(1/2, h)| / 4^h = C(2h, h) / ((2h - 1) 16^h) for h = (m - 1) / 2 >= 1.
    """
    h = (m - 1) // 2
    num = math.comb(2 * h, h)
    den = (2 * h - 1) << (4 * h)
    e = num.bit_length() - den.bit_length()
    x = num / (den << e) if e >= 0 else (num << -e) / den
    return x, e


def _sum_p_m(a: float, m: int, allotment: float, max_j: int) -> Tuple[float, float, int]:
    # Walks j upward from the leading index h = (m-1)/2 (c_{2j}(m) = 0 below it)
    # with the exact ratio
    #   c_{2j+2}(m) / c_{2j}(m) = (2j-1)(2j+1) / (4 (j-h+1)(j+h+2)).
    # The coefficient is carried as x * 2**e so that the tiny leading values
    # of large m cannot underflow before the run climbs back into range.
    a2 = a * a
    h = (m - 1) // 2
    x, e = _scaled_leading(m)
    sign = coefficient_sign(m)
    j = h
    power = a2 ** h
    terms = []
    while True:
        terms.append(sign * math.pi * math.ldexp(x, e) * power)
        tail = _j_tail(a2, j)
        if tail <= allotment:
            break
        if len(terms) >= max_j:
            raise BudgetExhausted(
                f"P_{m}({a}) needs more than {max_j} terms for tail {allotment:.3e}")
        x *= (2 * j - 1) * (2 * j + 1) / (4.0 * (j - h + 1) * (j + h + 2))
        x, de = math.frexp(x)
        e += de
        power *= a2
        j += 1
    return math.fsum(terms), tail, len(terms)


def p_m(a: float, m: int, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesResult:
    _check_series_offset(a)
    if m < 3 or m % 2 == 0:
        raise InvalidCoefficientIndex(f"m must be odd and >= 3, got {m}")
    value, tail, count = _sum_p_m(a, m, policy.target_abs_error, policy.max_j_per_m)
    return SeriesResult(value, tail, {"m": 1, "j": count})


def m_tail_bound(a: float, n: int, next_m: int) -> float:
    """Bound on sum_{m >= next_m} (4n / (pi m)) |P_m(a)|.

    Uses |P_m(a)| <= (pi/8) a^(m-1) / (1 - a^2), n/m <= n/next_m, and a
    geometric series of ratio a^(2n).
    """
    return (n / (2.0 * next_m)) * a ** (next_m - 1) / ((1.0 - a * a) * (1.0 - a ** (2 * n)))


@dataclass(frozen=True)
class WeightedTerms:
    """Precomputed alpha-independent part of the series for fixed (a, n)."""

    ms: Tuple[int, ...]
    weighted: Tuple[float, ...]  # (4n / (pi m)) P_m(a)
    truncation_bound: float
    j_terms: int


@lru_cache(maxsize=512)
def weighted_terms(a: float, n: int, policy: TruncationPolicy = DEFAULT_POLICY) -> WeightedTerms:
    """Per-m terms of the f-series with a total omitted-tail bound.

    Half of the target goes to the m-tail.  The other half is split evenly
    across the retained m-terms, each P_m getting a j-tail allotment scaled
    by the inverse of its weight 4n/(pi m).
    """
    _check_n(n)
    _check_series_offset(a)
    target = policy.target_abs_error
    count = 1
    while m_tail_bound(a, n, (2 * count + 1) * n) > 0.5 * target:
        count += 1
        if count > policy.max_m_terms:
            raise BudgetExhausted(
                f"f-series for a={a}, n={n} needs more than {policy.max_m_terms} m-terms")
    m_tail = m_tail_bound(a, n, (2 * count + 1) * n)

    ms, weighted, j_tails = [], [], []
    j_terms = 0
    for i in range(count):
        m = (2 * i + 1) * n
        weight = 4.0 * n / (math.pi * m)
        allotment = 0.5 * target / (count * weight)
        value, tail, used = _sum_p_m(a, m, allotment, policy.max_j_per_m)
        ms.append(m)
        weighted.append(weight * value)
        j_tails.append(weight * tail)
        j_terms += used
    bound = math.fsum(j_tails) + m_tail
    return WeightedTerms(tuple(ms), tuple(weighted), bound, j_terms)


def _check_cfg(cfg: PizzaConfig):
    _check_n(cfg.n)
    _check_series_offset(cfg.a)


def f_series(cfg: PizzaConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesResult:
    _check_cfg(cfg)
    wt = weighted_terms(cfg.a, cfg.n, policy)
    value = math.fsum(w * math.sin(m * cfg.alpha) for m, w in zip(wt.ms, wt.weighted))
    return SeriesResult(value, wt.truncation_bound, {"m": len(wt.ms), "j": wt.j_terms})


def g_series(cfg: PizzaConfig, policy: TruncationPolicy = DEFAULT_POLICY) -> SeriesResult:
    f = f_series(cfg, policy)
    return SeriesResult(cfg.a * f.value, cfg.a * f.truncation_bound, f.terms_used)
