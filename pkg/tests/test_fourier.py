import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pizza_inequity.errors import (BudgetExhausted, EvenN, InvalidCoefficientIndex,
                                   InvalidOffset, NEqualsOne, NearSingular)
from pizza_inequity.fourier import (CoefficientKey, TruncationPolicy, binomial,
                                    coefficient_closed_form, coefficient_numeric,
                                    f_series, g_series, half_binomial,
                                    leading_coefficient, p_m, weighted_terms)
from pizza_inequity.geometry import CLOSED_FORM, QUADRATURE, PizzaConfig, inequity_direct
from pizza_inequity.quadrature import quad

TWO_PI = 2 * math.pi


def half_binomial_by_product(j):
    out = Fraction(1)
    for i in range(j):
        out *= Fraction(1, 2) - i
    return out / math.factorial(j)


def trig_integral_over_pi(m, j):
    """(1/pi) * integral of cos t cos mt sin^(2j) t over [0, 2pi], exactly.

    Multiplies out the exponential polynomials with integer coefficients and
    keeps the constant term.
    """
    poly = {0: 1}

    def mul(p, q):
        out = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return out

    for _ in range(2 * j):
        poly = mul(poly, {1: 1, -1: -1})  # e^{it} - e^{-it} = 2i sin t
    poly = mul(poly, {1: 1, -1: 1})       # 2 cos t
    poly = mul(poly, {m: 1, -m: 1})       # 2 cos mt
    # product = 4 (2i)^{2j} cos t cos mt sin^{2j} t; constant term integrates to 2pi
    return Fraction(2 * poly.get(0, 0), 4 * (-4) ** j)


def test_half_binomial_values():
    assert half_binomial(0) == 1
    assert half_binomial(1) == Fraction(1, 2)
    assert half_binomial(2) == Fraction(-1, 8)
    assert abs(half_binomial(3)) == Fraction(1, 16)
    for j in range(40):
        assert half_binomial(j) == half_binomial_by_product(j)
        if j >= 1:
            assert (-1) ** j * half_binomial(j) < 0


def test_binomial_zero_convention():
    assert binomial(4, -1) == 0
    assert binomial(4, 5) == 0
    assert binomial(4, 2) == 6


@pytest.mark.parametrize("m,j,expected", [
    (3, 1, Fraction(1, 8)),
    (3, 2, Fraction(3, 128)),
    (5, 2, Fraction(-1, 128)),
    (5, 1, Fraction(0)),
])
def test_closed_form_reported_values(m, j, expected):
    c = coefficient_closed_form(CoefficientKey(m, j))
    assert c.multiplier == expected
    assert c.value == float(expected) * math.pi
    assert c.sign == (expected > 0) - (expected < 0)


@pytest.mark.parametrize("m", [3, 5, 7, 9, 15, 21])
def test_closed_form_matches_exact_enumeration(m):
    for j in range(1, 13):
        expected = (-1) ** j * half_binomial(j) * trig_integral_over_pi(m, j)
        assert coefficient_closed_form(CoefficientKey(m, j)).multiplier == expected


@pytest.mark.parametrize("m,j,tol", [(3, 1, 1e-12), (9, 4, 1e-11), (3, 10, 1e-10)])
def test_numeric_coefficient(m, j, tol):
    key = CoefficientKey(m, j)
    assert coefficient_numeric(key) == pytest.approx(coefficient_closed_form(key).value, abs=tol)


def test_coefficient_structure_grid():
    for n in (3, 5, 7):
        for m in (n, 3 * n, 5 * n):
            for j in range(1, 40):
                c = coefficient_closed_form(CoefficientKey(m, j, n))
                assert abs(c.value) <= math.pi / 8
                assert c.is_leading == (2 * j == m - 1)
                if 2 * j < m - 1:
                    assert c.sign == 0
                else:
                    assert c.sign == (-1) ** ((m + 1) // 2)


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11, 15, 21, 45])
def test_leading_coefficient(m):
    lead = leading_coefficient(m)
    assert lead == coefficient_closed_form(CoefficientKey(m, (m - 1) // 2))
    assert lead.sign == (-1) ** ((m + 1) // 2)


def test_leading_coefficient_examples():
    assert leading_coefficient(3).multiplier == Fraction(1, 8)
    assert leading_coefficient(5).multiplier == Fraction(-1, 128)
    assert leading_coefficient(7).sign == 1


def test_key_validation():
    for m, j in [(4, 1), (1, 1), (3, 0)]:
        with pytest.raises(InvalidCoefficientIndex):
            CoefficientKey(m, j)
    with pytest.raises(InvalidCoefficientIndex):
        CoefficientKey(9, 1, n=5)
    with pytest.raises(InvalidCoefficientIndex):
        CoefficientKey(21, 1, n=5)


def test_key_validation_odd_multiple():
    assert CoefficientKey(9, 1, n=3).m == 9
    with pytest.raises(EvenN):
        CoefficientKey(9, 1, n=4)


def p_m_by_quadrature(a, m, tol=1e-14):
    # P_m(a) is the integral of cos t cos mt sqrt(1 - a^2 sin^2 t); the j=0 part integrates to 0
    return quad(lambda t: np.cos(t) * np.cos(m * t) * np.sqrt(1 - a * a * np.sin(t) ** 2),
                0.0, TWO_PI, abs_tol=tol).value


@pytest.mark.parametrize("a", [0.1, 0.5, 0.8, 0.95])
@pytest.mark.parametrize("m", [3, 5, 9, 15])
def test_p_m_matches_integral(a, m):
    res = p_m(a, m)
    assert res.truncation_bound <= 1e-12
    assert res.value == pytest.approx(p_m_by_quadrature(a, m), abs=1e-12)
    assert abs(res.value) <= (math.pi / 8) * a ** (m - 1) / (1 - a * a)


def test_p_m_matches_numeric_coefficients():
    numeric = math.fsum(coefficient_numeric(CoefficientKey(3, j)) * 0.25 ** j for j in range(1, 30))
    assert p_m(0.5, 3).value == pytest.approx(numeric, abs=1e-11)


def test_p_m_small_a_limit():
    a = 1e-4
    assert p_m(a, 3).value / a ** 2 == pytest.approx(math.pi / 8, rel=1e-7)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 0.98), st.sampled_from([3, 5, 7, 9, 11, 13, 15, 21]))
def test_p_m_sign(a, m):
    v = p_m(a, m).value
    if v != 0.0:  # can underflow for tiny a and large m
        assert np.sign(v) == (-1) ** ((m + 1) // 2)


def test_p_m_errors():
    with pytest.raises(NearSingular):
        p_m(0.9995, 3)
    with pytest.raises(InvalidOffset):
        p_m(0.0, 3)
    with pytest.raises(BudgetExhausted):
        p_m(0.99, 3, TruncationPolicy(max_j_per_m=10))


def test_series_domain_errors():
    with pytest.raises(EvenN):
        f_series(PizzaConfig(0.3, 0.5, 4))
    with pytest.raises(NEqualsOne):
        f_series(PizzaConfig(0.3, 0.5, 1))
    with pytest.raises(InvalidOffset):
        g_series(PizzaConfig(0.3, 0.0, 3))
    with pytest.raises(NearSingular):
        g_series(PizzaConfig(0.3, 0.999, 3))
    with pytest.raises(BudgetExhausted):
        f_series(PizzaConfig(0.3, 0.9, 3), TruncationPolicy(max_m_terms=3))


@pytest.mark.parametrize("a,n", [(0.5, 3), (0.9, 3), (0.3, 9), (0.95, 5)])
def test_f_series_zero_at_zero(a, n):
    assert f_series(PizzaConfig(0.0, a, n)).value == 0.0


@pytest.mark.parametrize("target", [1e-6, 1e-10, 1e-12, 1e-14])
def test_truncation_bound_meets_target(target):
    for a in (0.1, 0.5, 0.9):
        res = f_series(PizzaConfig(0.4, a, 5), TruncationPolicy(target_abs_error=target))
        assert 0 < res.truncation_bound <= target


def test_f_series_against_geometry():
    cfg = PizzaConfig(0.7, 0.4, 5)
    assert f_series(cfg).value == pytest.approx(inequity_direct(cfg) / 0.4, abs=1e-9)


def test_g_series_against_geometry():
    cfg = PizzaConfig(0.7, 0.5, 3)
    g = g_series(cfg)
    for method in (QUADRATURE, CLOSED_FORM):
        assert abs(g.value - inequity_direct(cfg, method)) <= g.truncation_bound + 1e-12


def test_loose_policy_still_honest():
    # with a coarse target the truncation error must stay inside the reported bound
    for a in (0.3, 0.7, 0.9):
        cfg = PizzaConfig(1.0, a, 3)
        g = g_series(cfg, TruncationPolicy(target_abs_error=1e-4))
        assert abs(g.value - inequity_direct(cfg, CLOSED_FORM)) <= g.truncation_bound


def test_weighted_terms_cover_only_odd_multiples():
    wt = weighted_terms(0.8, 5)
    assert all(m % 5 == 0 and (m // 5) % 2 == 1 for m in wt.ms)
    assert list(wt.ms) == sorted(wt.ms)


@settings(max_examples=80, deadline=None)
@given(st.floats(0, TWO_PI), st.floats(0.05, 0.95), st.sampled_from([3, 5, 7, 9]))
def test_series_symmetries(alpha, a, n):
    f = f_series(PizzaConfig(alpha, a, n))
    g = g_series(PizzaConfig(alpha, a, n))
    tb = f.truncation_bound
    assert abs(f_series(PizzaConfig(-alpha, a, n)).value + f.value) <= 2 * tb
    assert abs(f_series(PizzaConfig(alpha + TWO_PI / n, a, n)).value - f.value) <= 2 * tb
    assert abs(g_series(PizzaConfig(alpha + math.pi / n, a, n)).value + g.value) <= 2 * g.truncation_bound
    assert abs(g_series(PizzaConfig(alpha + TWO_PI / n, a, n)).value - g.value) <= 2 * g.truncation_bound


@pytest.mark.parametrize("m", [3, 5, 21, 63, 155])
@pytest.mark.parametrize("a", [0.3, 0.7, 0.9])
def test_p_m_recurrence_matches_exact_coefficients(m, a):
    res = p_m(a, m, TruncationPolicy(target_abs_error=1e-15))
    h = (m - 1) // 2
    exact = math.fsum(coefficient_closed_form(CoefficientKey(m, j)).value * a ** (2 * j)
                      for j in range(h, h + res.terms_used["j"]))
    assert res.value == pytest.approx(exact, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("m,a", [(201, 0.97), (1201, 0.995)])
def test_p_m_large_m(m, a):
    res = p_m(a, m)
    assert res.value != 0.0
    assert res.value == pytest.approx(p_m_by_quadrature(a, m, tol=1e-12), abs=2e-12)


def test_leading_coefficient_underflow_is_survived():
    mpmath = pytest.importorskip("mpmath")
    m, a = 1101, 0.98
    # the leading coefficient is below the smallest double
    assert float(leading_coefficient(m).multiplier) == 0.0
    res = p_m(a, m)
    h = (m - 1) // 2
    with mpmath.workdps(40):
        a2 = mpmath.mpf(a) ** 2
        mults = [coefficient_closed_form(CoefficientKey(m, j)).multiplier
                 for j in range(h, h + res.terms_used["j"])]
        exact = mpmath.fsum(c.numerator / mpmath.mpf(c.denominator) * a2 ** j
                            for j, c in enumerate(mults, start=h)) * mpmath.pi
        assert res.value == pytest.approx(float(exact), rel=1e-11)
