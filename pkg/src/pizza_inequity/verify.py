"""Grid and random-sample cross-checks behind ``pizza-inequity verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from . import bounds, geometry
from .fourier import (COEFFICIENT_BOUND, DEFAULT_POLICY, CoefficientKey,
                      coefficient_closed_form, coefficient_numeric, f_series,
                      g_series)
from .geometry import PizzaConfig

SEED = 20240611


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    worst: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, excess: float, context: str):
        self.checked += 1
        self.worst = max(self.worst, excess)
        if not ok:
            self.failures.append(context)


@dataclass(frozen=True)
class Level:
    ns: tuple
    j_max: int
    a_grid: tuple
    n_grid: tuple
    alphas: int
    random_cases: int
    scan_points: int


LEVELS = {
    "quick": Level(ns=(3, 5), j_max=6, a_grid=(0.2, 0.5, 0.8), n_grid=(3, 5),
                   alphas=4, random_cases=20, scan_points=90),
    "full": Level(ns=(3, 5, 7), j_max=12, a_grid=tuple(np.round(np.arange(1, 10) / 10, 1)),
                  n_grid=(3, 5, 7, 9), alphas=16, random_cases=200, scan_points=720),
}


def coefficient_suite(level: Level) -> SuiteResult:
    res = SuiteResult("coefficient agreement")
    for n in level.ns:
        for m in (n, 3 * n, 5 * n):
            for j in range(1, level.j_max + 1):
                key = CoefficientKey(m, j)
                c = coefficient_closed_form(key)
                delta = abs(c.value - coefficient_numeric(key))
                ctx = f"m={m} j={j}"
                res.check(delta < 1e-10, delta, f"{ctx}: closed form vs integral differ by {delta:.3e}")
                if c.sign != 0:
                    want = 1 if ((m + 1) // 2) % 2 == 0 else -1
                    res.check(c.sign == want, 0.0, f"{ctx}: sign {c.sign}, expected {want}")
                res.check(abs(c.value) <= COEFFICIENT_BOUND, 0.0, f"{ctx}: |c| exceeds pi/8")
                if 2 * j < m - 1:
                    res.check(c.multiplier == 0, 0.0, f"{ctx}: nonzero below leading term")
    return res


def lemma_suite(level: Level) -> SuiteResult:
    res = SuiteResult("step-function Fourier coefficients")
    rng = np.random.default_rng(SEED)
    for n in level.ns:
        for alpha in rng.uniform(0, 2 * math.pi, 4):
            cfg = PizzaConfig(alpha, 0.5, n)
            for m in range(1, 10 * n + 1):
                got = geometry.step_fourier_coefficient_numeric(m, cfg)
                want = geometry.step_fourier_coefficient_lemma(m, cfg)
                delta = abs(got - want)
                res.check(delta < 1e-12, delta,
                          f"n={n} m={m} alpha={alpha!r}: |numeric - closed form| = {delta:.3e}")
    return res


def _grid(level: Level):
    for a in level.a_grid:
        for n in level.n_grid:
            for i in range(level.alphas):
                yield PizzaConfig(2 * math.pi * i / level.alphas, a, n)


def oracle_suite(level: Level) -> SuiteResult:
    res = SuiteResult("series vs direct geometry")
    for cfg in _grid(level):
        g = g_series(cfg, DEFAULT_POLICY)
        for method in geometry.METHODS:
            delta = abs(g.value - geometry.inequity_direct(cfg, method))
            allowed = g.truncation_bound + 1e-9
            res.check(delta <= allowed, delta,
                      f"{cfg} [{method}]: |g_series - g_direct| = {delta:.3e} > {allowed:.3e}")
    return res


def bound_suite(level: Level) -> SuiteResult:
    res = SuiteResult("corollary bounds and extremum")
    for cfg in _grid(level):
        g = geometry.inequity_direct(cfg, geometry.CLOSED_FORM)
        bg = bounds.bound_g(cfg.a, cfg.n)
        res.check(bounds.below_bound(abs(g), bg), abs(g) / bg,
                  f"{cfg}: |g| = {abs(g):.3e} not below {bg:.3e}")
    for a in level.a_grid:
        for n in level.n_grid:
            ma = bounds.m_a(a, n)
            bm = bounds.bound_m(a, n)
            res.check(0 < ma.value and bounds.below_bound(ma.value, bm), ma.value / bm, f"a={a} n={n}: M_a={ma.value:.6e} vs bound {bm:.6e}")
            rep = bounds.extremum(a, n, scan_points=level.scan_points)
            combined = 2 * rep.truncation_bound
            delta = abs(rep.f_at_argmax - rep.sign_at_argmax * rep.m_a)
            res.check(delta <= combined, delta,
                      f"a={a} n={n}: f(pi/2n)={rep.f_at_argmax:.6e} vs sign*M_a={rep.sign_at_argmax * rep.m_a:.6e}")
            res.check(rep.scan_max <= rep.m_a + 1e-9, rep.scan_max - rep.m_a,
                      f"a={a} n={n}: scan max {rep.scan_max:.6e} exceeds M_a {rep.m_a:.6e}")
    return res


def symmetry_suite(level: Level) -> SuiteResult:
    res = SuiteResult("symmetry and periodicity")
    rng = np.random.default_rng(SEED + 1)
    for _ in range(level.random_cases):
        alpha = rng.uniform(0, 2 * math.pi)
        a = rng.uniform(0.05, 0.95)
        n = int(rng.choice([3, 5, 7, 9]))
        base = PizzaConfig(alpha, a, n)
        f = f_series(base)
        g = g_series(base)
        ctx = f"alpha={alpha!r} a={a!r} n={n}"
        for label, other, expect, bound in (
            ("f(-alpha) = -f(alpha)", f_series(PizzaConfig(-alpha, a, n)), -f.value, f.truncation_bound),
            ("f(alpha + 2pi/n) = f(alpha)", f_series(PizzaConfig(alpha + 2 * math.pi / n, a, n)), f.value, f.truncation_bound),
            ("g(alpha + pi/n) = -g(alpha)", g_series(PizzaConfig(alpha + math.pi / n, a, n)), -g.value, g.truncation_bound),
        ):
            delta = abs(other.value - expect)
            res.check(delta <= 2 * bound, delta, f"{ctx}: {label} off by {delta:.3e}")
        d = abs(geometry.inequity_direct(PizzaConfig(-alpha, a, n), geometry.CLOSED_FORM)
                + geometry.inequity_direct(base, geometry.CLOSED_FORM))
        res.check(d < 1e-10, d, f"{ctx}: direct inequity not odd in alpha ({d:.3e})")
    return res


def pizza_theorem_suite(level: Level) -> SuiteResult:
    res = SuiteResult("classical pizza theorem (2n divisible by 4)")
    rng = np.random.default_rng(SEED + 2)
    for n in (4, 6, 8):
        for _ in range(max(level.random_cases // 4, 5)):
            cfg = PizzaConfig(rng.uniform(0, 2 * math.pi), rng.uniform(0.0, 0.95), n)
            for method in geometry.METHODS:
                g = abs(geometry.inequity_direct(cfg, method))
                res.check(g < 1e-10, g, f"{cfg} [{method}]: |g| = {g:.3e}")
    return res


SUITES: List[Callable[[Level], SuiteResult]] = [
    coefficient_suite, lemma_suite, oracle_suite, bound_suite, symmetry_suite, pizza_theorem_suite,
]


def run(level: str = "quick", report: Optional[Callable[[str], None]] = print) -> List[SuiteResult]:
    spec = LEVELS[level]
    results = []
    for suite in SUITES:
        r = suite(spec)
        results.append(r)
        if report is not None:
            status = "PASS" if r.passed else "FAIL"
            report(f"{status}  {r.name}: {r.checked} checks, worst {r.worst:.3e}")
            if r.failures:
                report(f"      first failure: {r.failures[0]}")
    return results
