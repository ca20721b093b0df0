import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, optimize
from scipy.stats import norm

from ovlk import (
    NonFiniteEvaluation,
    NormalParams,
    ParameterError,
    QuadratureConfig,
    exact_ovl,
    simpson_closed,
    simpson_open_unit,
)
from ovlk.errors import NoConvergence
from ovlk.published import SCENARIOS

TABLE1 = {name: [NormalParams(*p) for p in pops] for name, (pops, _) in SCENARIOS.items()}


def quad_ovl(params):
    """Independent reference: adaptive quadrature split at every density crossing."""
    g = lambda x: min(norm.pdf(x, p.mu, p.sigma) for p in params)
    lo = min(p.mu for p in params) - 12 * max(p.sigma for p in params)
    hi = max(p.mu for p in params) + 12 * max(p.sigma for p in params)
    grid = np.linspace(lo, hi, 20001)
    cuts = []
    for i, p in enumerate(params):
        for q in params[i + 1:]:
            f = lambda x: norm.logpdf(x, p.mu, p.sigma) - norm.logpdf(x, q.mu, q.sigma)
            v = f(grid)
            for k in np.nonzero(np.sign(v[:-1]) != np.sign(v[1:]))[0]:
                cuts.append(optimize.brentq(f, grid[k], grid[k + 1], xtol=1e-14))
    pts = [lo] + sorted(cuts) + [hi]
    return sum(integrate.quad(g, a, b, epsabs=1e-14, epsrel=1e-13)[0] for a, b in zip(pts[:-1], pts[1:]))


# -- closed rule ------------------------------------------------------------------


def test_closed_cubic_exact():
    assert simpson_closed(lambda x: x**3, 0.0, 1.0, 2) == 0.25


def test_closed_constant():
    for r in (2, 4, 10, 1000):
        assert simpson_closed(lambda x: np.ones_like(x), -3.0, 7.0, r) == pytest.approx(10.0, rel=1e-15)


def test_closed_sine_five_nodes():
    expected = math.pi / 12 * (4 * math.sin(math.pi / 4) + 2 * math.sin(math.pi / 2) + 4 * math.sin(3 * math.pi / 4))
    got = simpson_closed(np.sin, 0.0, math.pi, 4)
    assert got == pytest.approx(expected, rel=1e-14)
    assert round(got, 5) == 2.00456


def test_closed_scalar_only_function():
    assert simpson_closed(lambda x: math.exp(x), 0.0, 1.0, 100) == pytest.approx(math.e - 1, rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.floats(-5, 5), min_size=4, max_size=4),
    st.floats(-3, 3),
    st.floats(0.1, 4),
    st.integers(1, 50),
)
def test_closed_exact_on_cubics(c, a, width, half_r):
    b = a + width
    f = lambda x: c[0] + c[1] * x + c[2] * x**2 + c[3] * x**3
    F = lambda x: c[0] * x + c[1] * x**2 / 2 + c[2] * x**3 / 3 + c[3] * x**4 / 4
    exact = F(b) - F(a)
    got = simpson_closed(f, a, b, 2 * half_r)
    scale = sum(abs(ci) * max(abs(a), abs(b)) ** (i + 1) for i, ci in enumerate(c)) + 1
    assert abs(got - exact) <= 8 * np.spacing(scale) * 2 * half_r


def test_closed_rejects_bad_r_and_nonfinite():
    with pytest.raises(ParameterError):
        simpson_closed(np.sin, 0, 1, 3)
    with pytest.raises(NonFiniteEvaluation), np.errstate(divide="ignore"):
        simpson_closed(lambda x: 1 / x, 0.0, 1.0, 4)


def test_quadrature_config():
    cfg = QuadratureConfig(r=4, a=0.0, b=math.pi)
    assert cfg.h == pytest.approx(math.pi / 4)
    assert cfg.integrate(np.sin) == simpson_closed(np.sin, 0.0, math.pi, 4)
    with pytest.raises(ParameterError):
        QuadratureConfig(r=4, a=1.0, b=0.0)
    with pytest.raises(ParameterError):
        QuadratureConfig(r=4, a=0.0, b=1.0, tail_sigmas=5)


# -- open rule --------------------------------------------------------------------


def test_open_rule_constant_shows_endpoint_deficit():
    expected = (4 * 50 + 2 * 49) / 300
    assert simpson_open_unit(lambda u: np.ones_like(u), 100) == pytest.approx(expected, rel=1e-15)
    assert round(expected, 5) == 0.99333


def test_open_rule_fourth_order():
    f = lambda u: u**2 * (1 - u) ** 2 * np.exp(u)
    ref, _ = integrate.quad(f, 0, 1, epsabs=1e-14, epsrel=1e-12)
    e1 = abs(simpson_open_unit(f, 32) - ref)
    e2 = abs(simpson_open_unit(f, 64) - ref)
    assert 12 < e1 / e2 < 20


def test_open_rule_rejects_small_r():
    with pytest.raises(ParameterError):
        simpson_open_unit(np.sin, 2)


# -- oracle -----------------------------------------------------------------------


def test_oracle_identical_densities():
    assert exact_ovl([NormalParams(0, 1)] * 3) == pytest.approx(1.0, abs=1e-10)


def test_oracle_two_population_closed_form():
    assert exact_ovl([NormalParams(0, 1), NormalParams(1, 1)]) == pytest.approx(2 * norm.cdf(-0.5), abs=1e-6)


@pytest.mark.parametrize("name", list(TABLE1))
def test_oracle_matches_independent_quadrature(name):
    assert exact_ovl(TABLE1[name]) == pytest.approx(quad_ovl(TABLE1[name]), abs=1e-8)


def test_oracle_published_values_s1():
    assert abs(exact_ovl(TABLE1["S1"]) - 0.929) < 5e-4


def test_oracle_s2_equals_farthest_mean_closed_form():
    assert exact_ovl(TABLE1["S2"]) == pytest.approx(2 * norm.cdf(-0.1), abs=1e-9)


@pytest.mark.parametrize("name", list(TABLE1))
def test_oracle_refinement_monotone(name):
    res = exact_ovl(TABLE1[name], tol=1e-12 if name == "S2" else 1e-11, full_output=True)
    h = np.array(res.history)
    assert np.all(np.diff(h) < 0)


def test_oracle_full_output_and_window():
    res = exact_ovl([NormalParams(-1, 2), NormalParams(3, 0.5)], full_output=True)
    assert res.a == -1 - 16 and res.b == 3 + 16
    assert res.value == min(max(res.raw, 0.0), 1.0)
    assert res.history[-1] < 1e-10


def test_oracle_incremental_refinement_matches_plain_rule():
    ps = TABLE1["S3"]
    res = exact_ovl(ps, tol=1e-6, full_output=True)
    g = lambda x: np.min([norm.pdf(x, p.mu, p.sigma) for p in ps], axis=0)
    assert res.raw == pytest.approx(simpson_closed(g, res.a, res.b, res.r), abs=1e-13)


def test_oracle_argument_checks():
    with pytest.raises(ParameterError):
        exact_ovl([NormalParams(0, 1)])
    with pytest.raises(ParameterError):
        exact_ovl(TABLE1["S1"], tol=1e-2)
    with pytest.raises(ParameterError):
        exact_ovl(TABLE1["S1"], tail_sigmas=4)


def test_oracle_no_convergence():
    with pytest.raises(NoConvergence):
        exact_ovl(TABLE1["S4"], tol=1e-12)


params = st.builds(NormalParams, st.floats(-5, 5), st.floats(0.2, 3))


@settings(max_examples=40, deadline=None)
@given(st.lists(params, min_size=2, max_size=4), st.floats(0.2, 5) | st.floats(-5, -0.2), st.floats(-10, 10))
def test_oracle_affine_invariance(ps, a, b):
    moved = [NormalParams(a * p.mu + b, abs(a) * p.sigma) for p in ps]
    assert abs(exact_ovl(moved) - exact_ovl(ps)) < 1e-8


@settings(max_examples=40, deadline=None)
@given(st.lists(params, min_size=2, max_size=4), params)
def test_oracle_k_monotone(ps, extra):
    assert exact_ovl(ps + [extra]) <= exact_ovl(ps) + 1e-9


@settings(max_examples=40, deadline=None)
@given(st.lists(params, min_size=2, max_size=4))
def test_oracle_bounds(ps):
    v = exact_ovl(ps)
    assert 0.0 <= v <= 1.0
    spread = max(abs(p.mu - ps[0].mu) + abs(p.sigma - ps[0].sigma) for p in ps)
    if spread > 1e-3:
        assert v < 1.0 - 1e-9
    if spread == 0.0:
        assert v == pytest.approx(1.0, abs=1e-10)
