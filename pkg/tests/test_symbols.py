import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sp_integrate

from discspec.errors import DomainError
from discspec.symbols import (SymbolParams, chi_integral_check, es1_brackets, es1_identity_check,
                              kj_ll_bound_check, lp_resolvent_norm, negative_half_ratio,
                              po_quotient_check, pr2_integral_check, show1_ratio, sphere_area)


def norm(lam, p, d):
    return lp_resolvent_norm(SymbolParams(lam, p, d)).value


# --- parameters ------------------------------------------------------------------

@pytest.mark.parametrize("args", [(-1, 1, 2), (-1, 1.5, 3), (2.0, 2, 2), (0.0, 2, 2), (-1, 2, 1), (-1, 2, 2.5)])
def test_symbol_params_domain(args):
    with pytest.raises(DomainError):
        SymbolParams(*args)


def test_sphere_area():
    assert sphere_area(2) == pytest.approx(2 * math.pi)
    assert sphere_area(3) == pytest.approx(4 * math.pi)
    assert sphere_area(4) == pytest.approx(2 * math.pi ** 2)


# --- the radial norm -------------------------------------------------------------

def test_closed_forms_at_minus_one():
    assert norm(-1, 2, 2) == pytest.approx(math.pi, rel=1e-8)
    assert norm(-1, 2, 3) == pytest.approx(math.pi ** 2, rel=1e-8)


def test_negative_axis_scaling():
    # x -> t x gives norm(-t^2) = t^{d - 2p} norm(-1)
    for d, p in ((2, 2), (3, 2), (3, 2.5), (4, 3)):
        base = norm(-1, p, d)
        for t in (0.3, 2.0, 7.0):
            assert norm(-t * t, p, d) == pytest.approx(t ** (d - 2 * p) * base, rel=1e-10)


@pytest.mark.parametrize("lam", [1 + 1j, 4 + 0.1j, 9 + 0.01j, -2 + 3j, 0.5 + 1e-3j])
def test_against_scipy(lam):
    d, p = 3, 2
    g = lambda r: r ** (d - 1) / abs(lam - r * r) ** p
    r0 = math.sqrt(max(lam.real, 0.0))
    parts = [(0, r0), (r0, 2 * r0 + 1)] if r0 else [(0, 1)]
    total = sum(sp_integrate.quad(g, a, b, epsabs=0, epsrel=1e-12, limit=500)[0] for a, b in parts)
    total += sp_integrate.quad(g, parts[-1][1], math.inf, epsabs=0, epsrel=1e-12, limit=500)[0]
    assert norm(lam, p, d) == pytest.approx(4 * math.pi * total, rel=1e-8)


def test_monte_carlo_oracle():
    # x = Z / |W| is multivariate Cauchy on R^3 with density (1 + |x|^2)^{-2} / pi^2
    lam = 1 + 1j
    rng = np.random.default_rng(2024)
    n = 400_000
    x = rng.standard_normal((n, 3)) / np.abs(rng.standard_normal((n, 1)))
    r2 = np.sum(x * x, axis=1)
    w = math.pi ** 2 * (1 + r2) ** 2 / np.abs(lam - r2) ** 2
    mean, se = w.mean(), w.std(ddof=1) / math.sqrt(n)
    assert abs(norm(lam, 2, 3) - mean) <= 3 * se


@settings(max_examples=30)
@given(st.floats(-20, 20), st.floats(0.05, 20), st.sampled_from([(2, 2), (3, 2), (3, 3), (4, 2.5)]))
def test_conjugation_symmetry(re, im, dp):
    d, p = dp
    a, b = norm(complex(re, im), p, d), norm(complex(re, -im), p, d)
    assert a == pytest.approx(b, rel=1e-10)


def test_show1_ratio_bounded_along_sweep():
    ratios = [show1_ratio(SymbolParams(complex(l0, l1), 2, 3))
              for l0 in (0.1, 1, 10, 100) for l1 in (0.01, 0.1, 1, 10)]
    assert all(0 < r < 20 for r in ratios)
    with pytest.raises(DomainError):
        show1_ratio(SymbolParams(-1 + 1j, 2, 3))


def test_negative_half_ratio_bounded():
    ratios = [negative_half_ratio(SymbolParams(complex(l0, l1), 2, 3))
              for l0 in (-100, -1, -0.01, 0) for l1 in (0.01, 1, 10) if complex(l0, l1) != 0]
    assert all(0 < r < 20 for r in ratios)
    with pytest.raises(DomainError):
        negative_half_ratio(SymbolParams(1 + 1j, 2, 3))


# --- bracket identity ------------------------------------------------------------

@pytest.mark.parametrize("d,p", [(2, 2), (3, 2), (3, 3), (4, 2.5)])
@pytest.mark.parametrize("lam", [1 + 1j, 5 + 0.2j, 0.3 + 4j])
def test_es1_ratio_constant(d, p, lam):
    _, _, ratio = es1_identity_check(SymbolParams(lam, p, d))
    assert ratio == pytest.approx(sphere_area(d) / 2, rel=1e-8)


def test_es1_brackets_scale():
    # (lam0, lam1) -> t (lam0, lam1) scales each bracket by t^{(d-2)/2}
    for d in (2, 3, 5):
        i1, i2 = es1_brackets(2.0, 0.5, 2.0, d)
        for t in (0.1, 4.0):
            j1, j2 = es1_brackets(2 * t, 0.5 * t, 2.0, d)
            k = (d - 2) / 2
            assert j1 == pytest.approx(t ** k * i1, rel=1e-10)
            assert j2 == pytest.approx(t ** k * i2, rel=1e-10)
    with pytest.raises(DomainError):
        es1_brackets(-1, 1, 2, 3)


# --- quotients -------------------------------------------------------------------

def test_po_example():
    q1, q2, bound, ok = po_quotient_check(1 + 0.5j, 2, 3)
    assert bound == pytest.approx(2 ** -0.25)
    assert ok and q1 <= bound and q2 <= bound


def test_po_sweep(rng):
    re = rng.uniform(0.01, 100, 10_000) * rng.choice([-1, 1], 10_000)
    im = np.abs(re) * rng.uniform(1e-9, 1 - 1e-9, 10_000)
    mu = re + 1j * im
    for d, p in ((3, 2), (2, 2), (4, 3), (3, 4)):
        q1, q2, bound, passed = po_quotient_check(mu, p, d)
        assert passed.all()
        assert np.all(q2 <= bound * (1 + 1e-12))


def test_po_domain():
    with pytest.raises(DomainError):
        po_quotient_check(1 + 2j, 2, 3)
    with pytest.raises(DomainError):
        po_quotient_check(np.array([1 + 0.5j, 1 - 0.5j]), 2, 3)


def test_pr2_examples():
    value, bound, ok = pr2_integral_check(1, 0.5, 0)
    assert value == pytest.approx(2, rel=1e-14) and bound == 2 and ok
    for p in (0.5, 1, 2, 3, 5):
        for tau in (0.1, 0.3, 0.5, 0.7, 0.9):
            for w in (0, 0.5, 1, 5, 50):
                v, b, ok = pr2_integral_check(p, tau, w)
                assert ok and v > 0


def test_pr2_against_direct_integral():
    p, tau, w = 2.0, 0.5, 1.5
    ref, _ = sp_integrate.quad(lambda b: b ** (p - 1 - tau) * (b - w) ** -p, w + 1, math.inf,
                               epsabs=0, epsrel=1e-12)
    assert pr2_integral_check(p, tau, w)[0] == pytest.approx(ref, rel=1e-9)


def test_pr2_monotone_in_omega_when_exponent_positive():
    for p, tau in ((2, 0.5), (3, 0.1), (1.6, 0.5)):
        vals = [pr2_integral_check(p, tau, w)[0] for w in np.linspace(0, 20, 15)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("args", [(2, 0, 1), (2, -0.5, 1), (2, 1, 1), (0, 0.5, 1), (2, 0.5, -1)])
def test_pr2_domain(args):
    with pytest.raises(DomainError):
        pr2_integral_check(*args)


def test_chi_integral(rng):
    for t, q in zip(rng.uniform(0.01, 5, 100), rng.uniform(0.2, 6, 100)):
        quad, closed, ok = chi_integral_check(t, q)
        assert ok
    assert chi_integral_check(3, 2)[1] == 0.5
    with pytest.raises(DomainError):
        chi_integral_check(0, 1)


def test_kj_ll_examples():
    res = kj_ll_bound_check(1.0, 1.0, 2.0, 2)
    assert res["passed"]
    assert res["first"] <= res["first_bound"] and res["second"] <= res["second_bound"]
    for d, p in ((2, 2), (3, 2), (4, 3), (5, 3)):
        for l0 in (0.01, 1, 100):
            for l1 in (0.01, 1, 100):
                assert kj_ll_bound_check(l0, l1, p, d)["passed"]
    with pytest.raises(DomainError):
        kj_ll_bound_check(1, 1, 1.0, 2)
