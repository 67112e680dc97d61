import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from discspec.errors import QuadratureError
from discspec.quadrature import GAUSS, KRONROD, NODES, gk15, integrate, integrate_to_infinity


def test_rule_weights_sum_to_two():
    assert KRONROD.sum() == pytest.approx(2, abs=1e-15)
    assert GAUSS.sum() == pytest.approx(2, abs=1e-15)
    assert np.all(np.diff(NODES) > 0)


@pytest.mark.parametrize("deg", range(0, 30))
def test_polynomial_exactness(deg):
    exact = (1 - (-1) ** (deg + 1)) / (deg + 1)
    k = float(KRONROD @ NODES ** deg)
    g = float(GAUSS @ NODES ** deg)
    if deg <= 22:
        assert k == pytest.approx(exact, abs=1e-14)
    if deg <= 12:
        assert g == pytest.approx(exact, abs=1e-14)
    if deg in (24, 26, 28):
        assert abs(k - exact) > 1e-12


def test_single_panel_scaled_interval():
    val, err = gk15(lambda x: x ** 5, 1.0, 3.0)
    assert val == pytest.approx((3 ** 6 - 1) / 6, rel=1e-14)
    assert err < 1e-10


EPS = 1e-12
CLOSED = [
    (np.exp, 0.0, 3.0, math.e ** 3 - 1),
    (lambda x: np.sqrt(x), 0.0, 2.0, 2 / 3 * 2 ** 1.5),
    (lambda x: np.log(x), EPS, 1.0, -1 - (EPS * math.log(EPS) - EPS)),
    (lambda x: 1 / (1e-4 + (x - 0.3) ** 2), 0.0, 1.0, 100 * (math.atan(70) + math.atan(30))),
    (lambda x: np.cos(40 * x), -1.0, 2.0, (math.sin(80) + math.sin(40)) / 40),
]


@pytest.mark.parametrize("f,a,b,exact", CLOSED)
def test_closed_forms(f, a, b, exact):
    got = integrate(f, a, b, breakpoints=(0.3,), rtol=1e-12)
    assert got.value == pytest.approx(exact, rel=1e-11)


@pytest.mark.parametrize("f,a,b", [(np.exp, 0.0, 3.0), (lambda x: np.cos(3 * x) / (1 + x * x), -2.0, 5.0),
                                   (lambda x: x ** 2.5 * np.exp(-x), 0.0, 4.0)])
def test_against_scipy(f, a, b):
    ref, _ = sp_integrate.quad(lambda x: float(f(np.array([x]))[0]), a, b, epsabs=0, epsrel=1e-12)
    assert integrate(f, a, b).value == pytest.approx(ref, rel=1e-11)


def test_breakpoints_help_with_kinks():
    f = lambda x: np.abs(x - 1 / 3)
    with_bp = integrate(f, 0, 1, breakpoints=(1 / 3,))
    without = integrate(f, 0, 1)
    exact = (1 / 9 + 4 / 9) / 2
    assert with_bp.value == pytest.approx(exact, rel=1e-13)
    assert without.value == pytest.approx(exact, rel=1e-10)
    assert with_bp.evaluations < without.evaluations


def test_reversed_and_empty_intervals():
    assert integrate(np.exp, 1.0, 1.0).value == 0
    assert integrate(np.exp, 1.0, 0.0).value == pytest.approx(-(math.e - 1), rel=1e-14)


def test_limit_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.sin(1 / x), 1e-9, 1.0, limit=20)


def test_infinite_interval():
    got = integrate_to_infinity(lambda r: 1 / (1 + r * r), 0.0, 10.0)
    assert got.value == pytest.approx(math.pi / 2, rel=1e-13)
    got = integrate_to_infinity(lambda r: np.exp(-r), 0.0, 5.0)
    assert got.value == pytest.approx(1.0, rel=1e-13)
    with pytest.raises(ValueError):
        integrate_to_infinity(np.exp, 1.0, 0.5)
    with pytest.raises(ValueError):
        integrate(np.exp, 0.0, math.inf)
