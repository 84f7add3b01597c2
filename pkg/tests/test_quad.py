import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ellipcheck.elliptic import ellip_e, ellip_k
from ellipcheck.errors import ToleranceNotMet, UnboundedKernelError
from ellipcheck.quad import (
    PeriodicKernel,
    QuadResult,
    integrate_finite,
    integrate_semi_infinite,
    integrate_unit_singular,
    oscillatory_direct,
    oscillatory_sinc,
    pv_direct,
    pv_tan_reduction,
    reduce_odd_periodic,
    richardson,
)


def _inv_delta(k, cos=False):
    m = k * k
    trig = np.cos if cos else np.sin
    return lambda x: 1.0 / np.sqrt(1.0 - m * trig(x) ** 2)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.floats(min_value=-5, max_value=5), min_size=1, max_size=8),
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=0.1, max_value=4),
)
def test_polynomials_integrate_exactly(coeffs, a, width):
    b = a + width
    poly = np.polynomial.Polynomial(coeffs)
    exact = poly.integ()(b) - poly.integ()(a)
    r = integrate_finite(poly, a, b)
    assert r.value == pytest.approx(exact, abs=1e-11 * (1 + abs(exact)))


def test_error_estimate_is_honest():
    r = integrate_finite(lambda x: np.exp(np.sin(5 * x)), 0.0, 3.0, tol=1e-10)
    exact = float(mpmath.quad(lambda x: mpmath.exp(mpmath.sin(5 * x)), [0, 3]))
    assert abs(r.value - exact) <= max(r.error_estimate, 1e-14)
    assert r.error_estimate <= 1e-10
    assert r.evaluations % 15 == 0


def test_endpoint_singularities():
    r = integrate_finite(lambda x: np.log(x), 0.0, 1.0)
    assert r.value == pytest.approx(-1.0, abs=1e-12)
    assert integrate_unit_singular(lambda x: np.ones_like(x)).value == pytest.approx(math.pi / 2, abs=1e-14)


def test_scalar_only_callable():
    r = integrate_finite(math.sin, 0.0, math.pi)
    assert r.value == pytest.approx(2.0, abs=1e-13)


def test_reversed_interval_rejected():
    with pytest.raises(ValueError):
        integrate_finite(np.exp, 1.0, 0.0)


def test_nonintegrable_raises():
    with pytest.raises(ToleranceNotMet) as info:
        integrate_finite(lambda x: 1.0 / x, 0.0, 1.0)
    assert info.value.estimate is not None


def test_semi_infinite():
    assert integrate_semi_infinite(lambda x: 1.0 / (1.0 + x * x)).value == pytest.approx(math.pi / 2, abs=1e-13)
    assert integrate_semi_infinite(lambda x: np.exp(-x)).value == pytest.approx(1.0, abs=1e-13)


def test_quadresult_validation():
    assert float(QuadResult(1.5, 0.0, 1)) == 1.5
    with pytest.raises(ValueError):
        QuadResult(1.0, -1.0, 1)
    with pytest.raises(ValueError):
        QuadResult(1.0, 0.0, 0)


def test_periodic_kernel_checks():
    PeriodicKernel(np.sin, 2 * math.pi, "odd")
    with pytest.raises(ValueError):
        PeriodicKernel(np.sin, math.pi, "odd")
    with pytest.raises(ValueError):
        PeriodicKernel(np.cos, 2 * math.pi, "odd")
    with pytest.raises(ValueError):
        PeriodicKernel(np.cos, -1.0)
    pk = PeriodicKernel(lambda x: np.sin(x) + np.cos(x), 2 * math.pi)
    x = np.linspace(-1, 1, 5)
    assert np.allclose(pk.even_part()(x), np.cos(x))
    assert np.allclose(pk.odd_part()(x), np.sin(x))


@pytest.mark.parametrize("freq", [1, 2, 5])
def test_odd_reduction_sine(freq):
    pk = PeriodicKernel(lambda x: np.sin(freq * x), 2 * math.pi / freq, "odd")
    assert reduce_odd_periodic(pk).value == pytest.approx(math.pi / 2, abs=1e-13)


def test_odd_reduction_needs_odd_kernel():
    with pytest.raises(ValueError):
        reduce_odd_periodic(PeriodicKernel(np.cos, 2 * math.pi, "even"))


def test_odd_reduction_detects_pole():
    # tan(2x) / tan(x) blows up at pi/4: tan(2x)/x only exists as a principal value
    with pytest.raises(UnboundedKernelError):
        reduce_odd_periodic(PeriodicKernel(lambda x: np.tan(2 * x), math.pi, "odd"))


def test_odd_reduction_matches_direct_sum():
    # sin^3 x cos^2 x / sqrt(1 - k^2 sin^2 x): odd, period 2 pi
    m = 0.49
    f = lambda x: np.sin(x) ** 3 * np.cos(x) ** 2 / np.sqrt(1 - m * np.sin(x) ** 2)
    red = reduce_odd_periodic(PeriodicKernel(f, 2 * math.pi, "odd")).value
    brute = oscillatory_direct(f, 2 * math.pi, 512, "richardson", weight="none")
    assert red == pytest.approx(brute.value, abs=1e-9)


@pytest.mark.parametrize("k", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("cos", [False, True])
def test_sinc_reduction_gives_k(k, cos):
    pk = PeriodicKernel(_inv_delta(k, cos), math.pi, "even")
    assert oscillatory_sinc(pk).value == pytest.approx(ellip_k(k), abs=1e-12)


def test_sinc_reduction_e():
    m = 0.36
    pk = PeriodicKernel(lambda x: np.sqrt(1 - m * np.sin(x) ** 2), math.pi, "even")
    assert oscillatory_sinc(pk).value == pytest.approx(ellip_e(0.6), abs=1e-12)


def test_sinc_rejects_odd_and_mixed_kernels():
    with pytest.raises(ValueError):
        oscillatory_sinc(PeriodicKernel(lambda x: np.sin(2 * x), math.pi, "odd"))
    with pytest.raises(ValueError):
        oscillatory_sinc(PeriodicKernel(lambda x: 1 + np.sin(2 * x), math.pi))


def test_odd_kernel_has_no_half_period_sinc_formula():
    # f = sin 2x, a = pi: the integral of sin(2x) sin(x) / x over (0, inf) is ln(3)/2.
    # A half-period cosine-weighted formula would give 2/3; it does not hold.
    truth = math.log(3) / 2
    brute = oscillatory_direct(lambda x: np.sin(2 * x), math.pi)
    assert brute.value == pytest.approx(truth, abs=1e-9)
    ref = float(mpmath.quadosc(lambda x: mpmath.sin(2 * x) * mpmath.sin(x) / x, [0, mpmath.inf], period=2 * mpmath.pi))
    assert ref == pytest.approx(0.5493061443340548457, abs=1e-12)
    cosine_weighted = integrate_finite(lambda x: np.sin(2 * x) * np.cos(x), 0.0, math.pi / 2).value
    assert cosine_weighted == pytest.approx(2 / 3, abs=1e-14)
    assert abs(cosine_weighted - truth) > 0.1
    # the product sin(2x) sin(x) is even, so the odd-kernel reduction does not apply either;
    # product to sum: (cos x - cos 3x) / 2, and the Frullani-type integral gives ln(3)/2
    assert 0.5 * math.log(3) == pytest.approx(truth)


def test_richardson():
    # L + 1/n + 1/n^2 sampled at n = 8, 16, 32, 64
    ns = [8, 16, 32, 64]
    vals = [2.0 + 1 / n + 1 / n**2 for n in ns]
    best, delta = richardson(vals, [1 / n for n in ns], [1, 2, 3])
    assert best == pytest.approx(2.0, abs=1e-13)
    with pytest.raises(ValueError):
        richardson([1.0], [1.0, 0.5], [1])


@pytest.mark.parametrize("accel,weight,f,a,tol", [
    ("none", "sin", lambda x: np.ones_like(x), math.pi, 1e-3),
    ("pairwise", "sin", lambda x: np.ones_like(x), math.pi, 1e-10),
    # richardson is meant for smooth one-signed tails: odd f against 1/x
    ("richardson", "none", np.sin, 2 * math.pi, 1e-10),
])
def test_direct_accelerations(accel, weight, f, a, tol):
    r = oscillatory_direct(f, a, accel=accel, weight=weight)
    assert r.value == pytest.approx(math.pi / 2, abs=tol)
    assert isinstance(r.error_estimate, float)


def test_direct_bad_options():
    with pytest.raises(ValueError):
        oscillatory_direct(np.cos, math.pi, accel="shanks")
    with pytest.raises(ValueError):
        oscillatory_direct(np.cos, math.pi, weight="cos")


@pytest.mark.parametrize("k", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("cos", [False, True])
def test_pv_direct_agrees_with_reduction(k, cos):
    g = _inv_delta(k, cos)
    red = pv_tan_reduction(g)
    assert red.value == pytest.approx(ellip_k(k), abs=1e-12)
    brute = pv_direct(lambda x: np.tan(x) * g(x), [math.pi / 2], math.pi)
    assert brute.value == pytest.approx(red.value, abs=1e-5)


def test_pv_tan_over_x():
    # PV of tan(x)/x over (0, inf) is pi/2
    brute = pv_direct(np.tan, [math.pi / 2], math.pi)
    assert brute.value == pytest.approx(math.pi / 2, abs=1e-8)


def test_pv_direct_validation():
    with pytest.raises(ValueError):
        pv_direct(np.tan, [math.pi], math.pi)
    with pytest.raises(ValueError):
        pv_direct(np.tan, [math.pi / 2], math.pi, periods=16)
