import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from ellipcheck.errors import ConvergenceError, DomainError, PoleError
from ellipcheck.hyp import (
    HypParams,
    bailey_transform_check,
    bailey_transform_exact,
    harmonic_specialization,
    hyp2f1,
    hyp4f3_terminating,
    hyp_terminating,
    is_balanced,
)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.3, max_value=4.0),
    st.floats(min_value=-0.7, max_value=0.7),
)
def test_hyp2f1_against_mpmath(a, b, c, x):
    ref = float(mpmath.hyp2f1(a, b, c, x))
    assert hyp2f1(a, b, c, x) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_hyp2f1_elementary():
    x = 0.3
    assert hyp2f1(1, 1, 2, x) == pytest.approx(-math.log(1 - x) / x, rel=1e-15)
    assert hyp2f1(-3, 2, 1, x) == pytest.approx(1 - 6 * x + 9 * x**2 - 4 * x**3, rel=1e-14)
    assert hyp2f1(0.5, 0.5, 1, 0.0) == 1.0


def test_hyp2f1_errors():
    with pytest.raises(DomainError):
        hyp2f1(0.5, 0.5, 1, 1.0)
    with pytest.raises(PoleError):
        hyp2f1(0.5, 0.5, -2, 0.5)
    with pytest.raises(ConvergenceError):
        hyp2f1(0.5, 0.5, 1, 1 - 1e-9)


def test_terminating_exact():
    p = HypParams((Fraction(-3), Fraction(1, 2)), (Fraction(1),), Fraction(1))
    assert p.terminating_order() == 3
    # Chu-Vandermonde: 2F1(-n, b; c; 1) = (c-b)_n / (c)_n
    assert hyp_terminating(p) == Fraction(1, 2) * Fraction(3, 2) * Fraction(5, 2) / 6
    with pytest.raises(DomainError):
        hyp_terminating(HypParams((0.5, 0.5), (1,), 0.5))


def test_terminating_denominator_pole():
    with pytest.raises(PoleError):
        hyp_terminating(HypParams((-3, 1), (-1,), 1))


def test_4f3_shape():
    with pytest.raises(DomainError):
        hyp4f3_terminating(HypParams((-1, 1), (1,), 1))


def _random_balanced(rng):
    m = rng.randint(0, 8)
    x, y, z, v = (Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(4))
    u = Fraction(rng.randint(1, 30), rng.randint(1, 5)) + Fraction(1, 97)
    w = x + y + z - m + 1 - u - v
    return x, y, z, m, u, v, w


def test_bailey_transform_random_balanced():
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        x, y, z, m, u, v, w = _random_balanced(rng)
        try:
            lhs, rhs = bailey_transform_exact(x, y, z, m, u, v, w)
        except (PoleError, ZeroDivisionError):
            continue
        assert lhs == rhs
        checked += 1


def test_bailey_float_and_unbalanced():
    lhs, rhs = bailey_transform_check(0.5, -0.25, 1.5, 4, 2.5, 1.25, -5.0)
    assert lhs == pytest.approx(rhs, rel=1e-12)
    with pytest.raises(DomainError):
        bailey_transform_exact(1, 1, 1, 2, 1, 1, 1)


@pytest.mark.parametrize("j", range(1, 21))
def test_harmonic_specialization_exact(j):
    p = harmonic_specialization(j)
    assert is_balanced(HypParams((p["x"], p["y"], p["z"], -p["m"]), (p["u"], p["v"], p["w"])))
    lhs, rhs = bailey_transform_exact(**p)
    assert lhs == rhs
