import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ellipcheck.combid import (
    alpha_beta_sequence,
    alt_binomial_sum,
    central_coefficient,
    certificate_recurrence_check,
    cot_partial_fraction_check,
    harmonic_lemma_chain,
    harmonic_lemma_sides,
    log_integral_series_coefficients,
    log_k_series_coefficients,
    odd_harmonic,
    sin_power_expansion,
    sin_power_integral,
    sin_power_routes,
    telescoped_boundary,
    telescoping_certificate,
    wallis_coefficient,
    wz_F,
    wz_G,
)
from ellipcheck.errors import DomainError, PoleError
from ellipcheck.specfun import pochhammer

HALF = Fraction(1, 2)


@given(st.integers(min_value=0, max_value=30), st.data())
def test_alt_binomial_sum(j, data):
    k = data.draw(st.integers(min_value=0, max_value=j))
    assert alt_binomial_sum(j, k) == (-1) ** k * math.comb(2 * j, k)


def test_alt_binomial_domain():
    with pytest.raises(DomainError):
        alt_binomial_sum(2, 3)


@pytest.mark.parametrize("j", [0, 1, 2, 5])
def test_sin_power_expansion_pointwise(j):
    for x in (0.3, 1.1, 2.5):
        s = sum(float(c) * math.sin(f * x) for f, c in sin_power_expansion(j))
        assert s == pytest.approx(math.sin(x) ** (2 * j + 1), abs=1e-14)


def test_sin_power_routes_small():
    assert sin_power_integral(0) == 1
    assert sin_power_integral(1) == HALF
    assert sin_power_integral(2) == Fraction(3, 8)
    r = sin_power_routes(3)
    assert r.double_factorial == r.binomial_sum == r.wallis == Fraction(5, 16)


def test_central_coefficient_literal():
    for r in range(12):
        assert central_coefficient(r) == (pochhammer(HALF, r) / math.factorial(r)) ** 2


def test_wz_literal_forms():
    # compare the cached forms against the Pochhammer definitions
    for j in range(1, 8):
        for i in range(j):
            literal_f = (pochhammer(HALF, i) ** 2 * math.factorial(j) ** 2
                         / (pochhammer(HALF, j) ** 2 * math.factorial(i) ** 2) / (j - i))
            assert wz_F(i, j) == literal_f
        for i in range(j + 1):
            literal_g = -(pochhammer(HALF, i) ** 2 * math.factorial(j) ** 2
                          / (pochhammer(HALF, j + 1) ** 2 * math.factorial(i) ** 2)) * Fraction(i * i, j - i + 1)
            assert wz_G(i, j) == literal_g
    with pytest.raises(PoleError):
        wz_F(3, 3)
    with pytest.raises(PoleError):
        wz_G(4, 3)


def test_harmonic_lemma_small():
    assert harmonic_lemma_sides(1) == (1, 1)
    lhs, rhs = harmonic_lemma_sides(2)
    assert lhs == rhs == Fraction(1, 1) / 2 + Fraction(1, 4)


@pytest.mark.parametrize("j", [1, 2, 7, 20])
def test_harmonic_chain_stages_agree(j):
    stages = harmonic_lemma_chain(j)
    assert len(set(stages.values())) == 1


def test_printed_certificate_orientation_fails():
    # stepping F in i instead of j does not telescope
    i, j = 0, 2
    assert wz_F(i + 1, j) - wz_F(i, j) != wz_G(i + 1, j) - wz_G(i, j)
    assert telescoping_certificate(i, j) == 0


def test_telescoped_boundary():
    for j in (1, 4, 9):
        diff, boundary = telescoped_boundary(j)
        assert diff == boundary == Fraction(-4 * j * j, (2 * j + 1) ** 2)


def test_recurrence_start():
    assert certificate_recurrence_check(1) == (Fraction(4, 3), Fraction(4, 3))
    with pytest.raises(DomainError):
        certificate_recurrence_check(0)


@given(st.integers(min_value=0, max_value=40))
def test_alpha_beta_closed_forms(j):
    alpha, beta = alpha_beta_sequence(j)
    assert beta == pochhammer(HALF, j)
    assert alpha == -2 * pochhammer(HALF, j) * odd_harmonic(j)


@given(st.integers(min_value=0, max_value=40))
def test_log_series_coefficients(j):
    left, right = log_k_series_coefficients(j)
    assert left == right
    assert left < 0 or j == 0
    left, right = log_integral_series_coefficients(j)
    assert left == right


def test_cot_partial_fractions():
    chk = cot_partial_fraction_check(0.5, 10**5)
    assert chk.lhs == pytest.approx(1.0, abs=1e-15)
    assert abs(chk.lhs - chk.rhs_partial) < 1e-5
    assert chk.tail_constant == pytest.approx(0.5 / math.pi, rel=1e-3)
    with pytest.raises(PoleError):
        cot_partial_fraction_check(1.0, 10)
    with pytest.raises(DomainError):
        cot_partial_fraction_check(0.5, 0)


def test_wallis_matches_pochhammer():
    for j in range(10):
        assert wallis_coefficient(j) == sin_power_integral(j)


@pytest.mark.parametrize("j,k,expected", [(1, 0, 1), (2, 2, 6), (3, 1, -6)])
def test_alt_binomial_examples(j, k, expected):
    assert alt_binomial_sum(j, k) == expected


def test_documented_values():
    assert wallis_coefficient(5) == Fraction(63, 256)
    lhs, rhs = harmonic_lemma_sides(40)
    assert lhs == rhs
    assert harmonic_lemma_sides(2) == (Fraction(3, 4), Fraction(3, 4))
    assert telescoping_certificate(3, 7) == 0
    assert certificate_recurrence_check(2) == (Fraction(4, 5), Fraction(4, 5))
    assert certificate_recurrence_check(10) == (Fraction(4, 21), Fraction(4, 21))
    assert alpha_beta_sequence(0) == (0, 1)
    assert alpha_beta_sequence(1) == (-1, HALF)
    assert alpha_beta_sequence(2) == (-2, Fraction(3, 4))
