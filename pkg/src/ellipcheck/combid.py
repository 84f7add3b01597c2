"""Exact rational checks of the combinatorial identities behind the table entries.

All values are :class:`fractions.Fraction` (always reduced, positive
denominator), so every identity here is checked with ``==`` rather than a
tolerance.

Notation: ``a_r = ((1/2)_r / r!)**2`` are the squared central coefficients of
the K series, ``h_j = sum_{i<j} 1/(2i+1)`` the odd harmonic sums.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DomainError, PoleError
from .hyp import HypParams, bailey_transform_exact, harmonic_specialization, hyp4f3_terminating
from .specfun import binomial, double_factorial, pochhammer

Rational = Fraction

HALF = Fraction(1, 2)

__all__ = [
    "Rational",
    "alt_binomial_sum",
    "sin_power_integral",
    "sin_power_routes",
    "sin_power_expansion",
    "wallis_coefficient",
    "central_coefficient",
    "odd_harmonic",
    "harmonic_lemma_sides",
    "harmonic_lemma_chain",
    "wz_F",
    "wz_G",
    "telescoping_certificate",
    "telescoped_boundary",
    "certificate_recurrence_check",
    "alpha_beta_sequence",
    "log_k_series_coefficients",
    "log_integral_series_coefficients",
    "cot_partial_fraction_check",
    "CotCheck",
]


def alt_binomial_sum(j: int, k: int) -> Fraction:
    """sum_{nu=0}^{k} (-1)^nu C(2j+1, nu); equals (-1)^k C(2j, k)."""
    if not 0 <= k <= j:
        raise DomainError(f"need 0 <= k <= j, got j={j}, k={k}")
    return Fraction(sum((-1) ** nu * binomial(2 * j + 1, nu) for nu in range(k + 1)))


def sin_power_expansion(j: int) -> list[tuple[int, Fraction]]:
    """Pairs (frequency, coefficient) with sin^{2j+1} x = sum c sin(freq x)."""
    scale = Fraction(1, 4**j)
    return [
        (2 * j - 2 * nu + 1, scale * (-1) ** (j - nu) * binomial(2 * j + 1, nu))
        for nu in range(j + 1)
    ]


def sin_power_integral(j: int) -> Fraction:
    """Coefficient of pi/2 in the integral of sin^{2j+1}(x)/x over (0, inf).

    Returns (2j-1)!!/(2j)!!.
    """
    if j < 0:
        raise DomainError("j must be >= 0")
    return Fraction(double_factorial(2 * j - 1), double_factorial(2 * j))


class SinPowerRoutes(NamedTuple):
    double_factorial: Fraction
    binomial_sum: Fraction
    wallis: Fraction


def sin_power_routes(j: int) -> SinPowerRoutes:
    """Three independent exact values for the sin^{2j+1}/x coefficient.

    * ratio of double factorials,
    * sum of the sine expansion coefficients, each sin(a x)/x contributing pi/2,
    * Wallis' coefficient (1/2)_j / j! for the integral of sin^{2j} over (0, pi/2).
    """
    expansion = sum(c for _, c in sin_power_expansion(j))
    return SinPowerRoutes(sin_power_integral(j), expansion, wallis_coefficient(j))


def wallis_coefficient(j: int) -> Fraction:
    """(1/2)_j / j!, the coefficient of pi/2 in the integral of sin^{2j} over (0, pi/2)."""
    if j < 0:
        raise DomainError("j must be >= 0")
    return pochhammer(HALF, j) / math.factorial(j)


@lru_cache(maxsize=None)
def central_coefficient(r: int) -> Fraction:
    """a_r = ((1/2)_r)^2 / (r!)^2 = (C(2r, r) / 4^r)^2."""
    c = Fraction(math.comb(2 * r, r), 4**r)
    return c * c


@lru_cache(maxsize=None)
def odd_harmonic(j: int) -> Fraction:
    """h_j = sum_{i=0}^{j-1} 1/(2i+1)."""
    if j <= 0:
        return Fraction(0)
    return odd_harmonic(j - 1) + Fraction(1, 2 * j - 1)


def harmonic_lemma_sides(j: int) -> tuple[Fraction, Fraction]:
    """sum_{i<j} a_i/(j-i)  and  4 a_j h_j."""
    if j < 1:
        raise DomainError("j must be >= 1")
    lhs = sum((central_coefficient(i) / (j - i) for i in range(j)), Fraction(0))
    return lhs, 4 * central_coefficient(j) * odd_harmonic(j)


def harmonic_lemma_chain(j: int) -> dict[str, Fraction]:
    """Every stage of the hypergeometric proof of the harmonic lemma, exactly.

    Each stage should equal ``target`` = 4 h_j.
    """
    if j < 1:
        raise DomainError("j must be >= 1")
    jj = Fraction(j)
    stages: dict[str, Fraction] = {}
    lhs, _ = harmonic_lemma_sides(j)
    stages["normalized"] = lhs / central_coefficient(j)
    stages["pochhammer_sum"] = sum(
        (pochhammer(-jj, k + 1) ** 2 / pochhammer(HALF - jj, k + 1) ** 2 / (k + 1) for k in range(j)),
        Fraction(0),
    )
    outer = jj**2 / (HALF - jj) ** 2
    p = harmonic_specialization(j)
    balanced = HypParams((p["x"], p["y"], p["z"], -p["m"]), (p["u"], p["v"], p["w"]), 1)
    stages["balanced_4f3"] = outer * hyp4f3_terminating(balanced)
    lhs43, rhs43 = bailey_transform_exact(**p)
    stages["transformed"] = outer * rhs43
    prefactor = Fraction(2 * j - 1, j)
    stages["ratio_sum"] = outer * prefactor * sum(
        (pochhammer(HALF, k) * pochhammer(HALF - jj, k) / (pochhammer(3 * HALF, k) * pochhammer(3 * HALF - jj, k))
         for k in range(j)),
        Fraction(0),
    )
    stages["partial_fractions"] = outer * Fraction((2 * j - 1) ** 2, j) * sum(
        (Fraction(1, (2 * k + 1) * (2 * j - 1 - 2 * k)) for k in range(j)), Fraction(0)
    )
    stages["harmonic"] = outer * Fraction((2 * j - 1) ** 2, j * j) * odd_harmonic(j)
    stages["target"] = 4 * odd_harmonic(j)
    return stages


def wz_F(i: int, j: int) -> Fraction:
    """F(i, j) = ((1/2)_i^2 j!^2) / ((1/2)_j^2 i!^2) / (j - i) = a_i / (a_j (j - i))."""
    if i == j:
        raise PoleError("F(i, j) is undefined at i = j")
    return central_coefficient(i) / (central_coefficient(j) * (j - i))


def wz_G(i: int, j: int) -> Fraction:
    """G(i, j) = -((1/2)_i^2 j!^2) / ((1/2)_{j+1}^2 i!^2) * i^2 / (j - i + 1).

    Uses (1/2)_{j+1} = (j + 1/2) (1/2)_j.
    """
    if i == j + 1:
        raise PoleError("G(i, j) is undefined at i = j + 1")
    return -central_coefficient(i) * i * i / (central_coefficient(j) * (j + HALF) ** 2 * (j - i + 1))


def telescoping_certificate(i: int, j: int) -> Fraction:
    """Residual F(i, j+1) - F(i, j) - G(i+1, j) + G(i, j); exactly zero for 0 <= i < j.

    The certificate pairs a step in j for F with a step in i for G, which
    is what makes the sum over i telescope.
    """
    if not 0 <= i < j:
        raise DomainError(f"need 0 <= i < j, got i={i}, j={j}")
    return wz_F(i, j + 1) - wz_F(i, j) - wz_G(i + 1, j) + wz_G(i, j)


def telescoped_boundary(j: int) -> tuple[Fraction, Fraction]:
    """(sum_{i<j} [F(i, j+1) - F(i, j)],  G(j, j) - G(0, j)); both equal -4j^2/(2j+1)^2."""
    if j < 1:
        raise DomainError("j must be >= 1")
    diff = sum((wz_F(i, j + 1) - wz_F(i, j) for i in range(j)), Fraction(0))
    return diff, wz_G(j, j) - wz_G(0, j)


def _a_seq(j: int) -> Fraction:
    return sum((wz_F(i, j) for i in range(j)), Fraction(0))


def _b_seq(j: int) -> Fraction:
    return sum((Fraction(4, 2 * i + 1) for i in range(j)), Fraction(0))


def certificate_recurrence_check(j: int) -> tuple[Fraction, Fraction]:
    """(a(j+1) - a(j), b(j+1) - b(j)) with a(j) = sum_{i<j} F(i, j), b(j) = sum_{i<j} 4/(2i+1).

    Both steps equal 4/(2j+1), and a(1) = b(1) = 4.
    """
    if j < 1:
        raise DomainError("j must be >= 1")
    return _a_seq(j + 1) - _a_seq(j), _b_seq(j + 1) - _b_seq(j)


def alpha_beta_sequence(j: int) -> tuple[Fraction, Fraction]:
    """Coefficients of the j-th m-derivative of ln(1 - m s^2) / sqrt(1 - m s^2).

    alpha_{j+1} = (j + 1/2) alpha_j - beta_j, beta_{j+1} = (j + 1/2) beta_j from
    (0, 1).  Closed forms: beta_j = (1/2)_j, alpha_j = -2 (1/2)_j h_j.
    """
    if j < 0:
        raise DomainError("j must be >= 0")
    alpha, beta = Fraction(0), Fraction(1)
    for n in range(j):
        alpha, beta = (n + HALF) * alpha - beta, (n + HALF) * beta
    return alpha, beta


def log_k_series_coefficients(j: int) -> tuple[Fraction, Fraction]:
    """Coefficient of pi (1 - m)^j in both sides of the log-K identity, m = k'^2.

    Left: integral of ln x / sqrt((1+x^2)(m+x^2)) expanded termwise, giving
    -(1/2) a_j h_j.  Right: (1/4) ln(m) K(sqrt(1-m)) as a Cauchy product,
    giving -(1/8) sum_{i<j} a_i/(j-i).
    """
    if j < 0:
        raise DomainError("j must be >= 0")
    # termwise: (-1)^j (1/2)_j / j! * (-(pi/2) (1/2)_j / j! * h_j) * (m-1)^j
    moment = -HALF * wallis_coefficient(j) * odd_harmonic(j)
    left = wallis_coefficient(j) * moment
    right = -Fraction(1, 8) * sum((central_coefficient(i) / (j - i) for i in range(j)), Fraction(0))
    return left, right


def log_integral_series_coefficients(j: int) -> tuple[Fraction, Fraction]:
    """Coefficient of pi m^j in both sides of the ln(1 - m sin^2)/sqrt(...) identity.

    Left: alpha_j * (1/2) * wallis_j / j! from differentiating under the
    integral.  Right: (1/2) ln(1 - m) K as a Cauchy product.
    """
    alpha, _ = alpha_beta_sequence(j)
    left = alpha * HALF * wallis_coefficient(j) / math.factorial(j)
    right = -Fraction(1, 4) * sum((central_coefficient(i) / (j - i) for i in range(j)), Fraction(0))
    return left, right


class CotCheck(NamedTuple):
    lhs: float
    rhs_partial: float
    tail_constant: float


def cot_partial_fraction_check(b: float, terms: int) -> CotCheck:
    """tan(pi b/2) against (4b/pi) sum_{j=1}^{N} 1/((2j-1)^2 - b^2).

    ``tail_constant`` is N * (lhs - rhs_partial); it approaches b/pi.
    """
    b = float(b)
    if terms < 1:
        raise DomainError("need at least one term")
    if abs(b) % 2 == 1:
        raise PoleError(f"tan(pi b / 2) has a pole at odd integer b = {b!r}")
    odd = 2.0 * np.arange(1, terms + 1) - 1.0
    # sum smallest terms first
    partial = 4.0 * b / math.pi * math.fsum((1.0 / (odd * odd - b * b))[::-1])
    lhs = math.tan(0.5 * math.pi * b)
    return CotCheck(lhs, partial, terms * (lhs - partial))
