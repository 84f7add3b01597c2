"""Scalar special-function kernels.

Gamma and log-gamma delegate to the C library routines exposed by :mod:`math`
(Lanczos-type, well inside the 1e-13 relative budget on [0.01, 50]); digamma is
computed here by upward recurrence plus the asymptotic series.  ``pochhammer``,
``double_factorial`` and ``binomial`` are exact whenever their inputs are exact
(``int`` or :class:`fractions.Fraction`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Real

from .errors import DomainError, PoleError

__all__ = [
    "gamma",
    "log_gamma",
    "beta",
    "digamma",
    "pochhammer",
    "double_factorial",
    "binomial",
    "EULER_GAMMA",
]

EULER_GAMMA = 0.57721566490153286060651209008240243

# B_2k / (2k) for the digamma asymptotic series
_PSI_COEFFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(x: float) -> float:
    """Gamma function for real ``x``.

    Negative non-integer arguments go through the reflection formula
    ``gamma(x) * gamma(1 - x) = pi / sin(pi x)``.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x!r}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * math.gamma(1.0 - x))
    return math.gamma(x)


def log_gamma(x: float) -> float:
    """Natural log of gamma(x) for x > 0."""
    x = float(x)
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def beta(a: float, b: float) -> float:
    """Euler beta function B(a, b) = gamma(a) gamma(b) / gamma(a + b)."""
    a, b = float(a), float(b)
    if not (a > 0 and b > 0):
        raise DomainError(f"beta requires positive arguments, got ({a!r}, {b!r})")
    if a + b < 170.0:
        return math.gamma(a) * math.gamma(b) / math.gamma(a + b)
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def digamma(x: float) -> float:
    """Logarithmic derivative of gamma, psi(x), for x > 0.

    Shifts the argument above 10 with psi(x) = psi(x + 1) - 1/x and then sums
    the Bernoulli asymptotic series.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    shift = 0.0
    while x < 10.0:
        shift -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    for c in reversed(_PSI_COEFFS):
        tail = tail * inv2 + c
    return shift + math.log(x) - 0.5 / x - tail * inv2


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    The result type follows ``a``: an ``int`` or ``Fraction`` argument gives an
    exact result.
    """
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    if isinstance(a, (int, Fraction)):
        acc = Fraction(1) if isinstance(a, Fraction) else 1
    elif isinstance(a, Real):
        acc = 1.0
    else:
        acc = 1
    for i in range(n):
        acc *= a + i
    return acc


def double_factorial(n: int) -> int:
    """n!! for n >= -1, with 0!! = (-1)!! = 1."""
    if n < -1:
        raise DomainError(f"double_factorial needs n >= -1, got {n}")
    acc = 1
    for i in range(n, 0, -2):
        acc *= i
    return acc


def binomial(n: int, k: int) -> int:
    """C(n, k); zero when k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
