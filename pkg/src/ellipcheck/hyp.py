"""Hypergeometric series: 2F1 by term recurrence and terminating 4F3 sums.

Terminating series with :class:`~fractions.Fraction` parameters are summed
exactly; anything else is summed in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConvergenceError, DomainError, PoleError
from .specfun import pochhammer

__all__ = [
    "HypParams",
    "hyp2f1",
    "hyp4f3_terminating",
    "hyp_terminating",
    "bailey_transform_check",
    "bailey_transform_exact",
    "is_balanced",
    "harmonic_specialization",
]

REL_STOP = 1e-16
ABS_FLOOR = 1e-300
MAX_TERMS = 100_000


def _nonpos_int(x) -> bool:
    return x <= 0 and float(x) == int(x)


@dataclass(frozen=True)
class HypParams:
    numerators: tuple
    denominators: tuple
    argument: object = 1

    def __post_init__(self):
        object.__setattr__(self, "numerators", tuple(self.numerators))
        object.__setattr__(self, "denominators", tuple(self.denominators))

    def terminating_order(self) -> int | None:
        """m when some numerator equals -m (the smallest such m), else None."""
        orders = [-int(a) for a in self.numerators if _nonpos_int(a)]
        return min(orders) if orders else None


def hyp2f1(a: float, b: float, c: float, x: float) -> float:
    """Gauss series sum_j (a)_j (b)_j / ((c)_j j!) x^j for |x| < 1.

    Terminates when a or b is a non-positive integer.  Otherwise stops once a
    term falls below 1e-16 of the partial sum (floor 1e-300) and raises
    :class:`ConvergenceError` after 100000 terms.
    """
    a, b, c, x = float(a), float(b), float(c), float(x)
    terminating = _nonpos_int(a) or _nonpos_int(b)
    if not terminating and not abs(x) < 1:
        raise DomainError(f"hyp2f1 series needs |x| < 1, got {x!r}")
    if terminating:
        n_terms = min(-int(p) for p in (a, b) if _nonpos_int(p)) + 1
    else:
        n_terms = MAX_TERMS
    total = 1.0
    term = 1.0
    for j in range(n_terms - 1):
        if c + j == 0:
            raise PoleError(f"denominator parameter c = {c!r} hits zero at term {j}")
        term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * x
        total += term
        if not terminating and abs(term) < max(REL_STOP * abs(total), ABS_FLOOR):
            return total
    if not terminating:
        raise ConvergenceError(f"hyp2f1 not converged after {MAX_TERMS} terms", estimate=total)
    return total


def hyp_terminating(params: HypParams):
    """Finite sum of a terminating pFq series at its argument.

    Exact when every parameter and the argument are ``int``/``Fraction``.
    """
    m = params.terminating_order()
    if m is None:
        raise DomainError("series does not terminate: no non-positive integer numerator")
    exact = all(isinstance(p, (int, Fraction)) for p in (*params.numerators, *params.denominators, params.argument))
    one = Fraction(1) if exact else 1.0
    x = Fraction(params.argument) if exact else float(params.argument)
    num = [Fraction(p) if exact else float(p) for p in params.numerators]
    den = [Fraction(p) if exact else float(p) for p in params.denominators]
    total = one
    term = one
    for k in range(m):
        for b in den:
            if b + k == 0:
                raise PoleError(f"denominator parameter {b} vanishes at term {k + 1} before termination")
        for p in num:
            term *= p + k
        for b in den:
            term /= b + k
        term = term * x / (k + 1)
        total += term
    return total


def hyp4f3_terminating(params: HypParams):
    """Terminating 4F3 at its argument (normally 1); see :func:`hyp_terminating`."""
    if len(params.numerators) != 4 or len(params.denominators) != 3:
        raise DomainError("4F3 needs four numerator and three denominator parameters")
    return hyp_terminating(params)


def is_balanced(params: HypParams) -> bool:
    """Saalschutz condition: 1 + sum(numerators) == sum(denominators)."""
    return 1 + sum(params.numerators) == sum(params.denominators)


def _bailey_sides(x, y, z, m, u, v, w):
    if m < 0:
        raise DomainError("m must be a non-negative integer")
    lhs_p = HypParams((x, y, z, -m), (u, v, w), 1)
    rhs_p = HypParams((u - x, u - y, z, -m), (1 - v + z - m, 1 - w + z - m, u), 1)
    if not is_balanced(lhs_p):
        raise DomainError("transformation needs a balanced series: x + y + z - m + 1 = u + v + w")
    prefactor = pochhammer(v - z, m) * pochhammer(w - z, m) / (pochhammer(v, m) * pochhammer(w, m))
    return hyp4f3_terminating(lhs_p), prefactor * hyp4f3_terminating(rhs_p)


def bailey_transform_check(x, y, z, m: int, u, v, w) -> tuple[float, float]:
    """Both sides of the balanced terminating 4F3 transformation, in floats.

    LHS is 4F3(x, y, z, -m; u, v, w; 1); RHS is
    (v-z)_m (w-z)_m / ((v)_m (w)_m) * 4F3(u-x, u-y, z, -m; 1-v+z-m, 1-w+z-m, u; 1).
    """
    lhs, rhs = _bailey_sides(*(float(p) for p in (x, y, z)), int(m), *(float(p) for p in (u, v, w)))
    return float(lhs), float(rhs)


def bailey_transform_exact(x, y, z, m: int, u, v, w) -> tuple[Fraction, Fraction]:
    """Exact-rational version of :func:`bailey_transform_check`."""
    fx = [Fraction(p) for p in (x, y, z)]
    fu = [Fraction(p) for p in (u, v, w)]
    return _bailey_sides(*fx, int(m), *fu)


def harmonic_specialization(j: int) -> dict:
    """Parameters x=1-j, y=z=1, m=j-1, u=v=3/2-j, w=2 that reduce the harmonic lemma."""
    if j < 1:
        raise DomainError("j must be >= 1")
    half = Fraction(1, 2)
    return dict(x=Fraction(1 - j), y=Fraction(1), z=Fraction(1), m=j - 1,
                u=3 * half - j, v=3 * half - j, w=Fraction(2))
