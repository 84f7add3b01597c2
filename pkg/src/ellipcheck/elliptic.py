"""Complete elliptic integrals of the first, second and third kind.

All functions take the modulus k (not the parameter m = k**2).  K and E come
from the arithmetic-geometric mean; the hypergeometric series in m are kept as
an independent second route (``ellip_k_series``, ``ellip_e_series``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import ConvergenceError, DivergenceError, DomainError
from .hyp import hyp2f1
from .quad import integrate_finite, integrate_unit_singular

__all__ = [
    "Modulus",
    "EllipticPair",
    "AGMResult",
    "agm",
    "ellip_k",
    "ellip_e",
    "ellip_pair",
    "ellip_pi",
    "comp_k",
    "comp_e",
    "legendre_residual",
    "imag_modulus_k",
    "imag_modulus_k_transform",
    "imag_modulus_e",
    "imag_modulus_e_transform",
    "singular_modulus",
    "ellip_k_series",
    "ellip_e_series",
    "K_CAP",
    "SERIES_M_MAX",
]

K_CAP = 0.9999
SERIES_M_MAX = 0.7


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus k with derived m = k**2 and k' = sqrt(1 - k**2)."""

    k: float

    def __post_init__(self):
        k = float(self.k)
        if not 0.0 <= k < 1.0:
            raise DomainError(f"modulus must satisfy 0 <= k < 1, got {k!r}")
        object.__setattr__(self, "k", k)

    @property
    def m(self) -> float:
        return self.k * self.k

    @property
    def k_prime(self) -> float:
        # (1 - k)(1 + k) keeps k' accurate as k -> 1
        return math.sqrt((1.0 - self.k) * (1.0 + self.k))

    def complement(self) -> "Modulus":
        return Modulus(self.k_prime)

    @classmethod
    def from_m(cls, m: float) -> "Modulus":
        if not 0.0 <= m < 1.0:
            raise DomainError(f"parameter must satisfy 0 <= m < 1, got {m!r}")
        return cls(math.sqrt(m))


ModLike = Union[Modulus, float]


def _k_of(mod: ModLike) -> float:
    k = mod.k if isinstance(mod, Modulus) else float(mod)
    if k < 0 or math.isnan(k):
        raise DomainError(f"modulus must be non-negative, got {k!r}")
    return k


class EllipticPair(NamedTuple):
    K: float
    E: float


class AGMResult(NamedTuple):
    mean: float
    iterations: int


def agm(a: float, b: float) -> AGMResult:
    """Arithmetic-geometric mean of a >= b >= 0 with its iteration count."""
    a, b = float(a), float(b)
    if a < 0 or b < 0:
        raise DomainError(f"agm needs non-negative arguments, got ({a!r}, {b!r})")
    if b > a:
        a, b = b, a
    if b == 0.0:
        return AGMResult(0.0, 0)
    n = 0
    # one ulp can be ~2.2e-16 relative, so a tighter test may stall
    while abs(a - b) > 4e-16 * a:
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        n += 1
        if n > 64:
            raise ConvergenceError("agm did not converge", estimate=a)
    return AGMResult(0.5 * (a + b), n)


def _agm_ke(k: float, kp: float) -> EllipticPair:
    """K and E from one AGM sweep: E = K (1 - sum 2^(n-1) c_n^2)."""
    a, b, c = 1.0, kp, k
    s = 0.5 * c * c
    power = 0.5
    n = 0
    while abs(c) > 4e-16 * a or n == 0:
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        power *= 2.0
        s += power * c * c
        n += 1
        if n > 64:
            raise ConvergenceError("agm did not converge", estimate=a)
    K = math.pi / (2.0 * a)
    return EllipticPair(K, K * (1.0 - s))


def ellip_k(mod: ModLike) -> float:
    """Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')).

    Raises :class:`DivergenceError` for k > 0.9999, where K grows like
    ln(4/k') and a finite float would be misleading.
    """
    k = _k_of(mod)
    if k > K_CAP:
        raise DivergenceError(f"K(k) diverges as k -> 1; k = {k!r} exceeds cap {K_CAP}")
    kp = mod.k_prime if isinstance(mod, Modulus) else math.sqrt((1.0 - k) * (1.0 + k))
    return math.pi / (2.0 * agm(1.0, kp).mean)


def ellip_e(mod: ModLike) -> float:
    """Complete elliptic integral of the second kind, for 0 <= k <= 1."""
    k = _k_of(mod)
    if k > 1.0:
        raise DomainError(f"E(k) needs k <= 1, got {k!r}")
    if k == 1.0:
        return 1.0
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    if kp < 1e-8:
        # AGM needs ~log2 log(1/k') steps; near k = 1 use the leading expansion
        return 1.0 + 0.5 * kp * kp * (math.log(4.0 / kp) - 0.5)
    return _agm_ke(k, kp).E


def ellip_pair(mod: ModLike) -> EllipticPair:
    k = _k_of(mod)
    if k > K_CAP:
        raise DivergenceError(f"K(k) diverges as k -> 1; k = {k!r} exceeds cap {K_CAP}")
    return _agm_ke(k, math.sqrt((1.0 - k) * (1.0 + k)))


def ellip_pi(n: float, mod: ModLike, tol: float = 1e-12) -> float:
    """Complete integral of the third kind Pi(n, k) with characteristic n**2.

    Evaluated only by quadrature of the trigonometric form.
    """
    n = float(n)
    k = _k_of(mod)
    if not n * n < 1.0:
        raise DomainError(f"ellip_pi needs n**2 < 1, got n = {n!r}")
    if not k < 1.0:
        raise DomainError(f"ellip_pi needs k < 1, got {k!r}")
    n2, m = n * n, k * k

    def f(t):
        s2 = np.sin(t) ** 2
        return 1.0 / ((1.0 - n2 * s2) * np.sqrt(1.0 - m * s2))

    return integrate_finite(f, 0.0, math.pi / 2, tol).value


def comp_k(mod: ModLike) -> float:
    """K'(k) = K(k'), computed as pi / (2 agm(1, k)) to avoid forming k'."""
    k = _k_of(mod)
    if k == 0.0:
        raise DivergenceError("K'(k) diverges at k = 0")
    if k >= 1.0:
        raise DomainError(f"complementary modulus needs k < 1, got {k!r}")
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    if kp > K_CAP:
        raise DivergenceError(f"K'(k) diverges as k -> 0; k' = {kp!r} exceeds cap {K_CAP}")
    return math.pi / (2.0 * agm(1.0, k).mean)


def comp_e(mod: ModLike) -> float:
    """E'(k) = E(k')."""
    k = _k_of(mod)
    if k >= 1.0:
        raise DomainError(f"complementary modulus needs k < 1, got {k!r}")
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    if kp == 1.0:
        return 1.0
    return _agm_ke(kp, k).E


def legendre_residual(mod: ModLike) -> float:
    """K E' + K' E - K K' - pi/2, which vanishes identically on (0, 1)."""
    k = _k_of(mod)
    if not 0.0 < k < 1.0:
        raise DomainError(f"Legendre relation needs 0 < k < 1, got {k!r}")
    K, E = ellip_pair(k)
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    Kp, Ep = _agm_ke(kp, k)
    # grouped as K (E' - K') + K' E to keep the cancellation mild
    return K * (Ep - Kp) + Kp * E - math.pi / 2


def imag_modulus_k(k: float, tol: float = 1e-13) -> float:
    """K at the purely imaginary modulus i k, as a real integral.

    Integral over (0, 1) of dx / sqrt((1 - x^2)(1 + k^2 x^2)).
    """
    k = float(k)
    if k < 0:
        raise DomainError(f"imag_modulus_k needs k >= 0, got {k!r}")
    k2 = k * k
    return integrate_unit_singular(lambda x: 1.0 / np.sqrt(1.0 + k2 * x * x), tol).value


def imag_modulus_k_transform(k: float) -> float:
    """K(i k) = K(k / sqrt(1 + k^2)) / sqrt(1 + k^2)."""
    k = float(k)
    if k < 0:
        raise DomainError(f"imag_modulus_k needs k >= 0, got {k!r}")
    r = math.sqrt(1.0 + k * k)
    return ellip_k(k / r) / r


def imag_modulus_e(k: float, tol: float = 1e-13) -> float:
    """E at the purely imaginary modulus i k: integral of sqrt((1 + k^2 x^2)/(1 - x^2))."""
    k = float(k)
    if k < 0:
        raise DomainError(f"imag_modulus_e needs k >= 0, got {k!r}")
    k2 = k * k
    return integrate_unit_singular(lambda x: np.sqrt(1.0 + k2 * x * x), tol).value


def imag_modulus_e_transform(k: float) -> float:
    """E(i k) = sqrt(1 + k^2) E(k / sqrt(1 + k^2))."""
    k = float(k)
    r = math.sqrt(1.0 + k * k)
    return r * ellip_e(k / r)


def singular_modulus(r: int) -> float:
    """Closed-form k_r with K'(k_r)/K(k_r) = sqrt(r), for r = 1..5."""
    s2, s3, s5 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(5.0)
    table = {
        1: 1.0 / s2,
        2: s2 - 1.0,
        3: s2 * (s3 - 1.0) / 4.0,
        4: 3.0 - 2.0 * s2,
        5: 0.5 * (math.sqrt(s5 - 1.0) - math.sqrt(3.0 - s5)),
    }
    try:
        return table[int(r)]
    except KeyError:
        raise DomainError(f"singular modulus only tabulated for r = 1..5, got {r!r}") from None


def ellip_k_series(mod: ModLike) -> float:
    """K(k) = (pi/2) 2F1(1/2, 1/2; 1; k^2)."""
    k = _k_of(mod)
    return 0.5 * math.pi * hyp2f1(0.5, 0.5, 1.0, k * k)


def ellip_e_series(mod: ModLike) -> float:
    """E(k) = (pi/2) 2F1(-1/2, 1/2; 1; k^2)."""
    k = _k_of(mod)
    return 0.5 * math.pi * hyp2f1(-0.5, 0.5, 1.0, k * k)
