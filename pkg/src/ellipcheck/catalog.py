"""Registry of table entries and batch verification.

Each :class:`EntryRecord` pairs a numerical evaluation of the left-hand side
with a closed form over a parameter domain.  An entry is checked along one or
more *routes* and every route yields its own :class:`VerificationResult` row,
keyed by ``params["route"]``:

* ``agm``: closed form with K and E from the arithmetic-geometric mean.  This
  is the primary route wherever K or E appear.
* ``series``: the same closed form with K and E from the 2F1 series, offered
  only where every modulus involved has m <= 0.7.
* oracle routes (``direct``, ``pv-direct``, ``bridge``, ...) that compare a
  reduction against a brute-force evaluation of the original integral.  These
  carry an accuracy floor; the effective tolerance is ``max(tol, floor)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable, NamedTuple, Sequence

import numpy as np

from .combid import sin_power_expansion, sin_power_integral, wallis_coefficient
from .elliptic import (
    SERIES_M_MAX,
    comp_k,
    ellip_e,
    ellip_e_series,
    ellip_k,
    ellip_k_series,
    imag_modulus_e,
    imag_modulus_k,
    singular_modulus,
)
from .errors import DomainError
from .quad import (
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
)
from .specfun import beta, binomial, gamma

__all__ = [
    "EntryRecord",
    "Domain",
    "Route",
    "VerificationResult",
    "UnknownEntryError",
    "list_entries",
    "get_entry",
    "verify_entry",
    "verify_all",
    "plan",
    "skipped_pairs",
    "DEFAULT_GRID",
    "REPORT_FIELDS",
    "REPORT_SCHEMA",
    "results_to_json",
    "results_to_csv",
    "results_to_text",
    "results_from_json",
]

# tolerance asked of the quadrature behind every left-hand side
QUAD_TOL = 1e-13

# accuracy floors of the brute-force oracles
FLOOR_DIRECT = 1e-6
FLOOR_PV = 1e-5
FLOOR_BRIDGE = 1e-7
FLOOR_PARTIAL = 1e-5

PARTIAL_TERMS = 10**6

DEFAULT_GRID = (0.1, 0.3, 0.5, 0.7, 0.9) + tuple(singular_modulus(r) for r in range(1, 6))

REPORT_FIELDS = ("id", "params", "lhs", "rhs", "abs_err", "rel_err", "pass", "evals", "elapsed_ms")


class UnknownEntryError(KeyError):
    pass


class _Backend(NamedTuple):
    name: str
    K: Callable[[float], float]
    E: Callable[[float], float]


AGM = _Backend("agm", ellip_k, ellip_e)
SERIES = _Backend("series", ellip_k_series, ellip_e_series)


@dataclass(frozen=True)
class Route:
    """One way of checking an entry: ``lhs(params)`` against ``rhs(params)``.

    Either side may return a float or a :class:`QuadResult`.
    """

    name: str
    lhs: Callable[[dict], Any]
    rhs: Callable[[dict], Any]
    floor: float = 0.0
    applies: Callable[[dict], bool] | None = None

    def available(self, params: dict) -> bool:
        return self.applies is None or bool(self.applies(params))


@dataclass(frozen=True, eq=False)
class Domain:
    """Parameter domain: an optional closed k-interval crossed with fixed points.

    ``k_min is None`` means k is not a parameter.  ``points`` lists the
    assignments of the remaining parameters; ``({},)`` when there are none.
    """

    k_min: float | None = None
    k_max: float | None = None
    points: tuple = ({},)

    @property
    def has_k(self) -> bool:
        return self.k_min is not None

    def contains_k(self, k: float) -> bool:
        return self.has_k and self.k_min <= k <= self.k_max

    def check(self, params: dict):
        rest = {key: v for key, v in params.items() if key != "route"}
        if self.has_k:
            if "k" not in rest:
                raise DomainError("parameter k is required")
            k = rest.pop("k")
            if not isinstance(k, (int, float)) or not self.contains_k(float(k)):
                raise DomainError(f"k = {k!r} outside [{self.k_min}, {self.k_max}]")
        if rest not in list(self.points):
            choices = ", ".join(json.dumps(p, sort_keys=True) for p in self.points)
            raise DomainError(f"parameters {json.dumps(rest, sort_keys=True)} not in {{{choices}}}")

    def describe(self) -> str:
        parts = []
        if self.has_k:
            parts.append(f"k in [{self.k_min}, {self.k_max}]")
        if self.points != ({},):
            parts.append(" | ".join(json.dumps(p, sort_keys=True) for p in self.points))
        return "; ".join(parts) or "parameter-free"


@dataclass(frozen=True, eq=False)
class EntryRecord:
    id: str
    method: str
    lhs_recipe: str
    rhs_closed_form: str
    k_domain: Domain
    default_tol: float
    routes: tuple
    errata: str | None = None
    principal_value: bool = False

    def route(self, name: str | None) -> Route:
        if name is None:
            return self.routes[0]
        for r in self.routes:
            if r.name == name:
                return r
        raise DomainError(f"{self.id} has no route {name!r}; routes: {', '.join(r.name for r in self.routes)}")

    @property
    def route_names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.routes)


@dataclass
class VerificationResult:
    id: str
    params: dict
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    passed: bool
    evals: int
    elapsed_ms: float | None
    tol: float = field(default=math.nan, compare=False)
    message: str = field(default="", compare=False)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": dict(sorted(self.params.items())),
            "lhs": _finite_or_none(self.lhs),
            "rhs": _finite_or_none(self.rhs),
            "abs_err": _finite_or_none(self.abs_err),
            "rel_err": _finite_or_none(self.rel_err),
            "pass": bool(self.passed),
            "evals": int(self.evals),
            "elapsed_ms": _finite_or_none(self.elapsed_ms),
        }


def _finite_or_none(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


# ---------------------------------------------------------------- integrands


def _delta(k: float, cos: bool = False):
    m = k * k
    if cos:
        return lambda x: np.sqrt(1.0 - m * np.cos(x) ** 2)
    return lambda x: np.sqrt(1.0 - m * np.sin(x) ** 2)


def _kprime(k: float) -> float:
    return math.sqrt((1.0 - k) * (1.0 + k))


def _log_kprime(k: float) -> float:
    return 0.5 * math.log1p(-k * k)


def _only_k(p):
    return (p["k"],)


def _series_ok(moduli: Callable[[dict], Iterable[float]]):
    return lambda p: all(x * x <= SERIES_M_MAX for x in moduli(p))


def _closed_routes(lhs, closed, moduli=_only_k) -> tuple[Route, Route]:
    """AGM and series routes for a closed form ``closed(params, backend)``."""
    return (
        Route("agm", lhs, lambda p: closed(p, AGM)),
        Route("series", lhs, lambda p: closed(p, SERIES), applies=_series_ok(moduli)),
    )


def _sin_moments(k: float, r_max: int, be: _Backend) -> list[float]:
    """T_r = integral of sin^{2r} / sqrt(1 - k^2 sin^2) over (0, pi/2), r <= r_max.

    T_0 = K, T_1 = (K - E)/k^2, and
    (2r + 1) k^2 T_{r+1} = 2r (1 + k^2) T_r - (2r - 1) T_{r-1}.
    """
    m = k * k
    K, E = be.K(k), be.E(k)
    T = [K, (K - E) / m]
    for r in range(1, r_max):
        T.append((2 * r * (1 + m) * T[r] - (2 * r - 1) * T[r - 1]) / ((2 * r + 1) * m))
    return T[: r_max + 1]


# ------------------------------------------------------------------- entries


def _gamma_entries() -> list[EntryRecord]:
    s2pi = math.sqrt(2.0 * math.pi)
    k_lem = 1.0 / math.sqrt(2.0)

    def lhs16(p):
        return integrate_unit_singular(lambda x: 1.0 / np.sqrt(1.0 + x * x), QUAD_TOL)

    def lhs18(p):
        return integrate_unit_singular(lambda x: x * x / np.sqrt(1.0 + x * x), QUAD_TOL)

    def lhs_ei(p):
        return imag_modulus_e(1.0, QUAD_TOL)

    def quad_k(p):
        return integrate_finite(lambda x: 1.0 / _delta(k_lem)(x), 0.0, math.pi / 2, QUAD_TOL)

    gamma_k = lambda p: gamma(0.25) ** 2 / (4.0 * math.sqrt(math.pi))
    return [
        EntryRecord(
            "GR-3.166.16", "beta integral after t = x^4",
            "quad.integrate_unit_singular: dx / sqrt(1 - x^4) over (0, 1)",
            "Gamma(1/4)^2 / (4 sqrt(2 pi))",
            Domain(), 1e-10,
            (Route("gamma", lhs16, lambda p: gamma(0.25) ** 2 / (4.0 * s2pi)),
             Route("beta", lhs16, lambda p: 0.25 * beta(0.25, 0.5))),
        ),
        EntryRecord(
            "GR-3.166.18", "beta integral after t = x^4",
            "quad.integrate_unit_singular: x^2 dx / sqrt(1 - x^4) over (0, 1)",
            "Gamma(3/4)^2 / sqrt(2 pi)",
            Domain(), 1e-10,
            (Route("gamma", lhs18, lambda p: gamma(0.75) ** 2 / s2pi),
             Route("beta", lhs18, lambda p: 0.25 * beta(0.75, 0.5))),
        ),
        EntryRecord(
            "E-IMAG-UNIT", "E at modulus sqrt(-1) as the sum of the two beta integrals",
            "quad.integrate_unit_singular: (1 + x^2) dx / sqrt(1 - x^4) over (0, 1)",
            "[Gamma(1/4)^2 + 4 Gamma(3/4)^2] / (4 sqrt(2 pi))",
            Domain(), 1e-10,
            (Route("gamma", lhs_ei, lambda p: (gamma(0.25) ** 2 + 4.0 * gamma(0.75) ** 2) / (4.0 * s2pi)),)
            + _closed_routes(lhs_ei, lambda p, be: math.sqrt(2.0) * be.E(k_lem), lambda p: (k_lem,)),
        ),
        EntryRecord(
            "GR-8.129.1", "lemniscatic value via the imaginary-modulus transformation",
            "elliptic.ellip_k at k = 1/sqrt(2) (agm; series and quadrature as extra routes)",
            "Gamma(1/4)^2 / (4 sqrt(pi))",
            Domain(), 1e-11,
            (Route("agm", lambda p: ellip_k(k_lem), gamma_k),
             Route("series", lambda p: ellip_k_series(k_lem), gamma_k),
             Route("quad", quad_k, gamma_k)),
        ),
    ]


def _modulus_entries() -> list[EntryRecord]:
    def ratio_agm(p):
        k = singular_modulus(p["r"])
        return comp_k(k) / ellip_k(k)

    def ratio_series(p):
        k = singular_modulus(p["r"])
        return ellip_k_series(_kprime(k)) / ellip_k_series(k)

    def ratio_quad(p):
        k = singular_modulus(p["r"])
        num = integrate_finite(lambda x: 1.0 / _delta(_kprime(k))(x), 0.0, math.pi / 2, QUAD_TOL)
        den = integrate_finite(lambda x: 1.0 / _delta(k)(x), 0.0, math.pi / 2, QUAD_TOL)
        return QuadResult(num.value / den.value, 0.0, num.evaluations + den.evaluations)

    root = lambda p: math.sqrt(p["r"])

    def both_moduli(p):
        k = singular_modulus(p["r"])
        return k, _kprime(k)

    def imag_rhs(p, be):
        r = math.sqrt(1.0 + p["k"] ** 2)
        return be.K(p["k"] / r) / r

    imag_lhs = lambda p: imag_modulus_k(p["k"], QUAD_TOL)
    return [
        EntryRecord(
            "SINGULAR-VALUES", "closed-form singular moduli k_r",
            "K'(k_r) / K(k_r) with k_r from elliptic.singular_modulus",
            "sqrt(r)",
            Domain(points=tuple({"r": r} for r in range(1, 6))), 1e-10,
            (Route("agm", ratio_agm, root),
             Route("series", ratio_series, root, applies=_series_ok(both_moduli)),
             Route("quad", ratio_quad, root)),
        ),
        EntryRecord(
            "IMAG-MODULUS", "change of variables x -> x / sqrt(1 + k^2 (1 - x^2))",
            "quad.integrate_unit_singular: dx / sqrt((1 - x^2)(1 + k^2 x^2)) over (0, 1)",
            "K(k / sqrt(1 + k^2)) / sqrt(1 + k^2)",
            Domain(0.0, 0.99), 1e-9,
            _closed_routes(imag_lhs, imag_rhs, lambda p: (p["k"] / math.sqrt(1.0 + p["k"] ** 2),)),
        ),
    ]


def _by_parts_entries() -> list[EntryRecord]:
    # x = sin t turns x arcsin(x) dx into t sin t cos t dt, smooth at both ends
    def lhs_factory(weight, power: float, cos: bool):
        def lhs(p):
            m = p["k"] ** 2

            def f(t):
                st, ct = np.sin(t), np.cos(t)
                base = 1.0 - m * (ct * ct if cos else st * st)
                return weight(t) * st * ct / base**power

            return integrate_finite(f, 0.0, math.pi / 2, QUAD_TOL)

        return lhs

    asin_w = lambda t: t
    acos_w = lambda t: 0.5 * math.pi - t
    half_pi = 0.5 * math.pi
    table = [
        ("GR-4.522.4a", asin_w, 1.5, False, 0.95,
         "x arcsin(x) / (1 - k^2 x^2)^(3/2)", "(pi / (2 k') - K) / k^2",
         lambda p, be: (half_pi / _kprime(p["k"]) - be.K(p["k"])) / p["k"] ** 2),
        ("GR-4.522.4b", asin_w, 0.5, False, 0.99,
         "x arcsin(x) / sqrt(1 - k^2 x^2)", "(E - (pi/2) k') / k^2",
         lambda p, be: (be.E(p["k"]) - half_pi * _kprime(p["k"])) / p["k"] ** 2),
        ("GR-4.522.5", acos_w, 0.5, False, 0.99,
         "x arccos(x) / sqrt(1 - k^2 x^2)", "(pi/2 - E) / k^2",
         lambda p, be: (half_pi - be.E(p["k"])) / p["k"] ** 2),
        ("GR-4.522.6", asin_w, 0.5, True, 0.99,
         "x arcsin(x) / sqrt(k'^2 + k^2 x^2)", "(pi/2 - E) / k^2",
         lambda p, be: (half_pi - be.E(p["k"])) / p["k"] ** 2),
        ("GR-4.522.7", acos_w, 0.5, True, 0.99,
         "x arccos(x) / sqrt(k'^2 + k^2 x^2)", "(E - (pi/2) k') / k^2",
         lambda p, be: (be.E(p["k"]) - half_pi * _kprime(p["k"])) / p["k"] ** 2),
    ]
    out = []
    for eid, w, power, cos, kmax, integrand, rhs_text, closed in table:
        out.append(EntryRecord(
            eid, "integration by parts against the K or E integrand",
            f"quad.integrate_finite: {integrand} over (0, 1), via x = sin t",
            rhs_text,
            Domain(0.01, kmax), 1e-9,
            _closed_routes(lhs_factory(w, power, cos), closed),
        ))
    return out


def _reduction_entries() -> list[EntryRecord]:
    out = []

    def sinc_lhs(p):
        return oscillatory_sinc(PeriodicKernel(lambda x: np.ones_like(x), math.pi, "even"), QUAD_TOL)

    out.append(EntryRecord(
        "GR-3.721.1", "sinc reduction with f = 1",
        "quad.oscillatory_sinc: f = 1, a = pi",
        "pi / 2",
        Domain(), 1e-9,
        (Route("reduction", sinc_lhs, lambda p: 0.5 * math.pi),
         Route("direct", lambda p: oscillatory_direct(lambda x: np.ones_like(x), math.pi),
               lambda p: 0.5 * math.pi, floor=FLOOR_DIRECT)),
    ))

    def make_sinc(eid, power, cos, kind, text):
        def g(k):
            d = _delta(k, cos)
            return (lambda x: 1.0 / d(x)) if power < 0 else d

        lhs = lambda p: oscillatory_sinc(PeriodicKernel(g(p["k"]), math.pi, "even"), QUAD_TOL)
        closed = (lambda p, be: be.K(p["k"])) if kind == "K" else (lambda p, be: be.E(p["k"]))
        direct = Route("direct", lambda p: oscillatory_direct(g(p["k"]), math.pi), lhs, floor=FLOOR_DIRECT)
        return EntryRecord(
            eid, "sinc reduction for an even pi-periodic kernel",
            f"quad.oscillatory_sinc: {text} sin(x) / x, a = pi",
            f"{kind}(k)",
            Domain(0.0, 0.99), 1e-9,
            _closed_routes(lhs, closed) + (direct,),
        )

    def make_pv(eid, power, cos, kind, text):
        def g(k):
            d = _delta(k, cos)
            return (lambda x: 1.0 / d(x)) if power < 0 else d

        lhs = lambda p: pv_tan_reduction(g(p["k"]), QUAD_TOL)
        closed = (lambda p, be: be.K(p["k"])) if kind == "K" else (lambda p, be: be.E(p["k"]))

        def brute(p):
            gk = g(p["k"])
            return pv_direct(lambda x: np.tan(x) * gk(x), [0.5 * math.pi], math.pi)

        return EntryRecord(
            eid, "principal value: cotangent weight of the odd-kernel reduction cancels tan",
            f"quad.pv_tan_reduction: PV of {text} tan(x) / x",
            f"{kind}(k)",
            Domain(0.0, 0.99), 1e-9,
            _closed_routes(lhs, closed) + (Route("pv-direct", brute, lhs, floor=FLOOR_PV),),
            principal_value=True,
        )

    out.append(make_sinc("GR-3.842.3a", -1, False, "K", "1/sqrt(1 - k^2 sin^2 x)"))
    out.append(make_sinc("GR-3.842.3b", -1, True, "K", "1/sqrt(1 - k^2 cos^2 x)"))
    out.append(make_pv("GR-3.842.3c", -1, False, "K", "1/sqrt(1 - k^2 sin^2 x)"))
    out.append(make_pv("GR-3.842.3d", -1, True, "K", "1/sqrt(1 - k^2 cos^2 x)"))
    out.append(make_sinc("GR-3.841.1", 1, False, "E", "sqrt(1 - k^2 sin^2 x)"))
    out.append(make_sinc("GR-3.841.2", 1, True, "E", "sqrt(1 - k^2 cos^2 x)"))
    out.append(make_pv("GR-3.841.3", 1, False, "E", "sqrt(1 - k^2 sin^2 x)"))
    out.append(make_pv("GR-3.841.4", 1, True, "E", "sqrt(1 - k^2 cos^2 x)"))
    return out


FAMILY_POINTS = ({"m": 0, "n": 1}, {"m": 1, "n": 1}, {"m": 2, "n": 3}, {"m": 3, "n": 3})


def _family_kernel(k: float, m: int, n: int, cos: bool):
    d = _delta(k, cos)
    return lambda x: np.sin(x) ** n * np.cos(x) ** m / d(x)


def _family_period(m: int, n: int) -> float:
    return math.pi if (m + n) % 2 == 0 else 2.0 * math.pi


def family_closed_form(k: float, m: int, n: int, cos: bool, backend: _Backend = AGM) -> float:
    """Closed form of I_{m,n}(k) (``cos=False``) or J_{m,n}(k) for odd n.

    The odd-kernel reduction gives the integral of
    sin^{n-1} cos^{2 ceil(m/2)} / sqrt(1 - k^2 sin^2) over (0, pi/2) (sin and
    cos swapped in the numerator for J), a polynomial in s = sin^2 that is
    integrated term by term with the moments T_r.
    """
    if n % 2 == 0:
        raise DomainError("only odd n gives a convergent odd kernel")
    c, h = (m + 1) // 2, (n - 1) // 2
    p, q = (c, h) if cos else (h, c)
    T = _sin_moments(k, p + q, backend)
    # s^p (1 - s)^q
    return sum((-1) ** i * binomial(q, i) * T[p + i] for i in range(q + 1))


def _family_entries() -> list[EntryRecord]:
    out = []
    for eid, cos, name in (("FAMILY-I", False, "sin"), ("FAMILY-J", True, "cos")):
        def lhs(p, cos=cos):
            f = _family_kernel(p["k"], p["m"], p["n"], cos)
            return reduce_odd_periodic(PeriodicKernel(f, _family_period(p["m"], p["n"]), "odd"), QUAD_TOL)

        def direct(p, cos=cos):
            f = _family_kernel(p["k"], p["m"], p["n"], cos)
            return oscillatory_direct(f, _family_period(p["m"], p["n"]), 512, "richardson", weight="none")

        closed = lambda p, be, cos=cos: family_closed_form(p["k"], p["m"], p["n"], cos, be)
        out.append(EntryRecord(
            eid, "odd-kernel reduction (samples of GR 3.844 / 3.846)",
            f"quad.reduce_odd_periodic: sin^n x cos^m x / sqrt(1 - k^2 {name}^2 x) / x",
            "polynomial in T_r = int sin^{2r} / sqrt(1 - k^2 sin^2), T_0 = K, T_1 = (K - E)/k^2",
            Domain(0.1, 0.99, FAMILY_POINTS), 1e-9,
            _closed_routes(lhs, closed) + (Route("direct", direct, lhs, floor=FLOOR_DIRECT),),
        ))
    return out


def _log_kernel(k: float):
    m = k * k
    return lambda x: np.log1p(-m * np.sin(x) ** 2) / np.sqrt(1.0 - m * np.sin(x) ** 2)


def _lhs_4414(p):
    return integrate_finite(_log_kernel(p["k"]), 0.0, math.pi / 2, QUAD_TOL)


def _k_log_kprime(p, be):
    return be.K(p["k"]) * _log_kprime(p["k"])


def _i2_expansion(k: float) -> float:
    """(pi/4) sum_j (1/2)_j m^j / (j+1)! * (1 - (1/2)_{j+1} / (j+1)!)."""
    m = k * k
    total, term_m = 0.0, 1.0  # term_m = (1/2)_j m^j / (j+1)!
    w = 0.5  # (1/2)_{j+1} / (j+1)!
    for j in range(2000):
        piece = term_m * (1.0 - w)
        total += piece
        if abs(piece) < 1e-17 * abs(total):
            break
        term_m *= (j + 0.5) * m / (j + 2)
        w *= (j + 1.5) / (j + 2)
    return 0.25 * math.pi * total


@lru_cache(maxsize=8)
def _tan_partial_sum(b: float) -> float:
    odd = 2.0 * np.arange(1, PARTIAL_TERMS + 1) - 1.0
    # smallest terms first
    return 4.0 * b / math.pi * math.fsum((1.0 / (odd * odd - b * b))[::-1])


def _series_entries() -> list[EntryRecord]:
    out = []

    def sinc_log(p):
        return oscillatory_sinc(PeriodicKernel(_log_kernel(p["k"]), math.pi, "even"), QUAD_TOL)

    bridge = Route("bridge", lambda p: oscillatory_direct(_log_kernel(p["k"]), math.pi), _lhs_4414,
                   floor=FLOOR_BRIDGE)
    out.append(EntryRecord(
        "GR-4.432.1", "sinc reduction to the finite integral of GR-4.414.1",
        "quad.oscillatory_sinc: sin(x) ln(1 - k^2 sin^2 x) / sqrt(1 - k^2 sin^2 x) / x",
        "K(k) ln k'",
        Domain(0.0, 0.99), 1e-9,
        _closed_routes(sinc_log, _k_log_kprime) + (bridge,),
    ))
    out.append(EntryRecord(
        "GR-4.414.1", "differentiation in m under the integral, Cauchy product",
        "quad.integrate_finite: ln(1 - k^2 sin^2 x) / sqrt(1 - k^2 sin^2 x) over (0, pi/2)",
        "K(k) ln k'",
        Domain(0.0, 0.99), 1e-9,
        _closed_routes(_lhs_4414, _k_log_kprime),
    ))

    def sin_power_lhs(p):
        j = p["j"]
        return reduce_odd_periodic(PeriodicKernel(lambda x: np.sin(x) ** (2 * j + 1), 2.0 * math.pi, "odd"), QUAD_TOL)

    def sin_power_direct(p):
        j = p["j"]
        return oscillatory_direct(lambda x: np.sin(x) ** (2 * j + 1), 2.0 * math.pi, 1024, "richardson",
                                  weight="none")

    half_pi = 0.5 * math.pi
    out.append(EntryRecord(
        "GR-3.821.7", "sine power expansion, or Wallis via the odd-kernel reduction",
        "quad.reduce_odd_periodic: sin^{2j+1}(x) / x, a = 2 pi",
        "(2j-1)!! / (2j)!! * pi / 2",
        Domain(points=tuple({"j": j} for j in range(6))), 1e-9,
        (Route("double-factorial", sin_power_lhs, lambda p: half_pi * float(sin_power_integral(p["j"]))),
         Route("binomial", sin_power_lhs,
               lambda p: half_pi * float(sum(c for _, c in sin_power_expansion(p["j"])))),
         Route("wallis", sin_power_lhs, lambda p: half_pi * float(wallis_coefficient(p["j"]))),
         Route("direct", sin_power_direct, lambda p: half_pi * float(sin_power_integral(p["j"])),
               floor=FLOOR_DIRECT)),
    ))

    def lhs_3842_4(p):
        d = _delta(p["k"])
        return integrate_finite(lambda x: x * np.sin(x) * np.cos(x) / d(x), 0.0, math.pi / 2, QUAD_TOL)

    def rhs_3842_4(p, be):
        k = p["k"]
        if k == 0:
            return math.pi / 8.0
        return (be.E(k) - 0.5 * math.pi * _kprime(k)) / (k * k)

    out.append(EntryRecord(
        "GR-3.842.4", "termwise expansion in m = k^2",
        "quad.integrate_finite: x sin x cos x / sqrt(1 - k^2 sin^2 x) over (0, pi/2)",
        "(E - (pi/2) k') / k^2, with limit pi/8 at k = 0",
        Domain(0.0, 0.99), 1e-9,
        _closed_routes(lhs_3842_4, rhs_3842_4)
        + (Route("expansion", lhs_3842_4, lambda p: _i2_expansion(p["k"]), applies=_series_ok(_only_k)),),
    ))

    def tan_half(p):
        return math.tan(0.5 * math.pi * p["b"])

    def partial_sum(p):
        return _tan_partial_sum(float(p["b"]))

    out.append(EntryRecord(
        "GR-1.421.1", "partial fractions of the tangent",
        "math.tan(pi b / 2)",
        f"(4b/pi) sum_(j <= {PARTIAL_TERMS}) 1/((2j-1)^2 - b^2), tail b/(pi N) added on the corrected route",
        Domain(points=({"b": 0.3}, {"b": 0.5})), 1e-9,
        (Route("tail-corrected", tan_half, lambda p: partial_sum(p) + p["b"] / (math.pi * PARTIAL_TERMS)),
         Route("partial", tan_half, partial_sum, floor=FLOOR_PARTIAL)),
    ))

    def lhs_logk(p):
        kp2 = 1.0 - p["k"] ** 2
        return integrate_semi_infinite(lambda x: np.log(x) / np.sqrt((1.0 + x * x) * (kp2 + x * x)), QUAD_TOL)

    out.append(EntryRecord(
        "LOG-KPRIME", "Taylor expansion in 1 - k'^2 matched against a Cauchy product",
        "quad.integrate_semi_infinite: ln x / sqrt((1 + x^2)(k'^2 + x^2)) over (0, inf)",
        "(1/2) K(k) ln k'",
        Domain(0.0, 0.99), 1e-9,
        _closed_routes(lhs_logk, lambda p, be: 0.5 * _k_log_kprime(p, be)),
    ))

    def lhs_4395(p):
        d = _delta(p["k"])
        return integrate_finite(lambda t: np.log(np.tan(t)) / d(t), 0.0, math.pi / 2, QUAD_TOL)

    out.append(EntryRecord(
        "GR-4.395.1", "x = tan(theta) in LOG-KPRIME",
        "quad.integrate_finite: ln tan(theta) / sqrt(1 - k^2 sin^2 theta) over (0, pi/2)",
        "-(1/2) ln k' K(k)",
        Domain(0.0, 0.99), 1e-9,
        _closed_routes(lhs_4395, lambda p, be: -0.5 * _k_log_kprime(p, be)),
        errata="upper limit corrected to pi/2 (x = tan theta maps (0, inf) onto (0, pi/2)); "
               "value checked against LOG-KPRIME",
    ))

    def lhs_4242(p):
        a2, b2 = p["a"] ** 2, p["b"] ** 2
        return integrate_semi_infinite(lambda x: np.log(x) / np.sqrt((a2 + x * x) * (b2 + x * x)), QUAD_TOL)

    def modulus_4242(p):
        return (math.sqrt(p["a"] ** 2 - p["b"] ** 2) / p["a"],)

    out.append(EntryRecord(
        "GR-4.242.1", "x = a t in LOG-KPRIME",
        "quad.integrate_semi_infinite: ln x / sqrt((a^2 + x^2)(b^2 + x^2)) over (0, inf)",
        "K(sqrt(a^2 - b^2) / a) ln(a b) / (2a)",
        Domain(points=({"a": 2, "b": 1}, {"a": 3, "b": 2})), 1e-9,
        _closed_routes(lhs_4242,
                       lambda p, be: be.K(modulus_4242(p)[0]) * math.log(p["a"] * p["b"]) / (2.0 * p["a"]),
                       modulus_4242),
    ))
    return out


def _build() -> tuple[EntryRecord, ...]:
    entries = (_gamma_entries() + _modulus_entries() + _by_parts_entries() + _reduction_entries()
               + _family_entries() + _series_entries())
    ids = [e.id for e in entries]
    assert len(ids) == len(set(ids)), "duplicate entry id"
    return tuple(sorted(entries, key=lambda e: e.id))


_REGISTRY = _build()
_BY_ID = {e.id: e for e in _REGISTRY}


def list_entries() -> list[EntryRecord]:
    """Every registered entry, sorted by id."""
    return list(_REGISTRY)


def get_entry(entry_id: str) -> EntryRecord:
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise UnknownEntryError(f"unknown entry id {entry_id!r}") from None


# -------------------------------------------------------------- verification


def _value(x) -> tuple[float, int]:
    if isinstance(x, QuadResult):
        return x.value, x.evaluations
    return float(x), 0


def _errors(lhs: float, rhs: float) -> tuple[float, float]:
    abs_err = abs(lhs - rhs)
    if math.isnan(abs_err):
        return math.nan, math.nan
    if rhs == 0:
        return abs_err, (0.0 if abs_err == 0 else math.inf)
    return abs_err, abs_err / abs(rhs)


def _run(entry: EntryRecord, route: Route, params: dict, tol: float, timing: bool) -> VerificationResult:
    eff = max(tol, route.floor)
    start = time.perf_counter()
    message = ""
    try:
        lhs, n1 = _value(route.lhs(params))
        rhs, n2 = _value(route.rhs(params))
    except ArithmeticError as exc:
        # oracle failures (non-convergence, unbounded kernels) are reported, not raised
        lhs = rhs = math.nan
        n1 = n2 = 0
        message = f"{type(exc).__name__}: {exc}"
    elapsed = (time.perf_counter() - start) * 1e3 if timing else None
    abs_err, rel_err = _errors(lhs, rhs)
    passed = bool(abs_err <= eff or rel_err <= eff)
    return VerificationResult(entry.id, dict(params), lhs, rhs, abs_err, rel_err, passed,
                              n1 + n2, elapsed, eff, message)


def _canonical(params: dict | None) -> dict:
    out = {}
    for key, v in (params or {}).items():
        if isinstance(v, bool):
            raise DomainError(f"parameter {key} must be numeric")
        if isinstance(v, float) and v.is_integer() and key != "k":
            v = int(v)
        out[key] = v
    return out


def verify_entry(entry_id: str, params: dict | None = None, tol: float | None = None, *,
                 timing: bool = True) -> VerificationResult:
    """Check one entry at one parameter assignment.

    ``params["route"]`` picks the route (default: the entry's primary route,
    which is recorded in the returned params).  ``tol`` defaults to the
    entry's ``default_tol``; oracle routes never go below their floor.
    """
    entry = get_entry(entry_id)
    params = _canonical(params)
    if tol is not None and not tol > 0:
        raise DomainError("tol must be positive")
    entry.k_domain.check(params)
    route = entry.route(params.get("route"))
    if not route.available(params):
        raise DomainError(f"route {route.name!r} does not apply to {entry.id} at {params}")
    params["route"] = route.name
    return _run(entry, route, params, entry.default_tol if tol is None else tol, timing)


def _sort_key(item) -> tuple:
    eid, params = item[0], item[1]
    key = []
    for name in sorted(params):
        v = params[name]
        key.append((name, (0, float(v), "") if isinstance(v, (int, float)) else (1, 0.0, str(v))))
    return eid, tuple(key)


def plan(k_grid: Sequence[float] | None = None, routes: str = "all"):
    """Jobs and skipped pairs for a batch run.

    Returns ``(jobs, skipped)``: ``jobs`` is a sorted list of
    ``(entry, route, params)``; ``skipped`` lists ``(id, params, reason)`` for
    grid points outside an entry's domain.  ``routes`` is ``"all"`` or
    ``"primary"``.
    """
    grid = DEFAULT_GRID if k_grid is None else tuple(float(k) for k in k_grid)
    jobs, skipped = [], []
    for entry in _REGISTRY:
        dom = entry.k_domain
        base: list[dict] = []
        if dom.has_k:
            for k in grid:
                for pt in dom.points:
                    p = {"k": k, **pt}
                    if dom.contains_k(k):
                        base.append(p)
                    else:
                        skipped.append((entry.id, p, "domain"))
        else:
            base = [dict(pt) for pt in dom.points]
        chosen = entry.routes if routes == "all" else entry.routes[:1]
        for p in base:
            for route in chosen:
                if route.available(p):
                    jobs.append((entry, route, {**p, "route": route.name}))
    jobs.sort(key=lambda job: _sort_key((job[0].id, job[2])))
    skipped.sort(key=_sort_key)
    return jobs, skipped


def skipped_pairs(k_grid: Sequence[float] | None = None) -> list[tuple[str, dict, str]]:
    return plan(k_grid)[1]


def verify_all(k_grid: Sequence[float] | None = None, tol: float | None = None, *,
               timing: bool = True, routes: str = "all") -> list[VerificationResult]:
    """Every entry at every applicable grid point, along every route.

    Entries without a k parameter run once per fixed point regardless of the
    grid, so an empty grid checks exactly those.  Failures never abort the
    batch.  Results are ordered by entry id, then parameters.
    """
    if tol is not None and not tol > 0:
        raise DomainError("tol must be positive")
    jobs, _ = plan(k_grid, routes)
    return [_run(e, r, p, e.default_tol if tol is None else tol, timing) for e, r, p in jobs]


# ------------------------------------------------------------- serialization

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "array",
    "items": {
        "type": "object",
        "additionalProperties": False,
        "required": list(REPORT_FIELDS),
        "properties": {
            "id": {"type": "string"},
            "params": {"type": "object", "additionalProperties": {"type": ["number", "string"]}},
            "lhs": {"type": ["number", "null"]},
            "rhs": {"type": ["number", "null"]},
            "abs_err": {"type": ["number", "null"], "minimum": 0},
            "rel_err": {"type": ["number", "null"], "minimum": 0},
            "pass": {"type": "boolean"},
            "evals": {"type": "integer", "minimum": 0},
            "elapsed_ms": {"type": ["number", "null"], "minimum": 0},
        },
    },
}


def results_to_json(results: Sequence[VerificationResult]) -> str:
    return json.dumps([r.to_dict() for r in results], indent=2, sort_keys=True, allow_nan=False) + "\n"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def results_to_csv(results: Sequence[VerificationResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_FIELDS)
    for r in results:
        d = r.to_dict()
        w.writerow([_csv_cell(d[name]) for name in REPORT_FIELDS])
    return buf.getvalue()


def results_to_text(results: Sequence[VerificationResult], skipped: Sequence = ()) -> str:
    lines = []
    for r in results:
        d = r.to_dict()
        params = " ".join(f"{key}={v}" for key, v in d["params"].items())
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.id:<16} {params:<44} abs={r.abs_err:.3e} rel={r.rel_err:.3e}"
                     + (f"  [{r.message}]" if r.message else ""))
    for eid, params, reason in skipped:
        lines.append(f"SKIP  {eid:<16} {json.dumps(params, sort_keys=True)} ({reason})")
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} passed, {len(results) - n_pass} failed, {len(skipped)} skipped")
    return "\n".join(lines) + "\n"


def results_from_json(text: str) -> list[VerificationResult]:
    """Parse a JSON report back into results (tolerances are not stored)."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("report must be a JSON array")
    out = []
    nan = lambda v: math.nan if v is None else float(v)
    for i, row in enumerate(data):
        if not isinstance(row, dict) or set(row) != set(REPORT_FIELDS):
            raise ValueError(f"record {i} does not have the report fields {REPORT_FIELDS}")
        out.append(VerificationResult(
            row["id"], row["params"], nan(row["lhs"]), nan(row["rhs"]), nan(row["abs_err"]),
            nan(row["rel_err"]), bool(row["pass"]), int(row["evals"]), row["elapsed_ms"],
        ))
    return out
