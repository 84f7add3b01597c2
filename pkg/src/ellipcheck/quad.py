"""Numerical integration oracles.

Everything here returns a :class:`QuadResult`.  Integrands are called with a
numpy array of abscissae when they support it; scalar-only callables are
detected on the first call and evaluated point by point.

Two families of routines live side by side:

* reductions (``reduce_odd_periodic``, ``oscillatory_sinc``,
  ``pv_tan_reduction``) that turn an integral over (0, inf) against 1/x into a
  finite-interval integral, and
* brute-force oracles (``oscillatory_direct``, ``pv_direct``) that sum the
  semi-infinite integral period by period and extrapolate.  They share no code
  path with the reductions beyond the kernel callable itself.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConvergenceError, ToleranceNotMet, UnboundedKernelError

__all__ = [
    "QuadResult",
    "PeriodicKernel",
    "integrate_finite",
    "integrate_unit_singular",
    "integrate_semi_infinite",
    "reduce_odd_periodic",
    "oscillatory_sinc",
    "oscillatory_direct",
    "pv_tan_reduction",
    "pv_direct",
    "richardson",
]

MAX_DEPTH = 60
MAX_INTERVALS = 20000

# 15-point Kronrod nodes on [-1, 1] (non-negative half) with the embedded
# 7-point Gauss rule sitting on the odd-indexed nodes.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_KRONROD = np.concatenate([_WK[:-1], _WK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[[1, 3, 5]] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[[13, 11, 9]] = _WG[:3]


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be non-negative")
        if self.evaluations <= 0:
            raise ValueError("evaluations must be positive")

    def __float__(self):
        return float(self.value)


def _as_vectorized(f: Callable) -> Callable[[np.ndarray], np.ndarray]:
    probe = np.array([0.25, 0.5])
    try:
        out = np.asarray(f(probe), dtype=float)
        if out.shape == probe.shape:
            return lambda x: np.asarray(f(x), dtype=float)
    except (TypeError, ValueError):
        pass
    return lambda x: np.fromiter((f(float(t)) for t in x), dtype=float, count=len(x))


def _gk15(fv, a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    y = fv(c + h * _NODES)
    if not np.all(np.isfinite(y)):
        raise FloatingPointError(f"non-finite integrand value on [{a}, {b}]")
    k = h * float(_KRONROD @ y)
    g = h * float(_GAUSS @ y)
    return k, abs(k - g)


def integrate_finite(f: Callable, a: float, b: float, tol: float = 1e-12) -> QuadResult:
    """Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].

    The interval with the largest embedded-rule error is bisected until the
    summed error estimate drops to ``tol`` (absolute).  Intervals at bisection
    depth 60 are frozen.  Raises :class:`ToleranceNotMet` carrying the best
    estimate when the budget runs out.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"integrate_finite needs a < b, got [{a}, {b}]")
    fv = _as_vectorized(f)
    value, err = _gk15(fv, a, b)
    evals = 15
    # heap of (-err, a, b, depth, value)
    heap = [(-err, a, b, 0, value)]
    total_val, total_err = value, err
    frozen = []
    while total_err > tol:
        if not heap or len(heap) > MAX_INTERVALS:
            raise ToleranceNotMet(
                f"quadrature on [{a}, {b}] stalled at error {total_err:.3g} > {tol:.3g}",
                estimate=total_val,
                error=total_err,
            )
        neg_err, lo, hi, depth, val = heapq.heappop(heap)
        if depth >= MAX_DEPTH:
            frozen.append(val)
            continue
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(fv, lo, mid)
        v2, e2 = _gk15(fv, mid, hi)
        evals += 30
        total_val += v1 + v2 - val
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, lo, mid, depth + 1, v1))
        heapq.heappush(heap, (-e2, mid, hi, depth + 1, v2))
    # re-sum to shed drift from incremental updates
    total_val = math.fsum([item[4] for item in heap] + frozen)
    return QuadResult(total_val, max(total_err, 0.0), evals)


def integrate_unit_singular(g: Callable, tol: float = 1e-12) -> QuadResult:
    """Integral of g(x) / sqrt(1 - x^2) over (0, 1) via x = sin t."""
    gv = _as_vectorized(g)
    return integrate_finite(lambda t: gv(np.sin(t)), 0.0, math.pi / 2, tol)


def integrate_semi_infinite(f: Callable, tol: float = 1e-12) -> QuadResult:
    """Integral over (0, inf): (0, 1) directly plus (1, inf) mapped by x -> 1/x."""
    fv = _as_vectorized(f)
    left = integrate_finite(fv, 0.0, 1.0, tol / 2)
    right = integrate_finite(lambda t: fv(1.0 / t) / (t * t), 0.0, 1.0, tol / 2)
    return QuadResult(
        left.value + right.value,
        left.error_estimate + right.error_estimate,
        left.evaluations + right.evaluations,
    )


class PeriodicKernel:
    """A real function with declared period and parity.

    ``parity`` is ``"even"``, ``"odd"`` or ``None`` (no parity claimed).  The
    declaration is checked at 32 pseudo-random points; the check scales with
    ``(1 + |f|)**2`` so kernels with poles (tan x) survive rounding near them.
    """

    CHECK_POINTS = 32
    CHECK_TOL = 1e-12

    def __init__(self, f: Callable, period: float, parity: str | None = None, *, seed: int = 2010):
        if not period > 0:
            raise ValueError("period must be positive")
        if parity not in ("even", "odd", None):
            raise ValueError(f"parity must be 'even', 'odd' or None, got {parity!r}")
        self.f = _as_vectorized(f)
        self.period = float(period)
        self.parity = parity
        self._validate(np.random.default_rng(seed))

    def __call__(self, x):
        return self.f(np.asarray(x, dtype=float))

    def _validate(self, rng):
        x = rng.uniform(0.0, self.period, self.CHECK_POINTS)
        fx = self.f(x)
        scale = self.CHECK_TOL * (1.0 + np.abs(fx)) ** 2
        shifted = self.f(x + self.period)
        bad = np.abs(shifted - fx) > scale
        if np.any(bad):
            raise ValueError(f"kernel is not {self.period}-periodic at x = {x[bad][0]:.6g}")
        if self.parity is not None:
            sign = 1.0 if self.parity == "even" else -1.0
            bad = np.abs(self.f(-x) - sign * fx) > scale
            if np.any(bad):
                raise ValueError(f"kernel is not {self.parity} at x = {x[bad][0]:.6g}")

    def even_part(self) -> "PeriodicKernel":
        f = self.f
        return PeriodicKernel(lambda x: 0.5 * (f(x) + f(-x)), self.period, "even")

    def odd_part(self) -> "PeriodicKernel":
        f = self.f
        return PeriodicKernel(lambda x: 0.5 * (f(x) - f(-x)), self.period, "odd")


def _check_bounded(h, lo: float, hi: float, what: str):
    # probe the open interval, including points hugging both ends
    u = np.concatenate([np.linspace(0.0, 1.0, 257)[1:-1], [1e-9, 1e-6, 1 - 1e-6, 1 - 1e-9]])
    with np.errstate(all="ignore"):
        y = h(lo + (hi - lo) * u)
    if not np.all(np.isfinite(y)) or np.max(np.abs(y)) > 1e12:
        raise UnboundedKernelError(f"{what} is unbounded on ({lo:.6g}, {hi:.6g})")


def reduce_odd_periodic(pk: PeriodicKernel, tol: float = 1e-12) -> QuadResult:
    """Integral of f(x)/x over (0, inf) for odd f of period a.

    Evaluated as (pi/a) times the integral of f(x) / tan(pi x / a) over
    (0, a/2).  Raises :class:`UnboundedKernelError` when that integrand is
    singular, in which case the integral only exists as a principal value.
    """
    if pk.parity != "odd":
        raise ValueError("reduce_odd_periodic needs an odd kernel")
    a = pk.period
    w = math.pi / a
    f = pk.f

    def h(x):
        return f(x) / np.tan(w * x)

    _check_bounded(h, 0.0, a / 2, "cotangent-weighted kernel")
    r = integrate_finite(h, 0.0, a / 2, tol / w)
    return QuadResult(w * r.value, w * r.error_estimate, r.evaluations + 261)


def oscillatory_sinc(pk: PeriodicKernel, tol: float = 1e-12) -> QuadResult:
    """Integral of f(x) sin(pi x / a) / x over (0, inf) for even f of period a.

    Equals (pi/a) times the integral of f over (0, a/2).  Kernels with a
    non-zero odd part are rejected: for odd f the product f(x) sin(pi x/a) is
    even and the half-period cosine-weighted formula does not hold (f = sin 2x,
    a = pi gives ln(3)/2, not 2/3).  Use ``reduce_odd_periodic`` on the full
    integrand instead when it is odd.
    """
    a = pk.period
    w = math.pi / a
    if pk.parity == "odd":
        raise ValueError("odd kernels have no half-period sinc reduction")
    f = pk.f
    if pk.parity is None:
        probe = np.linspace(0.05, 0.95, 19) * a
        odd = 0.5 * (f(probe) - f(-probe))
        if np.max(np.abs(odd)) > 1e-12 * (1.0 + np.max(np.abs(f(probe)))):
            raise ValueError("kernel has an odd part; no half-period sinc reduction")
    r = integrate_finite(f, 0.0, a / 2, tol / w)
    return QuadResult(w * r.value, w * r.error_estimate, r.evaluations)


def richardson(values: Sequence[float], steps: Sequence[float], powers: Sequence[int]):
    """Richardson extrapolation of values sampled at decreasing step sizes.

    Assumes value(h) = L + c1 h**p1 + c2 h**p2 + ...  Returns the extrapolated
    limit and its distance from the extrapolation that drops the first sample.
    Geometric step sequences use the usual triangular table; other sequences
    solve the small linear system directly.
    """
    if len(values) != len(steps):
        raise ValueError("values and steps must have the same length")
    n = len(values)
    if n == 1:
        return float(values[0]), float("inf")
    if len(powers) < n - 1:
        raise ValueError(f"need {n - 1} powers for {n} samples")
    h = np.asarray(steps, dtype=float)
    ratios = h[:-1] / h[1:]
    if np.allclose(ratios, ratios[0], rtol=1e-12, atol=0.0):
        q = float(ratios[0])
        table = [[float(v) for v in values]]
        for level in range(n - 1):
            r = q ** powers[level]
            prev = table[-1]
            table.append([(r * prev[i + 1] - prev[i]) / (r - 1.0) for i in range(len(prev) - 1)])
        best = table[-1][-1]
        return best, abs(best - table[-2][-1])

    def solve(hs, vs):
        cols = [np.ones_like(hs)] + [hs**p for p in powers[: len(hs) - 1]]
        return float(np.linalg.solve(np.column_stack(cols), vs)[0])

    v = np.asarray(values, dtype=float)
    best = solve(h, v)
    return best, abs(best - solve(h[1:], v[1:]))


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss_legendre(n: int):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _cell_integrals(h, a: float, periods: int, panels: int, nodes: int) -> np.ndarray:
    """Integrals of h over [j a, (j+1) a] for j < periods, composite Gauss-Legendre."""
    t, w = _gauss_legendre(nodes)
    width = a / panels
    local = (np.arange(panels)[:, None] + 0.5 * (t[None, :] + 1.0)) * width  # (panels, nodes)
    x = np.arange(periods)[:, None] * a + local.reshape(1, -1)
    y = h(x.reshape(-1)).reshape(periods, -1)
    return 0.5 * width * (y @ np.tile(w, panels))


def oscillatory_direct(
    f: Callable,
    a: float,
    periods: int = 2000,
    accel: str = "pairwise",
    *,
    weight: str = "sin",
    panels: int = 8,
    nodes: int = 24,
) -> QuadResult:
    """Brute-force integral over (0, inf) summed one period at a time.

    With ``weight="sin"`` the integrand is f(x) sin(pi x/a) / x, with
    ``weight="none"`` it is f(x) / x.  Each cell [j a, (j+1) a] is integrated by
    composite Gauss-Legendre.  ``accel`` selects how the truncated tail is
    handled:

    ``"none"``
        plain partial sum; error estimate is the last cell's magnitude.
    ``"pairwise"``
        repeated averaging of consecutive partial sums, for cell sequences
        that alternate in sign (sinc weight with an a-periodic f).
    ``"richardson"``
        extrapolation in 1/N over N, N/2, N/4, ... for smooth one-signed
        tails (odd f against 1/x).
    """
    if weight not in ("sin", "none"):
        raise ValueError(f"unknown weight {weight!r}")
    fv = _as_vectorized(f)
    w = math.pi / a
    if weight == "sin":
        def h(x):
            return fv(x) * np.sin(w * x) / x
    else:
        def h(x):
            return fv(x) / x
    cells = _cell_integrals(h, a, periods, panels, nodes)
    evals = cells.size * panels * nodes
    partial = np.cumsum(cells)

    if accel == "none":
        return QuadResult(float(partial[-1]), float(abs(cells[-1])), evals)

    if accel == "pairwise":
        seq = list(partial[-24:])
        deltas = []
        while len(seq) > 1:
            nxt = [0.5 * (seq[i] + seq[i + 1]) for i in range(len(seq) - 1)]
            deltas.append(abs(nxt[-1] - seq[-1]))
            seq = nxt
        value = seq[0]
        floor = 64 * np.finfo(float).eps * (abs(value) + float(np.max(np.abs(partial))))
        # the deltas must shrink until they reach rounding level
        live = [d for d in deltas if d > floor]
        if len(live) >= 2 and any(live[i + 1] > live[i] for i in range(len(live) - 1)):
            raise ConvergenceError("pairwise averaging is not converging", estimate=value)
        err = (live[-1] if live else 0.0) + floor
        return QuadResult(float(value), float(err), evals)

    if accel == "richardson":
        counts = [periods >> s for s in range(5, -1, -1) if periods >> s >= 8]
        vals = [float(partial[n - 1]) for n in counts]
        steps = [1.0 / n for n in counts]
        value, delta = richardson(vals, steps, [1, 2, 3, 4, 5])
        floor = 64 * np.finfo(float).eps * (abs(value) + float(np.max(np.abs(partial))))
        return QuadResult(float(value), float(delta + floor), evals)

    raise ValueError(f"unknown acceleration {accel!r}")


def pv_tan_reduction(g: Callable, tol: float = 1e-12) -> QuadResult:
    """Principal value of tan(x) g(x) / x over (0, inf) for even, pi-periodic g.

    The cotangent weight of the odd-kernel reduction cancels tan exactly, so
    the value is the plain integral of g over (0, pi/2).
    """
    return integrate_finite(g, 0.0, math.pi / 2, tol)


DEFAULT_EPS = (1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4)


def pv_direct(
    f: Callable,
    pole_offsets: Sequence[float],
    a: float,
    periods: int = 500,
    eps_sequence: Sequence[float] = DEFAULT_EPS,
    tol: float = 1e-11,
) -> QuadResult:
    """Cauchy principal value of f(x)/x over (0, inf) by symmetric exclusion.

    ``f`` has period ``a`` and simple poles at ``pole_offsets`` (inside
    (0, a)) in every period.  Around each pole p the two sides are paired,
    t -> f(p - t)/(x - t) + f(p + t)/(x + t) summed over the first ``periods``
    periods, and integrated over t in (eps, delta).  The result is
    extrapolated to eps -> 0 (powers eps, eps^3, eps^5, ... since the paired
    integrand is even in t) and then to infinitely many periods (powers of
    1/N over N, N/2, N/4, N/8).
    """
    fv = _as_vectorized(f)
    poles = sorted(float(p) for p in pole_offsets)
    if not poles or poles[0] <= 0 or poles[-1] >= a:
        raise ValueError("pole offsets must lie strictly inside (0, a)")
    eps_sequence = sorted(eps_sequence, reverse=True)
    cuts = [0.0] + [0.5 * (p + q) for p, q in zip(poles, poles[1:])] + [a]
    counts = [periods >> s for s in (3, 2, 1, 0)]
    if counts[0] < 4:
        raise ValueError("need at least 32 periods")
    evals = 0
    err = 0.0

    def shifts(n):
        return np.arange(n) * a

    by_count = []
    for n in counts:
        s = shifts(n)
        total_eps = np.zeros(len(eps_sequence))
        for i, p in enumerate(poles):
            lo, hi = cuts[i], cuts[i + 1]
            delta = min(p - lo, hi - p)
            if delta <= eps_sequence[0]:
                raise ValueError("poles are closer together than the largest eps")

            def paired(t, p=p, s=s):
                t = np.asarray(t)
                left = fv(p - t) * np.sum(1.0 / (s[None, :] + (p - t)[:, None]), axis=1)
                right = fv(p + t) * np.sum(1.0 / (s[None, :] + (p + t)[:, None]), axis=1)
                return left + right

            def plain(x, s=s):
                x = np.asarray(x)
                return fv(x) * np.sum(1.0 / (s[None, :] + x[:, None]), axis=1)

            # shared outer part (eps_0, delta), then increments down the sequence
            outer = integrate_finite(paired, eps_sequence[0], delta, tol)
            evals += outer.evaluations
            err += outer.error_estimate
            acc = outer.value
            for e_idx, eps in enumerate(eps_sequence):
                if e_idx > 0:
                    piece = integrate_finite(paired, eps, eps_sequence[e_idx - 1], tol)
                    evals += piece.evaluations
                    err += piece.error_estimate
                    acc += piece.value
                total_eps[e_idx] += acc
            for seg_lo, seg_hi in ((lo, p - delta), (p + delta, hi)):
                if seg_hi - seg_lo > 1e-14 * a:
                    r = integrate_finite(plain, seg_lo, seg_hi, tol)
                    evals += r.evaluations
                    err += r.error_estimate
                    total_eps += r.value
        v_eps, d_eps = richardson(total_eps, eps_sequence, [1, 3, 5, 7, 9])
        err += d_eps
        by_count.append(v_eps)

    value, d_n = richardson(by_count, [1.0 / n for n in counts], [1, 2, 3])
    return QuadResult(value, err + d_n, evals)
