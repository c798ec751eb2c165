"""Gegenbauer polynomials, expansion coefficients and Cesaro means on [-1, 1].

With weight ``(1 - t^2)^{lam - 1/2}`` and ``c_lam`` its inverse mass,

    g ~ sum_n b_n (n + lam)/lam C_n^lam(t),
    b_n = c_lam / C_n^lam(1) * int g C_n^lam (1 - t^2)^{lam - 1/2} dt,

and the (C, delta) means are

    S_N g = (1/A_N) sum_{m <= N} A_{N-m} b_m (m + lam)/lam C_m^lam,   A_n = binom(n + delta, n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .functions import GFunction
from .quadrature import gauss_jacobi

DEEP_DEGREE_PROXY = 64


def _as_lambda(lam):
    """Keep rational parameters exact, pass floats through."""
    if isinstance(lam, float):
        q = Fraction(lam).limit_denominator(10**6)
        return q if float(q) == lam else lam
    return Fraction(lam)


def gegenbauer_table(nmax: int, lam: float, t) -> np.ndarray:
    """Rows ``C_0^lam(t), ..., C_nmax^lam(t)`` by the three-term recurrence."""
    lam = float(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    t = np.asarray(t, dtype=float)
    out = np.empty((nmax + 1,) + t.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2.0 * lam * t
    for n in range(2, nmax + 1):
        out[n] = (2.0 * (n + lam - 1.0) * t * out[n - 1] - (n + 2.0 * lam - 2.0) * out[n - 2]) / n
    return out


def gegenbauer_eval(n: int, lam: float, t):
    """``C_n^lam(t)``; scalar in, scalar out."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    vals = gegenbauer_table(n, lam, t)[n]
    return float(vals) if np.ndim(vals) == 0 else vals


def gegenbauer_power_coeffs(n: int, lam) -> list:
    """Power-basis coefficients of ``C_n^lam``, exact for rational ``lam``."""
    lam = _as_lambda(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    prev, cur = [Fraction(1) if not isinstance(lam, float) else 1.0], None
    if n == 0:
        return prev
    cur = [0 * lam, 2 * lam]
    for k in range(2, n + 1):
        nxt = [0 * lam] * (k + 1)
        a = 2 * (k + lam - 1)
        b = k + 2 * lam - 2
        for j, c in enumerate(cur):
            nxt[j + 1] += a * c
        for j, c in enumerate(prev):
            nxt[j] -= b * c
        prev, cur = cur, [c / k for c in nxt]
    return cur


def gegenbauer_at_one(n: int, lam):
    """``C_n^lam(1) = (2 lam)_n / n!``; exact for rational ``lam``."""
    lam = _as_lambda(lam)
    if isinstance(lam, float):
        return math.exp(math.lgamma(n + 2 * lam) - math.lgamma(2 * lam) - math.lgamma(n + 1))
    out = Fraction(1)
    for j in range(n):
        out = out * (2 * lam + j) / (j + 1)
    return out


def c_lambda(lam) -> float:
    """Inverse of ``int_{-1}^1 (1 - t^2)^{lam - 1/2} dt``, via the Beta function."""
    lam = float(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    return math.exp(math.lgamma(lam + 1.0) - math.lgamma(lam + 0.5)) / math.sqrt(math.pi)


def c_lambda_quadrature(lam, n: int = 8) -> float:
    """Same constant from the Gauss-Jacobi weight sum."""
    mu = float(lam) - 0.5
    _, w = gauss_jacobi(n, mu, mu)
    return 1.0 / float(np.sum(w))


def weighted_moment_ratio(k: int, lam) -> Fraction:
    """``c_lam int t^k (1 - t^2)^{lam - 1/2} dt``, exact: ``prod_{i<k/2} (i + 1/2)/(i + lam + 1)``."""
    if k % 2:
        return Fraction(0)
    lam = Fraction(lam)
    out = Fraction(1)
    for i in range(k // 2):
        out *= (i + Fraction(1, 2)) / (i + lam + 1)
    return out


@dataclass(frozen=True)
class GegenbauerSeries:
    lam: float
    coeffs: np.ndarray
    c_lambda: float
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def partial_sum(self, t, N: int | None = None) -> np.ndarray:
        N = self.n_max if N is None else N
        table = gegenbauer_table(N, self.lam, t)
        m = np.arange(N + 1)
        scale = self.coeffs[: N + 1] * (m + self.lam) / self.lam
        return np.tensordot(scale, table, axes=1)


@dataclass(frozen=True)
class CesaroParams:
    delta: float
    N: int

    def __post_init__(self):
        if not self.delta > 0:
            raise ValueError("Cesaro order delta must be positive")
        if self.N < 0:
            raise ValueError("N must be nonnegative")


def default_quad_order(n_max: int, g: GFunction | None = None) -> int:
    deg = g.degree if g is not None and g.poly is not None else DEEP_DEGREE_PROXY
    return 2 * (n_max + max(deg, 0)) + 16


def _panels(g: GFunction) -> list[tuple[float, float]]:
    cuts = sorted({float(k) for k in getattr(g, "kinks", ()) if -1.0 < k < 1.0})
    pts = [-1.0] + cuts + [1.0]
    return list(zip(pts[:-1], pts[1:]))


def _nodes_and_weights(g: GFunction, lam: float, quad_order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights integrating ``f(t) (1 - t^2)^{lam - 1/2}`` panel-wise."""
    mu = lam - 0.5
    ts, ws = [], []
    for a, b in _panels(g):
        alpha = mu if b == 1.0 else 0.0
        beta = mu if a == -1.0 else 0.0
        s, w = gauss_jacobi(quad_order, alpha, beta)
        half = (b - a) / 2.0
        t = a + half * (1.0 + s)
        one_minus = (1.0 - b) + half * (1.0 - s)
        one_plus = (1.0 + a) + half * (1.0 + s)
        fac = (half**mu if b == 1.0 else one_minus**mu) * (half**mu if a == -1.0 else one_plus**mu)
        ts.append(t)
        ws.append(w * half * fac)
    return np.concatenate(ts), np.concatenate(ws)


def _rational_lambda(lam):
    q = _as_lambda(lam)
    return None if isinstance(q, float) else q


def expand(g: GFunction, lam, n_max: int, quad_order: int | None = None, exact: bool | None = None) -> GegenbauerSeries:
    """Coefficients ``b_0 .. b_{n_max}``.

    Quadrature route: (panelled) Gauss-Jacobi.  Exact route: rational
    arithmetic through the weight moments, available for handles with an
    exact polynomial form and rational ``lam``; ``b_n`` vanishes beyond the
    degree of ``g``.  ``exact=None`` picks the exact route when available.
    """
    lam_f = float(lam)
    if lam_f <= 0:
        raise ValueError("lambda must be positive")
    lam_q = _rational_lambda(lam)
    can_exact = g.poly is not None and lam_q is not None and all(not isinstance(c, float) for c in g.poly)
    if exact and not can_exact:
        raise ValueError("exact expansion needs a rational polynomial and rational lambda")
    if exact or (exact is None and can_exact):
        deg = max(g.degree, 0)
        vals = [coeff_b_exact(g.poly, lam_q, n) if n <= deg else Fraction(0) for n in range(n_max + 1)]
        return GegenbauerSeries(
            lam=lam_f,
            coeffs=np.array([float(v) for v in vals]),
            c_lambda=c_lambda(lam_f),
            meta={"route": "exact", "exact_coeffs": vals},
        )
    q = quad_order or default_quad_order(n_max, g)
    t, w = _nodes_and_weights(g, lam_f, q)
    gv = np.asarray(g(t), dtype=float)
    table = gegenbauer_table(n_max, lam_f, t)
    cl = c_lambda(lam_f)
    integrals = table @ (w * gv)
    at_one = np.array([float(gegenbauer_at_one(n, lam_f)) for n in range(n_max + 1)])
    coeffs = cl * integrals / at_one
    return GegenbauerSeries(lam=lam_f, coeffs=coeffs, c_lambda=cl, meta={"route": "quadrature", "quad_order": q, "panels": len(_panels(g))})


def coeff_b(g: GFunction, lam, n: int, quad_order: int | None = None, exact: bool | None = False) -> float:
    """Single coefficient ``b_n``; quadrature unless ``exact`` is requested."""
    return float(expand(g, lam, n, quad_order, exact=exact).coeffs[n])


def coeff_b_exact(poly: Sequence, lam, n: int) -> Fraction:
    """``b_n`` of a rational polynomial for rational ``lam``, in exact arithmetic."""
    lam = Fraction(lam)
    cn = gegenbauer_power_coeffs(n, lam)
    total = Fraction(0)
    for i, gi in enumerate(poly):
        if gi == 0:
            continue
        for j, cj in enumerate(cn):
            if cj != 0:
                total += gi * cj * weighted_moment_ratio(i + j, lam)
    return total / gegenbauer_at_one(n, lam)


def expand_exact(poly: Sequence, lam, n_max: int) -> list[Fraction]:
    return [coeff_b_exact(poly, lam, n) for n in range(n_max + 1)]


# -- Cesaro means -------------------------------------------------------------

def cesaro_A(n: int, delta) -> float:
    """``A_n^delta = binom(n + delta, n)`` via ``A_n = A_{n-1} (n + delta)/n``."""
    if isinstance(delta, (int, Fraction)):
        out = Fraction(1)
        for k in range(1, n + 1):
            out = out * (k + delta) / k
        return out
    out = 1.0
    for k in range(1, n + 1):
        out *= (k + delta) / k
    return out


def cesaro_ratios(N: int, delta: float) -> np.ndarray:
    """``A_{N-m}^delta / A_N^delta`` for ``m = 0..N`` (log-space, no overflow)."""
    k = np.arange(1, N + 1, dtype=float)
    logA = np.concatenate([[0.0], np.cumsum(np.log1p(float(delta) / k))])
    return np.exp(logA[::-1] - logA[N])


def cesaro_mean(series: GegenbauerSeries, params: CesaroParams, t) -> np.ndarray:
    N = params.N
    if series.n_max < N:
        raise ValueError(f"series has coefficients through {series.n_max}, need {N}")
    lam = series.lam
    m = np.arange(N + 1)
    scale = cesaro_ratios(N, params.delta) * series.coeffs[: N + 1] * (m + lam) / lam
    out = np.tensordot(scale, gegenbauer_table(N, lam, t), axes=1)
    return float(out) if np.ndim(out) == 0 else out


def cesaro_power_coeffs(series: GegenbauerSeries, params: CesaroParams) -> list[float]:
    """Power-basis coefficients of ``S_N^delta g`` (for small ``N``)."""
    return _weighted_power_coeffs(series, params.N, cesaro_ratios(params.N, params.delta))


def partial_sum_power_coeffs(series: GegenbauerSeries, N: int) -> list[float]:
    """Power-basis coefficients of the plain partial sum through degree ``N``."""
    return _weighted_power_coeffs(series, N, np.ones(N + 1))


def _weighted_power_coeffs(series: GegenbauerSeries, N: int, ratios: np.ndarray) -> list[float]:
    lam = series.lam
    out = [0.0] * (N + 1)
    for m in range(N + 1):
        f = ratios[m] * series.coeffs[m] * (m + lam) / lam
        if f == 0.0:
            continue
        for j, c in enumerate(gegenbauer_power_coeffs(m, lam)):
            out[j] += f * float(c)
    return out


def chebyshev_grid(size: int, kinks: Sequence[float] = ()) -> np.ndarray:
    """Chebyshev-Lobatto points on ``[-1, 1]`` plus any kink locations."""
    if size < 2:
        raise ValueError("grid needs at least two points")
    t = np.cos(np.pi * np.arange(size) / (size - 1))[::-1]
    return np.unique(np.concatenate([t, np.asarray(list(kinks), dtype=float)]))


def uniform_error(g: GFunction, series: GegenbauerSeries, params: CesaroParams, grid_size: int = 2001) -> float:
    """Sampled ``sup |g - S_N^delta g|``."""
    t = chebyshev_grid(grid_size, getattr(g, "kinks", ()))
    return float(np.max(np.abs(g(t) - cesaro_mean(series, params, t))))


def sup_error_of_coeffs(g: GFunction, coeffs: Sequence[float], grid_size: int = 2001) -> float:
    t = chebyshev_grid(grid_size, getattr(g, "kinks", ()))
    approx = np.polynomial.polynomial.polyval(t, np.asarray(coeffs, dtype=float))
    return float(np.max(np.abs(g(t) - approx)))


def sup_abs(g: GFunction, grid_size: int = 2001) -> float:
    t = chebyshev_grid(grid_size, getattr(g, "kinks", ()))
    return float(np.max(np.abs(g(t))))
