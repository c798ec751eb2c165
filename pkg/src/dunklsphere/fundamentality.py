"""The fundamentality test for ``{V_kappa(x; g) : x in S^{d-1}}`` and the summability criterion.

The family is fundamental in ``C(S^{d-1})`` exactly when every Gegenbauer
coefficient ``b_n`` of ``g`` at index ``lambda_kappa`` is nonzero.  A finite
computation only sees ``n <= n_max`` and cannot tell a tiny coefficient from
zero, so reports separate magnitudes from verdicts and never claim more than
"fundamental up to n_max".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .field import format_scalar
from .functions import GFunction
from .gegenbauer import GegenbauerSeries, expand, sup_abs
from .roots import RootSystemSpec

DEFAULT_NMAX = 32
DEFAULT_ZERO_THRESHOLD = 1e-10


class DegenerateConfigurationError(ValueError):
    pass


def lambda_kappa(spec: RootSystemSpec) -> Fraction:
    """``sum_{v in R_+} kappa(v) + (d - 2)/2``."""
    if spec.dim == 2 and spec.kappa_is_zero():
        raise DegenerateConfigurationError("kappa must be nonzero when d = 2 (lambda_kappa would vanish)")
    total = sum((spec.kappa_of(v) for v in spec.positive), Fraction(0))
    lam = total + Fraction(spec.dim - 2, 2)
    if lam <= 0:
        raise DegenerateConfigurationError(f"lambda_kappa = {lam} is not positive")
    return lam


@dataclass
class FundamentalityReport:
    lam: float
    n_max: int
    coeffs: list[float]
    zero_threshold: float
    scale: float
    verdicts: list[str]
    overall: str
    witnesses: list[int]
    quadrature: dict = field(default_factory=dict)
    exact_coeffs: list | None = None

    @property
    def fundamental(self) -> bool:
        return self.overall == "fundamental-up-to-n_max"

    def to_dict(self) -> dict:
        out = {
            "lambda": self.lam,
            "n_max": self.n_max,
            "zero_threshold": self.zero_threshold,
            "scale": self.scale,
            "coefficients": [
                {"n": n, "b": b, "abs": abs(b), "verdict": v}
                for n, (b, v) in enumerate(zip(self.coeffs, self.verdicts))
            ],
            "overall": self.overall,
            "witnesses": self.witnesses,
            "quadrature": self.quadrature,
        }
        if self.exact_coeffs is not None:
            out["exact_coefficients"] = [format_scalar(c) for c in self.exact_coeffs]
        return out


def classify(coeffs, zero_threshold: float, scale: float) -> tuple[list[str], list[int]]:
    cut = zero_threshold * scale
    verdicts = ["numerically-zero" if abs(b) <= cut else "nonzero" for b in coeffs]
    return verdicts, [n for n, v in enumerate(verdicts) if v == "numerically-zero"]


def check_fundamentality(
    g: GFunction,
    spec_or_lambda,
    n_max: int = DEFAULT_NMAX,
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD,
    quad_order: int | None = None,
    exact: bool | None = None,
    grid_size: int = 2001,
) -> FundamentalityReport:
    """Compute ``b_0..b_{n_max}`` at ``lambda_kappa`` and classify them.

    The threshold is relative: ``|b_n| <= zero_threshold * sup|g|`` counts as
    zero (``sup|g|`` sampled; 1 when ``g`` vanishes on the grid).
    """
    lam = lambda_kappa(spec_or_lambda) if isinstance(spec_or_lambda, RootSystemSpec) else spec_or_lambda
    if float(lam) <= 0:
        raise DegenerateConfigurationError("lambda must be positive")
    series: GegenbauerSeries = expand(g, lam, n_max, quad_order, exact=exact)
    coeffs = [float(b) for b in series.coeffs]
    sup = sup_abs(g, grid_size)
    scale = sup if sup > 0 else 1.0
    verdicts, witnesses = classify(coeffs, zero_threshold, scale)
    overall = "not-fundamental" if witnesses else "fundamental-up-to-n_max"
    meta = {k: v for k, v in series.meta.items() if k != "exact_coeffs"}
    return FundamentalityReport(
        lam=float(lam),
        n_max=n_max,
        coeffs=coeffs,
        zero_threshold=zero_threshold,
        scale=scale,
        verdicts=verdicts,
        overall=overall,
        witnesses=witnesses,
        quadrature=meta,
        exact_coeffs=series.meta.get("exact_coeffs"),
    )


# -- summability matrices ---------------------------------------------------

@dataclass
class LimitEstimate:
    m: int
    value: float
    error_estimate: float
    converged: bool
    ladder: list[int]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "limit": self.value,
            "error_estimate": self.error_estimate,
            "converged": self.converged,
        }


def richardson(values: list[float], ratio: float = 2.0) -> list[list[float]]:
    """Richardson table for samples at ``h, h/ratio, h/ratio^2, ...`` with error in powers of ``h``."""
    table = [[v] for v in values]
    for i in range(1, len(values)):
        for j in range(1, i + 1):
            prev, older = table[i][j - 1], table[i - 1][j - 1]
            f = ratio**j
            table[i].append(prev + (prev - older) / (f - 1.0))
    return table


def summability_limits(
    entry: Callable[[int, int], float],
    m_max: int,
    n_start: int = 16,
    levels: int = 10,
    tol: float = 1e-10,
) -> list[LimitEstimate]:
    """Estimate ``lim_n A[n, m]`` for ``m <= m_max`` on the ladder ``n = n_start * 2^k``.

    Assumes ``A[n, m]`` has an asymptotic expansion in powers of ``1/n``.
    A column is flagged non-convergent when the last two diagonal
    extrapolants differ by more than ``tol`` (relative to ``max(1, |limit|)``).
    """
    out = []
    for m in range(m_max + 1):
        start = max(n_start, 2 * m + 2)
        ladder = [start * 2**k for k in range(levels)]
        vals = [float(entry(n, m)) for n in ladder]
        if not all(math.isfinite(v) for v in vals):
            out.append(LimitEstimate(m, math.nan, math.inf, False, ladder))
            continue
        tab = richardson(vals)
        diag = [tab[i][i] for i in range(len(tab))]
        # the highest orders amplify rounding; take the most stable of the last diagonal entries
        diffs = [abs(diag[i] - diag[i - 1]) for i in range(1, len(diag))]
        k = int(np.argmin(diffs)) + 1
        value, err = diag[k], diffs[k - 1]
        converged = err <= tol * max(1.0, abs(value))
        out.append(LimitEstimate(m, value, err, converged, ladder))
    return out


def cesaro_ratio(n: int, m: int, delta: float) -> float:
    """``A_{n-m}^delta / A_n^delta = prod_{j=n-m+1}^{n} j / (j + delta)`` (0 for ``m > n``)."""
    if m > n:
        return 0.0
    out = 1.0
    for j in range(n - m + 1, n + 1):
        out *= j / (j + delta)
    return out


def cesaro_matrix(series: GegenbauerSeries, delta: float) -> Callable[[int, int], float]:
    """Entries ``A[n, m] = (A_{n-m}/A_n) b_m`` of the summability matrix from the expansion."""
    coeffs = series.coeffs

    def entry(n: int, m: int) -> float:
        if m > n:
            return 0.0
        return cesaro_ratio(n, m, delta) * float(coeffs[m])

    return entry


def row_support(entry: Callable[[int, int], float], n: int, m_probe: int) -> int:
    """Number of nonzero entries of row ``n`` among columns ``0..m_probe``."""
    return sum(1 for m in range(m_probe + 1) if entry(n, m) != 0.0)
