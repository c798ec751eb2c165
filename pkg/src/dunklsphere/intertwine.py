"""The Dunkl intertwining operator on polynomials and its truncated version.

``V_kappa`` is built degree by degree.  On ``P_n`` its value on a monomial
``x^b`` is the unique ``q in P_n`` with ``D_i q = V_kappa(d/dx_i x^b)`` for
every ``i``; the right-hand sides come from degree ``n - 1``.  All
monomials of one degree share the coefficient matrix, so each degree is one
exact elimination with many right-hand sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .dunkl import DunklContext, partial_matrix
from .poly import MPoly, dim_homogeneous, monomial_exponents, monomial_values, substitute_linear_form

DEFAULT_NMAX = 16


class ApproximationError(RuntimeError):
    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


@dataclass(frozen=True)
class IntertwineTable:
    """Matrices of ``V_kappa`` on ``P_0, ..., P_{n_max}``.

    ``matrices[n][a][b]`` is the coefficient of ``x^{basis[a]}`` in
    ``V_kappa x^{basis[b]}`` with ``basis = monomial_exponents(n, d)``.
    """

    ctx: DunklContext
    n_max: int
    matrices: tuple

    @property
    def dim(self) -> int:
        return self.ctx.dim

    def float_matrix(self, n: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_float_cache", {})
        if n not in cache:
            cache[n] = np.array([[float(a) for a in row] for row in self.matrices[n]], dtype=float)
        return cache[n]


def _solve_degree(ctx: DunklContext, n: int, prev) -> list[list]:
    d = ctx.dim
    src = monomial_exponents(n, d)
    lower = monomial_exponents(n - 1, d)
    lower_index = {e: k for k, e in enumerate(lower)}
    A = []
    for i in range(d):
        A.extend(ctx.matrix(i, n))
    zero = Fraction(0) if ctx.exact else 0.0
    # rhs column b, block i: e_i-component of V(d/dx_i x^b) = b_i * V(x^{b - e_i})
    B = [[zero] * len(src) for _ in range(d * len(lower))]
    for col, b in enumerate(src):
        for i in range(d):
            if not b[i]:
                continue
            t = list(b)
            t[i] -= 1
            k = lower_index[tuple(t)]
            off = i * len(lower)
            for r in range(len(lower)):
                val = prev[r][k]
                if val != 0:
                    B[off + r][col] = val * b[i]
    if ctx.exact:
        return linalg.solve(A, B)
    An = np.array(A, dtype=float)
    Bn = np.array(B, dtype=float)
    X, *_ = np.linalg.lstsq(An, Bn, rcond=None)
    resid = np.abs(An @ X - Bn).max(initial=0.0)
    if resid > 1e-8 * max(1.0, np.abs(Bn).max(initial=0.0)):
        raise linalg.InconsistentSystemError(f"intertwining system inconsistent at degree {n} (residual {resid:.2e})")
    return X.tolist()


def build_table(ctx: DunklContext, n_max: int = DEFAULT_NMAX) -> IntertwineTable:
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    one = Fraction(1) if ctx.exact else 1.0
    mats = [[[one]]]
    for n in range(1, n_max + 1):
        mats.append(_solve_degree(ctx, n, mats[-1]))
    return IntertwineTable(ctx=ctx, n_max=n_max, matrices=tuple(mats))


def apply_V(table: IntertwineTable, p: MPoly) -> MPoly:
    if p.dim != table.dim:
        raise ValueError("dimension mismatch")
    if p.degree() > table.n_max:
        raise ValueError(f"degree {p.degree()} exceeds table n_max={table.n_max}")
    d = table.dim
    out = MPoly.zero(d)
    for n, part in p.homogeneous_parts().items():
        basis = monomial_exponents(n, d)
        vec = part.coeff_vector(basis)
        M = table.matrices[n]
        res = []
        for row in M:
            s = 0
            for a, c in zip(row, vec):
                if a != 0 and c != 0:
                    s = s + a * c
            res.append(s)
        out = out + MPoly.from_vector(res, basis)
    return out


def intertwining_defects(table: IntertwineTable) -> list[tuple[int, int, object]]:
    """Max entry of ``D_i M_n - M_{n-1} d_i`` per ``(n, i)``; exact zero when it holds."""
    out = []
    ctx = table.ctx
    for n in range(1, table.n_max + 1):
        for i in range(ctx.dim):
            lhs = linalg.matmul(ctx.matrix(i, n), table.matrices[n])
            rhs = linalg.matmul(table.matrices[n - 1], partial_matrix(i, n, ctx.dim))
            worst = 0
            for r1, r2 in zip(lhs, rhs):
                for a, b in zip(r1, r2):
                    diff = a - b
                    if diff != 0 and abs(float(diff)) >= float(worst):
                        worst = abs(diff) if ctx.exact else abs(float(diff))
            out.append((n, i, worst))
    return out


def check_intertwining(table: IntertwineTable) -> bool:
    return all(w == 0 for _, _, w in intertwining_defects(table))


# -- evaluation of V[g(<xi, .>)](x) ---------------------------------------

def _multinomials(n: int, d: int) -> np.ndarray:
    fn = math.factorial(n)
    return np.array(
        [fn // math.prod(math.factorial(a) for a in e) for e in monomial_exponents(n, d)],
        dtype=float,
    )


def eval_ridge(table: IntertwineTable, coeffs: Sequence, xi: np.ndarray, x: np.ndarray) -> np.ndarray:
    """``V_kappa[g(<xi_p, .>)](x_p)`` for each row pair, ``g`` given by power coefficients.

    Uses ``<xi, y>^k = sum_a multinom(k; a) xi^a y^a`` so that each degree
    contributes ``mon_k(x)^T M_k (multinom * mon_k(xi))``.
    """
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if len(coeffs) - 1 > table.n_max:
        raise ValueError(f"polynomial degree {len(coeffs) - 1} exceeds table n_max={table.n_max}")
    d = table.dim
    out = np.zeros(max(xi.shape[0], x.shape[0]))
    for k, c in enumerate(coeffs):
        c = float(c)
        if c == 0.0:
            continue
        exps = np.array(monomial_exponents(k, d), dtype=int)
        a = monomial_values(xi, exps) * _multinomials(k, d)
        m = monomial_values(x, exps)
        out += c * np.einsum("pa,ab,pb->p", m, table.float_matrix(k), a)
    return out


def truncated_V(
    table: IntertwineTable,
    xi: Sequence[float],
    g,
    x: Sequence[float],
    tol: float = 1e-8,
    lam=None,
    delta=None,
    grid_size: int = 2001,
) -> float:
    """Value of ``V_kappa(xi; g, x)`` within ``tol``.

    Polynomial ``g`` (with an exact form of degree at most ``n_max``) takes
    the exact path.  Otherwise ``g`` is replaced by the lowest-degree
    Gegenbauer partial sum or Cesaro mean whose sampled sup-error is below
    ``tol`` (see :func:`approximating_polynomial`); ``V_kappa(xi)`` is a
    sup-norm contraction, so that error carries over.
    """
    xi = np.asarray(xi, dtype=float)
    x = np.asarray(x, dtype=float)
    for name, v in (("xi", xi), ("x", x)):
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise ValueError(f"{name} must be a unit vector")
    poly = getattr(g, "poly", None)
    if poly is not None and len(poly) - 1 <= table.n_max:
        return float(eval_ridge(table, poly, xi, x)[0])
    coeffs, achieved, _ = approximating_polynomial(g, table.n_max, tol, lam=lam, delta=delta, grid_size=grid_size, ctx=table.ctx)
    if coeffs is None:
        raise ApproximationError(
            f"sup-error {achieved:.3e} > tol={tol:.1e} at degree {table.n_max}", achieved
        )
    return float(eval_ridge(table, coeffs, xi, x)[0])


def approximating_polynomial(g, n_max: int, tol: float, lam=None, delta=None, grid_size=2001, ctx=None):
    """First polynomial within ``tol`` of ``g`` (sampled sup-norm), scanning degrees ``0..n_max``.

    At each degree the plain Gegenbauer partial sum is tried before the
    Cesaro mean: the former converges fast for analytic ``g``, the latter
    uniformly for every continuous ``g``.  Returns ``(coeffs, err, kind)``
    or ``(None, best_err, None)``.
    """
    from .fundamentality import lambda_kappa
    from .gegenbauer import CesaroParams, cesaro_power_coeffs, expand, partial_sum_power_coeffs, sup_error_of_coeffs

    if lam is None:
        lam = lambda_kappa(ctx.spec) if ctx is not None else Fraction(1, 2)
    lam = float(lam)
    delta = lam + 1.0 if delta is None else float(delta)
    series = expand(g, lam, n_max)
    best = math.inf
    for N in range(n_max + 1):
        for kind, coeffs in (
            ("partial-sum", partial_sum_power_coeffs(series, N)),
            ("cesaro", cesaro_power_coeffs(series, CesaroParams(delta=delta, N=N))),
        ):
            err = sup_error_of_coeffs(g, coeffs, grid_size)
            best = min(best, err)
            if err <= tol:
                return coeffs, err, kind
    return None, best, None


def ridge_exact(table: IntertwineTable, coeffs: Sequence, xi: Sequence, x: Sequence):
    """Exact ``V_kappa[g(<xi, .>)](x)`` for rational data."""
    p = substitute_linear_form(coeffs, xi)
    return apply_V(table, p).evaluate(x)


def matrix_rank(table: IntertwineTable, n: int) -> int:
    return linalg.rank(table.matrices[n])


def degree_dims(table: IntertwineTable) -> list[int]:
    return [dim_homogeneous(n, table.dim) for n in range(table.n_max + 1)]
