"""kappa-spherical harmonics: exact kernels of the Dunkl Laplacian and orthonormal bases."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .dunkl import DunklContext
from .fundamentality import DegenerateConfigurationError
from .gegenbauer import gegenbauer_power_coeffs
from .intertwine import IntertwineTable, eval_ridge
from .poly import MPoly, dim_homogeneous, monomial_exponents, monomial_values
from .quadrature import SphereRule


def harmonic_dimension(n: int, d: int) -> int:
    """``dim P_n - dim P_{n-2}``."""
    return dim_homogeneous(n, d) - dim_homogeneous(n - 2, d)


def harmonic_kernel(ctx: DunklContext, n: int) -> list[MPoly]:
    """Exact basis of ``ker(Delta_kappa : P_n -> P_{n-2})``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    basis = monomial_exponents(n, ctx.dim)
    if n < 2:
        return [MPoly.monomial(e) for e in basis]
    L = ctx.laplacian_matrix(n)
    return [MPoly.from_vector(v, basis) for v in linalg.nullspace(L, n_cols=len(basis))]


@dataclass(frozen=True)
class HarmonicBasis:
    """Degree-``n`` harmonics: exact kernel polynomials and an orthonormal float basis.

    ``coeffs[j]`` holds ``S_j`` in monomial coordinates; ``change`` maps the
    exact kernel basis to it (``S = change @ polys``).
    """

    degree: int
    dim: int
    polys: tuple[MPoly, ...]
    coeffs: np.ndarray
    change: np.ndarray
    gram_residual: float

    @property
    def size(self) -> int:
        return len(self.polys)

    @property
    def orthonormal(self) -> list[MPoly]:
        basis = monomial_exponents(self.degree, self.dim)
        return [MPoly(self.dim, {e: float(c) for e, c in zip(basis, row) if c != 0.0}) for row in self.coeffs]

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """``S_j(points[p])`` as a ``(P, size)`` array."""
        exps = np.array(monomial_exponents(self.degree, self.dim), dtype=int)
        return monomial_values(points, exps) @ self.coeffs.T


def _kernel_coefficients(polys: Sequence[MPoly], n: int, d: int) -> np.ndarray:
    basis = monomial_exponents(n, d)
    return np.array([[float(c) for c in p.coeff_vector(basis)] for p in polys], dtype=float).reshape(len(polys), len(basis))


def orthonormal_basis(ctx: DunklContext, rule: SphereRule, n: int, tol: float = 1e-10) -> HarmonicBasis:
    """Modified Gram-Schmidt (two passes) of the kernel basis in ``<., .>_kappa``."""
    if rule.exactness_degree < 2 * n:
        raise ValueError(f"rule exactness {rule.exactness_degree} < 2n = {2 * n}")
    polys = harmonic_kernel(ctx, n)
    K = _kernel_coefficients(polys, n, ctx.dim)
    exps = np.array(monomial_exponents(n, ctx.dim), dtype=int)
    V = monomial_values(rule.nodes, exps)
    w = rule.weights
    k = len(polys)
    C = np.eye(k)
    vals = V @ K.T
    for j in range(k):
        for _ in range(2):
            for i in range(j):
                r = np.sum(w * vals[:, i] * vals[:, j])
                vals[:, j] -= r * vals[:, i]
                C[j] -= r * C[i]
        nrm2 = np.sum(w * vals[:, j] ** 2)
        if nrm2 <= tol**2:
            raise np.linalg.LinAlgError(f"harmonic basis numerically dependent at degree {n}")
        nrm = math.sqrt(nrm2)
        vals[:, j] /= nrm
        C[j] /= nrm
    coeffs = C @ K
    G = (V @ coeffs.T).T @ (w[:, None] * (V @ coeffs.T))
    resid = float(np.max(np.abs(G - np.eye(k)))) if k else 0.0
    if resid > tol:
        raise np.linalg.LinAlgError(f"gram residual {resid:.2e} exceeds {tol:.0e} at degree {n}")
    return HarmonicBasis(degree=n, dim=ctx.dim, polys=tuple(polys), coeffs=coeffs, change=C, gram_residual=resid)


def verify_orthogonality_across_degrees(bases: Sequence[HarmonicBasis], rule: SphereRule) -> float:
    """Max ``|<P, Q>_kappa|`` over members of bases of different degrees."""
    worst = 0.0
    vals = [b.evaluate(rule.nodes) for b in bases]
    for a in range(len(bases)):
        for b in range(a + 1, len(bases)):
            if bases[a].degree == bases[b].degree:
                continue
            if rule.exactness_degree < bases[a].degree + bases[b].degree:
                raise ValueError("rule not exact enough for this pair of degrees")
            G = vals[a].T @ (rule.weights[:, None] * vals[b])
            if G.size:
                worst = max(worst, float(np.max(np.abs(G))))
    return worst


def reproducing_kernel(basis: HarmonicBasis, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``sum_j S_j(x_p) S_j(y_p)`` for paired rows."""
    return np.sum(basis.evaluate(x) * basis.evaluate(y), axis=1)


def kernel_identity_residual(table: IntertwineTable, basis: HarmonicBasis, lam, sample_pairs) -> float:
    """Max over pairs of ``|V[C_n^lam(<x, .>)](y) - lam/(n + lam) sum_j S_j(x) S_j(y)|``."""
    if float(lam) <= 0:
        raise DegenerateConfigurationError("lambda must be positive")
    x, y = sample_pairs
    n = basis.degree
    lhs = eval_ridge(table, gegenbauer_power_coeffs(n, lam), x, y)
    lam_f = float(lam)
    rhs = lam_f / (n + lam_f) * reproducing_kernel(basis, x, y)
    return float(np.max(np.abs(lhs - rhs)))


def change_condition(basis: HarmonicBasis) -> float:
    return float(np.linalg.cond(basis.change)) if basis.size else 1.0
