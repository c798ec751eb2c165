"""Weighted quadrature on the unit sphere for ``w_kappa(x) = prod_{v in R_+} |<v, x>|^{2 kappa(v)}``.

Two constructions:

* coordinate root systems (Z2^d): the map ``y_i = x_i^2`` sends the weighted
  sphere measure on each orthant to a Dirichlet weight on the simplex.
  Collapsed (Duffy) coordinates turn that into a product of 1-D Gauss-Jacobi
  rules, and the ``2^d`` sign copies kill odd monomials.  The rule is exact
  for every polynomial of degree at most the target.
* other planar systems: the circle is cut at the root lines; on each arc a
  Gauss-Jacobi rule absorbs the two endpoint factors and the remaining
  factor is smooth, so accuracy is spectral rather than exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.special import roots_jacobi

from .poly import MPoly
from .roots import RootSystemSpec, is_coordinate_system

DEFAULT_MAX_NODES = 200_000


class UnsupportedRootSystemError(ValueError):
    pass


def gauss_jacobi(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for ``(1 - t)^alpha (1 + t)^beta`` on ``[-1, 1]``."""
    if n < 1:
        raise ValueError("need at least one node")
    t, w = roots_jacobi(n, float(alpha), float(beta))
    return np.asarray(t, dtype=float), np.asarray(w, dtype=float)


def gauss_jacobi_unit(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on ``[0, 1]`` for ``u^a (1 - u)^b``."""
    t, w = gauss_jacobi(n, b, a)
    return (1.0 + t) / 2.0, w * 2.0 ** (-(a + b + 1.0))


@dataclass(frozen=True)
class WeightSpec:
    spec: RootSystemSpec

    def positive_roots(self) -> np.ndarray:
        return np.array([[float(a) for a in v] for v in self.spec.positive], dtype=float)

    def exponents(self) -> np.ndarray:
        return np.array([2.0 * float(k) for k in self.spec.kappa_positive()])


def weight_eval(w: WeightSpec, x) -> np.ndarray | float:
    """``prod |<v, x>|^{2 kappa(v)}`` at one point or at the rows of an array."""
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if np.any(np.abs(np.linalg.norm(pts, axis=1) - 1.0) > 1e-12):
        raise ValueError("weight_eval expects unit vectors")
    vals = np.abs(pts @ w.positive_roots().T) ** w.exponents()
    out = np.prod(vals, axis=1)
    return float(out[0]) if single else out


@dataclass(frozen=True)
class SphereRule:
    """Nodes on the sphere with normalized weights (summing to 1).

    ``mass`` is the unnormalized integral of ``w_kappa`` over the sphere,
    i.e. the normalization constant of the inner product.
    """

    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    mass: float
    exact_construction: bool
    normalized: bool = True

    @property
    def dim(self) -> int:
        return self.nodes.shape[1]

    @property
    def size(self) -> int:
        return self.nodes.shape[0]


def _product_rule(spec: RootSystemSpec, degree: int, max_nodes: int) -> SphereRule:
    d = spec.dim
    kappa = [0.0] * d
    for v in spec.positive:
        axis = next(i for i, a in enumerate(v) if a != 0)
        kappa[axis] = float(spec.kappa_of(v))
    a = [k - 0.5 for k in kappa]
    # a y-monomial of degree floor(D/2) needs floor(D/4) + 1 nodes per direction
    n = degree // 4 + 1
    total = n ** (d - 1) * 2**d
    if total > max_nodes:
        raise ValueError(f"degree {degree} needs {total} nodes (> budget {max_nodes})")
    factors = []
    for j in range(d - 1):
        tail = sum(a[j + 1 :]) + (d - 2 - j)
        factors.append(gauss_jacobi_unit(n, a[j], tail))
    grids = np.meshgrid(*[f[0] for f in factors], indexing="ij")
    wgrids = np.meshgrid(*[f[1] for f in factors], indexing="ij")
    u = np.stack([g.ravel() for g in grids], axis=1)
    wu = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    y = np.empty((u.shape[0], d))
    rest = np.ones(u.shape[0])
    for j in range(d - 1):
        y[:, j] = rest * u[:, j]
        rest = rest * (1.0 - u[:, j])
    y[:, d - 1] = rest
    root_y = np.sqrt(y)
    simplex_mass = float(np.prod([f[1].sum() for f in factors]))
    mass = 2.0 * simplex_mass
    signs = np.array(np.meshgrid(*[[1.0, -1.0]] * d, indexing="ij")).reshape(d, -1).T
    nodes = (signs[:, None, :] * root_y[None, :, :]).reshape(-1, d)
    weights = np.tile(wu / simplex_mass, signs.shape[0]) / signs.shape[0]
    return SphereRule(nodes=nodes, weights=weights, exactness_degree=degree, mass=mass, exact_construction=True)


def _arc_rule(spec: RootSystemSpec, degree: int, max_nodes: int) -> SphereRule:
    roots = np.array([[float(a) for a in v] for v in spec.positive])
    expo = np.array([2.0 * float(k) for k in spec.kappa_positive()])
    # zeros of <v, x> on the circle: angle(v) +- pi/2
    lines = []
    for v, e in zip(roots, expo):
        base = math.atan2(v[1], v[0]) + math.pi / 2
        for s in (0.0, math.pi):
            lines.append(((base + s) % (2 * math.pi), e))
    lines.sort()
    merged: list[list[float]] = []
    for ang, e in lines:
        if merged and abs(ang - merged[-1][0]) < 1e-12:
            merged[-1][1] += e
        else:
            merged.append([ang, e])
    if len(merged) > 1 and abs(merged[0][0] + 2 * math.pi - merged[-1][0]) < 1e-12:
        merged[0][1] += merged.pop()[1]
    n_per_arc = degree + 16
    if n_per_arc * len(merged) > max_nodes:
        raise ValueError(f"degree {degree} exceeds node budget {max_nodes}")
    nodes, weights = [], []
    for k, (a, ea) in enumerate(merged):
        b, eb = merged[(k + 1) % len(merged)]
        if b <= a:
            b += 2 * math.pi
        h = (b - a) / 2
        s, ws = gauss_jacobi(n_per_arc, eb, ea)
        theta = a + h * (1.0 + s)
        pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        full = np.prod(np.abs(pts @ roots.T) ** expo, axis=1)
        absorbed = (1.0 - s) ** eb * (1.0 + s) ** ea
        nodes.append(pts)
        weights.append(ws * h * full / absorbed)
    nodes = np.concatenate(nodes)
    raw = np.concatenate(weights)
    mass = float(np.sum(raw))
    return SphereRule(nodes=nodes, weights=raw / mass, exactness_degree=degree, mass=mass, exact_construction=False)


def build_rule(w: WeightSpec | RootSystemSpec, target_degree: int, max_nodes: int = DEFAULT_MAX_NODES) -> SphereRule:
    spec = w.spec if isinstance(w, WeightSpec) else w
    if target_degree < 0:
        raise ValueError("target_degree must be nonnegative")
    if is_coordinate_system(spec):
        return _product_rule(spec, target_degree, max_nodes)
    if spec.dim == 2:
        return _arc_rule(spec, target_degree, max_nodes)
    raise UnsupportedRootSystemError("sphere rules in d >= 3 exist only for Z2^d weights")


def _values(f, nodes: np.ndarray) -> np.ndarray:
    if isinstance(f, MPoly):
        return f.evaluate_many(nodes)
    if callable(f):
        return np.asarray(f(nodes))
    return np.full(nodes.shape[0], complex(f) if isinstance(f, complex) else float(f))


def integrate(rule: SphereRule, f) -> float | complex:
    vals = _values(f, rule.nodes)
    return np.sum(rule.weights * vals)


def inner_product(rule: SphereRule, f, h) -> float | complex:
    """``<f, h>_kappa``; ``f`` and ``h`` are MPolys, constants or vectorized callables."""
    fv = _values(f, rule.nodes)
    hv = _values(h, rule.nodes)
    out = np.sum(rule.weights * fv * np.conj(hv))
    return complex(out) if np.iscomplexobj(out) else float(out)


def gram_matrix(rule: SphereRule, values: np.ndarray) -> np.ndarray:
    """Gram matrix of functions given by their node values (columns of ``values``)."""
    return values.T @ (rule.weights[:, None] * values)


# -- closed-form oracle for Z2^d ------------------------------------------

def z2_moment(exponent: Sequence[int], kappa: Sequence) -> Fraction:
    """Normalized moment ``<x^a, 1>_kappa`` for ``w = prod |x_i|^{2 kappa_i}``.

    Ratio of Dirichlet integrals, written as finite rising products so it is
    exact for rational ``kappa``:
    ``prod_i (kappa_i + 1/2)_{a_i/2} / (|kappa| + d/2)_{|a|/2}``.
    """
    if any(k % 2 for k in exponent):
        return Fraction(0)
    kappa = [Fraction(k) for k in kappa]
    half = Fraction(1, 2)
    num = Fraction(1)
    for k, a in zip(kappa, exponent):
        for j in range(a // 2):
            num *= k + half + j
    base = sum(kappa) + Fraction(len(kappa), 2)
    den = Fraction(1)
    for j in range(sum(exponent) // 2):
        den *= base + j
    return num / den


def z2_mass(kappa: Sequence[float]) -> float:
    """Unnormalized ``int_{S^{d-1}} prod |x_i|^{2 kappa_i} d omega``."""
    kappa = [float(k) for k in kappa]
    return 2.0 * math.exp(sum(math.lgamma(k + 0.5) for k in kappa) - math.lgamma(sum(kappa) + len(kappa) / 2))


def random_sphere_points(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def export_csv_rows(rule: SphereRule) -> list[list[str]]:
    header = [f"x{i + 1}" for i in range(rule.dim)] + ["weight"]
    rows = [header]
    for p, w in zip(rule.nodes, rule.weights):
        rows.append([repr(float(a)) for a in p] + [repr(float(w))])
    return rows


Evaluable = Callable[[np.ndarray], np.ndarray] | MPoly
