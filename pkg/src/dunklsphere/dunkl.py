"""Dunkl operators and the Dunkl Laplacian acting on polynomials.

    D_i f(x) = df/dx_i + sum_{v in R_+} kappa(v) <v, e_i> (f(x) - f(sigma_v x)) / <x, v>

The difference quotient is computed by exact division by the linear form
``<x, v>``; a nonzero remainder raises, since it cannot happen for a valid
root system.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from .poly import Exponent, MPoly, dim_homogeneous, monomial_exponents
from .roots import RootSystemSpec, reflection_matrix, require_valid

FLOAT_CHOP = 1e-13


class DivisionRemainderError(ArithmeticError):
    pass


def divide_by_linear(terms: dict, v: Sequence, exact: bool = True) -> tuple[dict, dict]:
    """Divide ``sum terms`` by ``<x, v>``; returns ``(quotient, remainder)`` term maps.

    Long division in the variable ``x_k`` with ``v_k != 0``: the remainder
    is free of ``x_k``.
    """
    k = next(i for i, a in enumerate(v) if a != 0)
    vk = v[k]
    others = [(j, a) for j, a in enumerate(v) if j != k and a != 0]
    f = dict(terms)
    q: dict = {}
    while True:
        top = max((e[k] for e in f), default=0)
        if top == 0:
            break
        lead = [(e, c) for e, c in f.items() if e[k] == top]
        for e, c in lead:
            del f[e]
            b = list(e)
            b[k] -= 1
            t = c / vk
            bt = tuple(b)
            s = q.get(bt, 0) + t
            if s == 0:
                q.pop(bt, None)
            else:
                q[bt] = s
            for j, a in others:
                g = list(b)
                g[j] += 1
                gt = tuple(g)
                s = f.get(gt, 0) - t * a
                if s == 0 or (not exact and abs(s) < 1e-300):
                    f.pop(gt, None)
                else:
                    f[gt] = s
    return q, f


class DunklContext:
    """Dunkl operators for one root system, with memoized monomial images.

    The memo dictionaries are guarded by a lock so a context can be shared
    between threads.
    """

    def __init__(self, spec: RootSystemSpec, validate: bool = True):
        if validate:
            require_valid(spec)
        self.spec = spec
        self.dim = spec.dim
        self.exact = spec.exact
        self._terms = []
        for v in spec.positive:
            k = spec.kappa_of(v)
            if k == 0:
                continue
            self._terms.append((v, k, reflection_matrix(v)))
        self._reflected: dict[tuple[int, Exponent], MPoly] = {}
        self._apply_cache: dict[tuple[int, Exponent], MPoly] = {}
        self._lock = threading.Lock()

    # -- reflection images of monomials -----------------------------------
    def _reflect_monomial(self, r: int, exp: Exponent) -> MPoly:
        key = (r, exp)
        with self._lock:
            hit = self._reflected.get(key)
        if hit is not None:
            return hit
        if sum(exp) == 0:
            out = MPoly.const(1, self.dim)
        else:
            i = next(j for j, a in enumerate(exp) if a)
            lower = list(exp)
            lower[i] -= 1
            S = self._terms[r][2]
            out = self._reflect_monomial(r, tuple(lower)) * MPoly.linear_form(S[i])
            if not self.exact:
                out = out.chop(FLOAT_CHOP)
        with self._lock:
            self._reflected[key] = out
        return out

    def _apply_monomial(self, i: int, exp: Exponent) -> MPoly:
        key = (i, exp)
        with self._lock:
            hit = self._apply_cache.get(key)
        if hit is not None:
            return hit
        mono = MPoly.monomial(exp)
        out = mono.partial(i)
        for r, (v, kap, _) in enumerate(self._terms):
            vi = v[i]
            if vi == 0:
                continue
            diff = mono - self._reflect_monomial(r, exp)
            if diff.is_zero():
                continue
            q, rem = divide_by_linear(diff.terms, v, self.exact)
            if self.exact:
                if rem:
                    raise DivisionRemainderError(f"f - f o sigma_v not divisible by <x, v> for v={v}")
            else:
                scale = max((abs(c) for c in diff.terms.values()), default=1.0)
                if any(abs(c) > 1e-9 * max(scale, 1.0) for c in rem.values()):
                    raise DivisionRemainderError(f"nonzero remainder dividing by <x, v> for v={v}")
            out = out + MPoly._raw(self.dim, q).scale(kap * vi)
        if not self.exact:
            out = out.chop(FLOAT_CHOP)
        with self._lock:
            self._apply_cache[key] = out
        return out

    # -- public operators ---------------------------------------------------
    def apply(self, i: int, p: MPoly) -> MPoly:
        if p.dim != self.dim:
            raise ValueError(f"polynomial dimension {p.dim} != {self.dim}")
        if not 0 <= i < self.dim:
            raise IndexError(f"axis {i} out of range")
        out = MPoly.zero(self.dim)
        for e, c in p.terms.items():
            out = out + self._apply_monomial(i, e).scale(c)
        return out

    def laplacian(self, p: MPoly) -> MPoly:
        out = MPoly.zero(self.dim)
        for i in range(self.dim):
            out = out + self.apply(i, self.apply(i, p))
        return out

    # -- matrices on homogeneous spaces -----------------------------------
    def matrix(self, i: int, n: int) -> list[list]:
        """Matrix of ``D_i : P_n -> P_{n-1}`` in monomial order."""
        src = monomial_exponents(n, self.dim)
        dst = monomial_exponents(n - 1, self.dim)
        index = {e: r for r, e in enumerate(dst)}
        zero = Fraction(0) if self.exact else 0.0
        M = [[zero] * len(src) for _ in dst]
        for c, e in enumerate(src):
            for t, val in self._apply_monomial(i, e).terms.items():
                M[index[t]][c] = val
        return M

    def laplacian_matrix(self, n: int) -> list[list]:
        """Matrix of ``Delta_kappa : P_n -> P_{n-2}`` in monomial order."""
        src = monomial_exponents(n, self.dim)
        dst = monomial_exponents(n - 2, self.dim)
        index = {e: r for r, e in enumerate(dst)}
        zero = Fraction(0) if self.exact else 0.0
        M = [[zero] * len(src) for _ in dst]
        for c, e in enumerate(src):
            for t, val in self.laplacian(MPoly.monomial(e)).terms.items():
                M[index[t]][c] = val
        return M


def partial_matrix(i: int, n: int, d: int) -> list[list]:
    """Matrix of ``d/dx_i : P_n -> P_{n-1}`` in monomial order."""
    src = monomial_exponents(n, d)
    dst = monomial_exponents(n - 1, d)
    index = {e: r for r, e in enumerate(dst)}
    M = [[Fraction(0)] * len(src) for _ in range(dim_homogeneous(n - 1, d))]
    for c, e in enumerate(src):
        if e[i]:
            t = list(e)
            t[i] -= 1
            M[index[tuple(t)]][c] = Fraction(e[i])
    return M


def dunkl_apply(ctx: DunklContext, i: int, p: MPoly) -> MPoly:
    return ctx.apply(i, p)


def dunkl_laplacian(ctx: DunklContext, p: MPoly) -> MPoly:
    return ctx.laplacian(p)
