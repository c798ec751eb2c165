"""Multivariate polynomials with exact coefficients.

An :class:`MPoly` is a map from exponent tuples to nonzero coefficients.
Coefficients are ``Fraction`` in the common case, ``QuadraticSurd`` for the
sqrt(3) dihedral groups and ``float`` only for root systems that cannot be
represented exactly.  Values are treated as immutable.

Axes are 0-based in the Python API; the text format names them ``x1..xd``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .field import QuadraticSurd, format_scalar, is_exact, sqrt_of, to_exact

Exponent = tuple[int, ...]


class DimensionError(ValueError):
    pass


def _coerce(c):
    if isinstance(c, (float, QuadraticSurd, Fraction)):
        return c
    if isinstance(c, np.floating):
        return float(c)
    return to_exact(c)


class MPoly:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        if dim < 1:
            raise DimensionError("dimension must be positive")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != dim:
                raise DimensionError(f"exponent {exp} has length != {dim}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = _coerce(c)
            if c != 0:
                clean[exp] = clean.get(exp, 0) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.dim = dim
        self.terms = clean

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "MPoly":
        out = cls.__new__(cls)
        out.dim = dim
        out.terms = terms
        return out

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "MPoly":
        return cls._raw(dim, {})

    @classmethod
    def const(cls, c, dim: int) -> "MPoly":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def var(cls, i: int, dim: int) -> "MPoly":
        if not 0 <= i < dim:
            raise IndexError(f"axis {i} out of range for dimension {dim}")
        exp = [0] * dim
        exp[i] = 1
        return cls._raw(dim, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "MPoly":
        return cls(len(exp), {tuple(exp): c})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "MPoly":
        d = len(coeffs)
        return cls(d, {tuple(int(j == i) for j in range(d)): c for i, c in enumerate(coeffs)})

    # -- basic protocol ---------------------------------------------------
    def _check(self, other: "MPoly"):
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.const(other, self.dim)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MPoly._raw(self.dim, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if isinstance(c, MPoly):
            if c.degree() > 0:
                raise ValueError("division by a nonconstant polynomial")
            c = c.terms.get((0,) * self.dim, 0)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero")
        if isinstance(c, int):
            c = Fraction(c)
        return MPoly._raw(self.dim, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(1, self.dim)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "MPoly":
        c = _coerce(c)
        if c == 0:
            return MPoly.zero(self.dim)
        return MPoly._raw(self.dim, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.const(other, self.dim)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MPoly({self.dim}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, n: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (n is None or degs == {n})

    def homogeneous_part(self, n: int) -> "MPoly":
        return MPoly._raw(self.dim, {e: c for e, c in self.terms.items() if sum(e) == n})

    def homogeneous_parts(self) -> dict[int, "MPoly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {n: MPoly._raw(self.dim, t) for n, t in sorted(parts.items())}

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    def chop(self, tol: float) -> "MPoly":
        """Drop float coefficients with magnitude below ``tol``."""
        return MPoly._raw(
            self.dim,
            {e: c for e, c in self.terms.items() if not (isinstance(c, float) and abs(c) < tol)},
        )

    def to_float(self) -> "MPoly":
        return MPoly._raw(self.dim, {e: float(c) for e, c in self.terms.items()})

    # -- calculus ---------------------------------------------------------
    def partial(self, i: int) -> "MPoly":
        if not 0 <= i < self.dim:
            raise IndexError(f"axis {i} out of range for dimension {self.dim}")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return MPoly._raw(self.dim, out)

    # -- evaluation -------------------------------------------------------
    def evaluate(self, x: Sequence):
        """Value at ``x``.

        Exact when both coefficients and ``x`` are exact, float otherwise.
        """
        if len(x) != self.dim:
            raise DimensionError(f"point has length {len(x)}, expected {self.dim}")
        exact = self.is_exact() and all(is_exact(v) for v in x)
        if not exact:
            x = [float(v) for v in x]
        total = Fraction(0) if exact else 0.0
        for e, c in self.terms.items():
            t = c if exact else float(c)
            for xi, k in zip(x, e):
                if k:
                    t = t * xi**k
            total = total + t
        return total

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Float values at the rows of ``points`` (shape ``(P, dim)``)."""
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != self.dim:
            raise DimensionError(f"points must have shape (P, {self.dim})")
        if not self.terms:
            return np.zeros(points.shape[0])
        exps = np.array(list(self.terms), dtype=int)
        coeffs = np.array([float(c) for c in self.terms.values()])
        return monomial_values(points, exps) @ coeffs

    # -- substitution -----------------------------------------------------
    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """``p(q_1, ..., q_d)`` for polynomials ``q_i`` sharing one dimension."""
        if len(images) != self.dim:
            raise DimensionError("need one image per variable")
        dim = images[0].dim
        powers: dict[tuple[int, int], MPoly] = {}

        def power(i: int, k: int) -> MPoly:
            if (i, k) not in powers:
                powers[(i, k)] = MPoly.const(1, dim) if k == 0 else power(i, k - 1) * images[i]
            return powers[(i, k)]

        out = MPoly.zero(dim)
        for e, c in self.terms.items():
            t = MPoly.const(c, dim)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def linear_change(self, matrix: Sequence[Sequence]) -> "MPoly":
        """``p(M x)``, i.e. substitute ``x_i -> sum_j M[i][j] x_j``."""
        return self.substitute([MPoly.linear_form(row) for row in matrix])

    # -- coordinates ------------------------------------------------------
    def coeff_vector(self, basis: Sequence[Exponent]) -> list:
        index = {e: k for k, e in enumerate(basis)}
        vec = [Fraction(0)] * len(basis)
        for e, c in self.terms.items():
            if e not in index:
                raise ValueError(f"term {e} outside the given basis")
            vec[index[e]] = c
        return vec

    @classmethod
    def from_vector(cls, vec: Sequence, basis: Sequence[Exponent]) -> "MPoly":
        dim = len(basis[0]) if basis else 1
        return cls(dim, {e: c for e, c in zip(basis, vec) if c != 0})


def monomial_values(points: np.ndarray, exps: np.ndarray) -> np.ndarray:
    """Matrix ``V[p, k] = prod_i points[p, i] ** exps[k, i]``."""
    points = np.asarray(points, dtype=float)
    exps = np.asarray(exps, dtype=int)
    out = np.ones((points.shape[0], exps.shape[0]))
    for i in range(points.shape[1]):
        col = exps[:, i]
        kmax = int(col.max(initial=0))
        if kmax == 0:
            continue
        pw = points[:, i : i + 1] ** np.arange(kmax + 1)
        out *= pw[:, col]
    return out


@lru_cache(maxsize=None)
def monomial_exponents(n: int, d: int) -> tuple[Exponent, ...]:
    """Exponents of degree-``n`` monomials in ``d`` variables, lex-descending.

    Within a single degree this is the graded lexicographic order, e.g.
    ``x1^2, x1*x2, x2^2`` for ``n = d = 2``.
    """
    if n < 0:
        return ()
    if d == 1:
        return ((n,),)
    out = []
    for first in range(n, -1, -1):
        for rest in monomial_exponents(n - first, d - 1):
            out.append((first,) + rest)
    return tuple(out)


def monomial_basis(n: int, d: int) -> list[MPoly]:
    if d < 1:
        raise DimensionError("dimension must be positive")
    return [MPoly.monomial(e) for e in monomial_exponents(n, d)]


def dim_homogeneous(n: int, d: int) -> int:
    return math.comb(n + d - 1, d - 1) if n >= 0 else 0


def substitute_linear_form(g_coeffs: Sequence, xi: Sequence) -> MPoly:
    """The polynomial ``x -> g(<xi, x>)`` for ``g(t) = sum_k g_coeffs[k] t**k``."""
    d = len(xi)
    ell = MPoly.linear_form(list(xi))
    out = MPoly.zero(d)
    power = MPoly.const(1, d)
    for k, c in enumerate(g_coeffs):
        if k:
            power = power * ell
        if c != 0:
            out = out + power.scale(c)
    return out


def univariate_eval(coeffs: Sequence, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


# -- text format ----------------------------------------------------------

def _format_monomial(e: Exponent) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i + 1}")
        elif k > 1:
            parts.append(f"x{i + 1}^{k}")
    return "*".join(parts)


def _term_order(e: Exponent):
    return (-sum(e), tuple(-k for k in e))


def to_text(p: MPoly) -> str:
    """Render as e.g. ``2*x1^2*x2 - 1/3*x3``; round-trips through :func:`parse_poly`."""
    if not p.terms:
        return "0"
    pieces = []
    for e in sorted(p.terms, key=_term_order):
        c = p.terms[e]
        mono = _format_monomial(e)
        negative = not isinstance(c, QuadraticSurd) and c < 0
        mag = -c if negative else c
        if mono and mag == 1 and not isinstance(mag, QuadraticSurd):
            body = mono
        else:
            body = format_scalar(mag) + (f"*{mono}" if mono else "")
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)|(?P<var>x\d+)|(?P<sqrt>sqrt)|(?P<op>[-+*/^()]))"
)


class PolySyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


def parse_poly(text: str, dim: int | None = None) -> MPoly:
    """Parse the text format produced by :func:`to_text`.

    Grammar: sums of products of rational numbers, ``x1..xd``, ``sqrt(r)``,
    parenthesised subexpressions and ``^k`` powers.  ``dim`` defaults to the
    largest variable index that appears (at least 1).
    """
    tokens = _tokenize(text)
    if dim is None:
        dim = max([int(v[1:]) for k, v in tokens if k == "var"] or [1])
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (expected is not None and tok[1] != expected):
            raise PolySyntaxError(f"expected {expected!r} near token {pos}")
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek()[1] in ("+", "-"):
            sign = -1 if take()[1] == "-" else 1
        out = term().scale(sign)
        while peek()[1] in ("+", "-"):
            op = take()[1]
            out = out + term() if op == "+" else out - term()
        return out

    def term():
        out = factor()
        while peek()[1] in ("*", "/"):
            op = take()[1]
            out = out * factor() if op == "*" else out / factor()
        return out

    def factor():
        base = atom()
        if peek()[1] == "^":
            take()
            kind, val = take()
            if kind != "num" or not val.isdigit():
                raise PolySyntaxError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return MPoly.const(Fraction(val), dim)
        if kind == "var":
            take()
            i = int(val[1:])
            if not 1 <= i <= dim:
                raise PolySyntaxError(f"variable {val} outside dimension {dim}")
            return MPoly.var(i - 1, dim)
        if kind == "sqrt":
            take()
            take("(")
            k, v = take()
            if k != "num" or not v.isdigit():
                raise PolySyntaxError("sqrt takes an integer")
            take(")")
            return MPoly.const(sqrt_of(int(v)), dim)
        if val == "(":
            take()
            inner = expr()
            take(")")
            return inner
        raise PolySyntaxError(f"unexpected token {val!r}")

    result = expr()
    if pos != len(tokens):
        raise PolySyntaxError(f"trailing input at token {pos}")
    return result


def iter_degree_le(n: int, d: int) -> Iterable[Exponent]:
    for k in range(n + 1):
        yield from monomial_exponents(k, d)
