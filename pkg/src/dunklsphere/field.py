"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt r).

The dihedral root systems I2(3) and I2(6) have roots with sqrt(3) in their
coordinates, so exact Dunkl computations for them need a little more than
``fractions.Fraction``.  :class:`QuadraticSurd` covers exactly that case.
Arithmetic between a surd and an ``int``/``Fraction`` returns a plain
``Fraction`` whenever the irrational part cancels, so rational data stays
rational throughout.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class QuadraticSurd:
    """``a + b*sqrt(r)`` with rational ``a, b`` and squarefree integer ``r > 1``.

    Instances always have ``b != 0``; use :func:`surd` to build values, it
    collapses to ``Fraction`` when ``b == 0``.
    """

    __slots__ = ("a", "b", "r")

    def __init__(self, a, b, r: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.r = int(r)

    # -- coercion ---------------------------------------------------------
    def _parts(self, other):
        if isinstance(other, QuadraticSurd):
            if other.r != self.r:
                raise ValueError(f"mixed quadratic fields sqrt({self.r}) and sqrt({other.r})")
            return other.a, other.b
        if isinstance(other, (int, Rational)):
            return Fraction(other), Fraction(0)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            if isinstance(other, float):
                return float(self) + other
            return NotImplemented
        return surd(self.a + p[0], self.b + p[1], self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            if isinstance(other, float):
                return float(self) - other
            return NotImplemented
        return surd(self.a - p[0], self.b - p[1], self.r)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            if isinstance(other, float):
                return float(self) * other
            return NotImplemented
        c, d = p
        return surd(self.a * c + self.r * self.b * d, self.a * d + self.b * c, self.r)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.r * self.b * self.b
        # norm == 0 would need sqrt(r) rational
        return surd(self.a / norm, -self.b / norm, self.r)

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            if isinstance(other, float):
                return float(self) / other
            return NotImplemented
        if p[1] == 0:
            if p[0] == 0:
                raise ZeroDivisionError("division by zero")
            return surd(self.a / p[0], self.b / p[0], self.r)
        return self * surd(p[0], p[1], self.r).inverse()

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            if isinstance(other, float):
                return other / float(self)
            return NotImplemented
        return surd(p[0], p[1], self.r) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out: object = Fraction(1)
        base: object = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -------------------------------------------------------
    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(r)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        # opposite signs: compare a^2 against r*b^2
        lhs, rhs = self.a * self.a, self.r * self.b * self.b
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        diff = self - other
        if isinstance(diff, QuadraticSurd):
            return diff.sign()
        return (diff > 0) - (diff < 0)

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return (self.a, self.b, self.r) == (other.a, other.b, other.r)
        if isinstance(other, (int, Rational)):
            return False
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return True

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * self.r ** 0.5

    def __repr__(self):
        return f"QuadraticSurd({self.a}, {self.b}, {self.r})"

    def __str__(self):
        return format_scalar(self)


def surd(a, b, r: int):
    """Build ``a + b*sqrt(r)``, returning a ``Fraction`` when ``b == 0``."""
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    return QuadraticSurd(a, b, r)


def sqrt_of(r: int):
    """Exact ``sqrt(r)`` for a positive integer, squares factored out."""
    if r <= 0:
        raise ValueError("sqrt_of needs a positive integer")
    outside, inside = 1, r
    k = 2
    while k * k <= inside:
        while inside % (k * k) == 0:
            inside //= k * k
            outside *= k
        k += 1
    return surd(0, outside, inside) if inside > 1 else Fraction(outside)


def is_exact(c) -> bool:
    return isinstance(c, (int, Rational, QuadraticSurd))


def to_exact(c):
    """Coerce ints and rational strings to ``Fraction``; leave surds and floats alone."""
    if isinstance(c, QuadraticSurd) or isinstance(c, float):
        return c
    if isinstance(c, str):
        return parse_rational(c)
    return Fraction(c)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a decimal literal exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_scalar(c) -> str:
    """Text form used by the polynomial printer and JSON dumps."""
    if isinstance(c, QuadraticSurd):
        a = "" if c.a == 0 else format_rational(c.a)
        mag = abs(c.b)
        b = f"sqrt({c.r})" if mag == 1 else f"{format_rational(mag)}*sqrt({c.r})"
        if not a:
            return f"({'-' if c.b < 0 else ''}{b})"
        return f"({a}{'-' if c.b < 0 else '+'}{b})"
    if isinstance(c, float):
        return repr(c)
    return format_rational(c)
