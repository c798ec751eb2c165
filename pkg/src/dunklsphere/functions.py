"""Function handles for continuous ``g`` on ``[-1, 1]`` and the builtin grammar.

A handle carries the vectorized callback plus what quadrature needs to know:
kink locations (for panel splitting) and, for polynomials, the exact power
coefficients that switch computations to exact mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .field import parse_rational
from .poly import univariate_eval


@dataclass(frozen=True)
class GFunction:
    func: Callable[[np.ndarray], np.ndarray]
    name: str
    kinks: tuple[float, ...] = ()
    poly: tuple | None = None
    smooth: bool = True
    meta: dict = field(default_factory=dict, compare=False)

    def __call__(self, t):
        return self.func(np.asarray(t, dtype=float))

    @property
    def degree(self) -> int | None:
        if self.poly is None:
            return None
        nz = [k for k, c in enumerate(self.poly) if c != 0]
        return nz[-1] if nz else -1

    def scaled(self, c) -> "GFunction":
        cf = float(c)
        poly = None
        if self.poly is not None:
            cc = Fraction(c) if not isinstance(c, float) else c
            poly = tuple(cc * a for a in self.poly)
        return GFunction(lambda t, f=self.func: cf * f(t), f"{c}*{self.name}", self.kinks, poly, self.smooth)


def polynomial(coeffs: Sequence, name: str | None = None) -> GFunction:
    coeffs = tuple(Fraction(c) if not isinstance(c, float) else c for c in coeffs)
    fc = [float(c) for c in coeffs]

    def f(t):
        return np.asarray(univariate_eval(fc, np.asarray(t, dtype=float)), dtype=float) + 0.0 * np.asarray(t)

    return GFunction(f, name or "poly:" + ",".join(str(c) for c in coeffs), poly=coeffs)


def zero() -> GFunction:
    return polynomial([0], name="zero")


def gegenbauer_function(k: int, lam) -> GFunction:
    from .gegenbauer import gegenbauer_power_coeffs

    return polynomial(gegenbauer_power_coeffs(k, lam), name=f"gegenbauer:{k}")


def parse_g(text: str, lam=None) -> GFunction:
    """Builtins: ``exp``, ``abs``, ``poly:c0,c1,...``, ``gegenbauer:k``, ``runge:a``.

    ``runge:a`` is ``1 / (1 + a t^2)``.  ``gegenbauer:k`` is ``C_k^lam`` and
    needs ``lam``.
    """
    text = text.strip()
    name, _, arg = text.partition(":")
    name = name.lower()
    if name == "exp" and not arg:
        return GFunction(np.exp, "exp")
    if name == "abs" and not arg:
        return GFunction(np.abs, "abs", kinks=(0.0,), smooth=False)
    if name == "zero" and not arg:
        return zero()
    if name == "poly":
        if not arg:
            raise ValueError("poly: needs coefficients")
        return polynomial([parse_rational(c) for c in arg.split(",")], name=text)
    if name == "gegenbauer":
        if lam is None:
            raise ValueError("gegenbauer:k needs lambda")
        return gegenbauer_function(int(arg), lam)
    if name == "runge":
        a = float(parse_rational(arg)) if arg else 25.0
        return GFunction(lambda t: 1.0 / (1.0 + a * t * t), text)
    raise ValueError(f"unknown function {text!r}")
