"""Root systems, positive subsystems, multiplicity functions and reflection groups.

Roots need not be unit vectors: every construction downstream is invariant
under rescaling a root (reflections, Dunkl difference quotients), and the
weight changes only by a constant that the sphere normalization absorbs.
This lets B2 = I2(4) use the rational roots (1, 1), (1, -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .field import QuadraticSurd, is_exact, sqrt_of, to_exact

FLOAT_ROOT_TOL = 1e-12
DEFAULT_GROUP_CAP = 1024

Vector = tuple


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0) if is_exact(u[0]) and is_exact(v[0]) else 0.0)


def _sign(x) -> int:
    if isinstance(x, QuadraticSurd):
        return x.sign()
    return (x > 0) - (x < 0)


def reflect(v: Sequence, x: Sequence) -> Vector:
    """``sigma_v(x) = x - 2 <x, v> / <v, v> * v``."""
    if len(v) != len(x):
        raise ValueError("dimension mismatch")
    nv = dot(v, v)
    if nv == 0:
        raise ValueError("cannot reflect in the zero vector")
    f = 2 * dot(x, v) / nv
    return tuple(a - f * b for a, b in zip(x, v))


def reflection_matrix(v: Sequence) -> tuple[Vector, ...]:
    d = len(v)
    one, zero = (Fraction(1), Fraction(0)) if all(is_exact(a) for a in v) else (1.0, 0.0)
    cols = [reflect(v, tuple(one if j == i else zero for j in range(d))) for i in range(d)]
    return tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))


def _neg(v: Sequence) -> Vector:
    return tuple(-a for a in v)


def _is_float_vec(v) -> bool:
    return any(isinstance(a, float) for a in v)


def _close(u, v, tol=FLOAT_ROOT_TOL) -> bool:
    return all(abs(float(a) - float(b)) <= tol for a, b in zip(u, v))


@dataclass(frozen=True)
class RootSystemSpec:
    """A root system R with a chosen positive half and multiplicities.

    ``kappa`` is keyed by every root of R (so ``kappa[v] == kappa[-v]`` is
    part of G-invariance).  ``functional`` is the linear form that is
    strictly positive on ``positive``.
    """

    dim: int
    roots: tuple[Vector, ...]
    positive: tuple[Vector, ...]
    kappa: Mapping[Vector, object]
    functional: Vector
    family: str = "custom"
    params: tuple = ()
    exact: bool = True

    def kappa_of(self, v: Sequence):
        v = tuple(v)
        if self.exact:
            return self.kappa[v]
        for r, k in self.kappa.items():
            if _close(r, v):
                return k
        raise KeyError(v)

    def contains(self, v: Sequence) -> bool:
        v = tuple(v)
        if self.exact:
            return v in self._root_set
        return any(_close(r, v) for r in self.roots)

    @property
    def _root_set(self):
        return frozenset(self.roots)

    def kappa_positive(self) -> list:
        return [self.kappa_of(v) for v in self.positive]

    def kappa_is_zero(self) -> bool:
        return all(k == 0 for k in self.kappa.values())

    def describe(self) -> dict:
        from .field import format_scalar

        return {
            "family": self.family,
            "params": [format_scalar(p) if not isinstance(p, int) else p for p in self.params],
            "dim": self.dim,
            "exact": self.exact,
            "positive_roots": [[format_scalar(a) for a in v] for v in self.positive],
            "kappa": [format_scalar(k) for k in self.kappa_positive()],
        }


@dataclass(frozen=True)
class ReflectionGroup:
    elements: tuple[tuple[Vector, ...], ...]
    order: int
    generators: tuple[tuple[Vector, ...], ...] = field(default=())


@dataclass
class Violation:
    axiom: str
    message: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom, message, *witness):
        self.violations.append(Violation(axiom, message, tuple(witness)))

    def to_dict(self) -> dict:
        from .field import format_scalar

        def fmt(w):
            if isinstance(w, tuple):
                return [fmt(a) for a in w]
            return format_scalar(w) if not isinstance(w, str) else w

        return {
            "valid": self.ok,
            "violations": [
                {"axiom": v.axiom, "message": v.message, "witness": [fmt(w) for w in v.witness]}
                for v in self.violations
            ],
        }


# -- positive subsystems --------------------------------------------------

_PERTURBATIONS = [Fraction(1, p) for p in (1009, 2003, 3001, 4001, 5003, 6007, 7001)]


def choose_functional(roots: Sequence[Vector], d: int) -> Vector:
    """A rational functional ``(1, e, e^2, ...)`` nonzero on every root."""
    for eps in _PERTURBATIONS:
        phi = tuple(eps**i for i in range(d))
        vals = [dot(phi, v) for v in roots]
        if all(float(x) != 0 and (not _is_float_vec(v) or abs(float(x)) > 1e-9) for x, v in zip(vals, roots)):
            if all(_sign(x) != 0 for x in vals):
                return phi
    raise ValueError("could not find a separating functional")


def split_positive(roots: Sequence[Vector], functional: Vector) -> tuple[Vector, ...]:
    pos = [v for v in roots if _sign(dot(functional, v)) > 0]
    return tuple(pos)


def make_spec(
    roots: Sequence[Sequence],
    kappa: Mapping | Sequence,
    *,
    family: str = "custom",
    params: tuple = (),
    functional: Sequence | None = None,
) -> RootSystemSpec:
    """Assemble a spec from the full root list and multiplicities.

    ``kappa`` is either a mapping root -> value or a sequence aligned with
    ``roots``.  Negative multiplicities are rejected.
    """
    roots = tuple(tuple(to_exact(a) if not isinstance(a, float) else a for a in v) for v in roots)
    if not roots:
        raise ValueError("empty root system")
    d = len(roots[0])
    if any(len(v) != d for v in roots):
        raise ValueError("roots of different lengths")
    exact = not any(_is_float_vec(v) for v in roots)
    if isinstance(kappa, Mapping):
        kmap = {tuple(k): to_exact(val) for k, val in kappa.items()}
    else:
        if len(kappa) != len(roots):
            raise ValueError("kappa list must align with the root list")
        kmap = {v: to_exact(k) for v, k in zip(roots, kappa)}
    for v, k in kmap.items():
        if k < 0:
            raise ValueError(f"negative multiplicity {k} on root {v}")
    phi = tuple(functional) if functional is not None else choose_functional(roots, d)
    return RootSystemSpec(
        dim=d,
        roots=roots,
        positive=split_positive(roots, phi),
        kappa=kmap,
        functional=phi,
        family=family,
        params=params,
        exact=exact,
    )


def with_opposite_positive(spec: RootSystemSpec) -> RootSystemSpec:
    """Same system with ``-R_+`` as positive subsystem."""
    phi = _neg(spec.functional)
    return RootSystemSpec(
        dim=spec.dim,
        roots=spec.roots,
        positive=split_positive(spec.roots, phi),
        kappa=spec.kappa,
        functional=phi,
        family=spec.family,
        params=spec.params,
        exact=spec.exact,
    )


# -- standard families ----------------------------------------------------

def z2(d: int, kappa: Sequence) -> RootSystemSpec:
    """Z2^d: roots ``+-e_i`` with independent multiplicities ``kappa[i]``."""
    if d < 2:
        raise ValueError("Z2^d needs d >= 2")
    if len(kappa) != d:
        raise ValueError(f"Z2^{d} needs {d} multiplicities, got {len(kappa)}")
    roots, ks = [], []
    for i, k in enumerate(kappa):
        e = tuple(Fraction(int(j == i)) for j in range(d))
        roots += [e, _neg(e)]
        ks += [k, k]
    return make_spec(roots, ks, family="Z2", params=(d,))


def _dihedral_exact_roots(m: int) -> list[Vector] | None:
    """Roots at angles j*pi/m, scaled to rational or Q(sqrt 3) coordinates."""
    F = Fraction
    if m == 2:
        return [(F(1), F(0)), (F(0), F(1))]
    if m == 4:
        return [(F(1), F(0)), (F(1), F(1)), (F(0), F(1)), (F(-1), F(1))]
    s3 = sqrt_of(3)
    # roots of one reflection orbit must share a length
    if m == 3:
        return [(F(2), F(0)), (F(1), s3), (F(-1), s3)]
    if m == 6:
        return [(F(2), F(0)), (s3, F(1)), (F(1), s3), (F(0), F(2)), (F(-1), s3), (-s3, F(1))]
    return None


def dihedral(m: int, kappa: Sequence) -> RootSystemSpec:
    """I2(m): ``2m`` roots at angles ``j*pi/m``.

    One multiplicity for odd ``m``; two for even ``m`` (roots with even ``j``
    get ``kappa[0]``, odd ``j`` get ``kappa[1]``).
    """
    if m < 2:
        raise ValueError("I2(m) needs m >= 2")
    n_classes = 1 if m % 2 else 2
    if len(kappa) != n_classes:
        raise ValueError(f"I2({m}) needs {n_classes} multiplicities, got {len(kappa)}")
    half = _dihedral_exact_roots(m)
    if half is None:
        half = [(math.cos(j * math.pi / m), math.sin(j * math.pi / m)) for j in range(m)]
    roots, ks = [], []
    for j, v in enumerate(half):
        k = kappa[j % n_classes]
        roots += [tuple(v), _neg(v)]
        ks += [k, k]
    return make_spec(roots, ks, family="I2", params=(m,))


def build_standard(family: str, *, d: int | None = None, m: int | None = None, kappa: Sequence = ()) -> RootSystemSpec:
    fam = family.lower().replace("^", "")
    if fam in ("z2", "z2d", "b1"):
        if d is None:
            raise ValueError("Z2 family needs d")
        return z2(d, [to_exact(k) for k in kappa])
    if fam in ("i2", "dihedral"):
        if m is None:
            raise ValueError("I2 family needs m")
        return dihedral(m, [to_exact(k) for k in kappa])
    raise ValueError(f"unknown root system family {family!r}")


def is_coordinate_system(spec: RootSystemSpec) -> bool:
    """True when every root is a multiple of a coordinate vector (Z2^d type)."""
    return all(sum(1 for a in v if a != 0) == 1 for v in spec.roots) and len(spec.positive) == spec.dim


# -- validation -----------------------------------------------------------

def _parallel(u, v) -> bool:
    d = len(u)
    for i in range(d):
        for j in range(i + 1, d):
            x = u[i] * v[j] - u[j] * v[i]
            if (abs(float(x)) > FLOAT_ROOT_TOL) if (_is_float_vec(u) or _is_float_vec(v)) else x != 0:
                return False
    return True


def validate(spec: RootSystemSpec) -> ValidationReport:
    """Check the root system axioms, the positive split and G-invariance of kappa."""
    rep = ValidationReport()
    roots = spec.roots
    for v in roots:
        if all((a == 0) if not isinstance(a, float) else abs(a) <= FLOAT_ROOT_TOL for a in v):
            rep.add("nonzero", "zero vector in R", v)
            return rep
    for v in roots:
        if not spec.contains(_neg(v)):
            rep.add("axiom1", "negative of a root is missing", v, _neg(v))
        for u in roots:
            if u is v or _close(u, v) or _close(u, _neg(v)):
                continue
            if _parallel(u, v):
                rep.add("axiom1", "R contains a multiple of a root other than +-v", v, u)
    for v in roots:
        for u in roots:
            img = reflect(v, u)
            if not spec.contains(img):
                rep.add("axiom2", "reflection of a root leaves R", v, u, img)
    pos = set(spec.positive) if spec.exact else None
    for v in roots:
        s = _sign(dot(spec.functional, v))
        in_pos = (v in pos) if pos is not None else any(_close(v, p) for p in spec.positive)
        if s == 0:
            rep.add("positive", "functional vanishes on a root", v)
        elif (s > 0) != in_pos:
            rep.add("positive", "positive subsystem disagrees with the functional", v)
    for p in spec.positive:
        if spec.contains(_neg(p)) and any(_close(_neg(p), q) for q in spec.positive):
            rep.add("positive", "R_+ and -R_+ overlap", p)
    for v in roots:
        try:
            k = spec.kappa_of(v)
        except KeyError:
            rep.add("kappa", "multiplicity undefined on a root", v)
            continue
        if k < 0:
            rep.add("kappa", "negative multiplicity", v)
        for u in roots:
            img = reflect(u, v)
            if not spec.contains(img):
                continue
            try:
                k2 = spec.kappa_of(img)
            except KeyError:
                continue
            if k2 != k if spec.exact else abs(float(k2) - float(k)) > FLOAT_ROOT_TOL:
                rep.add("kappa", "multiplicity is not G-invariant", v, img)
    return rep


def require_valid(spec: RootSystemSpec) -> RootSystemSpec:
    rep = validate(spec)
    if not rep.ok:
        first = rep.violations[0]
        raise ValueError(f"invalid root system ({first.axiom}): {first.message}")
    return spec


# -- reflection group -----------------------------------------------------

class GroupTooLargeError(RuntimeError):
    pass


def _matmul(A, B):
    n = len(A)
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(n)), 0) for j in range(n)) for i in range(n))


def _key(M, exact: bool):
    if exact:
        return M
    return tuple(tuple(round(float(a), 9) + 0.0 for a in row) for row in M)


def generate_group(spec: RootSystemSpec, cap: int = DEFAULT_GROUP_CAP) -> ReflectionGroup:
    """Closure of ``{sigma_v : v in R_+}`` under multiplication."""
    gens = tuple(reflection_matrix(v) for v in spec.positive)
    d = spec.dim
    one = Fraction(1) if spec.exact else 1.0
    zero = Fraction(0) if spec.exact else 0.0
    ident = tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))
    seen = {_key(ident, spec.exact): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _matmul(s, g)
                k = _key(h, spec.exact)
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
                    if len(seen) > cap:
                        raise GroupTooLargeError(f"group order exceeds cap {cap}")
        frontier = nxt
    elems = tuple(seen.values())
    return ReflectionGroup(elements=elems, order=len(elems), generators=gens)


def apply_matrix(M, x: Sequence) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, x)), 0) for row in M)


def count_reflections(group: ReflectionGroup) -> int:
    """Number of group elements that are reflections (det -1, square identity, trace d-2)."""
    d = len(group.elements[0])
    n = 0
    for g in group.elements:
        tr = sum(g[i][i] for i in range(d))
        if (abs(float(tr) - (d - 2)) < 1e-9) and _is_involution(g):
            n += 1
    return n


def _is_involution(g) -> bool:
    sq = _matmul(g, g)
    d = len(g)
    return all(abs(float(sq[i][j]) - (1.0 if i == j else 0.0)) < 1e-9 for i in range(d) for j in range(d))
