"""Gaussian elimination over exact fields (and, with a tolerance, over floats).

Matrices are plain lists of rows.  Entries may be ``Fraction``,
``QuadraticSurd`` or ``float``; the zero test switches to a tolerance only
when a float shows up.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

FLOAT_TOL = 1e-11


class InconsistentSystemError(ArithmeticError):
    pass


class SingularSystemError(ArithmeticError):
    pass


def _has_float(rows) -> bool:
    return any(isinstance(v, float) for row in rows for v in row)


def rref(matrix: Sequence[Sequence], tol: float | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``pivots[k]`` is the column of the k-th pivot.
    The input is not modified.
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    inexact = _has_float(rows)
    if inexact and tol is None:
        scale = max((abs(float(v)) for r in rows for v in r), default=1.0) or 1.0
        tol = FLOAT_TOL * scale

    def zero(v) -> bool:
        return abs(v) <= tol if inexact else v == 0

    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        if inexact:
            best = max(range(r, n_rows), key=lambda i: abs(rows[i][c]))
            if zero(rows[best][c]):
                continue
        else:
            best = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
            if best is None:
                continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][c]
        prow = [v / piv for v in rows[r]]
        rows[r] = prow
        nz = [j for j in range(c, n_cols) if not (prow[j] == 0)]
        for i in range(n_rows):
            if i == r:
                continue
            f = rows[i][c]
            if zero(f):
                if inexact:
                    rows[i][c] = 0.0
                continue
            row = rows[i]
            for j in nz:
                row[j] = row[j] - f * prow[j]
            if inexact:
                row[c] = 0.0
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(matrix: Sequence[Sequence], tol: float | None = None) -> int:
    return len(rref(matrix, tol)[1])


def nullspace(matrix: Sequence[Sequence], n_cols: int | None = None, tol: float | None = None) -> list[list]:
    """Basis of ``{x : A x = 0}``, one vector per free column.

    ``n_cols`` is needed when the matrix has no rows.
    """
    if not matrix:
        if n_cols is None:
            raise ValueError("n_cols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    R, pivots = rref(matrix, tol)
    n = len(R[0])
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for k, pc in enumerate(pivots):
            v[pc] = -R[k][f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], B: Sequence[Sequence], tol: float | None = None) -> list[list]:
    """Unique solution ``X`` of ``A X = B`` for a (possibly tall) consistent system.

    ``B`` is a list of rows with one column per right-hand side.  Raises
    :class:`SingularSystemError` when ``A`` lacks full column rank and
    :class:`InconsistentSystemError` when some right-hand side is not in the
    column space.
    """
    n = len(A[0])
    k = len(B[0]) if B else 0
    aug = [list(a) + list(b) for a, b in zip(A, B)]
    R, pivots = rref(aug, tol)
    if any(p >= n for p in pivots):
        raise InconsistentSystemError("right-hand side outside the column space")
    if len(pivots) < n:
        raise SingularSystemError(f"rank {len(pivots)} < {n} unknowns")
    return [R[i][n : n + k] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A or not B:
        return [[] for _ in A]
    cols = list(zip(*B))
    out = []
    for row in A:
        nz = [(j, a) for j, a in enumerate(row) if a != 0]
        out.append([sum((a * col[j] for j, a in nz), Fraction(0)) for col in cols])
    return out


def identity(n: int) -> list[list]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*A)]
