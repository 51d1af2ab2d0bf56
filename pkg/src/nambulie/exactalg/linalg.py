"""Exact Gaussian elimination over any field of Python values.

Entries may be :class:`fractions.Fraction` or :class:`RatFunc`; anything with
field arithmetic and a truthiness test for zero works. Matrices are plain lists
of rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

Matrix = list[list[Any]]


def _zero_like(x):
    return x * 0


def _one_like(x):
    return x * 0 + 1


def rref(rows: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Zero rows are dropped from the result.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], int) else Fraction(1, m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Any]]) -> int:
    return len(rref(rows)[1])


def kernel(rows: Sequence[Sequence[Any]], ncols: int | None = None, *, prototype=Fraction(0)) -> Matrix:
    """Basis of the right kernel ``{v : A v = 0}``, one vector per free column.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns, so the basis is in reduced echelon form.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    if rows:
        prototype = next((x for r in rows for x in r if x), rows[0][0] if rows[0] else prototype)
    zero, one = _zero_like(prototype), _one_like(prototype)
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class LinearSolution:
    particular: list
    kernel: Matrix


def solve_linear(A: Sequence[Sequence[Any]], b: Sequence[Any], ncols: int | None = None) -> LinearSolution | None:
    """Solve ``A x = b`` exactly.

    Returns ``None`` when the system is infeasible, otherwise a particular
    solution together with a kernel basis.
    """
    A = [list(r) for r in A]
    b = list(b)
    if len(A) != len(b):
        raise ValueError(f"A has {len(A)} rows but b has {len(b)} entries")
    if ncols is None:
        if not A:
            raise ValueError("ncols is required for an empty system")
        ncols = len(A[0])
    if any(len(r) != ncols for r in A):
        raise ValueError("ragged matrix")
    prototype = next((x for r in A for x in r if x), next((x for x in b if x), Fraction(0)))
    zero = _zero_like(prototype)
    aug = [r + [bi] for r, bi in zip(A, b)]
    red, pivots = rref(aug) if aug else ([], [])
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return LinearSolution(x, kernel(A, ncols, prototype=prototype))


def matvec(A: Sequence[Sequence[Any]], v: Sequence[Any]):
    return [sum((a * x for a, x in zip(row, v)), _zero_like(v[0]) if v else 0) for row in A]


def matmul(A, B):
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), _zero_like(row[0])) for col in cols] for row in A]


def row_basis(vectors: Sequence[Sequence[Any]]) -> Matrix:
    """Reduced echelon basis of the span of ``vectors``."""
    vectors = [list(v) for v in vectors if any(v)]
    return rref(vectors)[0] if vectors else []


def in_span(v: Sequence[Any], vectors: Sequence[Sequence[Any]]) -> bool:
    base = row_basis(vectors)
    return rank(base + [list(v)]) == len(base) if any(v) else True


def span_sum(U: Sequence[Sequence[Any]], W: Sequence[Sequence[Any]]) -> Matrix:
    return row_basis(list(U) + list(W))


def span_intersection(U: Sequence[Sequence[Any]], W: Sequence[Sequence[Any]], dim: int) -> Matrix:
    """Intersection of two subspaces of a ``dim``-dimensional space."""
    U = row_basis(U)
    W = row_basis(W)
    if not U or not W:
        return []
    # u = sum a_i U_i = sum b_j W_j  <=>  [U^T | -W^T] (a, b) = 0
    cols = [list(u) for u in U] + [[-x for x in w] for w in W]
    A = [[col[r] for col in cols] for r in range(dim)]
    sols = kernel(A, len(cols))
    out = []
    for s in sols:
        vec = [sum((s[i] * U[i][r] for i in range(len(U))), 0 * U[0][r]) for r in range(dim)]
        out.append(vec)
    return row_basis(out)


def determinant(A: Sequence[Sequence[Any]]):
    """Determinant by fraction-field elimination."""
    m = [list(r) for r in A]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    det = _one_like(m[0][0])
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return _zero_like(m[0][0])
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def identity(n: int, one=Fraction(1)) -> Matrix:
    zero = one * 0
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
