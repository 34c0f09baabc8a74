"""Exact dense linear algebra over Q(zeta_N): row reduction, rank, kernels, inverses."""

from __future__ import annotations

from typing import Sequence

from .cyclofield import CycElem, FieldSpec

Matrix = list  # list[list[CycElem]]


def rref(rows: Sequence[Sequence[CycElem]], F: FieldSpec) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [list(r) for r in rows]
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv if not x.is_zero() else x for x in A[r]]
        row = A[r]
        nz = [j for j in range(c, n) if not row[j].is_zero()]
        for i in range(m):
            if i != r:
                f = A[i][c]
                if not f.is_zero():
                    Ai = A[i]
                    for j in nz:
                        Ai[j] = Ai[j] - f * row[j]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(rows: Sequence[Sequence[CycElem]], F: FieldSpec) -> int:
    return len(rref(rows, F)[1])


def kernel(rows: Sequence[Sequence[CycElem]], ncols: int, F: FieldSpec) -> Matrix:
    """Basis of {v : A v = 0} as a list of vectors."""
    if not rows:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, F)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def row_space(rows: Sequence[Sequence[CycElem]], F: FieldSpec) -> Matrix:
    R, piv = rref(rows, F)
    return R[: len(piv)]


def identity(n: int, F: FieldSpec) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                a = Ai[t]
                if a.is_zero():
                    continue
                b = B[t][j]
                if b.is_zero():
                    continue
                acc = a * b if acc is None else acc + a * b
            row.append(acc if acc is not None else Ai[0].field.zero)
        out.append(row)
    return out


def matvec(A: Matrix, v: Sequence[CycElem]) -> list[CycElem]:
    F = v[0].field
    out = []
    for row in A:
        acc = F.zero
        for a, x in zip(row, v):
            if not a.is_zero() and not x.is_zero():
                acc = acc + a * x
        out.append(acc)
    return out


def transpose(A: Matrix) -> Matrix:
    return [list(c) for c in zip(*A)]


def inverse(A: Matrix, F: FieldSpec) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + identity(n, F)[i] for i in range(n)]
    R, piv = rref(aug, F)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(A: Matrix, F: FieldSpec) -> CycElem:
    """Determinant by elimination."""
    M = [list(r) for r in A]
    n = len(M)
    d = F.one
    for c in range(n):
        p = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if p is None:
            return F.zero
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c]
        inv = M[c][c].inverse()
        for i in range(c + 1, n):
            f = M[i][c] * inv
            if not f.is_zero():
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d
