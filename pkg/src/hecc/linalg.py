"""Dense linear algebra over GF(2^m) on lists of lists of ints.

Matrices are small (tens of rows) everywhere the algebraic decoders use them,
so plain Python rows beat numpy's per-call overhead here.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InconsistentSystemError, LengthMismatchError, NotSquareError
from .gf import GF2m

Matrix = list  # list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M: Matrix) -> Matrix:
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def hstack(*blocks: Matrix) -> Matrix:
    rows = len(blocks[0])
    if any(len(b) != rows for b in blocks):
        raise LengthMismatchError("hstack: row counts differ")
    return [sum((list(b[i]) for b in blocks), []) for i in range(rows)]


def vstack(*blocks: Matrix) -> Matrix:
    out = []
    for b in blocks:
        out.extend(list(row) for row in b)
    return out


def submatrix(M: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[M[i][j] for j in cols] for i in rows]


def mat_mul(gf: GF2m, A: Matrix, B: Matrix) -> Matrix:
    if A and len(A[0]) != len(B):
        raise LengthMismatchError(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = transpose(B)
    return [[gf.dot(row, col) for col in Bt] for row in A]


def vec_mat(gf: GF2m, x: Sequence[int], M: Matrix) -> list[int]:
    """Row vector times matrix, ``x M``."""
    if len(x) != len(M):
        raise LengthMismatchError(f"vector of length {len(x)} vs matrix with {len(M)} rows")
    cols = len(M[0]) if M else 0
    out = [0] * cols
    exp, log = gf._exp, gf._log
    for xi, row in zip(x, M):
        if xi == 0:
            continue
        lx = log[xi]
        for j, y in enumerate(row):
            if y:
                out[j] ^= exp[lx + log[y]]
    return out


def mat_vec(gf: GF2m, M: Matrix, x: Sequence[int]) -> list[int]:
    """Matrix times column vector, ``M x``."""
    return [gf.dot(row, x) for row in M]


def rref(gf: GF2m, M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    R = [list(row) for row in M]
    rows, cols = shape(R)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = gf.inv(R[r][c])
        R[r] = [gf.mul(x, inv) for x in R[r]]
        pivot_row = R[r]
        for i in range(rows):
            f = R[i][c]
            if i != r and f:
                R[i] = [x ^ gf.mul(f, y) for x, y in zip(R[i], pivot_row)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(gf: GF2m, M: Matrix) -> int:
    return len(rref(gf, M)[1])


def nullspace(gf: GF2m, M: Matrix) -> list[list[int]]:
    """Basis of ``{x : M x = 0}``."""
    R, pivots = rref(gf, M)
    cols = shape(M)[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * cols
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = row[f]  # char 2: -row[f] == row[f]
        basis.append(x)
    return basis


def solve_affine(gf: GF2m, A: Matrix, b: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """All solutions of ``A x = b`` as (particular solution, null-space basis).

    Raises :class:`InconsistentSystemError` when no solution exists.
    """
    rows, cols = len(A), (len(A[0]) if A else 0)
    if len(b) != rows:
        raise LengthMismatchError(f"right-hand side has length {len(b)}, expected {rows}")
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, pivots = rref(gf, aug)
    if cols in pivots:
        raise InconsistentSystemError("system has no solution")
    x = [0] * cols
    for row, pc in zip(R, pivots):
        x[pc] = row[cols]
    return x, nullspace(gf, A) if cols else []


def solve_unique(gf: GF2m, A: Matrix, b: Sequence[int]) -> list[int]:
    x, null = solve_affine(gf, A, b)
    if null:
        raise InconsistentSystemError(f"solution space has dimension {len(null)}")
    return x


def det(gf: GF2m, M: Matrix) -> int:
    n, c = shape(M)
    if n != c:
        raise NotSquareError(f"determinant of a {n}x{c} matrix")
    R = [list(row) for row in M]
    d = 1
    for col in range(n):
        p = next((i for i in range(col, n) if R[i][col]), None)
        if p is None:
            return 0
        R[col], R[p] = R[p], R[col]  # row swap flips sign, invisible in char 2
        piv = R[col][col]
        d = gf.mul(d, piv)
        inv = gf.inv(piv)
        for i in range(col + 1, n):
            f = R[i][col]
            if f:
                f = gf.mul(f, inv)
                R[i] = [x ^ gf.mul(f, y) for x, y in zip(R[i], R[col])]
    return d


def inverse(gf: GF2m, M: Matrix) -> Matrix:
    n, c = shape(M)
    if n != c:
        raise NotSquareError(f"inverse of a {n}x{c} matrix")
    R, pivots = rref(gf, hstack(M, identity(n)))
    if pivots[:n] != list(range(n)):
        raise InconsistentSystemError("matrix is singular")
    return [row[n:] for row in R]
