"""Cauchy matrices, extended Cauchy (EC) codes and the GRS membership test.

An EC code over GF(q) with ``k`` message-side points ``a``, ``v`` parity-side
points ``b`` and ``v - k < r <= v`` has the ``v x n`` parity-check matrix

    H = [A ; I_r 0_{r x (v-r)}]^T ,   n = k + r,

where ``A`` is the ``k x v`` (generalized) Cauchy matrix of the points.  It is
an ``(n, n - v, v + 1)`` MDS code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import (
    BadDimensionsError,
    LengthMismatchError,
    NotSquareError,
    PointCollisionError,
    RankDeficientError,
    ZeroScalingError,
)
from .gf import GF2m
from .linalg import Matrix


@dataclass(frozen=True)
class CauchyParams:
    """Evaluation points and optional row/column scalings.

    ``c`` scales the rows (one per ``a`` point) and ``d`` the columns (one per
    ``b`` point).  Leaving both as ``None`` gives a plain Cauchy matrix.
    """

    a: tuple
    b: tuple
    c: tuple | None = None
    d: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if self.c is not None:
            object.__setattr__(self, "c", tuple(self.c))
        if self.d is not None:
            object.__setattr__(self, "d", tuple(self.d))
        pts = self.a + self.b
        if len(set(pts)) != len(pts):
            raise PointCollisionError(f"evaluation points are not pairwise distinct: {pts}")
        if self.c is not None:
            if len(self.c) != len(self.a):
                raise LengthMismatchError("need one row scaling per a-point")
            if 0 in self.c:
                raise ZeroScalingError("row scalings must be nonzero")
        if self.d is not None:
            if len(self.d) != len(self.b):
                raise LengthMismatchError("need one column scaling per b-point")
            if 0 in self.d:
                raise ZeroScalingError("column scalings must be nonzero")

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def v(self) -> int:
        return len(self.b)

    @property
    def is_generalized(self) -> bool:
        return (self.c is not None and any(x != 1 for x in self.c)) or (
            self.d is not None and any(x != 1 for x in self.d)
        )

    def row_scale(self) -> tuple:
        return self.c if self.c is not None else (1,) * self.k

    def col_scale(self) -> tuple:
        return self.d if self.d is not None else (1,) * self.v

    def plain(self) -> "CauchyParams":
        return CauchyParams(self.a, self.b)


def default_points(gf: GF2m, k: int, v: int) -> CauchyParams:
    """``a_i = beta^i`` (i = 1..k) and ``b_j = beta^(k+j)`` (j = 1..v)."""
    if k + v > gf.order:
        raise BadDimensionsError(f"k + v = {k + v} nonzero points needed, field has {gf.order}")
    return CauchyParams(
        tuple(gf.exp(i) for i in range(1, k + 1)),
        tuple(gf.exp(k + j) for j in range(1, v + 1)),
    )


def build_cauchy(gf: GF2m, params: CauchyParams) -> Matrix:
    """Entry ``(i, j) = c_i d_j / (a_i - b_j)``."""
    cs, ds = params.row_scale(), params.col_scale()
    return [
        [gf.div(gf.mul(ci, dj), ai ^ bj) for bj, dj in zip(params.b, ds)]
        for ai, ci in zip(params.a, cs)
    ]


def cauchy_determinant(gf: GF2m, a: Sequence[int], b: Sequence[int]) -> int:
    """Closed-form determinant of the square Cauchy matrix ``Y(a; b)``."""
    if len(a) != len(b):
        raise NotSquareError(f"{len(a)} a-points vs {len(b)} b-points")
    pts = list(a) + list(b)
    if len(set(pts)) != len(pts):
        raise PointCollisionError("evaluation points are not pairwise distinct")
    num = 1
    for i, j in combinations(range(len(a)), 2):
        num = gf.mul(num, a[i] ^ a[j])
        num = gf.mul(num, b[j] ^ b[i])
    den = 1
    for ai in a:
        for bj in b:
            den = gf.mul(den, ai ^ bj)
    return gf.div(num, den)


@dataclass(frozen=True, eq=False)
class ECCode:
    """An extended Cauchy code; build with :func:`ec_code`."""

    gf: GF2m
    params: CauchyParams
    r: int
    A: Matrix = field(repr=False)

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def v(self) -> int:
        return self.params.v

    @property
    def n(self) -> int:
        return self.k + self.r

    @property
    def dimension(self) -> int:
        return self.n - self.v

    @property
    def a(self) -> tuple:
        return self.params.a

    @property
    def b(self) -> tuple:
        return self.params.b

    @cached_property
    def Ht(self) -> Matrix:
        """``H^T`` (n x v): rows of ``A`` then ``[I_r | 0]``."""
        rows = [list(row) for row in self.A]
        for j in range(self.r):
            rows.append([int(w == j) for w in range(self.v)])
        return rows

    @cached_property
    def H(self) -> Matrix:
        return linalg.transpose(self.Ht)

    @cached_property
    def _systematic(self) -> tuple[Matrix, list[int]]:
        basis = linalg.nullspace(self.gf, self.H)
        if len(basis) != self.dimension:
            raise RankDeficientError(f"parity-check matrix has rank {self.n - len(basis)} < {self.v}")
        G, pivots = linalg.rref(self.gf, basis)
        return G, pivots

    @property
    def generator(self) -> Matrix:
        return self._systematic[0]

    @property
    def info_positions(self) -> list[int]:
        """Positions (0-based) carrying the message verbatim."""
        return self._systematic[1]

    def position_point(self, pos: int) -> int:
        """The locator point of a 0-based codeword position."""
        return self.a[pos] if pos < self.k else self.b[pos - self.k]

    def plain(self) -> "ECCode":
        """The equivalent code whose ``A`` is an unscaled Cauchy matrix."""
        if not self.params.is_generalized:
            return self
        return ec_code(self.gf, self.params.plain(), self.r)


def ec_code(gf: GF2m, params: CauchyParams, r: int) -> ECCode:
    k, v = params.k, params.v
    if not (v - k < r <= v) or r < 1:
        raise BadDimensionsError(f"need v - k < r <= v, got k={k}, v={v}, r={r}")
    for x in params.a + params.b + params.row_scale() + params.col_scale():
        gf.check(x)
    return ECCode(gf, params, r, build_cauchy(gf, params))


def ec_systematic_generator(code: ECCode) -> Matrix:
    """Generator ``G`` with ``G H^T = 0`` and an identity on the leading columns.

    Obtained by row-reducing a basis of the null space of ``H``.  For EC codes
    the information set is always the first ``n - v`` positions.
    """
    return code.generator


def systematic_x_block(code: ECCode) -> Matrix:
    """The non-identity block ``X`` of ``G = [I | X]``."""
    info = code.info_positions
    rest = [c for c in range(code.n) if c not in info]
    return linalg.submatrix(code.generator, range(len(info)), rest)


@dataclass(frozen=True)
class GRSVerdict:
    is_grs: bool
    failing_condition: int | None  # 1, 2, 3 or None


def grs_membership_test(gf: GF2m, X: Matrix) -> GRSVerdict:
    """Decide whether ``[I | X]`` generates a GRS (equivalently GC) code.

    Checks, in order: every entry of ``X`` is nonzero; every 2x2 minor of the
    entrywise inverse ``Xc`` is nonzero; ``rank(Xc) == 2``.  When ``X`` has a
    single row or column there are no 2x2 minors and conditions 2 and 3 hold
    vacuously.
    """
    rows, cols = linalg.shape(X)
    if any(x == 0 for row in X for x in row):
        return GRSVerdict(False, 1)
    if rows < 2 or cols < 2:
        return GRSVerdict(True, None)
    Xc = [[gf.inv(x) for x in row] for row in X]
    for i1, i2 in combinations(range(rows), 2):
        r1, r2 = Xc[i1], Xc[i2]
        for j1, j2 in combinations(range(cols), 2):
            if gf.mul(r1[j1], r2[j2]) == gf.mul(r1[j2], r2[j1]):
                return GRSVerdict(False, 2)
    if linalg.rank(gf, Xc) != 2:
        return GRSVerdict(False, 3)
    return GRSVerdict(True, None)


def classify_ec_code(code: ECCode) -> GRSVerdict:
    return grs_membership_test(code.gf, systematic_x_block(code))


def gc_to_cauchy_map(gf: GF2m, word: Sequence, c: Sequence[int], d: Sequence[int]) -> list:
    """Map a word of the scaled code onto the equivalent plain-Cauchy code.

    ``(x_1..x_k, x_{k+1}..x_{k+r}) -> (c_i x_i, x_{k+j} / d_j)``.  Erased
    symbols (``None``) stay erased.
    """
    k = len(c)
    r = len(word) - k
    if r < 0 or r > len(d):
        raise LengthMismatchError(f"word of length {len(word)} does not fit k={k}, v={len(d)}")
    out = []
    for i, x in enumerate(word):
        if x is None:
            out.append(None)
        elif i < k:
            out.append(gf.mul(c[i], x))
        else:
            out.append(gf.div(x, d[i - k]))
    return out


def cauchy_to_gc_map(gf: GF2m, word: Sequence, c: Sequence[int], d: Sequence[int]) -> list:
    """Inverse of :func:`gc_to_cauchy_map`."""
    inv_c = [gf.inv(x) for x in c]
    inv_d = [gf.inv(x) for x in d]
    return gc_to_cauchy_map(gf, word, inv_c, inv_d)
