"""Arithmetic in GF(2^m) and in the polynomial ring GF(2^m)[X].

Field elements are plain ``int`` values in ``[0, q)``; bit ``i`` is the
coefficient of ``beta**i`` where ``beta`` is a root of the primitive
polynomial.  Polynomials are tuples of elements, lowest degree first, with no
trailing zeros.  The zero polynomial is ``()`` and its degree is ``None``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadDegreeError,
    BothZeroError,
    NotPrimitiveError,
    ZeroPolynomialError,
)

Poly = tuple

# Primitive polynomials as bitmasks (bit i = coefficient of X^i).
DEFAULT_PRIM_POLY = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,  # X^4 + X + 1
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

MAX_DEGREE = 16


class GF2m:
    """The field GF(2^m) built from log/antilog tables.

    >>> gf = GF2m(4)
    >>> gf.mul(gf.exp(10), gf.exp(5))
    1
    """

    def __init__(self, m: int, prim_poly: int | None = None):
        if not 1 <= m <= MAX_DEGREE:
            raise BadDegreeError(f"extension degree must be in [1, {MAX_DEGREE}], got {m}")
        if prim_poly is None:
            prim_poly = DEFAULT_PRIM_POLY[m]
        if prim_poly <= 0 or prim_poly.bit_length() - 1 != m:
            raise BadDegreeError(f"polynomial {prim_poly:#x} does not have degree {m}")
        self.m = m
        self.prim_poly = prim_poly
        self.q = 1 << m
        self.order = self.q - 1

        antilog = [0] * (2 * self.order)
        log = [0] * self.q
        seen = [False] * self.q
        x = 1
        for i in range(self.order):
            if seen[x]:
                raise NotPrimitiveError(
                    f"{prim_poly:#x}: root has multiplicative order {i}, not {self.order}"
                )
            seen[x] = True
            antilog[i] = x
            log[x] = i
            x <<= 1
            if x & self.q:
                x ^= prim_poly
        if x != 1:
            # the cycle did not close, so the polynomial is reducible with X | p
            raise NotPrimitiveError(f"{prim_poly:#x}: powers of X do not cycle back to 1")
        for i in range(self.order, 2 * self.order):
            antilog[i] = antilog[i - self.order]
        self._exp = antilog
        self._log = log
        self._scale_rows: dict = {}

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, prim_poly={self.prim_poly:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2m) and (self.m, self.prim_poly) == (other.m, other.prim_poly)

    def __hash__(self) -> int:
        return hash((self.m, self.prim_poly))

    # ------------------------------------------------------------------ scalars

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element of GF(2^{self.m})")
        return x

    def elements(self) -> range:
        return range(self.q)

    def exp(self, i: int) -> int:
        """``beta**i`` for any integer ``i``."""
        return self._exp[i % self.order]

    def log(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("log of zero")
        return self._log[x]

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    sub = add

    @staticmethod
    def neg(x: int) -> int:
        return x

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def div(self, x: int, y: int) -> int:
        if y == 0:
            raise ZeroDivisionError("division by zero in GF(2^m)")
        if x == 0:
            return 0
        return self._exp[self._log[x] - self._log[y] + self.order]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[self.order - self._log[x]]

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[x] * e) % self.order]

    def sum(self, values: Iterable[int]) -> int:
        acc = 0
        for v in values:
            acc ^= v
        return acc

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        exp, log = self._exp, self._log
        acc = 0
        for x, y in zip(xs, ys):
            if x and y:
                acc ^= exp[log[x] + log[y]]
        return acc

    def fmt(self, x: int) -> str:
        """Render an element as a power of beta (``'0'``, ``'1'``, ``'b^7'``)."""
        if x == 0:
            return "0"
        e = self._log[x]
        return "1" if e == 0 else f"b^{e}"

    # ------------------------------------------------------------ numpy views

    @cached_property
    def np_exp(self) -> np.ndarray:
        return np.array(self._exp, dtype=np.int64)

    @cached_property
    def np_log(self) -> np.ndarray:
        return np.array(self._log, dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        """Full q x q product table; only built for m <= 8."""
        if self.m > 8:
            raise ValueError("product table is only materialised for m <= 8")
        x = np.arange(self.q)
        lx = self.np_log[x]
        table = self.np_exp[(lx[:, None] + lx[None, :])]
        table[0, :] = 0
        table[:, 0] = 0
        return table.astype(np.uint16)

    def vmul(self, x, y) -> np.ndarray:
        """Elementwise product of broadcastable integer arrays."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = self.np_exp[self.np_log[x] + self.np_log[y]]
        return np.where((x == 0) | (y == 0), 0, out)

    def vscale(self, x, c: int) -> np.ndarray:
        """Multiply every entry of ``x`` by the scalar ``c``."""
        x = np.asarray(x, dtype=np.int64)
        if c == 0:
            return np.zeros_like(x)
        return self.scale_row(c)[x]

    def scale_row(self, c: int) -> np.ndarray:
        """Lookup row ``y -> c*y`` over the whole field (cached)."""
        row = self._scale_rows.get(c)
        if row is None:
            row = self.np_exp[self.np_log[np.arange(self.q)] + self._log[c]]
            row[0] = 0
            self._scale_rows[c] = row
        return row

    # ------------------------------------------------------------ polynomials

    @staticmethod
    def poly_trim(coeffs: Iterable[int]) -> Poly:
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    @staticmethod
    def poly_deg(p: Poly) -> int | None:
        """Degree of ``p``; ``None`` for the zero polynomial."""
        return len(p) - 1 if p else None

    @staticmethod
    def poly_add(a: Poly, b: Poly) -> Poly:
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return GF2m.poly_trim(out)

    poly_sub = poly_add

    def poly_scale(self, p: Poly, c: int) -> Poly:
        if c == 0:
            return ()
        return tuple(self.mul(x, c) for x in p)

    def poly_mul(self, a: Poly, b: Poly) -> Poly:
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        exp, log = self._exp, self._log
        for i, x in enumerate(a):
            if x == 0:
                continue
            lx = log[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] ^= exp[lx + log[y]]
        return self.poly_trim(out)

    def poly_divmod(self, a: Poly, b: Poly) -> tuple[Poly, Poly]:
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(a)
        db = len(b) - 1
        if len(rem) - 1 < db:
            return (), self.poly_trim(rem)
        quot = [0] * (len(rem) - db)
        lead_inv = self.inv(b[-1])
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = self.mul(c, lead_inv)
            quot[i - db] = f
            for j, y in enumerate(b):
                if y:
                    rem[i - db + j] ^= self.mul(f, y)
        return self.poly_trim(quot), self.poly_trim(rem[:db])

    def poly_monic(self, p: Poly) -> Poly:
        if not p:
            return ()
        return self.poly_scale(p, self.inv(p[-1]))

    def poly_gcd(self, a: Poly, b: Poly) -> Poly:
        """Monic greatest common divisor (Euclid)."""
        a = self.poly_trim(a)
        b = self.poly_trim(b)
        if not a and not b:
            raise BothZeroError("gcd(0, 0) is undefined")
        while b:
            a, b = b, self.poly_divmod(a, b)[1]
        return self.poly_monic(a)

    @staticmethod
    def poly_derivative(p: Poly) -> Poly:
        # i * c_i vanishes for even i in characteristic 2
        return GF2m.poly_trim(c if i % 2 else 0 for i, c in enumerate(p) if i > 0)

    def poly_eval(self, p: Poly, x: int) -> int:
        acc = 0
        for c in reversed(p):
            acc = self.mul(acc, x) ^ c
        return acc

    def poly_from_roots(self, roots: Iterable[int]) -> Poly:
        """Monic ``prod (X - root)``."""
        p: Poly = (1,)
        for r in roots:
            p = self.poly_mul(p, (r, 1))
        return p

    def poly_roots_in_set(self, p: Poly, candidates: Iterable[int]) -> set[int]:
        """The candidates at which ``p`` vanishes (brute-force evaluation)."""
        if not p:
            raise ZeroPolynomialError("every element is a root of the zero polynomial")
        return {x for x in candidates if self.poly_eval(p, x) == 0}

    def poly_is_separable(self, p: Poly) -> bool:
        if not p:
            return False
        return self.poly_deg(self.poly_gcd(p, self.poly_derivative(p))) == 0

    def poly_fmt(self, p: Poly) -> str:
        if not p:
            return "0"
        terms = []
        for i in range(len(p) - 1, -1, -1):
            c = p[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if c == 1 and mono:
                terms.append(mono)
            else:
                terms.append(self.fmt(c) + ("*" + mono if mono else ""))
        return " + ".join(terms)
