"""Encoding and hybrid error/erasure decoding for EC codes.

Received words are sequences of field elements in which an erased symbol is
``None`` (:data:`ERASED`).  Positions are 0-based throughout; position ``i < k``
is located by the point ``a_i`` and position ``k + j`` by ``b_j``.

Decoding follows the locator-polynomial route: from the syndrome and the
erasure locator ``e_E`` a small linear system yields the coefficients of a
monic polynomial ``g`` that is a multiple of the error locator.  Its roots among
the code's points give the error positions, and a final linear solve recovers
the magnitudes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .cauchy import ECCode, cauchy_to_gc_map, gc_to_cauchy_map
from .errors import (
    BadDimensionsError,
    BadIndexSetError,
    DecodeFailure,
    InconsistentSystemError,
    LengthMismatchError,
    NoSeparableCandidate,
)
from .gf import GF2m, Poly

ERASED = None


def erased_positions(word: Sequence) -> list[int]:
    return [i for i, x in enumerate(word) if x is ERASED]


def zero_fill(word: Sequence) -> list[int]:
    return [0 if x is ERASED else x for x in word]


def encode(code: ECCode, message: Sequence[int]) -> list[int]:
    """``message @ G`` with ``G`` the systematic generator (length ``n - v`` in)."""
    if len(message) != code.dimension:
        raise LengthMismatchError(f"message length {len(message)} != n - v = {code.dimension}")
    return linalg.vec_mat(code.gf, message, code.generator)


def compute_syndrome(code: ECCode, word: Sequence) -> list[int]:
    """``S = H z(word)^T`` with erasures read as zero."""
    if len(word) != code.n:
        raise LengthMismatchError(f"word length {len(word)} != n = {code.n}")
    return linalg.vec_mat(code.gf, zero_fill(word), code.Ht)


def erasure_locator(code: ECCode, word: Sequence) -> Poly:
    return code.gf.poly_from_roots(code.position_point(i) for i in erased_positions(word))


@dataclass
class FSystem:
    """Linear system ``F sigma = u`` for the locator coefficients.

    ``F`` has one row per extra index ``w_i`` (``W_i = W0 + {w_i}``) and ``s``
    columns; ``u`` is the leading column of the full matrix ``[u | F]``.
    """

    F: list
    u: list
    W0: tuple
    extras: tuple
    s: int

    @property
    def augmented(self) -> list:
        return [[ui] + list(row) for ui, row in zip(self.u, self.F)]


def build_f_system(
    gf: GF2m,
    b: Sequence[int],
    S: Sequence[int],
    e_E: Poly,
    s: int,
    W0: Sequence[int],
) -> FSystem:
    """Assemble ``[u | F]`` from the syndrome.

    Row ``i`` evaluates ``sum_{w in W_i} S_w e_E(b_w) b_w^p / prod_{w' in W_i - w}
    (b_w - b_w')`` for ``p = s, s-1, ..., 0``; the ``p = s`` column is ``u``.
    Cost is ``O(|W0|^2 + rows * s * |W0|)``.
    """
    v = len(b)
    W0 = tuple(W0)
    if len(set(W0)) != len(W0) or any(not 0 <= w < v for w in W0):
        raise BadIndexSetError(f"W0={W0} is not a subset of range({v})")
    if s < 0 or len(W0) < s:
        raise BadIndexSetError(f"|W0| = {len(W0)} is smaller than the error budget s = {s}")
    extras = tuple(w for w in range(v) if w not in W0)

    def weighted(w):
        return gf.mul(S[w], gf.poly_eval(e_E, b[w]))

    base = {}
    for w in W0:
        den = 1
        for w2 in W0:
            if w2 != w:
                den = gf.mul(den, b[w] ^ b[w2])
        base[w] = gf.div(weighted(w), den)
    powers = {w: [gf.pow(b[w], p) for p in range(s + 1)] for w in range(v)}

    F, u = [], []
    for wi in extras:
        den = 1
        for w2 in W0:
            den = gf.mul(den, b[wi] ^ b[w2])
        coef = {wi: gf.div(weighted(wi), den)}
        for w in W0:
            coef[w] = gf.div(base[w], b[w] ^ b[wi])
        row = []
        for p in range(s, -1, -1):
            row.append(gf.sum(gf.mul(c, powers[w][p]) for w, c in coef.items()))
        u.append(row[0])
        F.append(row[1:])
    return FSystem(F, u, W0, extras, s)


@dataclass
class SigmaSolution:
    """Outcome of solving ``F sigma = u``.

    ``kind`` is ``"unique"`` or ``"ambiguous"``; for the latter ``sigma2`` is a
    second, distinct solution and ``null`` spans the homogeneous solutions.
    """

    kind: str
    sigma: list
    sigma2: list | None = None
    null: list = field(default_factory=list)


def solve_sigma(gf: GF2m, fsys: FSystem) -> SigmaSolution:
    # characteristic 2: -u == u
    try:
        x, null = linalg.solve_affine(gf, fsys.F, fsys.u) if fsys.s else ([], [])
    except InconsistentSystemError:
        raise DecodeFailure("sigma-inconsistent", "no locator polynomial fits the syndrome")
    if fsys.s == 0 and any(fsys.u):
        raise DecodeFailure("sigma-inconsistent", "nonzero residual with zero error budget")
    if not null:
        return SigmaSolution("unique", x)
    second = [xi ^ ni for xi, ni in zip(x, null[0])]
    return SigmaSolution("ambiguous", x, second, null)


def locator_from_sigma(sigma: Sequence[int]) -> Poly:
    """``g(X; sigma) = X^s + sigma_1 X^(s-1) + ... + sigma_s``."""
    return tuple(reversed(sigma)) + (1,)


def gamma_schedule(gf: GF2m, count: int | None = None) -> list[int]:
    """Candidate ``gamma`` values: nonzero elements other than 1 ascending by
    discrete log, then 1 and 0.  ``count`` truncates the list."""
    order = [gf.exp(i) for i in range(1, gf.order)] + [1, 0]
    return order if count is None else order[:count]


def disambiguate_sigma(
    gf: GF2m,
    sigma1: Sequence[int],
    sigma2: Sequence[int],
    e_E: Poly,
    s: int,
    t: int | None = None,
) -> list[int]:
    """Pick ``sigma = gamma sigma1 + (1 - gamma) sigma2`` whose locator is
    separable and coprime to ``e_E``.

    ``gamma`` runs over :func:`gamma_schedule`.  In characteristic 2 every
    point of a line can be inseparable, so the scan covers the whole field and
    the caller retries with other directions.  ``t`` is accepted for symmetry
    and unused.
    """
    diff = [x ^ y for x, y in zip(sigma1, sigma2)]
    for gamma in gamma_schedule(gf):
        sigma = [y ^ gf.mul(gamma, d) for y, d in zip(sigma2, diff)]
        g = locator_from_sigma(sigma)
        if gf.poly_deg(gf.poly_gcd(g, gf.poly_derivative(g))) != 0:
            continue
        if gf.poly_deg(gf.poly_gcd(g, e_E)) != 0:
            continue
        return sigma
    raise NoSeparableCandidate(f"no separable locator on the line through {sigma1} and {sigma2}")


def solve_magnitudes(code: ECCode, S: Sequence[int], located: Sequence[int]) -> dict[int, int]:
    """Solve ``sum_{i in located} e_i h_i = S`` (``h_i`` = row ``i`` of ``H^T``).

    Returns the nonzero magnitudes keyed by position.
    """
    located = sorted(located)
    if len(located) > code.v:
        raise BadDimensionsError(f"{len(located)} unknowns exceed the {code.v} syndrome equations")
    if not located:
        if any(S):
            raise InconsistentSystemError("nonzero syndrome with no located positions")
        return {}
    cols = linalg.transpose([code.Ht[i] for i in located])
    x = linalg.solve_unique(code.gf, cols, list(S))
    return {pos: val for pos, val in zip(located, x) if val}


@dataclass
class DecodeResult:
    """Corrected codeword plus a trace of the decoder's intermediate values."""

    codeword: list
    error: list  # codeword = z(received) + error
    error_positions: list  # positions corrected as errors (not erasures)
    erasure_positions: list
    syndrome: list
    erasure_locator: Poly = ()
    sigma: list = field(default_factory=list)
    locator: Poly = (1,)
    fsystem: FSystem | None = None

    @property
    def clean(self) -> bool:
        return not self.error_positions and not self.erasure_positions


def decode(
    code: ECCode,
    word: Sequence,
    s: int | None = None,
    syndrome: Sequence[int] | None = None,
) -> DecodeResult:
    """Correct up to ``s`` errors and all erasures of ``word``.

    ``s`` defaults to ``(v - t) // 2`` where ``t`` is the number of erasures;
    ``2 s + t <= v`` is required.  ``syndrome`` may be supplied when it was
    obtained by other means (the global hierarchical decoder does this); it
    must then equal ``H e^T`` for the unknown error ``e``.

    Raises :class:`DecodeFailure` whenever no error pattern within the budget
    explains the syndrome.
    """
    if len(word) != code.n:
        raise LengthMismatchError(f"word length {len(word)} != n = {code.n}")
    gf = code.gf
    if code.params.is_generalized:
        return _decode_generalized(code, word, s, syndrome)

    E = erased_positions(word)
    t = len(E)
    if t > code.v:
        raise DecodeFailure("too-many-erasures", f"{t} erasures, at most {code.v} recoverable")
    if s is None:
        s = (code.v - t) // 2
    if s < 0 or 2 * s + t > code.v:
        raise BadDimensionsError(f"budget 2s + t = {2 * s + t} exceeds v = {code.v}")

    z = zero_fill(word)
    S = list(syndrome) if syndrome is not None else linalg.vec_mat(gf, z, code.Ht)
    if len(S) != code.v:
        raise LengthMismatchError(f"syndrome length {len(S)} != v = {code.v}")
    e_E = gf.poly_from_roots(code.position_point(i) for i in E)
    if t == 0 and not any(S):
        return DecodeResult(list(z), [0] * code.n, [], [], S, e_E)

    fsys = build_f_system(gf, code.b, S, e_E, s, range(s + t))
    sol = solve_sigma(gf, fsys)
    erased = set(E)
    candidates = {code.position_point(i): i for i in range(code.n) if i not in erased}

    def attempt(sigma):
        g = locator_from_sigma(sigma)
        roots = gf.poly_roots_in_set(g, candidates) if s else set()
        if len(roots) > s:
            raise DecodeFailure("too-many-roots", f"{len(roots)} roots for budget {s}")
        located = sorted(erased | {candidates[x] for x in roots})
        try:
            mags = solve_magnitudes(code, S, located)
        except InconsistentSystemError:
            raise DecodeFailure("magnitudes-inconsistent", f"located positions {located}")
        err = [0] * code.n
        for pos, val in mags.items():
            err[pos] = val
        out = [x ^ e for x, e in zip(z, err)]
        if syndrome is None:
            residual = linalg.vec_mat(gf, out, code.Ht)
        else:
            residual = [x ^ y for x, y in zip(linalg.vec_mat(gf, err, code.Ht), S)]
        if any(residual):
            raise DecodeFailure("residual-syndrome", "correction does not reach a codeword")
        D = sorted(p for p in mags if p not in erased)
        return DecodeResult(out, err, D, E, S, e_E, list(sigma), g, fsys)

    if sol.kind == "unique":
        return attempt(sol.sigma)

    last: DecodeFailure | None = None
    for direction in _null_directions(gf, sol.null):
        sigma1 = [x ^ d for x, d in zip(sol.sigma, direction)]
        try:
            sigma = disambiguate_sigma(gf, sigma1, sol.sigma, e_E, s, t)
            return attempt(sigma)
        except DecodeFailure as exc:
            last = exc
    raise last if last is not None else NoSeparableCandidate("empty null space")


def _null_directions(gf: GF2m, null: list, tries: int = 8):
    """Deterministic sequence of nonzero vectors in the span of ``null``."""
    dim = len(null)
    n = len(null[0])
    yield [gf.sum(col) for col in zip(*null)]
    for vec in null[1:]:
        yield vec
    rng = random.Random(dim * 7919 + n)
    for _ in range(tries):
        lam = [rng.randrange(1, gf.q) for _ in range(dim)]
        out = [0] * n
        for c, vec in zip(lam, null):
            out = [o ^ gf.mul(c, x) for o, x in zip(out, vec)]
        if any(out):
            yield out


def _decode_generalized(code: ECCode, word, s, syndrome) -> DecodeResult:
    # decode in the equivalent plain-Cauchy code and map back
    gf = code.gf
    c, d = code.params.row_scale(), code.params.col_scale()
    plain = code.plain()
    mapped = gc_to_cauchy_map(gf, word, c, d)
    mapped_syn = None
    if syndrome is not None:
        mapped_syn = [gf.div(x, dj) for x, dj in zip(syndrome, d)]
    res = decode(plain, mapped, s, mapped_syn)
    codeword = cauchy_to_gc_map(gf, res.codeword, c, d)
    z = zero_fill(word)
    err = [x ^ y for x, y in zip(codeword, z)]
    S = list(syndrome) if syndrome is not None else compute_syndrome(code, word)
    return DecodeResult(
        codeword, err, res.error_positions, res.erasure_positions, S,
        res.erasure_locator, res.sigma, res.locator, res.fsystem,
    )
