"""Double-level hierarchical codes built from per-block Cauchy matrices.

Block ``i`` holds ``k_i`` message symbols and ``r_i`` parity symbols and
contributes ``delta_i`` coupling symbols to every other block.  Its Cauchy
matrix ``T_i`` has ``k_i + delta_i`` rows (points ``a``) and
``r_i + delta - delta_i`` columns (points ``b``) and is partitioned as

    T_i = [[A_ii, B_i1 ... B_ip (j != i)],
           [U_i , Z_i                  ]]

with ``A_ij = B_ij U_j`` for ``i != j``.  Codeword ``c_i = (m_i, s_i)`` with
``s_i = m_i A_ii + sum_{j != i} m_j A_ji``.

Each block is decodable on its own with the local code (the coupling vector
``p_i = sum_j m_j B_ji`` treated as erasures) and, once its siblings are
correct, with the stronger global code whose extra syndromes are recovered
from the siblings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .cauchy import CauchyParams, build_cauchy, ec_code
from .ec_codec import ERASED, DecodeResult, decode, zero_fill
from .errors import (
    BadDimensionsError,
    ConfigInvalid,
    DecodeFailure,
    GlobalFailure,
    InconsistentSiblings,
    InconsistentSystemError,
    LengthMismatchError,
    LocalFailure,
)
from .gf import GF2m


@dataclass(frozen=True)
class BlockSpec:
    k: int
    r: int
    delta: int
    a: tuple  # k + delta row points of T_i
    b: tuple  # r + (total delta) - delta column points of T_i

    @property
    def n(self) -> int:
        return self.k + self.r


@dataclass(frozen=True)
class HierConfig:
    gf: GF2m
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        self.validate()

    @property
    def p(self) -> int:
        return len(self.blocks)

    @property
    def delta(self) -> int:
        return sum(blk.delta for blk in self.blocks)

    def validate(self) -> None:
        if not self.blocks:
            raise ConfigInvalid("at least one block is required")
        delta = self.delta
        for i, blk in enumerate(self.blocks, 1):
            if not blk.r > blk.delta > 0:
                raise ConfigInvalid(f"block {i}: need r > delta > 0, got r={blk.r}, delta={blk.delta}")
            if blk.k < 1:
                raise ConfigInvalid(f"block {i}: k must be positive")
            if blk.k <= delta - blk.delta:
                raise ConfigInvalid(
                    f"block {i}: k={blk.k} must exceed the siblings' coupling {delta - blk.delta}"
                )
            if len(blk.a) != blk.k + blk.delta:
                raise ConfigInvalid(f"block {i}: expected {blk.k + blk.delta} a-points, got {len(blk.a)}")
            if len(blk.b) != blk.r + delta - blk.delta:
                raise ConfigInvalid(
                    f"block {i}: expected {blk.r + delta - blk.delta} b-points, got {len(blk.b)}"
                )
            pts = blk.a + blk.b
            if len(set(pts)) != len(pts):
                raise ConfigInvalid(f"block {i}: evaluation points are not pairwise distinct")
            if any(not 0 <= x < self.gf.q for x in pts):
                raise ConfigInvalid(f"block {i}: point outside GF(2^{self.gf.m})")
        need = max(blk.n for blk in self.blocks) + delta
        if self.gf.q < need:
            raise ConfigInvalid(f"field size {self.gf.q} < max(n_i) + delta = {need}")

    @classmethod
    def with_default_points(cls, gf: GF2m, ks, rs, deltas) -> "HierConfig":
        """Every block uses ``a = beta^1 .. beta^(k+delta_i)`` and the next
        ``r + delta - delta_i`` powers of beta for ``b``."""
        delta = sum(deltas)
        blocks = []
        for k, r, d in zip(ks, rs, deltas):
            na, nb = k + d, r + delta - d
            if na + nb > gf.order:
                raise ConfigInvalid(f"GF(2^{gf.m}) has too few nonzero points for a block with n + delta = {na + nb}")
            a = tuple(gf.exp(e) for e in range(1, na + 1))
            b = tuple(gf.exp(e) for e in range(na + 1, na + nb + 1))
            blocks.append(BlockSpec(k, r, d, a, b))
        return cls(gf, blocks)

    # ------------------------------------------------------ text serialization

    def to_text(self) -> str:
        lines = [
            "# hierarchical Cauchy code configuration",
            f"m = {self.gf.m}",
            f"prim_poly = {self.gf.prim_poly:#x}",
            f"p = {self.p}",
        ]
        for i, blk in enumerate(self.blocks, 1):
            lines += [
                f"block.{i}.k = {blk.k}",
                f"block.{i}.r = {blk.r}",
                f"block.{i}.delta = {blk.delta}",
                f"block.{i}.a = {_points_to_text(self.gf, blk.a)}",
                f"block.{i}.b = {_points_to_text(self.gf, blk.b)}",
            ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "HierConfig":
        kv = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigInvalid(f"line {lineno}: expected 'key = value'")
            kv[key.strip()] = value.strip()
        try:
            m = int(kv["m"])
            gf = GF2m(m, int(kv["prim_poly"], 0))
            p = int(kv["p"])
            blocks = []
            for i in range(1, p + 1):
                blocks.append(
                    BlockSpec(
                        int(kv[f"block.{i}.k"]),
                        int(kv[f"block.{i}.r"]),
                        int(kv[f"block.{i}.delta"]),
                        _points_from_text(gf, kv[f"block.{i}.a"]),
                        _points_from_text(gf, kv[f"block.{i}.b"]),
                    )
                )
        except KeyError as exc:
            raise ConfigInvalid(f"missing key {exc.args[0]!r}") from None
        except ValueError as exc:
            if isinstance(exc, ConfigInvalid):
                raise
            raise ConfigInvalid(str(exc)) from None
        extra = [k for k in kv if not re.fullmatch(r"m|prim_poly|p|block\.\d+\.(k|r|delta|a|b)", k)]
        if extra:
            raise ConfigInvalid(f"unknown keys: {', '.join(sorted(extra))}")
        return cls(gf, blocks)


ZERO_TOKEN = "zero"


def _points_to_text(gf: GF2m, pts) -> str:
    return " ".join(ZERO_TOKEN if x == 0 else str(gf.log(x)) for x in pts)


def _points_from_text(gf: GF2m, text: str) -> tuple:
    out = []
    for tok in text.split():
        if tok == ZERO_TOKEN:
            out.append(0)
            continue
        e = int(tok)
        if not 0 <= e < gf.order:
            raise ConfigInvalid(f"discrete log {e} out of range [0, {gf.order})")
        out.append(gf.exp(e))
    return tuple(out)


@dataclass
class LocalResult:
    message: list
    codeword: list  # corrected (m_i, s_i)
    coupling: list  # recovered p_i
    ec: DecodeResult


@dataclass
class GlobalResult:
    message: list
    codeword: list
    syndrome: list
    ec: DecodeResult


class HierCode:
    """A built double-level code; construct with :func:`build`."""

    def __init__(self, config: HierConfig):
        self.config = config
        self.gf = gf = config.gf
        blocks = config.blocks
        p = len(blocks)
        self.T, self.A_diag, self.U, self.Z = [], [], [], []
        self.B = [dict() for _ in range(p)]
        for i, blk in enumerate(blocks):
            T = build_cauchy(gf, CauchyParams(blk.a, blk.b))
            self.T.append(T)
            k, r, d = blk.k, blk.r, blk.delta
            self.A_diag.append([row[:r] for row in T[:k]])
            self.U.append([row[:r] for row in T[k:k + d]])
            self.Z.append([row[r:] for row in T[k:k + d]])
            col = r
            for j, other in enumerate(blocks):
                if j == i:
                    continue
                self.B[i][j] = [row[col:col + other.delta] for row in T[:k]]
                col += other.delta
        # A[i][j] = B_ij U_j off the diagonal
        self.A = [
            [self.A_diag[i] if i == j else linalg.mat_mul(gf, self.B[i][j], self.U[j]) for j in range(p)]
            for i in range(p)
        ]
        self.local_codes = []
        self.global_codes = []
        for i, blk in enumerate(blocks):
            self.local_codes.append(ec_code(gf, CauchyParams(blk.a, blk.b[:blk.r]), blk.r))
            self.global_codes.append(ec_code(gf, CauchyParams(blk.a[:blk.k], blk.b), blk.r))

    @property
    def p(self) -> int:
        return self.config.p

    @property
    def blocks(self) -> tuple:
        return self.config.blocks

    @cached_property
    def offsets(self) -> list[int]:
        """Start of each block within the concatenated codeword."""
        out, pos = [], 0
        for blk in self.blocks:
            out.append(pos)
            pos += blk.n
        return out

    @cached_property
    def message_offsets(self) -> list[int]:
        out, pos = [], 0
        for blk in self.blocks:
            out.append(pos)
            pos += blk.k
        return out

    @property
    def total_k(self) -> int:
        return sum(blk.k for blk in self.blocks)

    @property
    def total_n(self) -> int:
        return sum(blk.n for blk in self.blocks)

    @cached_property
    def G(self) -> list:
        """Generator of the whole code, one block row per message."""
        rows = []
        for i, blk in enumerate(self.blocks):
            for ell in range(blk.k):
                row = []
                for j, other in enumerate(self.blocks):
                    if i == j:
                        row += [int(x == ell) for x in range(other.k)]
                    else:
                        row += [0] * other.k
                    row += list(self.A[i][j][ell])
                rows.append(row)
        return rows

    def H_local(self, i: int) -> list:
        """``[A_ii ; U_i ; I_{r_i}]^T``."""
        return self.local_codes[i].H

    def H_global(self, i: int) -> list:
        """``[A_ii | B_ij (j != i) ; I_{r_i} | 0]^T``."""
        return self.global_codes[i].H

    def coupling(self, messages: Sequence[Sequence[int]], i: int) -> list[int]:
        """``p_i = sum_{j != i} m_j B_ji``."""
        gf = self.gf
        out = [0] * self.blocks[i].delta
        for j, m in enumerate(messages):
            if j != i:
                out = [x ^ y for x, y in zip(out, linalg.vec_mat(gf, m, self.B[j][i]))]
        return out

    def parity(self, messages: Sequence[Sequence[int]], i: int) -> list[int]:
        gf = self.gf
        out = [0] * self.blocks[i].r
        for j, m in enumerate(messages):
            out = [x ^ y for x, y in zip(out, linalg.vec_mat(gf, m, self.A[j][i]))]
        return out

    # ---------------------------------------------------------------- batches

    @cached_property
    def _np_G(self) -> np.ndarray:
        return np.array(self.G, dtype=np.int64)

    def encode_batch(self, messages: np.ndarray) -> np.ndarray:
        """Encode an ``(N, total_k)`` array of stripes into ``(N, total_n)``."""
        messages = np.asarray(messages, dtype=np.int64)
        N = messages.shape[0]
        out = np.zeros((N, self.total_n), dtype=np.int64)
        G = self._np_G
        for row in range(G.shape[0]):
            col_m = messages[:, row]
            for col in np.nonzero(G[row])[0]:
                g = int(G[row, col])
                out[:, col] ^= col_m if g == 1 else self.gf.vscale(col_m, g)
        return out

    def message_columns(self) -> list[int]:
        return [self.offsets[i] + ell for i, blk in enumerate(self.blocks) for ell in range(blk.k)]

    def consistent_batch(self, words: np.ndarray) -> np.ndarray:
        """Boolean mask of stripes that are codewords of the whole code."""
        words = np.asarray(words, dtype=np.int64)
        msgs = words[:, self.message_columns()]
        return np.all(self.encode_batch(msgs) == words, axis=1)


def build(config: HierConfig) -> HierCode:
    return HierCode(config)


def split_blocks(code: HierCode, stripe: Sequence) -> list[list]:
    return [list(stripe[o:o + blk.n]) for o, blk in zip(code.offsets, code.blocks)]


def encode(code: HierCode, messages: Sequence[Sequence[int]]) -> list[list[int]]:
    """Jointly encode per-block messages into per-block codewords."""
    if len(messages) != code.p:
        raise LengthMismatchError(f"{len(messages)} messages for {code.p} blocks")
    for i, (m, blk) in enumerate(zip(messages, code.blocks)):
        if len(m) != blk.k:
            raise LengthMismatchError(f"block {i}: message length {len(m)} != k = {blk.k}")
    return [list(m) + code.parity(messages, i) for i, m in enumerate(messages)]


def is_codeword(code: HierCode, codewords: Sequence[Sequence[int]]) -> bool:
    msgs = [list(c[:blk.k]) for c, blk in zip(codewords, code.blocks)]
    if any(x is ERASED for c in codewords for x in c):
        return False
    return all(list(c) == e for c, e in zip(codewords, encode(code, msgs)))


def local_decode(code: HierCode, i: int, word: Sequence) -> LocalResult:
    """Decode block ``i`` alone, treating its coupling vector as erasures.

    Additional erasures in ``word`` are honoured; the error budget is
    ``(r_i - t) // 2`` with ``t = delta_i + #erasures``.
    """
    blk = code.blocks[i]
    if len(word) != blk.n:
        raise LengthMismatchError(f"block {i}: word length {len(word)} != n = {blk.n}")
    extended = list(word[:blk.k]) + [ERASED] * blk.delta + list(word[blk.k:])
    try:
        res = decode(code.local_codes[i], extended)
    except DecodeFailure as exc:
        raise LocalFailure(exc.reason, exc.detail) from exc
    except BadDimensionsError as exc:
        raise LocalFailure("budget", str(exc)) from exc
    c = res.codeword
    k, d = blk.k, blk.delta
    return LocalResult(c[:k], c[:k] + c[k + d:], c[k:k + d], res)


def global_syndrome(
    code: HierCode, i: int, word: Sequence, others: Sequence[Sequence[int]]
) -> list[int]:
    """Syndrome of block ``i`` against its global parity-check matrix.

    ``others[j]`` must be the correct codeword of block ``j`` for ``j != i``
    (entry ``i`` is ignored).  Erased symbols of ``word`` read as zero.
    """
    gf = code.gf
    blocks = code.blocks
    blk = blocks[i]
    z = zero_fill(word)
    m_i, s_i = z[:blk.k], z[blk.k:]
    msgs = [list(others[j][:blocks[j].k]) if j != i else m_i for j in range(code.p)]

    # r_i local components
    S = list(s_i)
    for j in range(code.p):
        S = [x ^ y for x, y in zip(S, linalg.vec_mat(gf, msgs[j], code.A[j][i]))]
    # delta_k coupling components recovered from each sibling
    for kk in range(code.p):
        if kk == i:
            continue
        tilde = list(others[kk][blocks[kk].k:])
        for j in range(code.p):
            tilde = [x ^ y for x, y in zip(tilde, linalg.vec_mat(gf, msgs[j], code.A[j][kk]))]
        # solve x U_k = tilde
        try:
            x = linalg.solve_unique(gf, linalg.transpose(code.U[kk]), tilde)
        except InconsistentSystemError:
            raise InconsistentSiblings(f"block {kk} is not consistent with the others") from None
        S += x
    return S


def global_decode(
    code: HierCode,
    i: int,
    word: Sequence,
    others: Sequence[Sequence[int]],
    erasures_as_errors: bool = False,
) -> GlobalResult:
    """Decode block ``i`` with extra syndromes recovered from its siblings.

    With ``erasures_as_errors`` the erased symbols are zero-filled and treated
    as ordinary errors (``t = 0``), reproducing the erasure-free formulation.
    """
    blk = code.blocks[i]
    if len(word) != blk.n:
        raise LengthMismatchError(f"block {i}: word length {len(word)} != n = {blk.n}")
    for j in range(code.p):
        if j != i and (len(others[j]) != code.blocks[j].n or any(x is ERASED for x in others[j])):
            raise InconsistentSiblings(f"block {j} is not a corrected codeword")
    S = global_syndrome(code, i, word, others)
    target = zero_fill(word) if erasures_as_errors else list(word)
    try:
        res = decode(code.global_codes[i], target, syndrome=S)
    except DecodeFailure as exc:
        raise GlobalFailure(exc.reason, exc.detail) from exc
    except BadDimensionsError as exc:
        raise GlobalFailure("budget", str(exc)) from exc
    return GlobalResult(res.codeword[:blk.k], res.codeword, S, res)


@dataclass
class BlockOutcome:
    status: str  # clean | corrected-local | corrected-global | failed
    error_positions: list = field(default_factory=list)
    erasure_positions: list = field(default_factory=list)
    reason: str = ""


@dataclass
class StripeResult:
    codewords: list  # None for failed blocks
    outcomes: list
    messages: list

    @property
    def ok(self) -> bool:
        return all(o.status != "failed" for o in self.outcomes)


def decode_stripe(code: HierCode, words: Sequence[Sequence], mode: str = "auto") -> StripeResult:
    """Decode every block of one stripe.

    ``mode`` is ``"local"`` (local decoding only), ``"global"`` (every block is
    globally decoded; siblings are taken from local decoding or from blocks
    already corrected globally) or ``"auto"``
    (local first; if a block fails, or the locally decoded stripe is not a
    codeword, one block at a time is retried globally).
    """
    if mode not in ("local", "global", "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    p = code.p
    locals_: list = []
    for i in range(p):
        try:
            locals_.append(local_decode(code, i, words[i]))
        except LocalFailure as exc:
            locals_.append(exc)
    ok = [not isinstance(x, Exception) for x in locals_]

    def finish(cws, outs):
        msgs = [None if c is None else c[:blk.k] for c, blk in zip(cws, code.blocks)]
        return StripeResult(cws, outs, msgs)

    def outcome_local(i):
        res = locals_[i]
        k, d = code.blocks[i].k, code.blocks[i].delta
        errs = [x if x < k else x - d for x in res.ec.error_positions]
        eras = [x if x < k else x - d for x in res.ec.erasure_positions if not k <= x < k + d]
        status = "clean" if not errs and not eras else "corrected-local"
        return BlockOutcome(status, errs, eras)

    def outcome_global(g):
        errs, eras = g.ec.error_positions, g.ec.erasure_positions
        return BlockOutcome("corrected-global" if errs or eras else "clean", errs, eras)

    def failed(reason):
        return BlockOutcome("failed", reason=reason)

    if mode == "local":
        cws = [x.codeword if good else None for x, good in zip(locals_, ok)]
        outs = [outcome_local(i) if ok[i] else failed(locals_[i].reason) for i in range(p)]
        return finish(cws, outs)

    if mode == "global":
        # siblings come from local decoding, or from an earlier global pass
        cws = [x.codeword if good else None for x, good in zip(locals_, ok)]
        outs: list = [None] * p
        pending = [i for i in range(p) if not ok[i]] + [i for i in range(p) if ok[i]]
        progress = True
        while pending and progress:
            progress = False
            for i in list(pending):
                others = [cws[j] if j != i else None for j in range(p)]
                if any(others[j] is None for j in range(p) if j != i):
                    continue
                pending.remove(i)
                progress = True
                try:
                    g = global_decode(code, i, words[i], others)
                except (GlobalFailure, InconsistentSiblings) as exc:
                    cws[i] = None
                    outs[i] = failed(exc.reason)
                    continue
                cws[i] = g.codeword
                outs[i] = outcome_global(g)
        for i in pending:
            cws[i] = None
            outs[i] = failed("siblings-unavailable")
        return finish(cws, outs)

    if all(ok) and is_codeword(code, [x.codeword for x in locals_]):
        return finish([x.codeword for x in locals_], [outcome_local(i) for i in range(p)])

    for i in [i for i in range(p) if not ok[i]] + [i for i in range(p) if ok[i]]:
        if not all(ok[j] for j in range(p) if j != i):
            continue
        others = [locals_[j].codeword if j != i else None for j in range(p)]
        try:
            g = global_decode(code, i, words[i], others)
        except (GlobalFailure, InconsistentSiblings):
            continue
        cws = list(others)
        cws[i] = g.codeword
        if not is_codeword(code, cws):
            continue
        outs = [outcome_local(j) if j != i else outcome_global(g) for j in range(p)]
        return finish(cws, outs)

    return finish([None] * p, [failed("unresolved") for _ in range(p)])
