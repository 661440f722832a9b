"""Self-describing on-disk archive of hierarchically encoded stripes.

Layout (all integers big-endian)::

    magic            5 bytes   b"HECC1"
    m                1 byte    field extension degree
    prim_poly        4 bytes   primitive polynomial bitmask
    p                2 bytes   number of blocks
    per block:       k, r, delta (2 bytes each)
    per block:       a points, (k + delta) x 2 bytes, discrete logs
                     b points, (r + total_delta - delta) x 2 bytes
    payload_len      8 bytes   original file size in bytes
    n_stripes        8 bytes
    stripe_symbols   4 bytes   symbols per encoded stripe (sum of n_i)
    message_symbols  4 bytes   message symbols per stripe (sum of k_i)
    pad_symbols      4 bytes   zero symbols appended to the last stripe
    body             n_stripes * stripe_symbols symbols, m bits each,
                     packed MSB first, final byte zero-padded

A discrete log of ``0xFFFF`` denotes the zero element.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import BadArchive, ConfigInvalid, HeccError
from .gf import GF2m
from .hierarchical import BlockSpec, HierConfig

MAGIC = b"HECC1"
ZERO_LOG = 0xFFFF


@dataclass
class ArchiveHeader:
    config: HierConfig
    payload_len: int
    n_stripes: int
    pad_symbols: int

    @property
    def stripe_symbols(self) -> int:
        return sum(blk.n for blk in self.config.blocks)

    @property
    def message_symbols(self) -> int:
        return sum(blk.k for blk in self.config.blocks)

    def pack(self) -> bytes:
        gf = self.config.gf
        out = [MAGIC, struct.pack(">BIH", gf.m, gf.prim_poly, self.config.p)]
        for blk in self.config.blocks:
            out.append(struct.pack(">HHH", blk.k, blk.r, blk.delta))
        for blk in self.config.blocks:
            logs = [ZERO_LOG if x == 0 else gf.log(x) for x in blk.a + blk.b]
            out.append(struct.pack(f">{len(logs)}H", *logs))
        out.append(
            struct.pack(
                ">QQIII",
                self.payload_len,
                self.n_stripes,
                self.stripe_symbols,
                self.message_symbols,
                self.pad_symbols,
            )
        )
        return b"".join(out)

    @classmethod
    def unpack(cls, data: bytes) -> tuple["ArchiveHeader", int]:
        """Parse a header; returns it with the offset of the body."""
        reader = _Reader(data)
        if reader.take(len(MAGIC)) != MAGIC:
            raise BadArchive("not a HECC1 archive (bad magic)")
        m, prim, p = reader.unpack(">BIH")
        try:
            gf = GF2m(m, prim)
        except HeccError as exc:
            raise BadArchive(f"bad field parameters: {exc}") from None
        if p == 0:
            raise BadArchive("archive declares no blocks")
        dims = [reader.unpack(">HHH") for _ in range(p)]
        delta = sum(d for _, _, d in dims)
        blocks = []
        for k, r, d in dims:
            na, nb = k + d, r + delta - d
            logs = reader.unpack(f">{na + nb}H")
            pts = []
            for e in logs:
                if e == ZERO_LOG:
                    pts.append(0)
                elif e < gf.order:
                    pts.append(gf.exp(e))
                else:
                    raise BadArchive(f"discrete log {e} out of range")
            blocks.append(BlockSpec(k, r, d, tuple(pts[:na]), tuple(pts[na:])))
        try:
            config = HierConfig(gf, blocks)
        except ConfigInvalid as exc:
            raise BadArchive(f"invalid code parameters: {exc}") from None
        payload_len, n_stripes, stripe_syms, msg_syms, pad = reader.unpack(">QQIII")
        header = cls(config, payload_len, n_stripes, pad)
        if (stripe_syms, msg_syms) != (header.stripe_symbols, header.message_symbols):
            raise BadArchive("chunk layout does not match the block parameters")
        return header, reader.pos


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise BadArchive("truncated archive header")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str) -> tuple:
        size = struct.calcsize(fmt)
        return struct.unpack(fmt, self.take(size))


# ------------------------------------------------------------ symbol packing

def bytes_to_symbols(data: bytes, m: int) -> np.ndarray:
    """Split a byte string into m-bit symbols (MSB first, zero-padded)."""
    if m == 8:
        return np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
    pad = (-len(bits)) % m
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    weights = (1 << np.arange(m - 1, -1, -1)).astype(np.int64)
    return bits.reshape(-1, m).astype(np.int64) @ weights


def symbols_to_bytes(symbols: np.ndarray, m: int, nbytes: int | None = None) -> bytes:
    """Inverse of :func:`bytes_to_symbols`; truncates to ``nbytes`` if given."""
    symbols = np.asarray(symbols, dtype=np.int64).ravel()
    if m == 8:
        out = symbols.astype(np.uint8).tobytes()
    else:
        shifts = np.arange(m - 1, -1, -1)
        bits = ((symbols[:, None] >> shifts) & 1).astype(np.uint8).ravel()
        out = np.packbits(bits).tobytes()
    return out if nbytes is None else out[:nbytes]


# ------------------------------------------------------------------ archives

def layout_messages(config: HierConfig, data: bytes) -> tuple[np.ndarray, int]:
    """Arrange file bytes into an ``(n_stripes, total_k)`` message array."""
    k = sum(blk.k for blk in config.blocks)
    syms = bytes_to_symbols(data, config.gf.m)
    pad = (-len(syms)) % k
    if pad:
        syms = np.concatenate([syms, np.zeros(pad, dtype=np.int64)])
    return syms.reshape(-1, k), pad


def write_archive(header: ArchiveHeader, stripes: np.ndarray) -> bytes:
    body = symbols_to_bytes(stripes, header.config.gf.m)
    return header.pack() + body


def read_archive(data: bytes) -> tuple[ArchiveHeader, np.ndarray]:
    header, offset = ArchiveHeader.unpack(data)
    m = header.config.gf.m
    total = header.n_stripes * header.stripe_symbols
    need = -(-total * m // 8)
    body = data[offset:]
    if len(body) != need:
        raise BadArchive(f"body has {len(body)} bytes, layout requires {need}")
    syms = bytes_to_symbols(body, m)[:total]
    return header, syms.reshape(header.n_stripes, header.stripe_symbols)
