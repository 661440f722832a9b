"""Brute-force ground truth for small codes.

Everything here enumerates the full codebook, so it only scales to about a
million symbols; it exists to certify the algebraic decoders.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

from .errors import AmbiguousDecode, TooLarge
from .gf import GF2m

DEFAULT_CAP = 1 << 20


class Codebook:
    """All ``q^k`` codewords spanned by ``generator``.

    ``cap`` bounds ``q^k * n``, the number of symbols materialised.
    """

    def __init__(self, gf: GF2m, generator: Sequence[Sequence[int]], cap: int = DEFAULT_CAP):
        G = np.array(generator, dtype=np.int64)
        k, n = G.shape
        size = gf.q ** k
        if size * n > cap:
            raise TooLarge(f"{size} codewords of length {n} exceed the enumeration cap {cap}")
        self.gf = gf
        self.dimension = k
        self.length = n
        msgs = np.array(list(product(range(gf.q), repeat=k)), dtype=np.int64).reshape(size, k)
        words = np.zeros((size, n), dtype=np.int64)
        for row in range(k):
            for col in range(n):
                g = int(G[row, col])
                if g:
                    words[:, col] ^= gf.vscale(msgs[:, row], g)
        self.words = words

    @classmethod
    def of(cls, code, cap: int = DEFAULT_CAP) -> "Codebook":
        return cls(code.gf, code.generator, cap)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word) -> bool:
        return bool(np.any(np.all(self.words == np.asarray(word), axis=1)))

    def min_distance(self) -> int:
        weights = np.count_nonzero(self.words, axis=1)
        nonzero = weights[weights > 0]
        if nonzero.size == 0:
            raise ValueError("code has no nonzero codewords")
        return int(nonzero.min())

    def nearest(self, received: Sequence) -> tuple[list[list[int]], int]:
        """Codewords closest to ``received`` and their distance.

        Erased symbols (``None``) contribute nothing to the distance.
        """
        known = [i for i, x in enumerate(received) if x is not None]
        if known:
            vals = np.array([received[i] for i in known], dtype=np.int64)
            dist = np.count_nonzero(self.words[:, known] != vals, axis=1)
        else:
            dist = np.zeros(len(self.words), dtype=np.int64)
        best = int(dist.min())
        return [list(map(int, w)) for w in self.words[dist == best]], best

    def decode(self, received: Sequence) -> list[int]:
        """The unique nearest codeword; :class:`AmbiguousDecode` on ties."""
        cands, dist = self.nearest(received)
        if len(cands) != 1:
            raise AmbiguousDecode(cands, dist)
        return cands[0]


def min_distance(code, cap: int = DEFAULT_CAP) -> int:
    """Exact minimum distance of ``code`` (anything with ``gf`` and ``generator``)."""
    return Codebook.of(code, cap).min_distance()


def brute_force_decode(code, received: Sequence, cap: int = DEFAULT_CAP) -> list[int]:
    return Codebook.of(code, cap).decode(received)
