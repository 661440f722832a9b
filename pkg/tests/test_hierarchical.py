import random

import numpy as np
import pytest

from hecc import linalg
from hecc.ec_codec import ERASED
from hecc.errors import ConfigInvalid, GlobalFailure, InconsistentSiblings, LengthMismatchError, LocalFailure
from hecc.gf import GF2m
from hecc.hierarchical import (
    BlockSpec,
    HierConfig,
    build,
    decode_stripe,
    encode,
    global_decode,
    global_syndrome,
    is_codeword,
    local_decode,
    split_blocks,
)
from hecc.oracle import Codebook

from conftest import two_block_config, powers

N = None  # zero in power lists

TB_G = [
    [0, N, N, 5, 12, 7, N, N, N, 4, 10, 7],
    [N, 0, N, 0, 4, 11, N, N, N, 1, 7, 4],
    [N, N, 0, 2, 14, 3, N, N, N, 5, 11, 8],
    [N, N, N, 4, 10, 7, 0, N, N, 5, 12, 7],
    [N, N, N, 1, 7, 4, N, 0, N, 0, 4, 11],
    [N, N, N, 5, 11, 8, N, N, 0, 2, 14, 3],
]
TB_HG_T = [[5, 12, 7, 9], [0, 4, 11, 6], [2, 14, 3, 10], [0, N, N, N], [N, 0, N, N], [N, N, 0, N]]
TB_HL_T = [[5, 12, 7], [0, 4, 11], [2, 14, 3], [10, 1, 13], [0, N, N], [N, 0, N], [N, N, 0]]


def pm(gf, rows):
    return [powers(gf, row) for row in rows]


def test_two_block_generator(gf16, tb):
    assert tb.G == pm(gf16, TB_G)


def test_two_block_parity_checks(gf16, tb):
    assert tb.H_global(0) == linalg.transpose(pm(gf16, TB_HG_T))
    assert tb.H_local(0) == linalg.transpose(pm(gf16, TB_HL_T))


def test_two_block_encode(gf16, tb):
    b = gf16.exp
    c = encode(tb, [[b(1), 0, b(4)], [0, 1, 0]])
    assert c == [powers(gf16, [1, N, 4, 1, 11, 13]), powers(gf16, [N, 0, N, 13, 6, 2])]
    assert is_codeword(tb, c)


def test_two_block_local_trace(gf16, tb):
    b = gf16.exp
    res = local_decode(tb, 0, powers(gf16, [1, 2, 4, 1, 11, 13]))
    assert res.ec.syndrome == powers(gf16, [5, 10, 11])
    assert res.ec.sigma == [b(2)]
    assert res.ec.error == powers(gf16, [N, 2, N, 6, N, N, N])
    assert res.message == powers(gf16, [1, N, 4])
    assert res.codeword == powers(gf16, [1, N, 4, 1, 11, 13])
    assert res.coupling == [b(6)]


def test_two_block_global_trace(gf16, tb):
    b = gf16.exp
    c2 = powers(gf16, [N, 0, N, 13, 6, 2])
    word = powers(gf16, [1, 0, 4, 1, 9, 13])
    assert global_syndrome(tb, 0, word, [None, c2]) == powers(gf16, [0, 10, 11, 6])
    g = global_decode(tb, 0, word, [None, c2])
    assert g.ec.sigma == [b(11), b(11)]
    assert g.codeword == powers(gf16, [1, N, 4, 1, 11, 13])
    assert g.ec.error == powers(gf16, [N, 0, N, N, 2, N])
    # two errors are beyond the local radius
    with pytest.raises(LocalFailure):
        local_decode(tb, 0, word)


def test_partition_identities(gf16, tb):
    b = gf16.exp
    assert tb.U[1] == [[b(10), b(1), b(13)]]
    for i in range(2):
        for j in range(2):
            if i != j:
                assert tb.A[i][j] == linalg.mat_mul(gf16, tb.B[i][j], tb.U[j])


# ----------------------------------------------------------------- config

def test_config_validation(gf16):
    b = gf16.exp
    good = BlockSpec(3, 3, 1, tuple(b(i) for i in (1, 2, 3, 4)), tuple(b(i) for i in (8, 9, 10, 11)))
    with pytest.raises(ConfigInvalid):
        HierConfig(gf16, [])
    with pytest.raises(ConfigInvalid):
        HierConfig(gf16, [good, BlockSpec(3, 1, 1, good.a, good.b[:1])])  # r must exceed delta
    with pytest.raises(ConfigInvalid):
        HierConfig(gf16, [good, BlockSpec(3, 3, 1, good.a[:3], good.b)])  # wrong a count
    with pytest.raises(ConfigInvalid):
        HierConfig(gf16, [good, BlockSpec(3, 3, 1, good.a, good.b[:3])])  # wrong b count
    with pytest.raises(ConfigInvalid):
        HierConfig(gf16, [good, BlockSpec(3, 3, 1, good.a, (b(1),) + good.b[1:])])  # collision
    with pytest.raises(ConfigInvalid):
        HierConfig(gf16, [good, BlockSpec(1, 3, 1, good.a[:2], good.b)])  # k <= sibling coupling
    with pytest.raises(ConfigInvalid):
        HierConfig.with_default_points(gf16, [7, 7], [7, 7], [1, 1])  # too few points


def test_config_text_roundtrip(gf16):
    cfg = two_block_config(gf16)
    text = cfg.to_text()
    assert "block.2.b = 8 9 10 11" in text
    assert HierConfig.from_text(text) == cfg
    zero_cfg = HierConfig(gf16, [BlockSpec(2, 2, 1, (0, 1, 2), (4, 8, 9)), BlockSpec(2, 2, 1, (0, 1, 2), (4, 8, 9))])
    assert "zero" in zero_cfg.to_text()
    assert HierConfig.from_text(zero_cfg.to_text()) == zero_cfg


@pytest.mark.parametrize(
    "text",
    [
        "m = 4\n",
        "m = 4\nprim_poly = 0x13\np = 1\nblock.1.k = x\n",
        "garbage line\n",
        "m = 4\nprim_poly = 0x13\np = 1\nblock.1.k=2\nblock.1.r=2\nblock.1.delta=1\nblock.1.a=1 2 99\nblock.1.b=3 4\n",
        two_block_config(GF2m(4)).to_text() + "extra.key = 1\n",
    ],
)
def test_config_text_errors(text):
    with pytest.raises(ConfigInvalid):
        HierConfig.from_text(text)


# ------------------------------------------------------------------ codec

HETERO = ([4, 3, 5], [4, 3, 5], [1, 2, 1])  # unequal k, r and delta


def hetero_code(m=5):
    return build(HierConfig.with_default_points(GF2m(m), *HETERO))


def random_messages(code, rng):
    return [[rng.randrange(code.gf.q) for _ in range(blk.k)] for blk in code.blocks]


def test_encode_matches_generator():
    code = hetero_code()
    rng = random.Random(1)
    for _ in range(20):
        msgs = random_messages(code, rng)
        flat = [x for m in msgs for x in m]
        cws = encode(code, msgs)
        assert [x for c in cws for x in c] == linalg.vec_mat(code.gf, flat, code.G)
        # each block is a local codeword once the coupling is inserted
        for i, (c, blk) in enumerate(zip(cws, code.blocks)):
            ext = c[:blk.k] + code.coupling(msgs, i) + c[blk.k:]
            assert linalg.vec_mat(code.gf, ext, code.local_codes[i].Ht) == [0] * blk.r


def test_encode_length_checks(tb):
    with pytest.raises(LengthMismatchError):
        encode(tb, [[1, 2, 3]])
    with pytest.raises(LengthMismatchError):
        encode(tb, [[1, 2], [1, 2, 3]])
    with pytest.raises(LengthMismatchError):
        local_decode(tb, 0, [0] * 5)


def test_batch_encode_and_consistency():
    code = hetero_code()
    rng = random.Random(2)
    msgs = [random_messages(code, rng) for _ in range(30)]
    arr = np.array([[x for m in ms for x in m] for ms in msgs])
    out = code.encode_batch(arr)
    for row, ms in zip(out, msgs):
        assert row.tolist() == [x for c in encode(code, ms) for x in c]
    assert code.consistent_batch(out).all()
    out[3, 5] ^= 1
    mask = code.consistent_batch(out)
    assert not mask[3] and mask.sum() == 29
    assert split_blocks(code, out[0].tolist())[1] == out[0, 8:14].tolist()


def hit(gf, rng, word, s, t):
    word = list(word)
    pos = rng.sample(range(len(word)), s + t)
    for p in pos[:s]:
        word[p] ^= rng.randrange(1, gf.q)
    for p in pos[s:]:
        word[p] = ERASED
    return word, sorted(pos[:s]), sorted(pos[s:])


def test_local_decode_within_budget():
    code = hetero_code()
    gf = code.gf
    rng = random.Random(3)
    for _ in range(200):
        msgs = random_messages(code, rng)
        cws = encode(code, msgs)
        i = rng.randrange(code.p)
        blk = code.blocks[i]
        budget = blk.r - blk.delta
        t = rng.randint(0, budget)
        s = rng.randint(0, (budget - t) // 2)
        word, errs, eras = hit(gf, rng, cws[i], s, t)
        res = local_decode(code, i, word)
        assert res.codeword == cws[i]
        assert res.coupling == code.coupling(msgs, i)


def test_global_decode_within_budget():
    code = hetero_code()
    gf = code.gf
    delta = code.config.delta
    rng = random.Random(4)
    for _ in range(200):
        cws = encode(code, random_messages(code, rng))
        i = rng.randrange(code.p)
        blk = code.blocks[i]
        budget = min(blk.r + delta - blk.delta, blk.n)
        t = rng.randint(0, budget)
        s = rng.randint(0, (budget - t) // 2)
        word, errs, eras = hit(gf, rng, cws[i], s, t)
        g = global_decode(code, i, word, cws)
        assert g.codeword == cws[i]
        assert g.ec.error_positions == errs
        assert g.ec.erasure_positions == eras


def test_global_decode_erasures_as_errors(gf16, tb):
    cws = encode(tb, [[1, 2, 3], [4, 5, 6]])
    word = list(cws[0])
    word[1] = ERASED
    word[4] ^= 7
    assert global_decode(tb, 0, word, cws, erasures_as_errors=True).codeword == cws[0]


def test_global_decode_rejects_bad_siblings(tb):
    cws = encode(tb, [[1, 2, 3], [4, 5, 6]])
    with pytest.raises(InconsistentSiblings):
        global_decode(tb, 0, cws[0], [None, [ERASED] + cws[1][1:]])
    with pytest.raises(LengthMismatchError):
        global_decode(tb, 0, cws[0][:5], cws)


def test_global_failure_beyond_budget(gf16, tb):
    rng = random.Random(5)
    failures = 0
    for _ in range(50):
        cws = encode(tb, [[rng.randrange(16) for _ in range(3)] for _ in range(2)])
        word, _, _ = hit(gf16, rng, cws[0], 3, 0)
        try:
            g = global_decode(tb, 0, word, cws)
            assert g.codeword != cws[0] or word == cws[0]
        except GlobalFailure:
            failures += 1
    assert failures > 0


# ----------------------------------------------------------------- stripes

def stripe_pattern(code, rng, heavy):
    """Per-block (s, t) within the local budget, or the global one for ``heavy``."""
    delta = code.config.delta
    out = []
    for i, blk in enumerate(code.blocks):
        budget = blk.r + delta - blk.delta if i == heavy else blk.r - blk.delta
        budget = min(budget, blk.n)
        t = rng.randint(0, budget)
        s = rng.randint(0, (budget - t) // 2)
        out.append((s, t))
    return out


@pytest.mark.parametrize("heavy", [None, 0, 1, 2])
def test_decode_stripe_auto(heavy):
    code = hetero_code()
    gf = code.gf
    rng = random.Random(10 + (heavy or 0))
    for _ in range(60):
        cws = encode(code, random_messages(code, rng))
        words, expect = [], []
        for c, (s, t) in zip(cws, stripe_pattern(code, rng, heavy)):
            w, errs, eras = hit(gf, rng, c, s, t)
            words.append(w)
            expect.append((errs, eras))
        res = decode_stripe(code, words)
        assert res.ok
        assert res.codewords == cws
        for out, (errs, eras) in zip(res.outcomes, expect):
            assert out.error_positions == errs
            assert out.erasure_positions == eras
            if not errs and not eras:
                assert out.status == "clean"


def test_decode_stripe_statuses(gf16, tb):
    b = gf16.exp
    c2 = powers(gf16, [N, 0, N, 13, 6, 2])
    local = decode_stripe(tb, [powers(gf16, [1, 2, 4, 1, 11, 13]), c2])
    assert [o.status for o in local.outcomes] == ["corrected-local", "clean"]
    assert local.outcomes[0].error_positions == [1]
    glob = decode_stripe(tb, [powers(gf16, [1, 0, 4, 1, 9, 13]), c2])
    assert [o.status for o in glob.outcomes] == ["corrected-global", "clean"]
    assert glob.outcomes[0].error_positions == [1, 4]
    assert glob.messages[0] == [b(1), 0, b(4)]


def test_decode_stripe_modes(gf16, tb):
    c2 = powers(gf16, [N, 0, N, 13, 6, 2])
    word = powers(gf16, [1, 0, 4, 1, 9, 13])
    res = decode_stripe(tb, [word, c2], mode="local")
    assert not res.ok or not is_codeword(tb, res.codewords)
    res = decode_stripe(tb, [word, c2], mode="global")
    assert res.ok and res.codewords[0] == powers(gf16, [1, N, 4, 1, 11, 13])
    with pytest.raises(ValueError):
        decode_stripe(tb, [word, c2], mode="bogus")


def test_decode_stripe_unrecoverable(gf16, tb):
    rng = random.Random(6)
    cws = encode(tb, [[1, 2, 3], [4, 5, 6]])
    words = [hit(gf16, rng, c, 3, 0)[0] for c in cws]
    res = decode_stripe(tb, words)
    assert not res.ok or res.codewords != cws


def test_two_block_distance_profile():
    # small code: the whole stripe code distance is at least the local one
    gf = GF2m(3)
    cfg = HierConfig.with_default_points(gf, [2, 2], [2, 2], [1, 1])
    code = build(cfg)
    book = Codebook(gf, code.G)
    assert book.min_distance() >= 2
