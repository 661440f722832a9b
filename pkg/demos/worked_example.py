"""Two-block hierarchical code over GF(16): matrices, a local repair and a global repair.

Run:  python3 demos/worked_example.py

Field elements are printed as powers of the primitive element beta
(``b^5``), with ``0`` for zero and ``1`` for beta^0.
"""

from hecc import GF2m, build, global_decode, local_decode
from hecc.hierarchical import BlockSpec, HierConfig, encode


def show(gf, x):
    if x is None:
        return "?"
    if x == 0:
        return "0"
    e = gf.log(x)
    return "1" if e == 0 else f"b^{e}"


def row(gf, xs):
    return "(" + ", ".join(show(gf, x) for x in xs) + ")"


def matrix(gf, title, M):
    print(title)
    for r in M:
        print("   ", " ".join(f"{show(gf, x):>5}" for x in r))
    print()


def main():
    gf = GF2m(4, 0x13)  # X^4 + X + 1
    b = gf.exp

    # both blocks: k=3 message symbols, r=3 parities, delta=1 coupling symbol
    a_pts = tuple(b(i) for i in (1, 2, 3, 4))
    b_pts = tuple(b(i) for i in (8, 9, 10, 11))
    blk = BlockSpec(3, 3, 1, a_pts, b_pts)
    code = build(HierConfig(gf, [blk, blk]))

    matrix(gf, "generator G (two blocks side by side):", code.G)
    matrix(gf, "local parity check of block 1:", code.H_local(0))
    matrix(gf, "global parity check of block 1:", code.H_global(0))

    msgs = [[b(1), 0, b(4)], [0, 1, 0]]
    c1, c2 = encode(code, msgs)
    print("block 1 codeword", row(gf, c1))
    print("block 2 codeword", row(gf, c2))
    print()

    # one error: block 1 has local distance 3 for errors, budget 2s + t <= r - delta = 2
    bad = list(c1)
    bad[1] ^= b(2)
    res = local_decode(code, 0, bad)
    print("local repair")
    print("  received  ", row(gf, bad))
    print("  sigma     ", row(gf, res.ec.sigma))
    print("  message   ", row(gf, res.message))
    print()

    # two errors exceed the local budget; the sibling's syndrome rescues it
    bad = list(c1)
    bad[1] ^= 1
    bad[4] ^= b(2)
    try:
        local_decode(code, 0, bad)
        print("local decoding unexpectedly succeeded")
    except Exception as exc:
        print("local repair of two errors fails:", type(exc).__name__)
    g = global_decode(code, 0, bad, [None, c2])
    print("global repair")
    print("  received  ", row(gf, bad))
    print("  syndrome  ", row(gf, g.syndrome))
    print("  sigma     ", row(gf, g.ec.sigma))
    print("  corrected ", row(gf, g.codeword))
    assert g.codeword == c1


if __name__ == "__main__":
    main()
