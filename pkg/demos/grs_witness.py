"""Is an extended Cauchy code a GRS code? Probe it two ways.

Run:  python3 demos/grs_witness.py [k v r]

The classifier inspects the X block of the systematic generator [I | X].
Separately we look for column multipliers u that make
(u_l * alpha_l^i) a generator over the points a_1..a_k, b_1..b_r.
Finding one is a direct certificate that the code is GRS.
"""

import random
import sys

from hecc import CauchyParams, GF2m, classify_ec_code, ec_code
from hecc import linalg


def witness(code):
    gf = code.gf
    alpha = list(code.a) + list(code.b[:code.r])
    H = code.Ht
    rows = [[gf.mul(gf.pow(alpha[l], i), H[l][j]) for l in range(code.n)]
            for i in range(code.dimension) for j in range(code.v)]
    ns = linalg.nullspace(gf, rows)
    if len(ns) != 1 or not all(ns[0]):
        return None
    return alpha, ns[0]


def main(argv):
    k, v, r = (int(x) for x in argv) if argv else (8, 6, 4)
    gf = GF2m(5)
    rng = random.Random(2024)
    for trial in range(5):
        pts = rng.sample(range(1, gf.q), k + v)
        c = [rng.randrange(1, gf.q) for _ in range(k)]
        d = [rng.randrange(1, gf.q) for _ in range(v)]
        code = ec_code(gf, CauchyParams(pts[:k], pts[k:], c, d), r)
        verdict = classify_ec_code(code)
        w = witness(code)
        line = f"trial {trial}: (k, v, r) = ({k}, {v}, {r})  classifier is_grs={verdict.is_grs}"
        if w:
            alpha, u = w
            G = [[gf.mul(x, gf.pow(y, i)) for x, y in zip(u, alpha)] for i in range(code.dimension)]
            ok = linalg.mat_mul(gf, G, code.Ht) == linalg.zeros(code.dimension, code.v)
            line += f"  explicit GRS generator found, orthogonal to H: {ok}"
        else:
            line += "  no GRS generator over a, b[:r]"
        print(line)


if __name__ == "__main__":
    main(sys.argv[1:])
