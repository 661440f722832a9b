"""``hecc``: encode files into hierarchical coded stripes, corrupt, decode, inspect.

Exit codes: 0 success, 1 usage error, 2 decode failure, 3 bad archive/config.

Corruption specs are comma-separated ``[STRIPE@]BLOCK:SYMBOL[=LOG]`` tokens
with 1-based indices.  ``STRIPE`` defaults to 1, ``?`` in place of a stripe or
symbol index picks one with the seeded RNG, and ``=LOG`` fixes the error
magnitude to ``beta^LOG`` (errors only; otherwise a random nonzero value).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .archive import ArchiveHeader, layout_messages, read_archive, symbols_to_bytes, write_archive
from .errors import BadArchive, ConfigInvalid, HeccError, OutOfRange
from .gf import GF2m
from .hierarchical import HierCode, HierConfig, build, decode_stripe

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DECODE = 2
EXIT_BAD_INPUT = 3

SIDECAR_SUFFIX = ".erasures.json"


def default_config() -> HierConfig:
    """Four blocks of 12 data + 4 parity bytes, one coupling symbol each."""
    return HierConfig.with_default_points(GF2m(8), [12] * 4, [4] * 4, [1] * 4)


def load_config(path: str | None) -> HierConfig:
    if path is None:
        return default_config()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigInvalid(f"cannot read config: {exc}") from None
    return HierConfig.from_text(text)


def sidecar_path(archive: str | os.PathLike) -> Path:
    return Path(str(archive) + SIDECAR_SUFFIX)


# ------------------------------------------------------------------ encode

def encode_bytes(config: HierConfig, data: bytes) -> bytes:
    code = build(config)
    msgs, pad = layout_messages(config, data)
    stripes = code.encode_batch(msgs)
    header = ArchiveHeader(config, len(data), len(stripes), pad)
    return write_archive(header, stripes)


def cmd_encode(args) -> int:
    config = load_config(args.config)
    data = Path(args.input).read_bytes()
    Path(args.output).write_bytes(encode_bytes(config, data))
    return EXIT_OK


# ----------------------------------------------------------------- corrupt

@dataclass
class Hit:
    stripe: int  # 0-based throughout; the CLI surface is 1-based
    block: int
    symbol: int
    log: int | None = None


def _parse_index(tok: str, limit: int, what: str, rng: random.Random) -> int:
    if tok == "?":
        return rng.randrange(limit)
    try:
        idx = int(tok)
    except ValueError:
        raise OutOfRange(f"bad {what} index {tok!r}") from None
    if not 1 <= idx <= limit:
        raise OutOfRange(f"{what} {idx} outside 1..{limit}")
    return idx - 1


def parse_spec(spec: str, code: HierCode, n_stripes: int, rng: random.Random,
               allow_value: bool) -> list[Hit]:
    hits = []
    for raw in spec.split(","):
        tok = raw.strip()
        if not tok:
            continue
        log = None
        if "=" in tok:
            if not allow_value:
                raise OutOfRange(f"erasures take no value: {tok!r}")
            tok, _, val = tok.partition("=")
            try:
                log = int(val) % code.gf.order
            except ValueError:
                raise OutOfRange(f"bad error magnitude {val!r}") from None
        stripe_tok, _, rest = tok.rpartition("@")
        blk_tok, sep, sym_tok = rest.partition(":")
        if not sep:
            raise OutOfRange(f"expected BLOCK:SYMBOL, got {raw.strip()!r}")
        if n_stripes == 0:
            raise OutOfRange("archive has no stripes to corrupt")
        stripe = _parse_index(stripe_tok or "1", n_stripes, "stripe", rng)
        block = _parse_index(blk_tok, code.p, "block", rng)
        symbol = _parse_index(sym_tok, code.blocks[block].n, "symbol", rng)
        hits.append(Hit(stripe, block, symbol, log))
    return hits


def random_hits(code: HierCode, n_stripes: int, count: int, rng: random.Random):
    """Within-budget hybrid patterns on ``count`` distinct random stripes.

    Every block gets ``2s + t <= r_i - delta_i``; with probability one half a
    single block is instead pushed up to its global budget.
    """
    errors, erasures = [], []
    delta = code.config.delta
    for stripe in rng.sample(range(n_stripes), min(count, n_stripes)):
        heavy = rng.randrange(code.p) if rng.random() < 0.5 else None
        for i, blk in enumerate(code.blocks):
            budget = blk.r + delta - blk.delta if i == heavy else blk.r - blk.delta
            t = rng.randint(0, budget)
            s = rng.randint(0, (budget - t) // 2)
            pos = rng.sample(range(blk.n), s + t)
            errors += [Hit(stripe, i, x) for x in pos[:s]]
            erasures += [Hit(stripe, i, x) for x in pos[s:]]
    return errors, erasures


def check_budget(code: HierCode, errors: list[Hit], erasures: list[Hit]) -> None:
    """Raise :class:`OutOfRange` unless every stripe is provably decodable."""
    s_cnt = Counter((h.stripe, h.block) for h in errors)
    t_cnt = Counter((h.stripe, h.block) for h in erasures)
    delta = code.config.delta
    for stripe in sorted({key[0] for key in s_cnt + t_cnt}):
        over = []
        for i, blk in enumerate(code.blocks):
            load = 2 * s_cnt[stripe, i] + t_cnt[stripe, i]
            if load > blk.r + delta - blk.delta:
                raise OutOfRange(
                    f"stripe {stripe + 1} block {i + 1}: 2s+t = {load} exceeds the global budget "
                    f"{blk.r + delta - blk.delta}"
                )
            if load > blk.r - blk.delta:
                over.append(i + 1)
        if len(over) > 1:
            raise OutOfRange(f"stripe {stripe + 1}: blocks {over} all exceed their local budgets")


def load_sidecar(path: Path, header: ArchiveHeader) -> list[tuple[int, int, int]]:
    """0-based ``(stripe, block, symbol)`` triples from an erasure map."""
    try:
        doc = json.loads(path.read_text())
        entries = [(int(e["stripe"]), int(e["block"]), int(e["symbol"])) for e in doc["erasures"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise BadArchive(f"unreadable erasure map {path}: {exc}") from None
    blocks = header.config.blocks
    out = []
    for st, b, sym in entries:
        if not (1 <= st <= header.n_stripes and 1 <= b <= len(blocks) and 1 <= sym <= blocks[b - 1].n):
            raise BadArchive(f"erasure map entry ({st}, {b}, {sym}) outside the archive layout")
        out.append((st - 1, b - 1, sym - 1))
    return out


def write_sidecar(path: Path, triples) -> None:
    entries = [{"stripe": st + 1, "block": b + 1, "symbol": sym + 1} for st, b, sym in sorted(set(triples))]
    path.write_text(json.dumps({"erasures": entries}, indent=1) + "\n")


def cmd_corrupt(args) -> int:
    src = Path(args.archive)
    dst = Path(args.output) if args.output else src
    header, stripes = read_archive(src.read_bytes())
    code = build(header.config)
    gf = code.gf
    rng = random.Random(args.seed)

    errors = parse_spec(args.errors or "", code, header.n_stripes, rng, True)
    erasures = parse_spec(args.erasures or "", code, header.n_stripes, rng, False)
    if args.random:
        e2, t2 = random_hits(code, header.n_stripes, args.random, rng)
        errors += e2
        erasures += t2
    if len({(h.stripe, h.block, h.symbol) for h in errors + erasures}) != len(errors) + len(erasures):
        raise OutOfRange("a symbol is corrupted more than once")

    old = sidecar_path(src)
    previous = load_sidecar(old, header) if old.exists() else []
    if args.enforce_budget:
        check_budget(code, errors, erasures + [Hit(*x) for x in previous])

    offsets = code.offsets
    for h in errors:
        col = offsets[h.block] + h.symbol
        e = gf.exp(h.log) if h.log is not None else rng.randrange(1, gf.q)
        stripes[h.stripe, col] ^= e
    for h in erasures:
        # the stored value is meaningless once the position is known lost
        stripes[h.stripe, offsets[h.block] + h.symbol] = rng.randrange(gf.q)

    dst.write_bytes(write_archive(header, stripes))
    triples = previous + [(h.stripe, h.block, h.symbol) for h in erasures]
    if triples:
        write_sidecar(sidecar_path(dst), triples)
    elif sidecar_path(dst).exists() and dst != src:
        sidecar_path(dst).unlink()
    return EXIT_OK


# ------------------------------------------------------------------ decode

def decode_archive(header: ArchiveHeader, stripes: np.ndarray, erasures, mode: str):
    """Decode every stripe in place; returns ``(ok, report dict)``."""
    code = build(header.config)
    offsets = code.offsets
    erased_by_stripe: dict[int, list[tuple[int, int]]] = {}
    for st, b, sym in erasures:
        erased_by_stripe.setdefault(st, []).append((b, sym))

    todo = set(erased_by_stripe)
    if header.n_stripes:
        todo |= set(np.nonzero(~code.consistent_batch(stripes))[0].tolist())

    counts = Counter({"clean": header.n_stripes * code.p})
    blocks = []
    ok = True
    for st in sorted(todo):
        row = stripes[st].tolist()
        words = [row[o:o + blk.n] for o, blk in zip(offsets, code.blocks)]
        for b, sym in erased_by_stripe.get(st, []):
            words[b][sym] = None
        res = decode_stripe(code, words, mode)
        for b, out in enumerate(res.outcomes):
            counts["clean"] -= 1
            counts[out.status] += 1
            blocks.append({
                "stripe": st + 1,
                "block": b + 1,
                "status": out.status,
                "errors": [x + 1 for x in out.error_positions],
                "erasures": [x + 1 for x in out.erasure_positions],
                **({"reason": out.reason} if out.reason else {}),
            })
        if res.ok:
            stripes[st] = [x for cw in res.codewords for x in cw]
        else:
            ok = False
    report = {
        "status": "ok" if ok else "failed",
        "mode": mode,
        "stripes": header.n_stripes,
        "counts": {k: v for k, v in counts.items() if v},
        "blocks": blocks,
    }
    return ok, report


def cmd_decode(args) -> int:
    header, stripes = read_archive(Path(args.archive).read_bytes())
    side = Path(args.erasure_map) if args.erasure_map else sidecar_path(args.archive)
    erasures = load_sidecar(side, header) if side.exists() else []
    if args.erasure_map and not side.exists():
        raise BadArchive(f"erasure map {side} not found")
    ok, report = decode_archive(header, stripes, erasures, args.mode)
    emit(report, args.report, _decode_text)
    if not ok:
        return EXIT_DECODE
    code = build(header.config)
    msgs = stripes[:, code.message_columns()]
    data = symbols_to_bytes(msgs, header.config.gf.m, header.payload_len)
    Path(args.output).write_bytes(data)
    return EXIT_OK


def _decode_text(report) -> str:
    counts = ", ".join(f"{k}={v}" for k, v in sorted(report["counts"].items()))
    lines = [f"{report['status']}: {report['stripes']} stripes ({counts})"]
    for b in report["blocks"]:
        if b["status"] == "clean" and not b["erasures"]:
            continue
        line = f"  stripe {b['stripe']} block {b['block']}: {b['status']}"
        if b["errors"]:
            line += f" errors={b['errors']}"
        if b["erasures"]:
            line += f" erasures={b['erasures']}"
        if "reason" in b:
            line += f" ({b['reason']})"
        lines.append(line)
    return "\n".join(lines)


# ----------------------------------------------------------------- inspect

def inspect_header(header: ArchiveHeader) -> dict:
    cfg = header.config
    delta = cfg.delta
    blocks = []
    for i, blk in enumerate(cfg.blocks, 1):
        local_v = blk.r - blk.delta
        global_v = blk.r + delta - blk.delta
        blocks.append({
            "block": i,
            "k": blk.k,
            "r": blk.r,
            "delta": blk.delta,
            "n": blk.n,
            "local_distance": local_v + 1,
            "local_error_budget": local_v // 2,
            "local_hybrid_budget": local_v,
            "global_distance": global_v + 1,
            "global_error_budget": global_v // 2,
            "global_hybrid_budget": global_v,
            "a_logs": [None if x == 0 else cfg.gf.log(x) for x in blk.a],
            "b_logs": [None if x == 0 else cfg.gf.log(x) for x in blk.b],
        })
    return {
        "m": cfg.gf.m,
        "prim_poly": f"{cfg.gf.prim_poly:#x}",
        "p": cfg.p,
        "delta": delta,
        "payload_bytes": header.payload_len,
        "stripes": header.n_stripes,
        "stripe_symbols": header.stripe_symbols,
        "message_symbols": header.message_symbols,
        "pad_symbols": header.pad_symbols,
        "blocks": blocks,
    }


def _inspect_text(info) -> str:
    lines = [
        f"field      GF(2^{info['m']}), primitive polynomial {info['prim_poly']}",
        f"blocks     p={info['p']}, delta={info['delta']}",
        f"payload    {info['payload_bytes']} bytes in {info['stripes']} stripes "
        f"({info['message_symbols']}/{info['stripe_symbols']} symbols, {info['pad_symbols']} pad)",
    ]
    for b in info["blocks"]:
        lines.append(
            f"block {b['block']}    k={b['k']} r={b['r']} delta={b['delta']} n={b['n']} | "
            f"local d={b['local_distance']} (errors {b['local_error_budget']}, 2s+t<={b['local_hybrid_budget']}) | "
            f"global d={b['global_distance']} (errors {b['global_error_budget']}, 2s+t<={b['global_hybrid_budget']})"
        )
    return "\n".join(lines)


def cmd_inspect(args) -> int:
    data = Path(args.archive).read_bytes()
    header, _ = read_archive(data)
    emit(inspect_header(header), args.report, _inspect_text)
    return EXIT_OK


# -------------------------------------------------------------------- main

def emit(obj, fmt: str, text_fn) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=1))
    else:
        print(text_fn(obj))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hecc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("encode", help="encode a file into an archive")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--config", help="code configuration file (default: built-in GF(2^8) layout)")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="inject errors and erasures into an archive")
    p.add_argument("archive")
    p.add_argument("-o", "--output", help="write here instead of in place")
    p.add_argument("--errors", help="error positions, e.g. '1:2=2,3@2:?'")
    p.add_argument("--erasures", help="erasure positions, e.g. '1:4'")
    p.add_argument("--random", type=int, default=0, metavar="N",
                   help="add a random within-budget pattern to N stripes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--enforce-budget", action="store_true",
                   help="refuse patterns the decoder is not guaranteed to correct")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="decode an archive back into the original file")
    p.add_argument("archive")
    p.add_argument("output")
    p.add_argument("--erasure-map", help=f"erasure sidecar (default: ARCHIVE{SIDECAR_SUFFIX} if present)")
    p.add_argument("--mode", choices=["auto", "local", "global"], default="auto")
    p.add_argument("--report", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("inspect", help="print archive parameters and correction budgets")
    p.add_argument("archive")
    p.add_argument("--report", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BadArchive, ConfigInvalid) as exc:
        print(f"hecc: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OutOfRange as exc:
        print(f"hecc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"hecc: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except HeccError as exc:
        print(f"hecc: {exc}", file=sys.stderr)
        return EXIT_DECODE


if __name__ == "__main__":
    sys.exit(main())
