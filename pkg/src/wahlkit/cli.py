"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant violation (always a bug).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import __version__
from .acceptance import CHECKS, run_check
from .bundles import hec_from_chain, hom_dimensions, marking_bundle_chain, realizable_rank_degree
from .cfkernel import dual, evaluate, expand, parse_chain
from .diophantine import degree8_relations, markov_correspondence, markov_triples, pell_family
from .errors import InvariantViolation, WahlkitError
from .geometry import (
    build_fake_wpp,
    build_w_hat,
    degree8_fiber_class,
    extremal_p_resolutions,
    m_resolutions,
    parse_sing_chain,
    slide,
)
from .golden import run_all
from .marking import (
    canonical_markings,
    christophersen_stevens,
    classify_markings,
    enumerate_zero_cf_assignments,
    marking_from_marked,
    realizable_degrees,
)
from .trains import divisorial_train, flip_train_over_wahl, flipping_trains, markov_train
from .wahl import WahlPair, generate_wahl, recognize_wahl, wahl_chain

ATLAS_SCHEMA = 1

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUG = 0, 1, 2, 3


class Failed(Exception):
    """A verification step ran and did not pass."""


def _chain(text: str) -> tuple[int, ...]:
    chain, _ = parse_chain(text)
    return chain


def _marking(n: int, a: int, text: str):
    marked, central = parse_chain(text)
    if central is None:
        raise ValueError(f"marking {text!r} has no central entry u{{..}}")
    return marking_from_marked(wahl_chain((n, a)), marked, central)


def threads() -> int:
    """Worker cap from WAHLKIT_THREADS; defaults to one."""
    raw = os.environ.get("WAHLKIT_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"WAHLKIT_THREADS must be an integer, got {raw!r}") from None
    return max(1, value)


# --- handlers: each returns a list of JSON-ready records ---------------------------


def cmd_eval(args) -> list[dict]:
    chain = _chain(args.chain)
    v = evaluate(chain)
    return [{"chain": list(chain), "value": str(v), "numerator": v.numerator, "denominator": v.denominator}]


def cmd_dual(args) -> list[dict]:
    chain = _chain(args.chain) if args.chain.startswith("[") else expand(*map(int, args.chain.split("/")))
    return [{"chain": list(chain), "dual": list(dual(chain))}]


def cmd_wahl(args) -> list[dict]:
    if args.wahl_cmd == "chain":
        p = WahlPair(args.n, args.a).check()
        return [{"n": p.n, "a": p.a, "chain": list(wahl_chain(p))}]
    if args.wahl_cmd == "recognize":
        p = recognize_wahl(_chain(args.chain))
        if p is None:
            raise Failed(f"{args.chain} is not a Wahl chain")
        return [{"n": p.n, "a": p.a, "chain": list(wahl_chain(p))}]
    recs = [
        {"n": p.n, "a": p.a, "chain": list(c), "center": center}
        for p, c, center in generate_wahl(args.max_len)
    ]
    if args.out:
        _write_jsonl(Path(args.out), recs)
        return [{"written": len(recs), "out": args.out}]
    return recs


def cmd_mark(args) -> list[dict]:
    if args.mark_cmd == "classify":
        return [m.to_json() for m in classify_markings((args.n, args.a))]
    if args.mark_cmd == "canonical":
        return [m.to_json() for m in canonical_markings((args.n, args.a))]
    if args.mark_cmd == "degrees":
        return [{"n": args.n, "a": args.a, "degrees": sorted(realizable_degrees((args.n, args.a)))}]
    if args.mark_cmd == "zerocf":
        return [z.to_json() for z in enumerate_zero_cf_assignments(_chain(args.chain), args.max_weight)]
    return [{"zero_cf": list(c)} for c in christophersen_stevens((args.delta, args.omega))]


def cmd_geo(args) -> list[dict]:
    g = args.geo_cmd
    if g == "what":
        out = []
        for m in classify_markings((args.n, args.a)):
            s, tail = build_w_hat(m)
            out.append({"marking": str(m), "degree": m.degree, "w_hat": str(s), "c_squared": tail.c_squared,
                        "c_dot_k": str(tail.c_k), "k_squared": str(tail.k_squared)})
        return out
    if g == "slide":
        new, chain = slide(_chain(args.chain), args.i, args.direction)
        return [{"new": list(new), "chain": list(chain)}]
    if g == "what8":
        m = _marking(args.n, args.a, args.marking)
        c = degree8_fiber_class(m)
        return [{"marking": str(m), "surface": c.surface, "parities": [list(v) for v in c.parities],
                 "blowup_clause": c.blowup_clause, "w_hat": str(build_w_hat(m)[0])}]
    if g == "fwpp":
        m = _marking(args.n, args.a, args.marking)
        return [{"marking": str(m), **build_fake_wpp(m).to_json()}]
    found = m_resolutions if g == "mres" else extremal_p_resolutions
    return [s.to_json() for s in found((args.delta, args.omega))]


def cmd_train(args) -> list[dict]:
    t = args.train_cmd
    if t == "dc":
        trains = [divisorial_train((args.n, args.a), args.count)]
    elif t == "flip":
        trains = [tr for s in extremal_p_resolutions((args.delta, args.omega)) for tr in flipping_trains(s, args.count)]
    elif t == "flipwahl":
        trains = [flip_train_over_wahl((args.n, args.a), args.count)]
    else:
        chain = _chain(args.chain)
        p = recognize_wahl(chain)
        if p is None:
            raise ValueError(f"{args.chain} is not a Wahl chain")
        trains = [markov_train(p, args.i, args.count)]
    return [{"train": str(tr), **tr.to_json()} for tr in trains]


def cmd_dio(args) -> list[dict]:
    if args.dio_cmd == "markov":
        return [markov_correspondence(t).to_json() for t in markov_triples(args.limit) if t.z >= 2]
    if args.dio_cmd == "pell":
        return [m.to_json() for m in pell_family(args.l, args.e, args.j, args.count)]
    s = parse_sing_chain(args.chain)
    return [{"chain": str(s), "relations_hold": degree8_relations(s)}]


def cmd_ec(args) -> list[dict]:
    if args.ec_cmd == "chain":
        s = parse_sing_chain(args.chain)
        return [{"slot": i, **r.to_json()} for i, r in enumerate(hec_from_chain(s, args.a_self))]
    if args.ec_cmd == "hom":
        h = hom_dimensions(parse_sing_chain(args.chain))
        return [{"row": j, "hom": row} for j, row in enumerate(h)]
    if args.ec_cmd == "marking":
        s = marking_bundle_chain(_marking(args.n, args.a, args.marking))
        return [{"chain": str(s), "slot": i, **r.to_json()} for i, r in enumerate(hec_from_chain(s, args.a_self))]
    return [realizable_rank_degree(args.n, args.degree, args.l).to_json()]


# --- atlas ----------------------------------------------------------------------


def atlas_record(n: int, a: int) -> dict:
    ms = classify_markings((n, a))
    return {
        "schema": ATLAS_SCHEMA,
        "n": n,
        "a": a,
        "chain": list(wahl_chain((n, a))),
        "markings": [m.to_json() for m in ms],
        "realizable_degrees": sorted(realizable_degrees((n, a))),
        "fake_wpp": [build_fake_wpp(m).to_json() for m in ms],
        "degree8": [{"marking": str(m), "surface": degree8_fiber_class(m).surface} for m in ms if m.degree == 8],
    }


def _dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def atlas_shard(max_n: int, shards: int, k: int) -> list[str]:
    """Serialized records of every coprime (n, a) with 2 <= n <= max_n and n = k mod shards."""
    return [
        _dumps(atlas_record(n, a))
        for n in range(2, max_n + 1)
        if n % shards == k
        for a in range(1, n)
        if gcd(n, a) == 1
    ]


def _write_jsonl(path: Path, recs: Iterable[dict | str]) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as fh:
            for r in recs:
                fh.write((r if isinstance(r, str) else _dumps(r)) + "\n")
    except OSError as exc:
        raise OSError(f"writing {path}: {exc.strerror or exc}") from exc


def cmd_atlas(args) -> list[dict]:
    if args.max_n < 2:
        raise ValueError("--max-n must be >= 2")
    if args.shards < 1:
        raise ValueError("--shards must be >= 1")
    out = Path(args.out)
    jobs = range(args.shards)
    workers = min(threads(), args.shards)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            lines = list(pool.map(atlas_shard, [args.max_n] * args.shards, [args.shards] * args.shards, jobs))
    else:
        lines = [atlas_shard(args.max_n, args.shards, k) for k in jobs]
    written = []
    for k, shard in enumerate(lines):
        path = out / f"atlas-{k:03d}-of-{args.shards:03d}.jsonl"
        _write_jsonl(path, shard)
        written.append({"shard": k, "records": len(shard), "path": str(path)})
    return written


# --- verify -----------------------------------------------------------------------


def cmd_verify(args) -> list[dict]:
    recs, failed = [], False
    for o in run_all(args.golden):
        recs.append({"check": f"golden {o.id}", "status": "PASS" if o.ok else "FAIL",
                     "detail": "" if o.ok else f"expected {o.expect}, got {o.got}"})
        failed |= not o.ok
    numbers = args.only or sorted(CHECKS)
    for k in numbers:
        c = run_check(k)
        recs.append({"check": f"{c.number} {c.title}", "status": "PASS" if c.ok else "FAIL", "detail": c.detail})
        failed |= not c.ok
    args.failed = failed
    return recs


# --- output -------------------------------------------------------------------------


def _cell(v: Any) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else str(v)


def emit(recs: Sequence[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        for r in recs:
            out.write(json.dumps(r, ensure_ascii=False) + "\n")
        return
    if not recs:
        return
    keys = list(dict.fromkeys(k for r in recs for k in r))
    rows = [[_cell(r.get(k)) for k in keys] for r in recs]
    widths = [max(len(k), *(len(row[i]) for row in rows)) for i, k in enumerate(keys)]
    out.write("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wahlkit", description="Wahl chains, markings and their numerics.")
    ap.add_argument("--version", action="version", version=f"wahlkit {__version__}")
    ap.add_argument("--format", choices=("json", "table"), default="json")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("eval", help="value of a chain")
    p.add_argument("chain")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("dual", help="dual chain of a chain or of m/q")
    p.add_argument("chain", help='"[3,4,2]" or "19/7"')
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("wahl", help="Wahl chains")
    s = p.add_subparsers(dest="wahl_cmd", required=True)
    q = s.add_parser("chain")
    q.add_argument("n", type=int)
    q.add_argument("a", type=int)
    q = s.add_parser("recognize")
    q.add_argument("chain")
    q = s.add_parser("gen")
    q.add_argument("--max-len", type=int, required=True)
    q.add_argument("--out")
    p.set_defaults(func=cmd_wahl)

    p = sub.add_parser("mark", help="markings")
    s = p.add_subparsers(dest="mark_cmd", required=True)
    for name in ("classify", "canonical", "degrees"):
        q = s.add_parser(name)
        q.add_argument("n", type=int)
        q.add_argument("a", type=int)
    q = s.add_parser("zerocf")
    q.add_argument("chain")
    q.add_argument("--max-weight", type=int, default=8)
    q = s.add_parser("cs")
    q.add_argument("delta", type=int)
    q.add_argument("omega", type=int)
    p.set_defaults(func=cmd_mark)

    p = sub.add_parser("geo", help="chains of singularities")
    s = p.add_subparsers(dest="geo_cmd", required=True)
    q = s.add_parser("what")
    q.add_argument("n", type=int)
    q.add_argument("a", type=int)
    q = s.add_parser("slide")
    q.add_argument("chain")
    q.add_argument("i", type=int)
    q.add_argument("direction", choices=("left", "right"))
    for name in ("what8", "fwpp"):
        q = s.add_parser(name)
        q.add_argument("n", type=int)
        q.add_argument("a", type=int)
        q.add_argument("--marking", required=True, help='e.g. "[u{6},7,1,2,2,2,2,2,2]"')
    for name in ("mres", "extremal"):
        q = s.add_parser(name)
        q.add_argument("delta", type=int)
        q.add_argument("omega", type=int)
    p.set_defaults(func=cmd_geo)

    p = sub.add_parser("train", help="Mori and Markov trains")
    s = p.add_subparsers(dest="train_cmd", required=True)
    for name in ("dc", "flipwahl"):
        q = s.add_parser(name)
        q.add_argument("n", type=int)
        q.add_argument("a", type=int)
        q.add_argument("--count", type=int, default=4)
    q = s.add_parser("flip")
    q.add_argument("delta", type=int)
    q.add_argument("omega", type=int)
    q.add_argument("--count", type=int, default=4)
    q = s.add_parser("markov")
    q.add_argument("chain")
    q.add_argument("i", type=int)
    q.add_argument("--count", type=int, default=4)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("dio", help="Diophantine side")
    s = p.add_subparsers(dest="dio_cmd", required=True)
    q = s.add_parser("markov")
    q.add_argument("--limit", type=int, default=1000)
    q = s.add_parser("pell")
    q.add_argument("l", type=int)
    q.add_argument("e", type=int)
    q.add_argument("j", type=int, nargs="?", default=0)
    q.add_argument("--count", type=int, default=8)
    q = s.add_parser("deg8")
    q.add_argument("chain", help='e.g. "[5/2]-(1)-(1)-[3/1]-(1)"')
    p.set_defaults(func=cmd_dio)

    p = sub.add_parser("ec", help="exceptional bundle numerics")
    s = p.add_subparsers(dest="ec_cmd", required=True)
    q = s.add_parser("chain")
    q.add_argument("chain", help='e.g. "(0)-[5/2]"')
    q.add_argument("--a-self", type=int)
    q = s.add_parser("hom")
    q.add_argument("chain")
    q = s.add_parser("marking")
    q.add_argument("n", type=int)
    q.add_argument("a", type=int)
    q.add_argument("--marking", required=True)
    q.add_argument("--a-self", type=int, default=1)
    q = s.add_parser("realizable")
    q.add_argument("n", type=int)
    q.add_argument("degree", type=int)
    q.add_argument("l", type=int)
    p.set_defaults(func=cmd_ec)

    p = sub.add_parser("atlas", help="JSON Lines atlas of every (n, a)")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("verify", help="golden replay and acceptance suite")
    p.add_argument("--only", type=int, nargs="+", choices=sorted(CHECKS), metavar="K")
    p.add_argument("--golden", help="replay this golden file instead of the shipped one")
    p.set_defaults(func=cmd_verify)
    _format_everywhere(ap)
    return ap


def _format_everywhere(parser: argparse.ArgumentParser) -> None:
    """Accept --format after the subcommand too; SUPPRESS keeps the top-level value when absent."""
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for child in action.choices.values():
                child.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
                _format_everywhere(child)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.failed = False
    try:
        recs = args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_BUG
    except Failed as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAILED
    except (WahlkitError, ValueError, IndexError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAILED
    emit(recs, args.format)
    return EXIT_FAILED if args.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
