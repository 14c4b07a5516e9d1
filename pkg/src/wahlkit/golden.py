"""Worked examples shipped with the package, replayed against the library.

Each line of ``data/golden/examples.jsonl`` is ``{"id", "op", "args", "expect"}``;
records with a ``printed`` value carry the displayed form of a corrected example.
Unordered results are compared sorted.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Callable, NamedTuple

from .bundles import fiber_type_degrees, realizable_rank_degree
from .diophantine import markov_correspondence, pell_family, pell_seeds
from .geometry import (
    SingChain,
    build_fake_wpp,
    build_w_hat,
    degree8_fiber_class,
    extremal_p_resolutions,
    m_resolutions,
    slide,
)
from .marking import canonical_markings, classify_markings, marking_from_marked, pair_of_chain
from .trains import divisorial_train, flip_train_over_wahl, flipping_trains, markov_train
from .wahl import WahlPair, wahl_chain


class Outcome(NamedTuple):
    id: str
    ok: bool
    got: Any
    expect: Any


def _pair(args: dict) -> WahlPair:
    if "chain" in args:
        return pair_of_chain(args["chain"])
    return WahlPair(args["n"], args["a"]).check()


def _markings(args: dict) -> list:
    ms = classify_markings(_pair(args))
    if "degree" in args:
        ms = [m for m in ms if m.degree == args["degree"]]
    if "min_degree" in args:
        ms = [m for m in ms if m.degree >= args["min_degree"]]
    return sorted([str(m), m.degree] for m in ms)


def _marking(args: dict):
    return marking_from_marked(args["chain"], args["marked"], args["central"])


def _wagons(train) -> list[str]:
    return [str(w) for w in train.wagons]


def _fake_wpp(args: dict) -> dict:
    j = build_fake_wpp(_marking(args)).to_json()
    return {k: j[k] for k in ("weights", "d", "q1", "q1_inv", "q2", "q2_inv")}


def _pell(args: dict, k: int):
    return pell_family(args["l"], args["e"], args.get("j", 0), count=k + 1)[k]


def _special_canonical(x: int):
    """Canonical marking of [2,...,2,x+4] (x twos) with central mark e1."""
    return canonical_markings(pair_of_chain((2,) * x + (x + 4,)))[0]


def _realizable(args: dict) -> dict:
    v = realizable_rank_degree(args["n"], args["degree"], args["l"])
    out = {"verdict": v.to_json()["verdict"]}
    if v.witness and "chain" in v.witness:
        out["chain"] = v.witness["chain"]
    return out


OPS: dict[str, Callable[[dict], Any]] = {
    "marking_count": lambda a: len(classify_markings(_pair(a))),
    "markings": _markings,
    "wahl_chain": lambda a: list(wahl_chain(_pair(a))),
    "canonical": lambda a: [str(m) for m in canonical_markings(_pair(a))],
    "slide": lambda a: list(slide(a["chain"], a["i"], a["direction"])[1]),
    "flipping_trains": lambda a: [
        _wagons(t) for t in flipping_trains(SingChain(tuple(map(tuple, a["sings"])), tuple(a["cs"])), a["count"])
    ],
    "divisorial_train": lambda a: _wagons(divisorial_train((a["n"], a["a"]), a["count"])),
    "flip_train": lambda a: _wagons(flip_train_over_wahl((a["n"], a["a"]), a["count"])),
    "markov_train": lambda a: _wagons(markov_train(pair_of_chain(a["chain"]), a["i"], a["count"])),
    "w_hat_canonical": lambda a: str(build_w_hat(_special_canonical(a["x"]))[0]),
    "w_hat": lambda a: str(build_w_hat(_marking(a))[0]),
    "fake_wpp": _fake_wpp,
    "m_resolutions": lambda a: sorted(str(s) for s in m_resolutions((a["delta"], a["omega"]))),
    "extremal": lambda a: sorted(str(s) for s in extremal_p_resolutions((a["delta"], a["omega"]))),
    "degree8_class": lambda a: degree8_fiber_class(_marking(a)).surface,
    "markov": lambda a: {
        k: v for k, v in markov_correspondence(tuple(a["triple"])).to_json().items() if k in ("n", "a", "chain")
    },
    "pell_seeds": lambda a: {
        "n": list(pell_seeds()[(a["l"], a["e"], a.get("j", 0))].n),
        "d": list(pell_seeds()[(a["l"], a["e"], a.get("j", 0))].d_printed),
    },
    "pell_chain": lambda a: list(_pell(a, a["k"]).chain),
    "pell_markings": lambda a: [str(m) for m in _pell(a, a["k"]).markings],
    "fiber_type_degrees": lambda a: list(fiber_type_degrees(a["n"], a["a"], a["d"])),
    "realizable": _realizable,
}


def _normalize(v: Any) -> Any:
    if isinstance(v, list) and v and all(isinstance(x, str) for x in v):
        return sorted(v)
    return v


def load_examples(path: str | Path | None = None) -> list[dict]:
    """Records of the shipped golden file, or of ``path``."""
    if path is None:
        text = resources.files("wahlkit").joinpath("data/golden/examples.jsonl").read_text()
    else:
        text = Path(path).read_text()
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def run_example(rec: dict) -> Outcome:
    got = OPS[rec["op"]](rec["args"])
    order_free = rec["op"] in ("m_resolutions", "extremal")
    expect = rec["expect"]
    ok = (_normalize(got) == _normalize(expect)) if order_free else got == expect
    return Outcome(rec["id"], ok, got, expect)


def run_all(path: str | Path | None = None) -> list[Outcome]:
    return [run_example(r) for r in load_examples(path)]
