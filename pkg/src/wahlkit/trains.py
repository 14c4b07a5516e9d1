"""Mori trains (divisorial and flipping) and Markov trains of Wahl chains.

Wagons come from the recursion n_{k+1} = delta n_k - n_{k-1} (same for a),
started from two seed wagons.  Nothing from the recursion is trusted: every
wagon gets its bar from contraction arithmetic, and every consecutive pair is
re-checked by blowing down W_k + [1] + W_{k+1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .cfkernel import CQS, Chain, evaluate, format_chain, is_valid, minimal_model
from .errors import (
    AmbiguousBar,
    NoBar,
    NotExtremal,
    NotMarkovMutation,
    VerificationFailed,
)
from .geometry import SingChain, slide, slide_numerics
from .wahl import SMOOTH, WahlPair


@dataclass(frozen=True)
class Wagon:
    pair: WahlPair
    bar: int | None = None

    @property
    def chain(self) -> Chain:
        return self.pair.chain

    def __str__(self) -> str:
        return format_chain(self.chain, bar=self.bar)

    def to_json(self) -> dict:
        return {"n": self.pair.n, "a": self.pair.a, "chain": list(self.chain), "bar": self.bar}


@dataclass(frozen=True)
class MoriTrain:
    kind: str  # "DC", "Flip" or "Markov"
    delta: int
    wagons: tuple[Wagon, ...]
    base: CQS | None = None  # None for Markov trains, whose curve does not contract
    # per consecutive pair: "forward" if it contracts to the base chain, else "reversed"
    orientations: tuple[str, ...] = ()

    def __str__(self) -> str:
        return "-".join(str(w) for w in self.wagons)

    @property
    def pairs(self) -> list[WahlPair]:
        return [w.pair for w in self.wagons]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "delta": self.delta,
            "base": None if self.base is None else list(self.base),
            "wagons": [w.to_json() for w in self.wagons],
            "orientations": list(self.orientations),
        }


def _recursion(w0: WahlPair, w1: WahlPair, delta: int, count: int) -> list[WahlPair]:
    out = [w0, w1]
    while len(out) < count:
        (n0, a0), (n1, a1) = out[-2], out[-1]
        out.append(WahlPair(delta * n1 - n0, delta * a1 - a0))
    return out[:count]


def _orientation(chain: Sequence[int], base: CQS) -> str | None:
    if not is_valid(chain):
        return None
    m = minimal_model(chain)
    if m == base.chain:
        return "forward"
    if m == base.chain[::-1]:
        return "reversed"
    return None


def find_bar(wagon: Sequence[int], base: CQS | tuple[int, int]) -> int:
    """The 1-based i with [.., e_i - 1, ..] contracting to the base chain or its reverse."""
    base = CQS(*base).check()
    e = tuple(wagon)
    hits = []
    for i in range(len(e)):
        dec = (*e[:i], e[i] - 1, *e[i + 1 :])
        if _orientation(dec, base) is not None:
            hits.append(i + 1)
    if not hits:
        raise NoBar(f"no entry of {list(e)} contracts to 1/{base.delta}(1,{base.omega}) when decremented")
    if len(hits) > 1:
        raise AmbiguousBar(f"entries {hits} of {list(e)} all contract to 1/{base.delta}(1,{base.omega})")
    return hits[0]


def _slide_bar(chain: Sequence[int], prev: WahlPair) -> int | None:
    """Position whose left slide is ``prev``: the prefix before it reads n/a of prev."""
    if prev.is_smooth:
        return 1
    target = Fraction(prev.n, prev.a)
    for i in range(2, len(chain) + 1):
        if evaluate(chain[: i - 1]) == target:
            return i
    return None


def _first_wagon(w0: WahlPair, base: CQS, delta: int) -> WahlPair | None:
    """The Wahl pair W with W0 - W contracting to ``base`` and whose bar slides left onto W0.

    Searched smallest n first up to delta * n0 + sqrt(Delta), which covers the
    larger root of Delta = n0^2 + n^2 - delta n0 n.
    """
    for n in range(2, delta * w0.n + isqrt(base.delta) + 2):
        for a in range(1, n):
            if gcd(n, a) != 1:
                continue
            w = WahlPair(n, a)
            chain = w.chain
            if _orientation((*w0.chain, 1, *chain), base) is None:
                continue
            try:
                bar = find_bar(chain, base)
            except (NoBar, AmbiguousBar):
                continue
            if _slide_bar(chain, w0) == bar:
                return w
    return None


def _assemble(kind: str, pairs: list[WahlPair], base: CQS, delta: int) -> MoriTrain:
    """Attach bars and check every wagon and pair; the first wagon carries no bar."""
    wagons = [Wagon(pairs[0])]
    orientations = []
    for k in range(1, len(pairs)):
        prev, cur = pairs[k - 1], pairs[k]
        if cur.is_smooth:
            raise VerificationFailed(f"{kind} train produced the smooth point as wagon {k}")
        cur.check()
        bar = find_bar(cur.chain, base)
        if _slide_bar(cur.chain, prev) != bar:
            raise VerificationFailed(f"bar of wagon {k} in the {kind} train does not slide back onto wagon {k - 1}")
        o = _orientation((*prev.chain, 1, *cur.chain), base)
        if o is None:
            raise VerificationFailed(f"wagons {k - 1},{k} of the {kind} train do not contract to {tuple(base)}")
        if prev.n * cur.a - cur.n * prev.a != delta:
            raise VerificationFailed(f"wagons {k - 1},{k} of the {kind} train break the determinant {delta}")
        if prev.n**2 + cur.n**2 - delta * prev.n * cur.n != base.delta:
            raise VerificationFailed(f"wagons {k - 1},{k} of the {kind} train miss Delta = {base.delta}")
        wagons.append(Wagon(cur, bar))
        orientations.append(o)
    return MoriTrain(kind, delta, tuple(wagons), base, tuple(orientations))


def divisorial_train(p: WahlPair | tuple[int, int], count: int) -> MoriTrain:
    """Train of divisorial contractions over the Wahl singularity of ``p`` = (delta, a)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    w0 = WahlPair(*p).check()
    if w0.is_smooth:
        raise ValueError("the smooth point carries no divisorial train")
    delta = w0.n
    base = CQS(delta * delta, delta * w0.a - 1)
    w1 = _first_wagon(w0, base, delta)
    if w1 is None:
        raise VerificationFailed(f"no first wagon over {tuple(w0)}")
    return _assemble("DC", _recursion(w0, w1, delta, count), base, delta)


def flip_train_over_wahl(p: WahlPair | tuple[int, int], count: int) -> MoriTrain:
    """Train of flips over the Wahl singularity of ``p``, starting from the empty wagon."""
    if count < 1:
        raise ValueError("count must be >= 1")
    w = WahlPair(*p).check()
    delta = w.n
    base = CQS(delta * delta, delta * w.a - 1)
    w1 = _first_wagon(SMOOTH, base, delta)
    if w1 is None:
        raise VerificationFailed(f"no first flipping wagon over {tuple(w)}")
    return _assemble("Flip", _recursion(SMOOTH, w1, delta, count), base, delta)


def flipping_trains(extremal: SingChain, count: int) -> list[MoriTrain]:
    """One train per distinct slot of an extremal P-resolution."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if len(extremal.cs) != 1:
        raise NotExtremal(f"{extremal} has {len(extremal.cs)} curves")
    if extremal.k_intersections()[0] <= 0:
        raise NotExtremal(f"{extremal} has K.Gamma <= 0")
    base = extremal.contraction()
    (delta,) = extremal.deltas()
    slots = []
    for s in extremal.sings:
        if s not in slots and s.reversed() not in slots:
            slots.append(s)
    trains = []
    for s in slots:
        # the slot may sit in the train with either orientation
        for w0 in dict.fromkeys((s, s.reversed())):
            w1 = _first_wagon(w0, base, delta)
            if w1 is not None:
                trains.append(_assemble("Flip", _recursion(w0, w1, delta, count), base, delta))
                break
        else:
            raise VerificationFailed(f"no first wagon for slot {tuple(s)} of {extremal}")
    trains.sort(key=lambda t: t.pairs)
    return trains


def markov_train(p: WahlPair | tuple[int, int], i: int, count: int) -> MoriTrain:
    """Iterated right slides at the bar, for a slide whose curve has positive square."""
    if count < 1:
        raise ValueError("count must be >= 1")
    p = WahlPair(*p).check()
    num = slide_numerics(p, i)
    if num.gamma_sq < 0:
        raise NotMarkovMutation(f"Gamma^2 = {num.gamma_sq} < 0 at position {i} of {list(p.chain)}")
    w0 = WahlPair(num.n1, num.a1) if num.n1 > 1 else SMOOTH
    pairs = _recursion(w0, p, num.delta, count)
    wagons = [Wagon(pairs[0])]
    for k in range(1, len(pairs)):
        prev, cur = pairs[k - 1], pairs[k].check()
        bar = _slide_bar(cur.chain, prev)
        if bar is None:
            raise VerificationFailed(f"wagon {k} of the Markov train does not slide back onto wagon {k - 1}")
        if k == 1 and bar != i:
            raise VerificationFailed(f"first Markov wagon has its bar at {bar}, not {i}")
        if k > 1:
            # the previous wagon's right slide at its bar must be this wagon
            new, _ = slide(wagons[-1].chain, wagons[-1].bar, "right")
            if new != cur:
                raise VerificationFailed(f"wagon {k} of the Markov train is not a slide of wagon {k - 1}")
        if prev.n * cur.a - cur.n * prev.a != num.delta:
            raise VerificationFailed(f"wagons {k - 1},{k} of the Markov train break the determinant {num.delta}")
        wagons.append(Wagon(cur, bar))
    return MoriTrain("Markov", num.delta, tuple(wagons))


__all__ = [
    "MoriTrain",
    "Wagon",
    "divisorial_train",
    "find_bar",
    "flip_train_over_wahl",
    "flipping_trains",
    "markov_train",
]
