"""Zero continued fractions with weights, and del Pezzo markings of Wahl chains.

The one-entry sequence [0] counts as a zero continued fraction: it has value
0, it is the length-1 term of the Catalan count, and it is needed for the
markings of short chains such as [5,2] and for the fiber type of [4].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

from .cfkernel import CQS, Chain, blow_up_step, format_chain
from .errors import ExcludedChain, InvariantViolation
from .wahl import WahlPair, recognize_wahl, wahl_chain, wahl_history

MAX_WEIGHT = 8


@dataclass(frozen=True, order=True)
class ZeroCFAssignment:
    """Decrements turning ``base`` into the zero continued fraction ``zero_cf``.

    ``weight`` is the sum of decrements minus one, so the empty base has
    weight -1; callers treat that as an absent side.
    """

    weight: int
    base: Chain
    zero_cf: Chain

    @property
    def decrements(self) -> dict[int, int]:
        return {i: f - k for i, (f, k) in enumerate(zip(self.base, self.zero_cf), start=1) if f != k}

    @property
    def u(self) -> int:
        """Length of the [1,2,...,2,1] seed minus one; 0 for [0]."""
        return 3 * (len(self.zero_cf) - 1) - sum(self.zero_cf)

    def sort_key(self) -> tuple:
        d = self.decrements
        return (self.weight, tuple(d), tuple(d.values()))

    def to_json(self) -> dict:
        return {"base": list(self.base), "zero_cf": list(self.zero_cf), "weight": self.weight}


def _zero_cfs_below(f: Chain, budget: int) -> list[Chain]:
    """Zero CFs k of length >= 2 with 1 <= k <= f and sum(f - k) <= budget."""
    s = len(f)
    if s < 2 or budget < 0:
        return []
    # cheapest way to place a 1 somewhere in positions 1..j (0-based)
    cheapest = [0] * s
    best = None
    for i in range(1, s):
        best = f[i] - 1 if best is None else min(best, f[i] - 1)
        cheapest[i] = best
    out: list[Chain] = []
    k = [0] * s

    def rec(j: int, num: int, den: int, rem: int) -> None:
        # num/den is the value of k[j+1:]
        if j == 0:
            if den % num == 0:
                k0 = den // num
                if 1 <= k0 <= f[0] and f[0] - k0 <= rem:
                    k[0] = k0
                    out.append(tuple(k))
            return
        # a tail above 1 can only come down through a 1 further left
        if num > den and cheapest[j] > rem:
            return
        fj = f[j]
        for kj in range(fj, max(1, fj - rem) - 1, -1):
            top = kj * num - den
            if top <= 0:
                break
            k[j] = kj
            rec(j - 1, top, num, rem - (fj - kj))

    last = f[-1]
    for kl in range(last, max(1, last - budget) - 1, -1):
        k[-1] = kl
        rec(s - 2, kl, 1, budget - (last - kl))
    return out


@lru_cache(maxsize=200_000)
def _assignments(base: Chain, max_weight: int) -> tuple[ZeroCFAssignment, ...]:
    if not base:
        return (ZeroCFAssignment(-1, (), ()),)
    found = []
    if len(base) == 1:
        if base[0] - 1 <= max_weight:
            found.append(ZeroCFAssignment(base[0] - 1, base, (0,)))
    else:
        for k in _zero_cfs_below(base, max_weight + 1):
            found.append(ZeroCFAssignment(sum(base) - sum(k) - 1, base, k))
    found.sort(key=ZeroCFAssignment.sort_key)
    return tuple(found)


def enumerate_zero_cf_assignments(base: Sequence[int], max_weight: int = MAX_WEIGHT) -> list[ZeroCFAssignment]:
    """All ways to decrement ``base`` into a zero CF, of weight <= max_weight."""
    base = tuple(base)
    if base and min(base) < 2:
        raise ValueError(f"base must have entries >= 2, got {list(base)}")
    return list(_assignments(base, max_weight))


def zero_cfs(length: int) -> set[Chain]:
    """All zero continued fractions of the given length, by blowing up [1,1]."""
    if length == 1:
        return {(0,)}
    level = {(1, 1)}
    for s in range(2, length):
        level = {blow_up_step(c, i) for c in level for i in range(1, s + 2)}
    return level


def count_zero_cfs(length: int) -> int:
    n = len(zero_cfs(length))
    expected = comb(2 * (length - 1), length - 1) // length
    if n != expected:
        raise InvariantViolation(f"{n} zero CFs of length {length}, Catalan count is {expected}")
    return n


# --- markings ------------------------------------------------------------------


@dataclass(frozen=True)
class Marking:
    pair: WahlPair
    chain: Chain
    kind: str  # "I" or "II"
    central: int  # 1-based
    left: ZeroCFAssignment | None
    right: ZeroCFAssignment | None
    degree: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree", 9 - sum(self.weights))

    @property
    def sides(self) -> tuple[ZeroCFAssignment, ...]:
        return tuple(s for s in (self.left, self.right) if s is not None)

    @property
    def weights(self) -> tuple[int, ...]:
        # an empty side (only for [4]) contributes nothing
        return tuple(max(s.weight, 0) for s in self.sides)

    @property
    def central_mark(self) -> int:
        return self.chain[self.central - 1]

    @property
    def us(self) -> tuple[int, ...]:
        return tuple(s.u for s in self.sides if s.base)

    @property
    def marked(self) -> Chain:
        left = self.left.zero_cf if self.left else ()
        right = self.right.zero_cf if self.right else ()
        return (*left, self.central_mark, *right)

    @property
    def decrements(self) -> dict[int, int]:
        return {i: e - k for i, (e, k) in enumerate(zip(self.chain, self.marked), start=1) if e != k}

    @property
    def key(self) -> tuple:
        return (self.kind, self.central, self.marked)

    def __str__(self) -> str:
        return format_chain(self.marked, central=self.central)

    def to_json(self) -> dict:
        return {
            "n": self.pair.n,
            "a": self.pair.a,
            "chain": list(self.chain),
            "kind": self.kind,
            "degree": self.degree,
            "central_index": self.central,
            "marking": str(self),
            "left": list(self.left.zero_cf) if self.left else None,
            "right": list(self.right.zero_cf) if self.right else None,
            "weights": list(self.weights),
        }

    def check(self) -> "Marking":
        """Central-mark law and the degree >= 5 restrictions."""
        if self.chain == (4,):
            return self
        d, ell = self.central_mark, self.degree
        if self.kind == "I":
            (u,) = self.us
            if d != ell + u - 3:
                raise InvariantViolation(f"{self}: central mark {d} != {ell}+{u}-3")
            if ell >= 5 and d < 3 and self.marked not in ((0, 2), (2, 0)):
                raise InvariantViolation(f"{self}: degree {ell} type I with central mark {d}")
        else:
            u1, u2 = self.us
            if d != ell + u1 + u2 - 1:
                raise InvariantViolation(f"{self}: central mark {d} != {ell}+{u1}+{u2}-1")
            if ell >= 5 and d < 5:
                raise InvariantViolation(f"{self}: degree {ell} type II with central mark {d}")
        return self


def _pair_and_chain(p) -> tuple[WahlPair, Chain]:
    p = WahlPair(*p).check()
    return p, wahl_chain(p)


def pair_of_chain(chain: Sequence[int]) -> WahlPair:
    p = recognize_wahl(tuple(chain))
    if p is None:
        raise ValueError(f"{list(chain)} is not a Wahl chain")
    return p


def classify_markings(p: WahlPair | tuple[int, int]) -> list[Marking]:
    """Every marking of every type and degree 1..9, highest degree first."""
    p, e = _pair_and_chain(p)
    r = len(e)
    out: list[Marking] = []
    if r == 1:
        empty = _assignments((), MAX_WEIGHT)[0]
        out.append(Marking(p, e, "I", 1, empty, None))
    else:
        for z in _assignments(e[1:], MAX_WEIGHT):
            out.append(Marking(p, e, "I", 1, None, z))
        for z in _assignments(e[:-1], MAX_WEIGHT):
            out.append(Marking(p, e, "I", r, z, None))
        for i in range(2, r):
            lefts = _assignments(e[: i - 1], MAX_WEIGHT)
            if not lefts:
                continue
            rights = _assignments(e[i:], MAX_WEIGHT - lefts[0].weight)
            for zl in lefts:
                for zr in rights:
                    if zl.weight + zr.weight > MAX_WEIGHT:
                        break
                    out.append(Marking(p, e, "II", i, zl, zr))
    for m in out:
        m.check()
    out.sort(key=lambda m: (-m.degree, m.kind, m.central, m.marked))
    if sum(1 for m in out if m.degree == 9) > 1:
        raise InvariantViolation(f"{tuple(p)} has more than one degree-9 marking")
    return out


def markings_by_degree(p) -> dict[int, list[Marking]]:
    res: dict[int, list[Marking]] = {}
    for m in classify_markings(p):
        res.setdefault(m.degree, []).append(m)
    return res


def marking_from_marked(chain: Sequence[int], marked: Sequence[int], central: int) -> Marking:
    """Build a Marking from the marked list (chain entries minus marks) with the central entry at ``central``."""
    chain, marked = tuple(chain), tuple(marked)
    p = pair_of_chain(chain)
    r = len(chain)
    if len(marked) != r or marked[central - 1] != chain[central - 1]:
        raise ValueError(f"{list(marked)} does not mark {list(chain)} at {central}")

    def side(lo: int, hi: int) -> ZeroCFAssignment:
        base, k = chain[lo:hi], marked[lo:hi]
        if not base:
            return ZeroCFAssignment(-1, (), ())
        return ZeroCFAssignment(sum(base) - sum(k) - 1, base, k)

    if r == 1:
        m = Marking(p, chain, "I", 1, side(0, 0), None)
    elif central == 1:
        m = Marking(p, chain, "I", 1, None, side(1, r))
    elif central == r:
        m = Marking(p, chain, "I", r, side(0, r - 1), None)
    else:
        m = Marking(p, chain, "II", central, side(0, central - 1), side(central, r))
    for s in m.sides:
        if s.base and s.zero_cf not in {z.zero_cf for z in _assignments(s.base, max(s.weight, 0))}:
            raise ValueError(f"{list(s.zero_cf)} is not a zero CF below {list(s.base)}")
    return m


def _special_form(e: Chain) -> bool:
    """[2,...,2,x+4] with x >= 2 twos."""
    x = len(e) - 1
    return x >= 2 and all(v == 2 for v in e[:-1]) and e[-1] == x + 4


def canonical_markings(p: WahlPair | tuple[int, int]) -> tuple[Marking, Marking]:
    """The two type I markings built from the Wahl-algorithm center.

    Returns (central mark e1, central mark er).  When the step after the
    center lands on the central end the construction has no room for it and
    the resulting marking has degree 5 instead of 4.
    """
    p, e = _pair_and_chain(p)
    r = len(e)
    if r <= 2:
        raise ExcludedChain(f"{list(e)} has no canonical markings")
    if _special_form(e):
        x = r - 1
        first = (2,) * (r - 2) + (1, x - 1)
        second = (1, *(2,) * (r - 3), 1, e[-1])
        return (marking_from_marked(e, first, 1), marking_from_marked(e, second, r))
    if _special_form(e[::-1]):
        rev = e[::-1]
        a, b = canonical_markings(pair_of_chain(rev))
        return (
            marking_from_marked(e, b.marked[::-1], 1),
            marking_from_marked(e, a.marked[::-1], r),
        )
    moves = wahl_history(e)
    center = 1 + moves.count("L")
    step = center + 1 if moves[0] == "R" else center - 1
    results = []
    for central, far in ((1, r), (r, 1)):
        dec = [0] * (r + 1)
        dec[center] += 4
        if step != central:
            dec[step] += 1
        dec[far] += 1
        marked = tuple(v - dec[i] for i, v in enumerate(e, start=1))
        results.append(marking_from_marked(e, marked, central))
    return results[0], results[1]


def realizable_degrees(p: WahlPair | tuple[int, int]) -> set[int]:
    """Degrees l such that the chain is del Pezzo of degree <= l."""
    p, e = _pair_and_chain(p)
    if e == (4,):
        return set(range(1, 10))
    top = max((m.degree for m in classify_markings(p)), default=0)
    return set(range(1, top + 1))


def fiber_type_markings(p: WahlPair | tuple[int, int]) -> list[tuple[ZeroCFAssignment, int]]:
    """Zero CFs of weight <= 8 on the whole chain, with degree 8 - weight."""
    p, e = _pair_and_chain(p)
    out = [(z, 8 - z.weight) for z in _assignments(e, MAX_WEIGHT)]
    for z, deg in out:
        if deg > 5 or (deg == 5 and e != (4,)):
            raise InvariantViolation(f"{list(e)} has fiber-type degree {deg}")
    return out


def christophersen_stevens(c: CQS | tuple[int, int]) -> list[Chain]:
    """Zero CFs [k1..ks] with k_i <= b_i, where Delta/(Delta-Omega) = [b1..bs]."""
    c = CQS(*c).check()
    b = c.dual_chain
    if len(b) == 1:
        return [(0,)]
    found = _zero_cfs_below(b, sum(b) - len(b))
    return sorted(found)
