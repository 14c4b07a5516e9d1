"""Markov triples, Markov-type equations, degree-8 relations and Pell families of Wahl chains."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from importlib import resources
from typing import Iterator, NamedTuple

from .cfkernel import Chain, mod_inverse
from .errors import IdentityViolation, InvariantViolation, UnknownFamily
from .geometry import FakeWPP, SingChain, build_fake_wpp, hodge_bound_holds
from .marking import Marking, classify_markings, marking_from_marked
from .wahl import WahlPair, wahl_chain

# --- Markov triples ------------------------------------------------------------


class MarkovTriple(NamedTuple):
    x: int
    y: int
    z: int

    def check(self) -> "MarkovTriple":
        x, y, z = self
        if not 0 < x <= y <= z:
            raise ValueError(f"{tuple(self)} is not normalized")
        if x * x + y * y + z * z != 3 * x * y * z:
            raise IdentityViolation(f"{tuple(self)} is not a Markov triple")
        return self


def markov_triples(limit: int) -> Iterator[MarkovTriple]:
    """Every Markov triple with z <= limit, ordered by (z, y, x)."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    seen = {(1, 1, 1)}
    stack = [(1, 1, 1)]
    while stack:
        t = stack.pop()
        for k in range(3):
            rest = t[:k] + t[k + 1 :]
            new = tuple(sorted((*rest, 3 * rest[0] * rest[1] - t[k])))
            if new[2] <= limit and new not in seen:
                seen.add(new)
                stack.append(new)
    for t in sorted(seen, key=lambda t: (t[2], t[1], t[0])):
        yield MarkovTriple(*t).check()


@dataclass(frozen=True)
class MarkovCorrespondence:
    triple: MarkovTriple
    pair: WahlPair
    marking: Marking
    fake_wpp: FakeWPP

    def to_json(self) -> dict:
        return {
            "triple": list(self.triple),
            "n": self.pair.n,
            "a": self.pair.a,
            "chain": list(self.pair.chain),
            "marking": str(self.marking),
            "weights": list(self.fake_wpp.weights),
        }


def markov_pair(t: MarkovTriple | tuple[int, int, int]) -> WahlPair:
    """(n, a) with n = z and the degree-9 side weight m1 = x^2.

    From m1 + m2 = n(m1 a - n q1^-1) with m1 = x^2, m2 = y^2:
    (x^2 + y^2)/z = 3xy - z, so x^2 a = 3xy (mod z), i.e. a = 3y/x (mod z).
    """
    x, y, z = MarkovTriple(*t).check()
    if z < 2:
        raise ValueError("the triple (1,1,1) has no Wahl singularity")
    a = 3 * y * mod_inverse(x, z) % z
    return WahlPair(z, a).check()


def markov_correspondence(t: MarkovTriple | tuple[int, int, int]) -> MarkovCorrespondence:
    t = MarkovTriple(*t).check()
    p = markov_pair(t)
    nines = [m for m in classify_markings(p) if m.degree == 9]
    if len(nines) != 1:
        raise InvariantViolation(f"{tuple(p)} from {tuple(t)} has {len(nines)} degree-9 markings")
    (m,) = nines
    f = build_fake_wpp(m)
    if sorted(f.weights) != sorted((t.z**2, t.x**2, t.y**2)):
        raise InvariantViolation(f"{tuple(p)}: fake WPP weights {f.weights} do not match {tuple(t)}")
    return MarkovCorrespondence(t, p, m, f)


# --- Markov-type equations --------------------------------------------------------


def t_singularity_degree(d1: int, d2: int) -> int:
    return 11 - d1 - d2


def t_singularity_equation(n: int, n1: int, n2: int, d1: int, d2: int) -> bool:
    """(n^2 + d1 n1^2 + d2 n2^2)^2 == (11 - d1 - d2) d1 d2 n^2 n1^2 n2^2."""
    if min(n, n1, n2, d1, d2) < 1 or d1 + d2 > 10:
        raise ValueError("need positive inputs with d1 + d2 <= 10")
    lhs = (n * n + d1 * n1 * n1 + d2 * n2 * n2) ** 2
    return lhs == t_singularity_degree(d1, d2) * d1 * d2 * (n * n1 * n2) ** 2


def square_filter(d1: int, d2: int) -> bool:
    """Solutions need (11 - d1 - d2) d1 d2 to be a perfect square."""
    v = t_singularity_degree(d1, d2) * d1 * d2
    return v >= 0 and isqrt(v) ** 2 == v


def degree8_relations(s: SingChain) -> bool:
    """Both identities of a [n0]-(1)-[n1]-(1)-[n2]-(1)-[n3] chain.

    A smooth slot reads a = 0 as the left member of its pair (P0, P2) and
    a = 1 as the right member (P1, P3), which keeps n_{i-1} a_i - n_i a_{i-1}
    equal to the chain's delta.
    """
    if len(s.sings) != 4 or tuple(s.cs) != (1, 1, 1):
        raise ValueError(f"{s} is not of the form [n0]-(1)-[n1]-(1)-[n2]-(1)-[n3]")
    ns = [p.n for p in s.sings]
    as_ = [p.a if not p.is_smooth else i % 2 for i, p in enumerate(s.sings)]
    d = ns[0] * as_[1] - ns[1] * as_[0]
    d2 = ns[2] * as_[3] - ns[3] * as_[2]
    first = d * ns[0] * ns[1] + d2 * ns[2] * ns[3] == sum(n * n for n in ns)
    second = d * ns[0] * as_[1] + d2 * as_[2] * ns[3] == sum(n * a for n, a in zip(ns, as_))
    return first and second


# --- Hodge index bounds ---------------------------------------------------------------


def hodge_inequality(n: int, m1: int, m2: int, degree: int) -> bool:
    """(n^2 + m1 + m2)^2 >= degree n^2 m1 m2."""
    return (n * n + m1 + m2) ** 2 >= degree * n * n * m1 * m2


def hodge_inequality_type1(n: int, a: int, degree: int) -> bool:
    """(n + a)^2 >= degree (an - 1); the type-II bound with weights (1, an - 1)."""
    return (n + a) ** 2 >= degree * (a * n - 1)


def hodge_bound(m: Marking) -> bool:
    return hodge_bound_holds(build_fake_wpp(m), m.degree)


def pell_norm(n: int, d: int, degree: int) -> int:
    """d^2 + degree n d + degree n^2."""
    return d * d + degree * n * d + degree * n * n


# --- Pell families -------------------------------------------------------------------


class Shape(NamedTuple):
    lead_shift: int
    middle: tuple[int, ...]
    block: tuple[int, ...]
    block_shift: int
    tail: tuple[int, ...]

    def build(self, lead: int, k: int) -> Chain:
        if k + self.lead_shift < 0 or k < self.block_shift:
            raise ValueError(f"shape undefined at k = {k}")
        return (
            *(lead,) * (k + self.lead_shift),
            *self.middle,
            *self.block * (k - self.block_shift),
            *self.tail,
        )


class PellSeed(NamedTuple):
    degree: int
    e: int
    j: int
    n: tuple[int, int]
    d: tuple[int, int]  # effective seeds
    d_printed: tuple[int, int]  # as displayed; differs from d where d(0) was corrected
    k_min: int
    chain: Shape
    markings: tuple[Shape, ...]


def _shape(obj: dict) -> Shape:
    return Shape(obj["lead_shift"], tuple(obj["middle"]), tuple(obj["block"]), obj["block_shift"], tuple(obj["tail"]))


@lru_cache(maxsize=None)
def pell_seeds() -> dict[tuple[int, int, int], PellSeed]:
    raw = json.loads(resources.files("wahlkit").joinpath("data/pell_families.json").read_text())
    out = {}
    for f in raw["families"]:
        key = (f["l"], f["e"], f["j"])
        printed = tuple(f["d"])
        d = (f.get("d0_corrected", printed[0]), printed[1])
        out[key] = PellSeed(
            *key, tuple(f["n"]), d, printed, f["k_min"], _shape(f["chain"]),
            tuple(_shape(s) for s in f["markings"]),
        )
    return out


@dataclass(frozen=True)
class PellMember:
    k: int
    n: int
    d: int
    pair: WahlPair | None  # (n(k), n(k-1)); None at k = 0
    chain: Chain
    shape: Chain | None  # displayed chain, from k_min on
    markings: tuple[Marking, ...]  # displayed markings, from k_min on

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "d": self.d,
            "pair": None if self.pair is None else list(self.pair),
            "chain": list(self.chain),
            "markings": [str(m) for m in self.markings],
        }


def pell_sequence(seed: PellSeed, count: int, printed: bool = False) -> list[tuple[int, int]]:
    """(n(k), d(k)) for k < count; ``printed`` starts from the displayed seeds."""
    m = seed.degree - 2
    out = list(zip(seed.n, seed.d_printed if printed else seed.d))
    while len(out) < count:
        (n0, d0), (n1, d1) = out[-2], out[-1]
        out.append((m * n1 - n0, m * d1 - d0))
    return out[:count]


def pell_family(degree: int, e: int, j: int = 0, count: int = 8) -> list[PellMember]:
    """Members k = 0..count-1 of a norm-equation family, checked against its displayed shapes."""
    try:
        seed = pell_seeds()[(degree, e, j)]
    except KeyError:
        raise UnknownFamily(f"no family (l={degree}, e={e}, j={j})") from None
    seq = pell_sequence(seed, count)
    out = []
    for k, (n, d) in enumerate(seq):
        if pell_norm(n, d, degree) != e:
            raise IdentityViolation(f"family {degree},{e},{j}: norm fails at k = {k}")
        if k == 0:
            out.append(PellMember(0, n, d, None, (), None, ()))
            continue
        prev = seq[k - 1][0]
        if d != -n - prev:
            raise IdentityViolation(f"family {degree},{e},{j}: d({k}) != -n({k}) - n({k - 1})")
        pair = WahlPair(n, prev).check()
        chain = wahl_chain(pair)
        shape, marks = None, ()
        if k >= seed.k_min:
            shape = seed.chain.build(degree - 2, k)
            if shape != chain:
                raise IdentityViolation(f"family {degree},{e},{j}: displayed chain differs from {list(chain)} at k = {k}")
            marks = tuple(marking_from_marked(chain, s.build(degree - 2, k), 1) for s in seed.markings)
            for mk in marks:
                if mk.degree != degree:
                    raise IdentityViolation(f"family {degree},{e},{j}: marking {mk} has degree {mk.degree}")
        out.append(PellMember(k, n, d, pair, chain, shape, marks))
    return out


__all__ = [
    "MarkovCorrespondence",
    "MarkovTriple",
    "PellMember",
    "PellSeed",
    "degree8_relations",
    "hodge_bound",
    "hodge_inequality",
    "hodge_inequality_type1",
    "markov_correspondence",
    "markov_pair",
    "markov_triples",
    "pell_family",
    "pell_norm",
    "pell_seeds",
    "pell_sequence",
    "square_filter",
    "t_singularity_degree",
    "t_singularity_equation",
]
