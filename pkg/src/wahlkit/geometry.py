"""Chains of Wahl singularities: discrepancies, K-intersections, slides,
toric models of marked surfaces, M-resolutions and fake weighted projective
planes.

Discrepancies are stored as magnitudes d in (0,1) with
pi^*K_W = K_X + sum d_i E_i, so every formula below adds them.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import NamedTuple, Sequence

from .cfkernel import CQS, Chain, evaluate, is_valid, matrix_of, minimal_model, mod_inverse
from .errors import (
    BoundTooSmall,
    IdentityViolation,
    InvalidChain,
    InvariantViolation,
    NoSlide,
    NotDegree8,
    SingularSystem,
)
from .marking import Marking, christophersen_stevens
from .wahl import SMOOTH, WahlPair, recognize_wahl, wahl_chain

# --- linear algebra on a single block --------------------------------------


def block_discrepancies(block: Sequence[int]) -> list[Fraction]:
    """Magnitudes d_j = 1 - (det e[:j] + det e[j+1:]) / det e, from continuants."""
    r = len(block)
    if r == 0:
        return []
    pre = [1, block[0]]  # pre[j] = det block[:j]
    for e in block[1:]:
        pre.append(e * pre[-1] - pre[-2])
    suf = [1, block[-1]]  # suf[k] = det of the last k entries
    for e in reversed(block[:-1]):
        suf.append(e * suf[-1] - suf[-2])
    total = pre[r]
    if total <= 0:
        raise SingularSystem(f"{list(block)} is not negative definite")
    return [1 - Fraction(pre[j] + suf[r - 1 - j], total) for j in range(r)]


def _det(chain: Sequence[int]) -> int:
    """Determinant of the positive tridiagonal matrix of ``chain`` (1 if empty)."""
    num, prev = 1, 0
    for e in chain:
        num, prev = e * num - prev, num
    return num


def inverse_diagonal(block: Sequence[int], j: int) -> Fraction:
    """(j,j) entry (0-based) of the inverse of the block's positive intersection matrix."""
    return Fraction(_det(block[:j]) * _det(block[j + 1 :]), _det(block))


@dataclass(frozen=True)
class Curve:
    c: int  # minus the self-intersection
    kind: str  # "exceptional", "connecting", "section" or "fiber"
    block: int | None = None  # index of the singularity it resolves


@dataclass
class ResolutionGraph:
    """Chain of curves; consecutive curves meet once."""

    curves: list[Curve]

    def blocks(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for pos, cv in enumerate(self.curves):
            if cv.block is not None:
                out.setdefault(cv.block, []).append(pos)
        return out

    def intersection_matrix(self) -> list[list[int]]:
        n = len(self.curves)
        m = [[0] * n for _ in range(n)]
        for i, cv in enumerate(self.curves):
            m[i][i] = -cv.c
            if i + 1 < n:
                m[i][i + 1] = m[i + 1][i] = 1
        return m


def discrepancies(g: ResolutionGraph) -> list[Fraction]:
    """Discrepancy magnitude of every curve; 0 off the contracted blocks."""
    out = [Fraction(0)] * len(g.curves)
    for positions in g.blocks().values():
        block = [g.curves[p].c for p in positions]
        if any(b - a != 1 for a, b in zip(positions, positions[1:])):
            raise InvalidChain("a contracted block must be consecutive")
        for p, d in zip(positions, block_discrepancies(block)):
            if not 0 <= d < 1:
                raise InvariantViolation(f"discrepancy {d} of {block} outside [0,1)")
            out[p] = d
    return out


@lru_cache(maxsize=4096)
def end_discrepancies(p: WahlPair) -> tuple[Fraction, Fraction]:
    """Magnitudes at the first and last curve of the Wahl chain of ``p``."""
    if p.is_smooth:
        return Fraction(0), Fraction(0)
    d = block_discrepancies(wahl_chain(p))
    return d[0], d[-1]


@lru_cache(maxsize=4096)
def k_squared_defect(p: WahlPair) -> Fraction:
    """K_W^2 - K_X^2 = sum d_j (e_j - 2) over the chain of p."""
    ch = wahl_chain(p)
    return sum((d * (c - 2) for d, c in zip(block_discrepancies(ch), ch)), Fraction(0))


def end_inverses(p: WahlPair) -> tuple[Fraction, Fraction]:
    """First and last diagonal entries of the inverse intersection matrix of p's chain."""
    if p.is_smooth:
        return Fraction(0), Fraction(0)
    n, a = p
    return Fraction(n * a - 1, n * n), Fraction(n * (n - a) - 1, n * n)


# --- chains of Wahl singularities --------------------------------------------


def _fmt_sing(p: WahlPair) -> str:
    return f"[{p.n}/{p.a}]"


@dataclass(frozen=True)
class SingChain:
    """P0 -(c1)- P1 - ... -(c_l)- P_l; smooth slots are WahlPair(1, 0)."""

    sings: tuple[WahlPair, ...]
    cs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sings", tuple(WahlPair(*p).check() for p in self.sings))
        object.__setattr__(self, "cs", tuple(self.cs))
        if len(self.sings) != len(self.cs) + 1:
            raise ValueError("need exactly one more singularity slot than curves")

    @property
    def resolution(self) -> Chain:
        out = list(self.sings[0].chain)
        for c, p in zip(self.cs, self.sings[1:]):
            out.append(c)
            out.extend(p.chain)
        return tuple(out)

    def graph(self) -> ResolutionGraph:
        curves = [Curve(e, "exceptional", 0) for e in self.sings[0].chain]
        for k, (c, p) in enumerate(zip(self.cs, self.sings[1:]), start=1):
            curves.append(Curve(c, "connecting"))
            curves.extend(Curve(e, "exceptional", k) for e in p.chain)
        return ResolutionGraph(curves)

    def k_intersections(self) -> list[Fraction]:
        ends = [end_discrepancies(p) for p in self.sings]
        return [c - 2 + ends[i][1] + ends[i + 1][0] for i, c in enumerate(self.cs)]

    def deltas(self) -> list[int]:
        out = []
        for i, k in enumerate(self.k_intersections()):
            v = self.sings[i].n * self.sings[i + 1].n * abs(k)
            if v.denominator != 1:
                raise InvariantViolation(f"delta_{i + 1} = {v} is not an integer in {self}")
            out.append(int(v))
        return out

    def self_intersections(self) -> list[Fraction]:
        """Gamma_i^2 on the singular surface."""
        out = []
        for i, c in enumerate(self.cs):
            v = Fraction(-c)
            left, right = self.sings[i], self.sings[i + 1]
            v += end_inverses(left)[1] + end_inverses(right)[0]
            out.append(v)
        return out

    def contraction(self) -> CQS:
        """The c.q.s. obtained by contracting everything."""
        mm = minimal_model(self.resolution)
        if min(mm) < 2:
            raise InvalidChain(f"{self} does not contract to a c.q.s.")
        v = evaluate(mm)
        return CQS(v.numerator, v.denominator)

    def reversed(self) -> "SingChain":
        return SingChain(tuple(p.reversed() for p in reversed(self.sings)), tuple(reversed(self.cs)))

    def __str__(self) -> str:
        parts = []
        for i, p in enumerate(self.sings):
            if not p.is_smooth:
                parts.append(_fmt_sing(p))
            if i < len(self.cs):
                parts.append(f"({self.cs[i]})")
        return "-".join(parts)

    def to_json(self) -> dict:
        return {
            "chain": str(self),
            "sings": [list(p) for p in self.sings],
            "cs": list(self.cs),
            "k_dot_gamma": [str(k) for k in self.k_intersections()],
        }


_TOKEN = r"\[\d+/\d+\]|\(-?\d+\)"
_SING_CHAIN_RE = re.compile(rf"(?:{_TOKEN})(?:-(?:{_TOKEN}))*")


def parse_sing_chain(text: str) -> SingChain:
    """Parse ``"(0)-[5/2]-(1)-(2)"``; adjacent curves and open ends get smooth slots."""
    text = re.sub(r"\s", "", text)
    if not _SING_CHAIN_RE.fullmatch(text):
        raise ValueError(f"not a chain of singularities: {text!r}")
    sings: list[WahlPair] = []
    cs: list[int] = []
    expect_sing = True
    for n, a, c in re.findall(r"\[(\d+)/(\d+)\]|\((-?\d+)\)", text):
        if not c:
            if not expect_sing:
                raise ValueError(f"two singularities without a curve between them in {text!r}")
            sings.append(WahlPair(int(n), int(a)))
            expect_sing = False
        else:
            if expect_sing:
                sings.append(SMOOTH)
            cs.append(int(c))
            expect_sing = True
    if expect_sing:
        sings.append(SMOOTH)
    return SingChain(tuple(sings), tuple(cs))


def k_intersections(s: SingChain) -> list[Fraction]:
    return s.k_intersections()


# --- slides ------------------------------------------------------------------


def _pair_from_value(m: int, q: int) -> WahlPair:
    return SMOOTH if m == 1 else WahlPair(m, q)


def slide(context: Sequence[int], i: int, direction: str) -> tuple[WahlPair, Chain]:
    """Slide a (-1)-curve meeting E_i off the Wahl chain ``context``.

    Left: the new chain is wahl(n',a') + [1] + context with n'/a' = [e1..e_{i-1}].
    Right: context + [1] + wahl(n'', n''-q) with n''/q = [er..e_{i+1}].
    """
    e = tuple(context)
    r = len(e)
    if recognize_wahl(e) is None:
        raise InvalidChain(f"{list(e)} is not a Wahl chain")
    if not 1 <= i <= r:
        raise IndexError(f"position {i} outside 1..{r}")
    if direction == "left":
        if i == 1:
            raise NoSlide("nothing to the left of E_1")
        v = evaluate(e[: i - 1])
        new = WahlPair(v.numerator, v.denominator)
        chain = (*wahl_chain(new), 1, *e)
    elif direction == "right":
        if i == r:
            raise NoSlide("nothing to the right of E_r")
        v = evaluate(e[i:][::-1])
        new = WahlPair(v.numerator, v.numerator - v.denominator)
        chain = (*e, 1, *wahl_chain(new))
    else:
        raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    target = list(e)
    target[i - 1] -= 1
    if minimal_model(chain) != minimal_model(target):
        raise InvariantViolation(f"slide of {list(e)} at {i} does not contract correctly")
    return new, chain


class SlideNumerics(NamedTuple):
    n1: int  # n'
    a1: int  # a'
    n2: int  # n''
    a2: int  # a'' := delta*a - a'
    a2_read: int  # denominator of [er..e_{i+1}] = n'' - a''
    delta: int
    gamma_k: Fraction  # Gamma . K_W
    gamma_sq: Fraction  # Gamma^2 on W
    left_k: Fraction  # Gamma' . K_W'
    left_sq: Fraction
    right_k: Fraction
    right_sq: Fraction


def slide_numerics(p: WahlPair | tuple[int, int], i: int) -> SlideNumerics:
    """Both slides at E_i with every conservation law checked exactly.

    At i = 1 (resp. i = r) the left (resp. right) partner is the smooth point.
    """
    p = WahlPair(*p).check()
    n, a = p
    e = wahl_chain(p)
    r = len(e)
    if not 1 <= i <= r:
        raise IndexError(f"position {i} outside 1..{r}")
    if i > 1:
        v = evaluate(e[: i - 1])
        n1, a1 = v.numerator, v.denominator
    else:
        n1, a1 = 1, 0
    if i < r:
        v = evaluate(e[i:][::-1])
        n2, a2_read = v.numerator, v.denominator
    else:
        n2, a2_read = 1, 0  # the empty tail reads 1/0, as on the left
    d = block_discrepancies(e)
    gamma_k = -1 + d[i - 1]
    gamma_sq = -1 + inverse_diagonal(e, i - 1)
    delta_v = -n * gamma_k
    if delta_v.denominator != 1 or delta_v <= 0:
        raise InvariantViolation(f"delta = {delta_v} for {tuple(p)} at {i}")
    delta = int(delta_v)
    a2 = delta * a - a1
    left = SingChain((_pair_from_value(n1, a1), p), (1,))
    right = SingChain((p, _pair_from_value(n2, n2 - a2_read)), (1,))
    (lk,), (ls,) = left.k_intersections(), left.self_intersections()
    (rk,), (rs,) = right.k_intersections(), right.self_intersections()
    checks = [
        (n1 * lk == gamma_k, "n' Gamma'.K != Gamma.K"),
        (n2 * rk == gamma_k, "n'' Gamma''.K != Gamma.K"),
        (n1 * n1 * ls == gamma_sq, "n'^2 Gamma'^2 != Gamma^2"),
        (n2 * n2 * rs == gamma_sq, "n''^2 Gamma''^2 != Gamma^2"),
        (gamma_sq != 0, "Gamma^2 = 0"),
        (delta == n1 * a - a1 * n, "delta != n'a - a'n"),
        # this one holds with the denominator as read off [er..e_{i+1}]
        (delta == n2 * (n - a) - n * a2_read, "delta != n''(n-a) - n a''"),
        (n1 + n2 == delta * n, "n' + n'' != delta n"),
        (a2 == n2 - a2_read, "a'' is not n'' minus the read denominator"),
    ]
    for ok, msg in checks:
        if not ok:
            raise InvariantViolation(f"{msg} for {tuple(p)} at {i}")
    return SlideNumerics(n1, a1, n2, a2, a2_read, delta, gamma_k, gamma_sq, lk, ls, rk, rs)


# --- toric model of a marked surface ---------------------------------------------


class WHatTail(NamedTuple):
    c_squared: int  # self-intersection of the closing section C
    c_k: Fraction  # K . C
    k_squared: Fraction  # K^2 of the toric model


def _link(left: WahlPair, right: WahlPair) -> int:
    return 2 if left.is_smooth and right.is_smooth else 1


def build_w_hat(m: Marking) -> tuple[SingChain, WHatTail]:
    """Toric model obtained by sliding every marking curve off the Wahl chain.

    Curves on the right of the central mark slide right in increasing index
    order, curves on the left slide left in decreasing order.  Curves on an
    end component give smooth slots joined by (2)-curves.
    """
    e, i, p = m.chain, m.central, m.pair
    r = len(e)
    dec = m.decrements
    if e == (4,):
        sings, cs = [SMOOTH, p, SMOOTH], [0, 0]
    else:
        left: list[WahlPair] = []
        left_cs: list[int] = []
        for j in range(i - 1, 0, -1):
            for _ in range(dec.get(j, 0)):
                if j == 1:
                    new = SMOOTH
                else:
                    v = evaluate(e[: j - 1])
                    new = WahlPair(v.numerator, v.denominator)
                prev = left[-1] if left else p
                left_cs.append(_link(new, prev))
                left.append(new)
        right: list[WahlPair] = []
        right_cs: list[int] = []
        for j in range(i + 1, r + 1):
            for _ in range(dec.get(j, 0)):
                if j == r:
                    new = SMOOTH
                else:
                    v = evaluate(e[j:][::-1])
                    new = WahlPair(v.numerator, v.numerator - v.denominator)
                prev = right[-1] if right else p
                right_cs.append(_link(prev, new))
                right.append(new)
        sings = [*reversed(left), p, *right]
        cs = [*reversed(left_cs), *right_cs]
        if m.kind == "I" and i == 1:
            sings.insert(0, SMOOTH)
            cs.insert(0, 0)
        elif m.kind == "I":
            sings.append(SMOOTH)
            cs.append(0)
    s = SingChain(tuple(sings), tuple(cs))
    ks = s.k_intersections()
    for k in ks:
        if k > 0:
            raise InvariantViolation(f"{m}: toric model {s} has a curve with K.C = {k} > 0")
    res = s.resolution
    n_curves = len(res) + 1
    c_sq = 12 - 3 * n_curves + sum(res)
    c_k = Fraction(-2 - c_sq)
    if not s.sings[0].is_smooth:
        c_k += end_discrepancies(s.sings[0])[0]
    if not s.sings[-1].is_smooth:
        c_k += end_discrepancies(s.sings[-1])[1]
    # the schedule leaves K.C >= 0 on some markings of degree <= 2; only reported there
    if c_k >= 0 and m.degree >= 3:
        raise InvariantViolation(f"{m}: closing section has K.C = {c_k}")
    k_sq = Fraction(12 - n_curves)
    for q in s.sings:
        if not q.is_smooth:
            k_sq += k_squared_defect(q)
    if k_sq != m.degree:
        raise InvariantViolation(f"{m}: toric model has K^2 = {k_sq}, marking degree {m.degree}")
    return s, WHatTail(c_sq, c_k, k_sq)


def k_squared(m: Marking) -> int:
    """K^2 = 8 - B + r, B = blow-ups on the Hirzebruch surface, r = chain length."""
    blowups = sum(len(z.base) + z.weight for z in m.sides if z.base)
    ell = 8 - blowups + len(m.chain)
    if ell != m.degree:
        raise InvariantViolation(f"{m}: bookkeeping gives K^2 = {ell}, degree is {m.degree}")
    return ell


class Degree8Class(NamedTuple):
    surface: str  # "F0" or "F1"
    parities: tuple[tuple[int, int], ...]  # (component, n * Gamma.K) per marking curve
    blowup_clause: str  # the W-blow-up alternative is not decided here


def degree8_fiber_class(m: Marking) -> Degree8Class:
    """Parity of the Hirzebruch surface smoothing to a degree-8 marked surface."""
    if m.degree != 8:
        raise NotDegree8(f"{m} has degree {m.degree}")
    n = m.pair.n
    d = block_discrepancies(m.chain)
    parities = []
    for j in sorted(m.decrements):
        v = n * (-1 + d[j - 1])
        if v.denominator != 1:
            raise InvariantViolation(f"{m}: n Gamma.K = {v} at E_{j} is not an integer")
        parities.append((j, int(v)))
    if n % 2 == 0:
        surface = "F1"
    else:
        surface = "F0" if all(v % 2 == 0 for _, v in parities) else "F1"
    return Degree8Class(surface, tuple(parities), "undetermined")


# --- M-resolutions -------------------------------------------------------------


def _wahl_blocks(delta: int) -> list[tuple[WahlPair, tuple[int, int, int, int], Fraction, Fraction]]:
    """Wahl pairs with n^2 <= delta, each with its matrix and end discrepancies."""
    out = []
    for n in range(2, isqrt(delta) + 1):
        for a in range(1, n):
            if gcd(n, a) == 1:
                p = WahlPair(n, a)
                (m00, m01), (m10, m11) = matrix_of(p.chain)
                out.append((p, (m00, m01, m10, m11), *end_discrepancies(p)))
    return out


def _search(c: CQS) -> list[SingChain]:
    """Chains of Wahl singularities whose resolution X satisfies
    det X = Delta, det X[2:] = Omega, with every K.Gamma >= 0.

    Walking left to right, the part of X still to come must have
    (det, det without its first entry) = (s, t), obtained by undoing the
    matrices of the units already placed.  Tails that open with an entry >= 2
    have value s/t > 1, which forces every curve; tail determinants and
    blocks are capped by Delta.  Survivors are re-checked by contraction.
    """
    delta = c.delta
    blocks = _wahl_blocks(delta)

    def fits(s: int, t: int) -> bool:
        return (s, t) == (1, 0) or (0 < s <= delta and 0 < t <= delta)

    memo: dict = {}

    def slot(s: int, t: int, k_left: Fraction | None, after_one: bool) -> list:
        """Suffixes opening with a slot; ``k_left`` is c - 2 + (left end
        discrepancy) of the curve just placed, None at the very start."""
        key = ("slot", s, t, k_left, after_one)
        if key in memo:
            return memo[key]
        memo[key] = []  # a revisited state on the current path leads nowhere new
        found = []
        if not after_one and (k_left is None or k_left >= 0):
            found += [((SMOOTH, *sings), cs) for sings, cs in curve(s, t, Fraction(0), True)]
        for p, (m00, m01, m10, m11), d_first, d_last in blocks:
            # undo the block's matrix (determinant 1)
            s2, t2 = m11 * s - m01 * t, m00 * t - m10 * s
            if not fits(s2, t2) or (k_left is not None and k_left < 0 and k_left + d_first < 0):
                continue
            found += [((p, *sings), cs) for sings, cs in curve(s2, t2, d_last, False)]
        memo[key] = found
        return found

    def curve(s: int, t: int, d_left: Fraction, smooth: bool) -> list:
        if (s, t) == (1, 0):
            return [((), ())]
        if t == 0:
            return []
        e = -(-s // t)
        if e < 1 or (smooth and e < 2):
            return []
        s2, t2 = t, e * t - s
        # the tail after a curve opens with an entry >= 2
        if (s2, t2) != (1, 0) and not 0 < t2 < s2:
            return []
        return [(sings, (e, *cs)) for sings, cs in slot(s2, t2, e - 2 + d_left, e == 1)]

    target = c.chain
    out = []
    for sings, cs in slot(c.delta, c.omega, None, False):
        s = SingChain(sings, cs)
        x = s.resolution
        if not x or not is_valid(x) or minimal_model(x) != target:
            continue
        if any(k < 0 for k in s.k_intersections()):
            raise InvariantViolation(f"search emitted {s} with a K-negative curve")
        out.append(s)
    return out


def m_resolutions(c: CQS | tuple[int, int], length_bound: int | None = None) -> list[SingChain]:
    """Every M-resolution, shortest resolution first.

    The search is finite without a length bound.  With ``length_bound`` only
    resolutions of at most that length are kept, and BoundTooSmall is raised
    if that drops any.
    """
    c = CQS(*c).check()
    out = _search(c)
    if length_bound is not None:
        out = [s for s in out if len(s.resolution) <= length_bound]
    out.sort(key=lambda s: (len(s.resolution), s.resolution, [tuple(p) for p in s.sings]))
    expected = len(christophersen_stevens(c))
    if len(out) < expected:
        where = "" if length_bound is None else f" with length <= {length_bound}"
        raise BoundTooSmall(f"found {len(out)} M-resolutions of 1/{c.delta}(1,{c.omega}){where}, expected {expected}")
    if len(out) > expected:
        raise InvariantViolation(f"found {len(out)} M-resolutions of {tuple(c)}, expected {expected}")
    return out


def extremal_p_resolutions(c: CQS | tuple[int, int], length_bound: int | None = None) -> list[SingChain]:
    """M-resolutions with a single curve, and that curve K-positive."""
    return [s for s in m_resolutions(c, length_bound) if len(s.cs) == 1 and s.k_intersections()[0] > 0]


# --- fake weighted projective planes ----------------------------------------


@dataclass(frozen=True)
class FakeWPP:
    n: int
    a: int
    m1: int
    m2: int
    q1: int
    q1_inv: int
    q2: int
    q2_inv: int
    d: int
    rays: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    mu: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", gcd(self.m1, self.m2))

    @property
    def weights(self) -> tuple[int, int, int]:
        return (self.n * self.n, self.m1, self.m2)

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "q1": self.q1,
            "q1_inv": self.q1_inv,
            "q2": self.q2,
            "q2_inv": self.q2_inv,
            "d": self.d,
            "mu": self.mu,
            "rays": [list(v) for v in self.rays],
        }


def _side_fraction(chain: Sequence[int]) -> tuple[int, int, int]:
    """(m, q, q^-1) for m/q = chain; (1, 0, 0) for the empty chain."""
    if not chain:
        return 1, 0, 0
    v = evaluate(chain)
    m, q = v.numerator, v.denominator
    return m, q, mod_inverse(q, m) if m > 1 else 0


def cone_type(u: tuple[int, int], w: tuple[int, int]) -> tuple[int, int]:
    """(m, q) with cone(u, w) = 1/m(1, q) read from the u side; q = 0 if smooth."""
    m = abs(u[0] * w[1] - u[1] * w[0])
    if m == 1:
        return 1, 0
    # phi(u) = 1 forces q = -phi(w) mod m
    s0, s1 = _bezout(*u)
    q = -(s0 * w[0] + s1 * w[1]) % m
    if (w[0] + q * u[0]) % m or (w[1] + q * u[1]) % m:
        raise IdentityViolation(f"cone({u}, {w}) has no normal form")
    return m, q


def _bezout(x: int, y: int) -> tuple[int, int]:
    """(s, t) with s x + t y = 1 for a primitive vector (x, y)."""
    old_r, r, old_s, s, old_t, t = x, y, 1, 0, 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    if old_r == -1:
        return -old_s, -old_t
    if old_r != 1:
        raise IdentityViolation(f"({x}, {y}) is not primitive")
    return old_s, old_t


def _same_cqs(mq: tuple[int, int], m: int, q: int) -> bool:
    """Both readings of a cone are the same singularity: q or its inverse."""
    if mq[0] != m:
        return False
    if m == 1:
        return True
    return mq[1] in (q % m, mod_inverse(q, m))


def _rays(n: int, a: int, m1: int, q1: int, m2: int, q2_inv: int) -> tuple:
    nn = n * n
    for qw in (n * a - 1, mod_inverse(n * a - 1, nn)):
        for swap in (False, True):
            v1, v2 = (0, 1), (nn, -qw)
            if swap:
                v1, v2 = v2, v1
            x = -(m1 * v1[0] + m2 * v2[0])
            y = -(m1 * v1[1] + m2 * v2[1])
            if x % nn or y % nn:
                continue
            v0 = (x // nn, y // nn)
            if gcd(*v0) != 1:
                continue
            if _same_cqs(cone_type(v0, v2), m1, m1 - q1) and _same_cqs(cone_type(v0, v1), m2, m2 - q2_inv):
                return v0, v1, v2
    raise IdentityViolation(f"no fan realizes the singularities of ({n},{a}) with weights {nn},{m1},{m2}")


def build_fake_wpp(m: Marking) -> FakeWPP:
    """Picard-rank-one toric surface P(n^2, m1, m2) carrying the marking's singularities."""
    n, a = m.pair
    e, i = m.chain, m.central
    m1, q1, q1_inv = _side_fraction(e[: i - 1][::-1])
    m2, q2, q2_inv = _side_fraction(e[i:])
    d = e[i - 1]
    if q1 * m2 + q2 * m1 + n * n != m1 * m2 * d:
        raise IdentityViolation(f"{m}: q1 m2 + q2 m1 + n^2 != m1 m2 d")
    s = m1 + m2
    if s != n * (m1 * a - n * q1_inv) or s != n * (m2 * (n - a) - n * q2_inv):
        raise IdentityViolation(f"{m}: m1 + m2 != n(m1 a - n q1^-1) = n(m2(n-a) - n q2^-1)")
    rays = _rays(n, a, m1, q1, m2, q2_inv)
    if sum(w * v[0] for w, v in zip((n * n, m1, m2), rays)) or sum(w * v[1] for w, v in zip((n * n, m1, m2), rays)):
        raise IdentityViolation(f"{m}: rays do not satisfy the weight relation")
    out = FakeWPP(n, a, m1, m2, q1, q1_inv, q2, q2_inv, d, rays)
    if not hodge_bound_holds(out, m.degree):
        raise IdentityViolation(f"{m}: Hodge index bound fails")
    return out


def hodge_bound_holds(f: FakeWPP, degree: int) -> bool:
    """(n^2 + m1 + m2)^2 >= degree * n^2 * m1 * m2."""
    nn = f.n * f.n
    return (nn + f.m1 + f.m2) ** 2 >= degree * nn * f.m1 * f.m2


__all__ = [
    "Curve",
    "Degree8Class",
    "FakeWPP",
    "ResolutionGraph",
    "SingChain",
    "SlideNumerics",
    "WHatTail",
    "block_discrepancies",
    "build_fake_wpp",
    "build_w_hat",
    "cone_type",
    "degree8_fiber_class",
    "discrepancies",
    "end_discrepancies",
    "extremal_p_resolutions",
    "hodge_bound_holds",
    "inverse_diagonal",
    "k_intersections",
    "k_squared",
    "m_resolutions",
    "parse_sing_chain",
    "slide",
    "slide_numerics",
]
