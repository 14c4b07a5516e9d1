"""Rank, degree and Chern numerics of exceptional collections read off chains of Wahl singularities.

Sign convention: deg(E) := -c1(E).K.  For a chain P0 -(c1)- P1 - ... - P_l the
i-th bundle has c1(E_i) = -n_i (A + Gamma_1 + ... + Gamma_i), where A is trivial
when P0 is smooth and otherwise a curve through P0 meeting the far end of its
chain.  Every intersection number is computed on the minimal resolution.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import IdentityViolation, MissingPullback, NotCoprime, NotNef
from .geometry import SingChain, build_w_hat, end_discrepancies, end_inverses
from .marking import Marking, classify_markings, realizable_degrees
from .wahl import WahlPair


@dataclass(frozen=True)
class BundleRecord:
    rank: int
    degree: int
    c1_sq: int
    c2: int

    @property
    def slope(self) -> Fraction:
        return Fraction(self.degree, self.rank)

    def to_json(self) -> dict:
        return {"rank": self.rank, "degree": self.degree, "c1_sq": self.c1_sq, "c2": self.c2, "slope": str(self.slope)}


def _meet(p: WahlPair) -> Fraction:
    """Intersection of the two curves through p that meet opposite ends of its chain."""
    return Fraction(1, p.n * p.n)


def a_divisor(s: SingChain, a_self: int | None) -> tuple[Fraction, Fraction, Fraction]:
    """(A.K, A^2, A.Gamma_1); ``a_self`` is minus the self-intersection of A's strict transform."""
    p0 = s.sings[0]
    if p0.is_smooth:
        return Fraction(0), Fraction(0), Fraction(0)
    if a_self is None:
        raise MissingPullback(f"P0 = {tuple(p0)} is singular and the curve A was not given")
    k = a_self - 2 + end_discrepancies(p0)[0]
    sq = -a_self + end_inverses(p0)[0]
    return k, sq, _meet(p0)


def hec_from_chain(s: SingChain, a_self: int | None = None) -> list[BundleRecord]:
    """One record per slot P0..P_l.

    With P0 singular, A must be described by ``a_self``; a_self = 1 gives
    A.K = -a0/n0.
    """
    ks = s.k_intersections()
    sqs = s.self_intersections()
    a_k, a_sq, a_g = a_divisor(s, a_self)
    out = []
    k_sum, sq = a_k, a_sq  # (A + Gamma_1 + ... + Gamma_i).K and its square
    for i, p in enumerate(s.sings):
        if i:
            j = i - 1  # Gamma_i is ks[j]
            k_sum += ks[j]
            # Gamma_i meets only A (i = 1) or Gamma_{i-1} among the earlier terms
            cross = a_g if j == 0 else _meet(s.sings[j])
            sq += sqs[j] + 2 * cross
        n = p.n
        deg = n * k_sum
        c1_sq = n * n * sq
        if deg.denominator != 1 or c1_sq.denominator != 1:
            raise IdentityViolation(f"{s}: E_{i} has deg {deg}, c1^2 {c1_sq}")
        deg, c1_sq = int(deg), int(c1_sq)
        if (deg + p.a) % n:
            raise IdentityViolation(f"{s}: deg(E_{i}) = {deg} is not -{p.a} mod {n}")
        c2 = Fraction(n - 1, 2 * n) * (c1_sq + n + 1)
        if c2.denominator != 1:
            raise IdentityViolation(f"{s}: c2(E_{i}) = {c2} is not an integer")
        if gcd(n, deg) != 1:
            raise IdentityViolation(f"{s}: rank {n} and degree {deg} of E_{i} share a factor")
        out.append(BundleRecord(n, deg, c1_sq, int(c2)))
    return out


def hom_dimensions(s: SingChain) -> list[list[int]]:
    """H[j][i] = hom(E_j, E_i) = -n_j n_i (Gamma_{i+1} + ... + Gamma_j).K for j > i, else 0."""
    ks = s.k_intersections()
    for i, k in enumerate(ks, start=1):
        if k > 0:
            raise NotNef(f"{s}: Gamma_{i}.K = {k} > 0")
    size = len(s.sings)
    den = lcm(*(k.denominator for k in ks)) if ks else 1
    prefix = [0]  # prefix[j] = den * (Gamma_1 + ... + Gamma_j).K
    for k in ks:
        prefix.append(prefix[-1] + k.numerator * (den // k.denominator))
    h = [[0] * size for _ in range(size)]
    for i in range(size):
        ni = s.sings[i].n
        for j in range(i + 1, size):
            num = -s.sings[j].n * ni * (prefix[j] - prefix[i])
            if num % den or num < 0:
                raise IdentityViolation(f"{s}: hom(E_{j}, E_{i}) = {Fraction(num, den)}")
            h[j][i] = num // den
    return h


# --- realizability of (rank, degree) ---------------------------------------------


@dataclass(frozen=True)
class Verdict:
    n: int
    degree: int
    ell: int
    realizable: bool
    witness: dict | None  # construction for realizable pairs
    certificate: dict | None  # exhaustion data for non-realizable pairs

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degree": self.degree,
            "l": self.ell,
            "verdict": "REALIZABLE" if self.realizable else "NOT-REALIZABLE",
            "witness": self.witness,
            "certificate": self.certificate,
        }


def fiber_type_degrees(n: int, a: int, d: int) -> tuple[int, int]:
    """Degrees of the bundles from the fiber-type chain of (n, a) on the Hirzebruch surface F_d."""
    return a + n * (2 - d), n - a + n * (2 - d)


def twist(degree: int, n: int, ell: int = 4) -> int:
    """Degree after E -> E^dual (x) O(K): deg -> -deg - ell n."""
    return -degree - ell * n


def degree4_witness(n: int, degree: int) -> dict:
    """A fiber-type chain and Hirzebruch index producing ``degree`` in rank n, possibly after one twist."""
    a = degree % n
    for twisted in (False, True):
        target = twist(degree, n) if twisted else degree
        # target = a' + n (2 - d) with a' = target mod n
        ap = target % n
        d = 2 - (target - ap) // n
        if d >= 0:
            if fiber_type_degrees(n, ap, d)[0] != target:
                raise IdentityViolation(f"ladder step misses {target} in rank {n}")
            return {"a": ap, "hirzebruch": d, "twisted": twisted, "residue": a}
    raise IdentityViolation(f"twist ladder does not reach degree {degree} in rank {n}")


def realizable_rank_degree(n: int, degree: int, ell: int) -> Verdict:
    if n < 1:
        raise ValueError("rank must be positive")
    if gcd(n, degree) != 1:
        raise NotCoprime(f"gcd({n}, {degree}) != 1")
    if not 1 <= ell <= 9:
        raise ValueError("degree of the del Pezzo surface must be in 1..9")
    if n == 1:
        return Verdict(n, degree, ell, True, {"line_bundle": True}, None)
    if ell <= 4:
        return Verdict(n, degree, ell, True, degree4_witness(n, degree), None)
    residues = sorted({degree % n, -degree % n})
    for a in residues:
        best = [m for m in classify_markings(WahlPair(n, a)) if m.degree >= ell]
        if best:
            m = best[0]
            return Verdict(n, degree, ell, True, {"a": a, "chain": list(m.chain), "marking": str(m), "marking_degree": m.degree}, None)
    degrees = sorted(set().union(*(realizable_degrees(WahlPair(n, a)) for a in residues)))
    return Verdict(n, degree, ell, False, None, {"a_values": residues, "marking_degrees": degrees})


def marking_bundle_chain(m: Marking) -> SingChain:
    """The toric model chain of a marking, for use with hec_from_chain."""
    return build_w_hat(m)[0]


__all__ = [
    "BundleRecord",
    "Verdict",
    "a_divisor",
    "degree4_witness",
    "fiber_type_degrees",
    "hec_from_chain",
    "hom_dimensions",
    "marking_bundle_chain",
    "realizable_rank_degree",
    "twist",
]
