"""The acceptance suite: fourteen numbered checks, each returning a pass/fail line.

Checks backed by worked examples replay records from the golden file; the rest
are exhaustive sweeps at fixed bounds.  One shared sweep over every marking
with n <= 150 feeds checks 7, 8, 10 and 13.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Callable, NamedTuple

from .bundles import hec_from_chain, hom_dimensions
from .cfkernel import dual, evaluate, expand, is_zero_cf, matrix_of, minimal_model, mod_inverse, blow_up_step
from .diophantine import markov_correspondence, markov_triples, pell_family, pell_norm, pell_seeds
from .errors import WahlkitError
from .geometry import SingChain, build_fake_wpp, build_w_hat, degree8_fiber_class, m_resolutions, slide_numerics
from .golden import load_examples, run_example
from .marking import christophersen_stevens, classify_markings, count_zero_cfs, realizable_degrees
from .trains import divisorial_train, flip_train_over_wahl, flipping_trains, markov_train
from .wahl import SMOOTH, WahlPair, generate_wahl, recognize_wahl, wahl_chain

SWEEP_MAX_N = 150
TRAIN_LENGTH = 25
SLIDE_SAMPLES = 10_000
SLIDE_SEED = 20240611


class Check(NamedTuple):
    number: int
    title: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:2d} {self.title}: {self.detail}"


def _golden(*ids: str) -> list[str]:
    """Ids among ``ids`` whose golden record does not reproduce."""
    recs = {r["id"]: r for r in load_examples()}
    bad = []
    for i in ids:
        try:
            if not run_example(recs[i]).ok:
                bad.append(i)
        except WahlkitError as exc:
            bad.append(f"{i} ({type(exc).__name__})")
    return bad


# --- the shared sweep over markings -------------------------------------------


@dataclass
class Sweep:
    max_n: int
    markings: int = 0
    curves: int = 0
    bundles: int = 0
    degree8: dict[str, int] = field(default_factory=dict)
    failures: dict[str, list[str]] = field(default_factory=dict)

    def fail(self, kind: str, msg: str) -> None:
        self.failures.setdefault(kind, []).append(msg)

    def failed(self, *kinds: str) -> list[str]:
        return [m for k in kinds for m in self.failures.get(k, [])]


def _check_fake_wpp(m, sw: Sweep) -> None:
    f = build_fake_wpp(m)
    n, a = f.n, f.a
    s = f.m1 + f.m2
    if f.q1 * f.m2 + f.q2 * f.m1 + n * n != f.m1 * f.m2 * f.d:
        sw.fail("fwpp", f"{m}: first identity")
    if s != n * (f.m1 * a - n * f.q1_inv) or s != n * (f.m2 * (n - a) - n * f.q2_inv):
        sw.fail("fwpp", f"{m}: second identity")
    if (n * n + s) ** 2 < m.degree * n * n * f.m1 * f.m2:
        sw.fail("fwpp", f"{m}: Hodge bound")


def _check_bundles(m, s: SingChain, sw: Sweep) -> None:
    recs = hec_from_chain(s, a_self=1)
    for p, r in zip(s.sings, recs):
        if (r.degree + p.a) % p.n:
            sw.fail("hec", f"{m}: degree {r.degree} in rank {p.n}")
        if Fraction((p.n - 1) * (r.c1_sq + p.n + 1), 2 * p.n).denominator != 1:
            sw.fail("hec", f"{m}: c2 not integral in rank {p.n}")
    hom_dimensions(s)
    sw.bundles += len(recs)


@lru_cache(maxsize=None)
def sweep(max_n: int = SWEEP_MAX_N) -> Sweep:
    sw = Sweep(max_n)
    for n in range(2, max_n + 1):
        for a in range(1, n):
            if gcd(n, a) != 1:
                continue
            for m in classify_markings((n, a)):
                sw.markings += 1
                try:
                    _check_fake_wpp(m, sw)
                except WahlkitError as exc:
                    sw.fail("fwpp", f"{m}: {exc}")
                try:
                    s, _ = build_w_hat(m)
                except WahlkitError as exc:
                    sw.fail("w_hat", f"{m}: {exc}")
                    continue
                ks = s.k_intersections()
                sw.curves += len(ks)
                if any(k > 0 for k in ks):
                    sw.fail("w_hat", f"{m}: K-positive curve in {s}")
                try:
                    _check_bundles(m, s, sw)
                except WahlkitError as exc:
                    sw.fail("hec", f"{m}: {exc}")
                if m.degree == 8:
                    try:
                        surface = degree8_fiber_class(m).surface
                    except WahlkitError as exc:
                        sw.fail("d8", f"{m}: {exc}")
                        continue
                    sw.degree8[surface] = sw.degree8.get(surface, 0) + 1
                    if n % 2 == 0 and surface != "F1":
                        sw.fail("d8", f"{m}: even n classified {surface}")
    return sw


def _sweep_detail(sw: Sweep, kinds: tuple[str, ...], what: str) -> tuple[bool, str]:
    bad = sw.failed(*kinds)
    if bad:
        return False, f"{len(bad)} failures over {sw.markings} markings, first: {bad[0]}"
    return True, f"{what} over {sw.markings} markings with n <= {sw.max_n}"


# --- the fourteen checks --------------------------------------------------------


def check_catalan() -> tuple[bool, str]:
    bad = [s for s in range(2, 13) if count_zero_cfs(s) * s != comb(2 * (s - 1), s - 1)]
    return not bad, f"zero continued fractions of length 2..12 are counted by Catalan numbers; mismatches {bad}"


def check_census() -> tuple[bool, str]:
    count = len(classify_markings((29, 22)))
    others = _golden(
        "markings-29-22-top", "markings-9-5-degree4", "markings-29-4-degree8", "markings-29-5-degree8",
        "chain-29-4", "chain-29-5", "chain-29-22",
    )
    ok = count == 18 and not others
    return ok, f"(29,22) has {count} markings, expected 18; other census examples failing: {others or 'none'}"


def check_canonical() -> tuple[bool, str]:
    bad = _golden("canonical-2623", "canonical-22255", "canonical-22228", "canonical-length16")
    return not bad, f"four canonical-marking examples; failing: {bad or 'none'}"


def check_markov() -> tuple[bool, str]:
    triples = [t for t in markov_triples(1000) if t.z >= 2]
    bad = []
    for t in triples:
        try:
            markov_correspondence(t)
        except WahlkitError as exc:
            bad.append(f"{tuple(t)}: {exc}")
    bad += _golden("markov-2-5-29")
    return not bad, f"{len(triples)} triples with 2 <= z <= 1000, one degree-9 marking and weights (z^2,x^2,y^2) each; failing: {bad or 'none'}"


def check_trains() -> tuple[bool, str]:
    bad = _golden("train-flip-11-3", "train-dc-4", "train-flip-4", "train-markov-2227")
    builders: list[tuple[str, Callable]] = [
        ("divisorial over (2,1)", lambda: [divisorial_train((2, 1), TRAIN_LENGTH)]),
        ("flip over (2,1)", lambda: [flip_train_over_wahl((2, 1), TRAIN_LENGTH)]),
        ("flipping over [2/1]-(3)", lambda: flipping_trains(SingChain(((2, 1), SMOOTH), (3,)), TRAIN_LENGTH)),
        ("Markov from [2,2,2,7]", lambda: [markov_train((5, 4), 2, TRAIN_LENGTH)]),
    ]
    for name, build in builders:
        try:
            for t in build():
                if len(t.wagons) != TRAIN_LENGTH:
                    bad.append(f"{name}: {len(t.wagons)} wagons")
        except WahlkitError as exc:
            bad.append(f"{name}: {exc}")
    note = "third flip wagon printed with one extra 2, which breaks the entry-sum rule; the corrected wagon is pinned"
    return not bad, f"displayed wagons and bars, {TRAIN_LENGTH} verified wagons per train; failing: {bad or 'none'}; {note}"


def check_slides() -> tuple[bool, str]:
    bad = _golden("slide-32272-left", "slide-32272-right", "slide-2227-left", "slide-2227-right")
    rng = random.Random(SLIDE_SEED)
    for _ in range(SLIDE_SAMPLES):
        n = rng.randint(2, 200)
        a = rng.randrange(1, n)
        while gcd(n, a) != 1:
            a = rng.randrange(1, n)
        i = rng.randint(1, len(wahl_chain((n, a))))
        try:
            s = slide_numerics((n, a), i)
        except WahlkitError as exc:
            bad.append(f"({n},{a}) at {i}: {exc}")
            continue
        if not (s.delta == s.n1 * a - s.a1 * n and s.n1 + s.n2 == s.delta * n and s.a1 + s.a2 == s.delta * a):
            bad.append(f"({n},{a}) at {i}")
    return not bad, f"worked slides and {SLIDE_SAMPLES} seeded random samples; failing: {bad[:3] or 'none'}"


def check_w_hat() -> tuple[bool, str]:
    recs = [r for r in load_examples() if r["op"] == "w_hat_canonical"]
    bad = []
    for x in range(2, 9):
        expect = f"(0)-[{x + 2}/{x + 1}]-(1)-[{x + 4}/{x + 3}]-(1)-(2)-(2)-(2)-(2)"
        got = run_example({"id": f"x={x}", "op": "w_hat_canonical", "args": {"x": x}, "expect": expect})
        if not got.ok:
            bad.append(f"x={x}: {got.got}")
    bad += [r["id"] for r in recs if not run_example(r).ok]
    if bad:
        return False, f"special-form toric models failing: {bad}"
    ok, detail = _sweep_detail(sweep(), ("w_hat",), f"x = 2..8 reproduced; K.Gamma <= 0 on {sweep().curves} curves")
    return ok, detail


def check_fake_wpp() -> tuple[bool, str]:
    bad = _golden("fake-wpp-27-11", "w-hat-27-11")
    if bad:
        return False, f"worked example failing: {bad}"
    return _sweep_detail(sweep(), ("fwpp",), "(27,11) reproduced; both identities and the Hodge bound")


def check_m_resolutions() -> tuple[bool, str]:
    bad = _golden("mres-19-7", "extremal-11-3")
    total = 0
    for delta in range(2, 101):
        for omega in range(1, delta):
            if gcd(delta, omega) != 1:
                continue
            try:
                got = m_resolutions((delta, omega))
            except WahlkitError as exc:
                bad.append(f"1/{delta}(1,{omega}): {exc}")
                continue
            if len(got) != len(christophersen_stevens((delta, omega))) or len({(s.sings, s.cs) for s in got}) != len(got):
                bad.append(f"1/{delta}(1,{omega})")
            total += len(got)
    return not bad, f"{total} M-resolutions over all Delta <= 100 match the zero-CF count; failing: {bad[:3] or 'none'}"


def check_degree8() -> tuple[bool, str]:
    bad = _golden("degree8-29-5-first", "degree8-29-5-second")
    if bad:
        return False, f"(29,5) examples failing: {bad}"
    sw = sweep()
    return _sweep_detail(sw, ("d8",), f"(29,5) gives F0 and F1; even n gives F1; classes {dict(sorted(sw.degree8.items()))}")


def check_pell() -> tuple[bool, str]:
    bad, corrected = [], []
    for key, seed in sorted(pell_seeds().items()):
        ell = seed.degree
        (n0, n1), (d0, d1) = seed.n, seed.d
        if seed.d != seed.d_printed:
            # d(0) is forced by d(1) and d(2) = -n(2) - n(1)
            n2 = (ell - 2) * n1 - n0
            forced = (ell - 2) * d1 + n2 + n1
            if d0 != forced or pell_norm(n0, seed.d_printed[0], ell) == seed.e:
                bad.append(f"{key}: correction not forced")
            corrected.append(f"{key[:2]} d(0) {seed.d_printed[0]} -> {d0}")
        try:
            members = pell_family(*key, count=26)
        except WahlkitError as exc:
            bad.append(f"{key}: {exc}")
            continue
        if any(pell_norm(m.n, m.d, ell) != seed.e for m in members):
            bad.append(f"{key}: norm")
        shaped = [m for m in members if m.k <= 6 and m.shape is not None]
        if not shaped:
            bad.append(f"{key}: no displayed shape checked")
        for m in members[1:4]:
            if m.markings:
                listed = {mk.key for mk in classify_markings(m.pair)}
                if any(mk.key not in listed for mk in m.markings):
                    bad.append(f"{key}: k={m.k} marking not enumerated")
    for need in ((8, -4, 0), (7, -3, 0), (6, -2, 0), (5, -1, 0)):
        if need not in pell_seeds():
            bad.append(f"missing family {need[:2]}")
    fams = len(pell_seeds())
    return not bad, (
        f"{fams} families: norm for k <= 25, d(k) = -n(k) - n(k-1), shapes for k <= 6; "
        f"failing: {bad or 'none'}; printed seeds corrected: {'; '.join(corrected) or 'none'}"
    )


def _harvest_chain(a_: int, b_: int) -> tuple[int, int, WahlPair]:
    """The unique (p, q) making [2]*p + [A+4] + [2]*q + [B+2] a Wahl chain."""
    hits = []
    for p in range(a_ + b_ + 8):
        for q in range(a_ + b_ + 8):
            w = recognize_wahl((2,) * p + (a_ + 4,) + (2,) * q + (b_ + 2,))
            if w is not None:
                hits.append((p, q, w))
    if len(hits) != 1:
        raise ValueError(f"A={a_}, B={b_}: {len(hits)} Wahl chains of the harvest shape")
    return hits[0]


def check_harvest() -> tuple[bool, str]:
    bad, count = [], 0
    for a_ in range(2, 7):
        for b_ in range(a_ + 4, a_ + 21):
            try:
                _, _, w = _harvest_chain(a_, b_)
            except ValueError as exc:
                bad.append(str(exc))
                continue
            count += 1
            top = max(realizable_degrees(w))
            if top >= 5:
                bad.append(f"A={a_}, B={b_}: degree {top}")
    return not bad, f"{count} chains, no realizable degree >= 5; failing: {bad or 'none'}"


def check_bundles() -> tuple[bool, str]:
    bad = []
    for n in range(2, SWEEP_MAX_N + 1):
        for a in range(1, n):
            if gcd(n, a) == 1:
                recs = hec_from_chain(SingChain((SMOOTH, (n, a)), (0,)))
                if recs[1].degree != -n - a:
                    bad.append(f"(0)-[{n}/{a}]: degree {recs[1].degree}")
    if bad:
        return False, f"(0)-[n/a] family failing: {bad[:3]}"
    sw = sweep()
    return _sweep_detail(sw, ("hec",), f"(0)-[n/a] gives -n-a; congruence and integral c2 on {sw.bundles} bundles")


def check_kernel() -> tuple[bool, str]:
    bad = []
    for m in range(2, 501):
        for q in range(1, m):
            if gcd(m, q) != 1:
                continue
            c = expand(m, q)
            if evaluate(c) != Fraction(m, q) or expand(evaluate(c)) != minimal_model(c):
                bad.append(f"round trip {m}/{q}")
            # blowing up anywhere but before e1 keeps the value
            blown = blow_up_step(c, 2 + (m * q) % len(c))
            if expand(evaluate(blown)) != minimal_model(blown):
                bad.append(f"round trip after blow-up {m}/{q}")
            if m > 300:
                continue
            if not is_zero_cf((*c, 1, *reversed(dual(c)))):
                bad.append(f"duality {m}/{q}")
            qi = mod_inverse(q, m)
            if matrix_of(c) != ((m, -qi), (q, (1 - q * qi) // m)):
                bad.append(f"matrix {m}/{q}")
    wahl = 0
    for _, chain, _ in generate_wahl(14):
        wahl += 1
        if sum(chain) != 3 * len(chain) + 1:
            bad.append(f"entry sum {list(chain)}")
    for n in range(2, 501):
        for a in range(1, n):
            if gcd(n, a) != 1:
                continue
            c = wahl_chain((n, a))
            if recognize_wahl(c) != (n, a):
                bad.append(f"recognize ({n},{a})")
            if n <= 200 and c[::-1] != wahl_chain((n, n - a)):
                bad.append(f"reversal ({n},{a})")
    return not bad, (
        f"round trip Delta <= 500, duality and matrix m <= 300, entry sum on {wahl} chains of length <= 14, "
        f"reversal n <= 200, recognition n <= 500; failing: {bad[:3] or 'none'}"
    )


CHECKS: dict[int, tuple[str, Callable[[], tuple[bool, str]]]] = {
    1: ("Catalan count", check_catalan),
    2: ("marking census", check_census),
    3: ("canonical markings", check_canonical),
    4: ("Markov correspondence", check_markov),
    5: ("Mori trains", check_trains),
    6: ("slides", check_slides),
    7: ("toric model of a marking", check_w_hat),
    8: ("fake weighted projective planes", check_fake_wpp),
    9: ("M-resolutions", check_m_resolutions),
    10: ("degree-8 classifier", check_degree8),
    11: ("Pell families", check_pell),
    12: ("impossibility harvest", check_harvest),
    13: ("bundle numerics", check_bundles),
    14: ("kernel properties", check_kernel),
}


def run_check(number: int) -> Check:
    title, fn = CHECKS[number]
    ok, detail = fn()
    return Check(number, title, ok, detail)


def run_acceptance(numbers: list[int] | None = None) -> list[Check]:
    return [run_check(k) for k in (numbers or sorted(CHECKS))]
