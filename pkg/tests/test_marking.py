from math import comb, gcd

import pytest
from hypothesis import given, settings, strategies as st

from wahlkit.errors import ExcludedChain, InvalidMarking, InvariantViolation
from wahlkit.marking import (
    canonical_markings,
    christophersen_stevens,
    classify_markings,
    count_zero_cfs,
    enumerate_zero_cf_assignments,
    fiber_type_markings,
    marking_from_marked,
    markings_by_degree,
    pair_of_chain,
    realizable_degrees,
    zero_cfs,
)
from wahlkit.cfkernel import is_zero_cf
from wahlkit.wahl import WahlPair

small_pairs = st.integers(2, 40).flatmap(
    lambda n: st.integers(1, n - 1).filter(lambda a: gcd(n, a) == 1).map(lambda a: WahlPair(n, a))
)


@pytest.mark.parametrize("s", range(2, 9))
def test_catalan(s):
    assert count_zero_cfs(s) == comb(2 * (s - 1), s - 1) // s


def test_zero_cfs_are_zero():
    assert all(is_zero_cf(z) for z in zero_cfs(6))
    assert zero_cfs(2) == {(1, 1)}


def test_zero_cf_assignments():
    got = enumerate_zero_cf_assignments((3, 2), 8)
    assert [(z.zero_cf, z.weight) for z in got] == [((1, 1), 2)]
    assert all(is_zero_cf(z.zero_cf) and z.weight == sum(z.decrements.values()) - 1 for z in got)
    with pytest.raises(ValueError):
        enumerate_zero_cf_assignments((1, 2))


def test_degree4_markings_of_9_5():
    fours = sorted(str(m) for m in classify_markings((9, 5)) if m.degree == 4)
    assert fours == ["[1,3,1,2,u{3}]", "[u{2},2,2,1,3]", "[u{2},3,1,2,2]"]


def test_two_degree8_markings_of_29_5():
    by = markings_by_degree((29, 5))
    assert max(by) == 8
    assert len(by[8]) == 2


def test_mirrored_short_chain_is_accepted():
    # (3,2) has chain [2,5]; its type I marking [2,0] mirrors the [0,2] of [5,2]
    left = sorted((m.degree, str(m)) for m in classify_markings((3, 1)))
    right = sorted((m.degree, str(m)) for m in classify_markings((3, 2)))
    assert [d for d, _ in left] == [d for d, _ in right]


def test_canonical_examples():
    assert [str(m) for m in canonical_markings((9, 5))] == ["[u{2},3,1,2,2]", "[1,3,1,2,u{3}]"]
    a, b = canonical_markings(pair_of_chain((2, 6, 2, 3)))
    assert (str(a), str(b)) == ("[u{2},2,1,2]", "[1,2,1,u{3}]")
    with pytest.raises(ExcludedChain):
        canonical_markings((3, 1))


def test_marking_from_marked_rejects_non_zero_sides():
    with pytest.raises((InvalidMarking, InvariantViolation, ValueError)):
        marking_from_marked((2, 6, 2, 3), (2, 2, 2, 2), 1)


def test_christophersen_stevens():
    assert len(christophersen_stevens((19, 7))) == 3
    assert christophersen_stevens((19, 7)) == [(1, 2, 2, 1), (1, 3, 1, 2), (2, 2, 1, 3)]
    assert christophersen_stevens((2, 1)) == [(0,)]


def test_fiber_type_degrees_are_at_most_five():
    for p in [(2, 1), (3, 1), (5, 2), (7, 3)]:
        assert all(d <= 5 for _, d in fiber_type_markings(p))


@settings(max_examples=60)
@given(small_pairs)
def test_marking_invariants(p):
    ms = classify_markings(p)
    assert len({m.key for m in ms}) == len(ms)
    for m in ms:
        m.check()
        assert m.degree == 9 - sum(m.weights)
        # [0] is a zero continued fraction by convention only
        assert all(s.zero_cf == (0,) or is_zero_cf(s.zero_cf) for s in m.sides if s.base)
        assert m.kind == ("I" if len(m.us) == 1 else "II") or m.chain == (4,)
    assert realizable_degrees(p) == set(range(1, max((m.degree for m in ms), default=0) + 1))
