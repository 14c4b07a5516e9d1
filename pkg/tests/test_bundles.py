from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from wahlkit.bundles import (
    degree4_witness,
    fiber_type_degrees,
    hec_from_chain,
    hom_dimensions,
    marking_bundle_chain,
    realizable_rank_degree,
    twist,
)
from wahlkit.errors import MissingPullback, NotCoprime, NotNef
from wahlkit.geometry import parse_sing_chain
from wahlkit.marking import classify_markings

rank_degree = st.integers(2, 60).flatmap(
    lambda n: st.integers(-500, 500).filter(lambda d: gcd(n, d) == 1).map(lambda d: (n, d))
)


def hom_oracle(text):
    """hom(E_j, E_i) = -n_j n_i (Gamma_{i+1} + ... + Gamma_j).K straight from the K-intersections."""
    s = parse_sing_chain(text)
    ks = s.k_intersections()
    size = len(s.sings)
    return [
        [-s.sings[j].n * s.sings[i].n * sum(ks[i:j], Fraction(0)) if j > i else 0 for i in range(size)]
        for j in range(size)
    ]


def test_single_singularity():
    smooth, e = hec_from_chain(parse_sing_chain("(0)-[5/2]"))
    assert (smooth.rank, smooth.degree) == (1, 0)
    assert (e.rank, e.degree, e.c1_sq, e.c2) == (5, -7, 9, 6)
    assert e.slope == Fraction(-7, 5)


@pytest.mark.parametrize("n", [2, 7, 30, 149])
def test_family_degree(n):
    for a in range(1, n):
        if gcd(n, a) == 1:
            assert hec_from_chain(parse_sing_chain(f"(0)-[{n}/{a}]"))[1].degree == -n - a


def test_singular_start_needs_a_curve():
    with pytest.raises(MissingPullback):
        hec_from_chain(parse_sing_chain("[5/2]-(1)"))
    first, _ = hec_from_chain(parse_sing_chain("[5/2]-(1)"), a_self=1)
    # a_self = 1 gives A.K = -a/n, so deg = -a
    assert first.degree == -2


@pytest.mark.parametrize("text", ["(0)-[5/2]-(1)", "(0)-[4/3]-(1)-[6/5]-(1)-(2)-(2)", "(2)-(1)-[3/1]-(1)-[27/11]-(1)-[7/3]-(1)"])
def test_hom_matches_oracle(text):
    assert hom_dimensions(parse_sing_chain(text)) == hom_oracle(text)


def test_hom_example():
    assert hom_dimensions(parse_sing_chain("(0)-[5/2]-(1)")) == [[0, 0, 0], [7, 0, 0], [2, 3, 0]]
    assert hom_dimensions(parse_sing_chain("(2)-(2)")) == [[0] * 3] * 3


def test_hom_needs_nef():
    with pytest.raises(NotNef):
        hom_dimensions(parse_sing_chain("[2/1]-(1)-[3/1]"))


@settings(max_examples=30)
@given(st.integers(2, 25).flatmap(lambda n: st.integers(1, n - 1).filter(lambda a: gcd(n, a) == 1).map(lambda a: (n, a))))
def test_marking_bundles(p):
    for m in classify_markings(p):
        s = marking_bundle_chain(m)
        for q, r in zip(s.sings, hec_from_chain(s, a_self=1)):
            assert (r.degree + q.a) % q.n == 0
            assert gcd(r.rank, r.degree) == 1
        assert all(v >= 0 for row in hom_dimensions(s) for v in row)


def test_fiber_type_and_twist():
    assert fiber_type_degrees(5, 2, 3) == (-3, -2)
    assert twist(-3, 5) == -17
    assert twist(twist(7, 5), 5) == 7


@given(rank_degree)
def test_degree4_witness_reaches_degree(nd):
    n, d = nd
    w = degree4_witness(n, d)
    target = twist(d, n) if w["twisted"] else d
    assert fiber_type_degrees(n, w["a"], w["hirzebruch"])[0] == target
    assert w["hirzebruch"] >= 0


def test_realizability_verdicts():
    v = realizable_rank_degree(7, -9, 5)
    assert v.realizable and v.witness["marking_degree"] >= 5
    no = realizable_rank_degree(3, 1, 9)
    assert not no.realizable
    assert no.certificate == {"a_values": [1, 2], "marking_degrees": list(range(1, 9))}
    assert no.to_json()["verdict"] == "NOT-REALIZABLE"
    assert realizable_rank_degree(1, 5, 9).realizable
    assert realizable_rank_degree(3, 1, 4).witness["hirzebruch"] == 2


def test_realizability_errors():
    with pytest.raises(NotCoprime):
        realizable_rank_degree(4, 2, 5)
    with pytest.raises(ValueError):
        realizable_rank_degree(3, 1, 10)
    with pytest.raises(ValueError):
        realizable_rank_degree(0, 1, 5)
