from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from wahlkit.errors import BoundTooSmall, InvalidChain, InvariantViolation, NoSlide, NotDegree8
from wahlkit.geometry import (
    SingChain,
    block_discrepancies,
    build_fake_wpp,
    build_w_hat,
    cone_type,
    degree8_fiber_class,
    end_discrepancies,
    end_inverses,
    extremal_p_resolutions,
    inverse_diagonal,
    k_squared,
    m_resolutions,
    parse_sing_chain,
    slide,
    slide_numerics,
)
from wahlkit.marking import classify_markings, marking_from_marked
from wahlkit.wahl import SMOOTH, WahlPair, wahl_chain

pairs = st.integers(2, 120).flatmap(
    lambda n: st.integers(1, n - 1).filter(lambda a: gcd(n, a) == 1).map(lambda a: WahlPair(n, a))
)
# chains of (n, 1) have length n, and the dense oracle is cubic in the length
oracle_pairs = st.integers(2, 40).flatmap(
    lambda n: st.integers(1, n - 1).filter(lambda a: gcd(n, a) == 1).map(lambda a: WahlPair(n, a))
)
minimal_chains = st.lists(st.integers(2, 9), min_size=1, max_size=8)


@given(minimal_chains)
def test_discrepancies_match_linear_solve(chain):
    assert block_discrepancies(chain) == oracles.discrepancies(chain)


@given(minimal_chains, st.data())
def test_inverse_diagonal_matches_linear_solve(chain, data):
    j = data.draw(st.integers(0, len(chain) - 1))
    assert inverse_diagonal(chain, j) == oracles.inverse_diagonal(chain, j)


def test_end_discrepancies_exhaustive():
    for n in range(2, 201):
        for a in range(1, n):
            if gcd(n, a) == 1:
                assert end_discrepancies(WahlPair(n, a)) == (Fraction(n - a, n), Fraction(a, n))


@given(oracle_pairs)
def test_end_inverses_match_linear_solve(p):
    e = wahl_chain(p)
    assert end_inverses(p) == (oracles.inverse_diagonal(e, 0), oracles.inverse_diagonal(e, len(e) - 1))


@given(pairs)
def test_discrepancies_in_unit_interval(p):
    assert all(0 < d < 1 for d in block_discrepancies(wahl_chain(p)))


def test_parse_sing_chain_round_trip():
    for text in ("(0)-[4/3]-(1)-[6/5]-(1)-(2)-(2)", "[2/1]-(1)-[3/1]", "(3)-[2/1]-(2)"):
        assert str(parse_sing_chain(text)) == text
    s = parse_sing_chain("(3)-(4)-(2)")
    assert s.sings == (SMOOTH,) * 4
    for bad in ("[2/1]-[3/1]", "(1)--(2)", "[2/1"):
        with pytest.raises(ValueError):
            parse_sing_chain(bad)


def test_k_intersections_of_19_7():
    s = parse_sing_chain("[2/1]-(1)-[3/1]")
    assert s.k_intersections() == [Fraction(1, 6)]
    assert s.deltas() == [1]
    assert s.contraction() == (19, 7)


def test_slide_examples():
    assert slide((3, 2, 2, 7, 2), 2, "left")[1] == (5, 2, 1, 3, 2, 2, 7, 2)
    assert slide((2, 2, 2, 7), 2, "right")[1] == (2, 2, 2, 7, 1, 2, 2, 2, 2, 2, 5, 7)
    with pytest.raises(NoSlide):
        slide((2, 2, 2, 7), 1, "left")
    with pytest.raises(InvalidChain):
        slide((2, 2, 2), 1, "right")


@given(pairs, st.data())
def test_slide_numerics_identities(p, data):
    i = data.draw(st.integers(1, len(wahl_chain(p))))
    s = slide_numerics(p, i)
    n, a = p
    assert s.delta == s.n1 * a - s.a1 * n == s.n2 * (n - a) - n * s.a2_read
    assert s.n1 + s.n2 == s.delta * n
    assert s.a1 + s.a2 == s.delta * a
    assert s.gamma_k < 0


def test_slide_numerics_at_the_right_end():
    s = slide_numerics((14, 5), 6)
    assert (s.n2, s.a2_read, s.delta) == (1, 0, 9)


def test_special_form_toric_models():
    for x in range(2, 9):
        m = marking_from_marked((2,) * x + (x + 4,), (2,) * (x - 1) + (1, x - 1), 1)
        s, tail = build_w_hat(m)
        assert str(s) == f"(0)-[{x + 2}/{x + 1}]-(1)-[{x + 4}/{x + 3}]-(1)-(2)-(2)-(2)-(2)"
        assert tail.k_squared == m.degree == 4


def test_toric_model_of_27_11():
    m = marking_from_marked((3, 2, 8, 2, 2, 2, 4, 2), (1, 1, 8, 2, 2, 1, 4, 1), 3)
    assert str(build_w_hat(m)[0]) == "(2)-(1)-[3/1]-(1)-[27/11]-(1)-[7/3]-(1)"
    f = build_fake_wpp(m)
    assert (f.weights, f.d, f.q1_inv, f.q2_inv) == ((729, 5, 22), 8, 2, 13)


def test_closing_section_k_degree_at_most_two():
    # K.C >= 0 only occurs at degree <= 2; the toric model is still returned there
    seen = []
    for n in range(2, 20):
        for a in range(1, n):
            if gcd(n, a) == 1:
                for m in classify_markings((n, a)):
                    c_k = build_w_hat(m)[1].c_k
                    if c_k >= 0:
                        seen.append(m.degree)
    assert seen and max(seen) <= 2


@settings(max_examples=40)
@given(st.integers(2, 30).flatmap(lambda n: st.integers(1, n - 1).filter(lambda a: gcd(n, a) == 1).map(lambda a: (n, a))))
def test_k_squared_bookkeeping(p):
    for m in classify_markings(p):
        assert k_squared(m) == m.degree == build_w_hat(m)[1].k_squared


def test_degree8_classifier():
    a = marking_from_marked(wahl_chain((29, 5)), (6, 7, 1, 2, 2, 2, 2, 2, 2), 1)
    b = marking_from_marked(wahl_chain((29, 5)), (6, 6, 2, 1, 3, 2, 2, 2, 2), 1)
    assert degree8_fiber_class(a).surface == "F0"
    assert degree8_fiber_class(b).surface == "F1"
    assert degree8_fiber_class(a).blowup_clause == "undetermined"
    low = next(m for m in classify_markings((29, 5)) if m.degree < 8)
    with pytest.raises(NotDegree8):
        degree8_fiber_class(low)


def test_m_resolutions_19_7():
    got = sorted(str(s) for s in m_resolutions((19, 7)))
    assert got == ["(3)-(4)-(2)", "(3)-[2/1]-(2)", "[2/1]-(1)-[3/1]"]
    assert [str(s) for s in extremal_p_resolutions((19, 7))] == ["[2/1]-(1)-[3/1]"]


def test_m_resolution_bound_too_small():
    with pytest.raises(BoundTooSmall):
        m_resolutions((19, 7), length_bound=2)
    assert len(m_resolutions((19, 7), length_bound=4)) == 3


def test_extremal_11_3():
    (s,) = extremal_p_resolutions((11, 3))
    assert str(s) == "[2/1]-(3)"
    assert s.k_intersections()[0] > 0


def test_cone_type():
    assert cone_type((1, 0), (0, 1)) == (1, 0)
    m, q = cone_type((0, 1), (5, -2))
    assert m == 5 and (-2 + q * 1) % 5 == 0
    with pytest.raises(InvariantViolation):
        cone_type((2, 2), (1, 0))


def test_sing_chain_shape_is_checked():
    with pytest.raises(ValueError):
        SingChain((SMOOTH,), (1,))
