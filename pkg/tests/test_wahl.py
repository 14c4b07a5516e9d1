import pytest
from hypothesis import given, strategies as st
from math import gcd

from wahlkit.errors import NotCoprime, OutOfRange, Sentinel
from wahlkit.wahl import (
    SMOOTH,
    WahlPair,
    generate_wahl,
    is_wahl_chain,
    recognize_wahl,
    wahl_center,
    wahl_chain,
    wahl_dual,
    wahl_history,
)

pairs = st.integers(2, 400).flatmap(
    lambda n: st.integers(1, n - 1).filter(lambda a: gcd(n, a) == 1).map(lambda a: WahlPair(n, a))
)


@pytest.mark.parametrize(
    "pair, chain",
    [
        ((2, 1), (4,)),
        ((3, 1), (5, 2)),
        ((9, 5), (2, 7, 2, 2, 3)),
        ((29, 22), (2, 2, 2, 10, 2, 2, 2, 2, 2, 5)),
    ],
)
def test_chain_examples(pair, chain):
    assert wahl_chain(pair) == chain
    assert recognize_wahl(chain) == pair


def test_errors():
    with pytest.raises(NotCoprime):
        wahl_chain((6, 4))
    with pytest.raises(OutOfRange):
        wahl_chain((5, 5))
    with pytest.raises(Sentinel):
        wahl_chain(SMOOTH)
    assert SMOOTH.chain == ()
    assert SMOOTH.reversed() == SMOOTH


def test_not_wahl():
    assert recognize_wahl((2, 2)) is None
    assert recognize_wahl((3, 4, 2)) is None
    assert not is_wahl_chain(())


def test_generation_is_breadth_first():
    gen = list(generate_wahl(3))
    assert [c for _, c, _ in gen] == [(4,), (5, 2), (2, 5), (6, 2, 2), (2, 5, 3), (3, 5, 2), (2, 2, 6)]


def test_history_and_center():
    assert wahl_history((2, 7, 2, 2, 3)) == ["R", "R", "R", "L"]
    assert wahl_center((2, 7, 2, 2, 3)) == 2
    for _, chain, center in generate_wahl(9):
        assert wahl_center(chain) == center


@given(pairs)
def test_sum_rule(p):
    c = wahl_chain(p)
    assert sum(c) == 3 * len(c) + 1


@given(pairs)
def test_reversal(p):
    assert wahl_chain(p)[::-1] == wahl_chain(p.reversed())


@given(pairs)
def test_dual_shape(p):
    # dual lengths satisfy r + r' = sum(e) - r + 2 = 2r + 3
    assert len(wahl_dual(p)) == len(wahl_chain(p)) + 2
