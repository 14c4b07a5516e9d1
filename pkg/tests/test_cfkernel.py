import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from wahlkit.cfkernel import (
    CQS,
    blow_down_step,
    blow_up_step,
    dual,
    evaluate,
    expand,
    format_chain,
    is_valid,
    is_zero_cf,
    matrix_of,
    minimal_model,
    mod_inverse,
    parse_chain,
)
from wahlkit.errors import InvalidChain, NotContractible, NotCoprime, OutOfRange

coprime = st.integers(2, 2000).flatmap(
    lambda m: st.integers(1, m - 1).filter(lambda q: gcd(m, q) == 1).map(lambda q: (m, q))
)


def test_expand_examples():
    assert expand(19, 7) == (3, 4, 2)
    assert expand(19, 12) == (2, 3, 2, 3)
    assert expand(Fraction(81, 44)) == (2, 7, 2, 2, 3)


def test_evaluate_examples():
    assert evaluate([3, 4, 2]) == Fraction(19, 7)
    assert evaluate([1, 1]) == 0
    with pytest.raises(InvalidChain):
        evaluate([])
    with pytest.raises(InvalidChain):
        evaluate([1, 1, 1])


def test_expand_errors():
    with pytest.raises(OutOfRange):
        expand(5, 5)
    with pytest.raises(NotCoprime):
        expand(12, 8)


def test_matrix_examples():
    assert matrix_of([2]) == ((2, -1), (1, 0))
    assert matrix_of([3, 4, 2]) == ((19, -11), (7, -4))


def test_mod_inverse():
    assert mod_inverse(7, 19) == 11
    assert mod_inverse(3, 11) == 4
    assert mod_inverse(1, 9) == 1
    with pytest.raises(NotCoprime):
        mod_inverse(4, 10)


def test_dual_example():
    assert dual([3, 4, 2]) == (2, 3, 2, 3)
    with pytest.raises(InvalidChain):
        dual([1, 2])


def test_blow_up_down_inverse():
    c = (3, 4, 2)
    for i in range(2, len(c) + 2):
        up = blow_up_step(c, i)
        assert blow_down_step(up, i) == c
    with pytest.raises(NotContractible):
        blow_down_step((1, 1), 1)
    with pytest.raises(NotContractible):
        blow_down_step((2, 3), 1)


def test_zero_cf_recognition():
    assert is_zero_cf([1, 1])
    assert is_zero_cf([2, 1, 2])
    assert is_zero_cf([1, 2, 2, 2, 1])
    assert is_zero_cf([3, 1, 2, 3, 1])
    assert not is_zero_cf([2, 2])
    assert not is_zero_cf([1])


def test_cqs():
    c = CQS(19, 7).check()
    assert c.chain == (3, 4, 2)
    assert c.dual_chain == (2, 3, 2, 3)
    assert c.omega_inverse == 11
    with pytest.raises(NotCoprime):
        CQS(4, 2).check()


def test_parse_and_format():
    assert parse_chain("[2,2*,6]") == ((2, 2, 6), 2)
    assert parse_chain("[u{10},2]") == ((10, 2), 1)
    assert parse_chain("[]") == ((), None)
    assert format_chain((2, 2, 6), bar=2) == "[2,2*,6]"
    assert format_chain((10, 2), central=1) == "[u{10},2]"
    for bad in ("2,3", "[2,,3]", "[2*,3*]"):
        with pytest.raises(ValueError):
            parse_chain(bad)


@given(coprime)
def test_round_trip(mq):
    m, q = mq
    assert evaluate(expand(m, q)) == Fraction(m, q)


@given(coprime)
def test_duality(mq):
    m, q = mq
    c = expand(m, q)
    assert dual(c) == expand(m, m - q)
    assert is_zero_cf((*c, 1, *reversed(dual(c))))


@given(coprime)
def test_matrix_identity(mq):
    m, q = mq
    qi = mod_inverse(q, m)
    assert matrix_of(expand(m, q)) == ((m, -qi), (q, (1 - q * qi) // m))


@given(coprime, st.lists(st.integers(0, 50), max_size=6), st.integers(0, 2**32))
def test_minimal_model_confluent(mq, spots, seed):
    c = expand(*mq)
    for s in spots:
        c = blow_up_step(c, 2 + s % len(c))
    assert is_valid(c)
    assert minimal_model(c) == expand(*mq)
    assert minimal_model(c, random.Random(seed)) == expand(*mq)
