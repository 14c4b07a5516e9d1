import pytest
from hypothesis import given, strategies as st

from wahlkit.errors import IdentityViolation, UnknownFamily
from wahlkit.diophantine import (
    MarkovTriple,
    degree8_relations,
    hodge_inequality,
    hodge_inequality_type1,
    markov_correspondence,
    markov_pair,
    markov_triples,
    pell_family,
    pell_norm,
    pell_seeds,
    pell_sequence,
    square_filter,
    t_singularity_equation,
)
from wahlkit.geometry import parse_sing_chain


def test_first_markov_triples():
    got = [tuple(t) for t in markov_triples(200)]
    assert got == [(1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29), (1, 13, 34), (1, 34, 89), (2, 29, 169), (5, 13, 194)]


def test_markov_triple_check():
    with pytest.raises(IdentityViolation):
        MarkovTriple(1, 2, 3).check()
    with pytest.raises(ValueError):
        MarkovTriple(2, 1, 5).check()
    with pytest.raises(ValueError):
        markov_pair((1, 1, 1))


def test_markov_pair_2_5_29():
    assert markov_pair((2, 5, 29)) == (29, 22)
    c = markov_correspondence((2, 5, 29))
    assert sorted(c.fake_wpp.weights) == [4, 25, 841]
    assert c.marking.degree == 9


def test_t_singularity_equation():
    # degree 9 reduces to the Markov equation
    assert t_singularity_equation(5, 1, 2, 1, 1)
    assert not t_singularity_equation(5, 1, 3, 1, 1)
    assert square_filter(1, 1)
    assert not square_filter(2, 2)
    with pytest.raises(ValueError):
        t_singularity_equation(1, 1, 1, 5, 6)


@pytest.mark.parametrize(
    "text", ["[4/1]-(1)-[19/6]-(1)-[2/1]-(1)", "(1)-[3/2]-(1)-[29/22]-(1)-[5/4]", "[5/1]-(1)-[29/7]-(1)-[3/1]-(1)"]
)
def test_degree8_relations(text):
    assert degree8_relations(parse_sing_chain(text))


def test_degree8_relations_shape():
    with pytest.raises(ValueError):
        degree8_relations(parse_sing_chain("[2/1]-(1)-[3/1]"))


@given(st.integers(1, 10**6))
def test_type1_hodge_margin(t):
    n, a = 2 * t + 3, 2
    assert (n + a) ** 2 - 5 * (a * n - 1) == 4 * t * t
    assert hodge_inequality_type1(n, a, 5)
    # the norm form gives a different margin on the same family
    assert pell_norm(n, -5 - 2 * t, 5) + 1 == 4 * (t - 1) * (t + 1)


def test_hodge_inequality():
    assert hodge_inequality(29, 4, 25, 9)
    assert not hodge_inequality(29, 4, 25, 10)


def test_printed_seeds_that_were_corrected():
    fixed = {k: s for k, s in pell_seeds().items() if s.d != s.d_printed}
    assert sorted(k[:2] for k in fixed) == [(6, -3), (8, -7), (8, -7)]
    for s in fixed.values():
        assert pell_norm(s.n[0], s.d_printed[0], s.degree) != s.e
        assert pell_norm(s.n[0], s.d[0], s.degree) == s.e
        # the printed recursion run from the printed seeds breaks the norm at k = 2 as well
        (n2, d2) = pell_sequence(s, 3, printed=True)[2]
        assert pell_norm(n2, d2, s.degree) != s.e


@pytest.mark.parametrize("key", sorted(pell_seeds()))
def test_pell_family(key):
    members = pell_family(*key, count=10)
    seed = pell_seeds()[key]
    for m in members[1:]:
        assert m.d == -m.n - members[m.k - 1].n
        assert pell_norm(m.n, m.d, seed.degree) == seed.e
        if m.k >= seed.k_min:
            assert m.shape == m.chain
            assert all(mk.degree == seed.degree for mk in m.markings)


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        pell_family(8, 1)
