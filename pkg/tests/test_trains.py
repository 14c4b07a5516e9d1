import pytest

from wahlkit.errors import AmbiguousBar, NoBar, NotExtremal, NotMarkovMutation
from wahlkit.geometry import parse_sing_chain
from wahlkit.trains import divisorial_train, find_bar, flip_train_over_wahl, flipping_trains, markov_train
from wahlkit.wahl import is_wahl_chain


def test_divisorial_train_over_2_1():
    t = divisorial_train((2, 1), 4)
    assert str(t) == "[4]-[2,2*,6]-[2,2,2,2*,8]-[2,2,2,2,2,2*,10]"
    assert t.base == (4, 1)


def test_flip_train_over_2_1():
    t = flip_train_over_wahl((2, 1), 4)
    assert str(t) == "[]-[2*,5]-[2,2,2*,7]-[2,2,2,2,2*,9]"


def test_printed_third_flip_wagon_is_not_wahl():
    printed = (2, 2, 2, 2, 2, 2, 9)
    assert sum(printed) != 3 * len(printed) + 1
    assert not is_wahl_chain(printed)
    assert flip_train_over_wahl((2, 1), 4).wagons[3].pair == (7, 6)


def test_flipping_trains_over_11_3():
    trains = flipping_trains(parse_sing_chain("[2/1]-(3)"), 4)
    assert [str(t) for t in trains] == [
        "[]-[2*,5,3]-[2,3,2*,2,7,3]-[2,3,2,2,2,2*,5,7,3]",
        "[4]-[2,2*,5,4]-[2,2,3,2*,2,7,4]-[2,2,3,2,2,2,2*,5,7,4]",
    ]
    assert trains[0].orientations != trains[1].orientations


def test_markov_train():
    t = markov_train((5, 4), 2, 4)
    assert str(t) == "[4]-[2,2*,2,7]-[2,2,2,2,2*,5,7]-[2,2,2,2,2,3,2*,2,7,7]"
    assert t.base is None


@pytest.mark.parametrize("count", [1, 2, 12])
def test_wagon_recursion(count):
    t = divisorial_train((3, 1), count)
    assert len(t.wagons) == count
    for w0, w1 in zip(t.pairs, t.pairs[1:]):
        assert w0.n * w1.a - w1.n * w0.a == t.delta


def test_errors():
    with pytest.raises(ValueError):
        divisorial_train((2, 1), 0)
    with pytest.raises(NotExtremal):
        flipping_trains(parse_sing_chain("(3)-[2/1]-(2)"), 3)
    with pytest.raises(NotMarkovMutation):
        markov_train((5, 4), 4, 3)
    with pytest.raises(NoBar):
        find_bar((2, 2, 6), (19, 7))
    with pytest.raises(AmbiguousBar):
        find_bar((3, 3), (5, 3))
