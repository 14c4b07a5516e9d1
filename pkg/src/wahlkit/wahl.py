"""Wahl singularities 1/n^2(1, na-1) and their chains."""
from __future__ import annotations

from collections import deque
from math import gcd, isqrt
from typing import Iterator, NamedTuple, Sequence

from .cfkernel import Chain, evaluate, expand
from .errors import InvalidChain, InvariantViolation, NotCoprime, OutOfRange, Sentinel


class WahlPair(NamedTuple):
    n: int
    a: int

    @property
    def is_smooth(self) -> bool:
        return self == SMOOTH

    def check(self) -> "WahlPair":
        if self.is_smooth:
            return self
        if not 0 < self.a < self.n:
            raise OutOfRange(f"need 0 < a < n, got {tuple(self)}")
        if gcd(self.n, self.a) != 1:
            raise NotCoprime(f"gcd{tuple(self)} != 1")
        return self

    def reversed(self) -> "WahlPair":
        """Pair whose chain is the reverse chain."""
        if self.is_smooth:
            return self
        return WahlPair(self.n, self.n - self.a)

    @property
    def chain(self) -> Chain:
        if self.is_smooth:
            return ()
        return wahl_chain(self)


SMOOTH = WahlPair(1, 0)


def wahl_chain(p: WahlPair | tuple[int, int]) -> Chain:
    p = WahlPair(*p)
    if p.is_smooth:
        raise Sentinel("the smooth point has no Wahl chain")
    p.check()
    return expand(p.n * p.n, p.n * p.a - 1)


def recognize_wahl(chain: Sequence[int]) -> WahlPair | None:
    if not chain or min(chain) < 2:
        return None
    try:
        value = evaluate(chain)
    except InvalidChain:
        return None
    m, q = value.numerator, value.denominator
    n = isqrt(m)
    if n * n != m or (q + 1) % n:
        return None
    a = (q + 1) // n
    if not 0 < a < n or gcd(n, a) != 1:
        return None
    return WahlPair(n, a)


def is_wahl_chain(chain: Sequence[int]) -> bool:
    return recognize_wahl(chain) is not None


def extend_right(chain: Sequence[int]) -> Chain:
    """[e1+1, e2, ..., er, 2]"""
    return (chain[0] + 1, *chain[1:], 2)


def extend_left(chain: Sequence[int]) -> Chain:
    """[2, e1, ..., e_{r-1}, er+1]"""
    return (2, *chain[:-1], chain[-1] + 1)


def generate_wahl(max_length: int) -> Iterator[tuple[WahlPair, Chain, int]]:
    """Every Wahl chain of length <= max_length, shortest first.

    Yields ``(pair, chain, center)`` with ``center`` the 1-based position
    that the initial [4] has moved to.
    """
    queue: deque[tuple[Chain, int]] = deque([((4,), 1)])
    while queue:
        chain, center = queue.popleft()
        pair = recognize_wahl(chain)
        if pair is None:
            raise InvariantViolation(f"generated {list(chain)} is not a Wahl chain")
        yield pair, chain, center
        if len(chain) < max_length:
            queue.append((extend_right(chain), center))
            queue.append((extend_left(chain), center + 1))


def wahl_history(chain: Sequence[int]) -> list[str]:
    """Moves of the Wahl algorithm producing ``chain`` from [4], in order.

    'R' appends a 2 on the right, 'L' prepends a 2 on the left.
    """
    chain = tuple(chain)
    if recognize_wahl(chain) is None:
        raise InvalidChain(f"{list(chain)} is not a Wahl chain")
    moves = []
    while chain != (4,):
        if chain[-1] == 2 and chain[0] > 2:
            moves.append("R")
            chain = (chain[0] - 1, *chain[1:-1])
        elif chain[0] == 2 and chain[-1] > 2:
            moves.append("L")
            chain = (*chain[1:-1], chain[-1] - 1)
        else:
            raise InvariantViolation(f"cannot undo a Wahl move on {list(chain)}")
    moves.reverse()
    return moves


def wahl_center(chain: Sequence[int]) -> int:
    """1-based position of the center."""
    return 1 + wahl_history(chain).count("L")


def wahl_dual(p: WahlPair | tuple[int, int]) -> Chain:
    """expand(n^2, n^2-na+1), checked against its [x.., 2, y reversed] shape."""
    p = WahlPair(*p)
    if p.is_smooth:
        raise Sentinel("the smooth point has no Wahl chain")
    n, a = p.check()
    out = expand(n * n, n * n - n * a + 1)
    ys = expand(n, a)
    xs = expand(n, n - a)
    if out != (*xs, 2, *reversed(ys)):
        raise InvariantViolation(f"dual of {tuple(p)} lacks the 2-separated shape")
    glued = (*ys[:-1], ys[-1] + xs[-1], *reversed(xs[:-1]))
    if glued != wahl_chain(p):
        raise InvariantViolation(f"Wahl chain of {tuple(p)} not rebuilt from its halves")
    return out
