"""Exact Hirzebruch-Jung continued fractions.

A chain is a tuple of positive ints ``(e1, ..., er)`` standing for
``e1 - 1/(e2 - 1/(... - 1/er))``.  Positions in the public API are 1-based so
they line up with the usual ``e_i`` indexing; the empty tuple is the smooth
point and is accepted wherever concatenation makes sense.
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Sequence

from .errors import InvalidChain, NotContractible, NotCoprime, OutOfRange

Chain = tuple[int, ...]

ZERO_BASES = ((1, 1), (1,))


def _check_tails(chain: Sequence[int]) -> tuple[int, int]:
    """Integer form of the validity check; returns (numerator, denominator)."""
    if not chain:
        raise InvalidChain("empty chain has no value")
    num, den = 1, 0
    for pos, e in enumerate(reversed(chain)):
        if e < 1:
            raise InvalidChain(f"non-positive entry in {list(chain)}")
        if pos and num <= 0:
            raise InvalidChain(f"a tail of {list(chain)} is not positive")
        num, den = e * num - den, num
    if num < 0:
        raise InvalidChain(f"{list(chain)} has negative value")
    return num, den


def evaluate(chain: Sequence[int]) -> Fraction:
    """Value of the chain; raises InvalidChain when a tail condition fails."""
    num, den = _check_tails(chain)
    return Fraction(num, den)


def is_valid(chain: Sequence[int]) -> bool:
    try:
        _check_tails(chain)
    except InvalidChain:
        return False
    return True


def expand(m: int | Fraction, q: int | None = None) -> Chain:
    """Chain with all entries >= 2 whose value is m/q."""
    if q is None:
        frac = Fraction(m)
        m, q = frac.numerator, frac.denominator
    if not 0 < q < m:
        raise OutOfRange(f"need 0 < q < m, got m={m}, q={q}")
    if gcd(m, q) != 1:
        raise NotCoprime(f"gcd({m}, {q}) != 1")
    out = []
    while q:
        e = -(-m // q)  # ceiling
        out.append(e)
        m, q = q, e * q - m
    return tuple(out)


def blow_down_step(chain: Sequence[int], index: int) -> Chain:
    """Contract the 1 at 1-based ``index``."""
    chain = tuple(chain)
    if chain in ZERO_BASES:
        raise NotContractible(f"{list(chain)} is already minimal")
    if not 1 <= index <= len(chain) or chain[index - 1] != 1:
        raise NotContractible(f"no 1 at position {index} of {list(chain)}")
    i = index - 1
    out = list(chain)
    if i > 0:
        out[i - 1] -= 1
    if i < len(out) - 1:
        out[i + 1] -= 1
    del out[i]
    return tuple(out)


def blow_up_step(chain: Sequence[int], index: int) -> Chain:
    """Insert a 1 that ends up at 1-based ``index`` and bump its neighbours."""
    chain = list(chain)
    if not 1 <= index <= len(chain) + 1:
        raise IndexError(f"blow-up position {index} out of range for {chain}")
    i = index - 1
    if i > 0:
        chain[i - 1] += 1
    if i < len(chain):
        chain[i] += 1
    chain.insert(i, 1)
    return tuple(chain)


def minimal_model(chain: Sequence[int], rng: random.Random | None = None) -> Chain:
    """Contract 1s until the chain is [1,1], [1] or has all entries >= 2.

    Expects a valid chain.  With ``rng`` the 1 to contract is picked at
    random, which is how confluence gets tested.
    """
    if rng is not None:
        chain = tuple(chain)
        while 1 in chain and chain not in ZERO_BASES:
            ones = [i + 1 for i, e in enumerate(chain) if e == 1]
            chain = blow_down_step(chain, rng.choice(ones))
        return chain
    out: list[int] = []
    for e in chain:
        # a 1 on top of the stack always has e as its right neighbour
        while out and out[-1] == 1 and e > 1:
            out.pop()
            e -= 1
            if out:
                out[-1] -= 1
        out.append(e)
    while len(out) >= 2 and out[-1] == 1 and out != [1, 1]:
        out.pop()
        out[-1] -= 1
    return tuple(out)


def is_zero_cf(chain: Sequence[int]) -> bool:
    if not is_valid(chain):
        return False
    return minimal_model(chain) == (1, 1)


def dual(chain: Sequence[int]) -> Chain:
    """expand(m, m-q) for a minimal chain of value m/q."""
    value = evaluate(chain)
    if value <= 1 or min(chain) < 2:
        raise InvalidChain(f"{list(chain)} is not a minimal chain with value > 1")
    m, q = value.numerator, value.denominator
    return expand(m, m - q)


def matrix_of(chain: Sequence[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Product of the factors [[e, -1], [1, 0]]."""
    a, b, c, d = 1, 0, 0, 1
    for e in chain:
        a, b, c, d = a * e + b, -a, c * e + d, -c
    return ((a, b), (c, d))


def mod_inverse(q: int, m: int) -> int:
    if gcd(q, m) != 1:
        raise NotCoprime(f"gcd({q}, {m}) != 1")
    if m == 1:
        return 1
    return pow(q, -1, m)


class CQS(NamedTuple):
    """Cyclic quotient singularity 1/Delta(1, Omega)."""

    delta: int
    omega: int

    def check(self) -> "CQS":
        if not 0 < self.omega < self.delta:
            raise OutOfRange(f"need 0 < Omega < Delta, got {self}")
        if gcd(self.delta, self.omega) != 1:
            raise NotCoprime(f"gcd{tuple(self)} != 1")
        return self

    @property
    def chain(self) -> Chain:
        return expand(self.delta, self.omega)

    @property
    def dual_chain(self) -> Chain:
        return expand(self.delta, self.delta - self.omega)

    @property
    def omega_inverse(self) -> int:
        return mod_inverse(self.omega, self.delta)


# --- text form -----------------------------------------------------------

_CHAIN_RE = re.compile(r"^\s*\[(.*)\]\s*$")
_ENTRY_RE = re.compile(r"^\s*(?:(\d+)\s*(\*)?|u\{(\d+)\})\s*$")


def parse_chain(text: str) -> tuple[Chain, int | None]:
    """Parse ``"[2,2*,6]"``; returns the chain and the 1-based marked position.

    A mark is either a trailing ``*`` (bar) or ``u{10}`` (central mark).
    """
    m = _CHAIN_RE.match(text)
    if not m:
        raise ValueError(f"not a chain literal: {text!r}")
    body = m.group(1).strip()
    if not body:
        return (), None
    entries, mark = [], None
    for pos, tok in enumerate(body.split(","), start=1):
        t = _ENTRY_RE.match(tok)
        if not t:
            raise ValueError(f"bad chain entry {tok!r} in {text!r}")
        value = t.group(1) or t.group(3)
        if t.group(2) or t.group(3):
            if mark is not None:
                raise ValueError(f"more than one marked entry in {text!r}")
            mark = pos
        entries.append(int(value))
    return tuple(entries), mark


def format_chain(chain: Sequence[int], bar: int | None = None, central: int | None = None) -> str:
    parts = []
    for pos, e in enumerate(chain, start=1):
        if pos == central:
            parts.append(f"u{{{e}}}")
        elif pos == bar:
            parts.append(f"{e}*")
        else:
            parts.append(str(e))
    return "[" + ",".join(parts) + "]"
