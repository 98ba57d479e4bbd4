"""Postorder and lexicographic ordinals on D_N and the rearrangements tau, sigma.

``tau`` sends the n-th interval in postorder to the n-th interval in
lexicographic order; ``sigma`` is its inverse. Everything here is integer
arithmetic and works for every depth up to ``MAX_DEPTH``.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .dyadic import (
    DyadicInterval,
    IntervalSet,
    check_depth,
    interval_of_index,
)

__all__ = [
    "lex_ordinal",
    "lex_interval",
    "two_adic_valuation",
    "valuation_sum",
    "postorder_sequence",
    "post_ordinal_traversal",
    "post_ordinal_closed",
    "post_interval",
    "level_of",
    "pos_of",
    "tau",
    "sigma",
    "precedes",
    "precedes_geometric",
    "Rearrangement",
    "build_rearrangement",
    "post_order_interval",
    "lex_order_interval",
]


def _size(N: int) -> int:
    return (1 << (N + 1)) - 1


def lex_ordinal(iv: DyadicInterval) -> int:
    return (1 << iv.level) + iv.pos


def lex_interval(n: int, N: int) -> DyadicInterval:
    check_depth(N)
    if not 1 <= n <= _size(N):
        raise ValueError(f"ordinal {n} outside 1..{_size(N)}")
    return interval_of_index(n)


def two_adic_valuation(j: int) -> int:
    """Exponent of the largest power of two dividing ``j``."""
    if j < 1:
        raise ValueError(f"valuation needs a positive integer, got {j}")
    return (j & -j).bit_length() - 1


def valuation_sum(k: int) -> int:
    """``sum(two_adic_valuation(j) for j in 1..k)`` in O(1).

    Legendre's formula for the 2-adic valuation of ``k!``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return k - bin(k).count("1")


@lru_cache(maxsize=32)
def postorder_sequence(N: int) -> tuple[DyadicInterval, ...]:
    """D_N listed by an explicit left, right, node traversal."""
    check_depth(N)
    out: list[DyadicInterval] = []
    stack = [(0, 0, False)]
    while stack:
        level, pos, expanded = stack.pop()
        if expanded or level == N:
            out.append(DyadicInterval(level, pos))
            continue
        stack.append((level, pos, True))
        stack.append((level + 1, 2 * pos + 1, False))
        stack.append((level + 1, 2 * pos, False))
    return tuple(out)


@lru_cache(maxsize=32)
def _traversal_ordinals(N: int) -> dict[DyadicInterval, int]:
    return {iv: i + 1 for i, iv in enumerate(postorder_sequence(N))}


def post_ordinal_traversal(iv: DyadicInterval, N: int) -> int:
    """Postorder ordinal found by walking the tree; slow, used as oracle."""
    iv.check_in(check_depth(N))
    return _traversal_ordinals(N)[iv]


def post_ordinal_closed(iv: DyadicInterval, N: int) -> int:
    iv.check_in(check_depth(N))
    k = iv.pos
    return (k + 1) * ((1 << (N - iv.level + 1)) - 1) + valuation_sum(k)


def post_interval(n: int, N: int) -> DyadicInterval:
    """The interval with postorder ordinal ``n``, by descent from the root."""
    check_depth(N)
    if not 1 <= n <= _size(N):
        raise ValueError(f"ordinal {n} outside 1..{_size(N)}")
    level = pos = 0
    lo, size = 1, _size(N)
    while n != lo + size - 1:
        size >>= 1
        level += 1
        if n < lo + size:
            pos = 2 * pos
        else:
            lo += size
            pos = 2 * pos + 1
    return DyadicInterval(level, pos)


def level_of(iv: DyadicInterval, N: int) -> int:
    iv.check_in(check_depth(N))
    # ceil(log2(k + 1)) == k.bit_length() for k >= 0
    return iv.pos.bit_length() + N - iv.level


def pos_of(iv: DyadicInterval, N: int) -> int:
    iv.check_in(check_depth(N))
    level, k = iv.level, iv.pos
    if k == 0:
        return (1 << (N - level)) - 1
    L = level_of(iv, N)
    start = 1 << (L - N + level - 1)
    partial = valuation_sum(k) - valuation_sum(start)
    return (k + 1) * ((1 << (N - level + 1)) - 1) + start - (1 << L) - 1 + partial


def tau(iv: DyadicInterval, N: int) -> DyadicInterval:
    return DyadicInterval(level_of(iv, N), pos_of(iv, N))


def sigma(iv: DyadicInterval, N: int) -> DyadicInterval:
    iv.check_in(check_depth(N))
    return post_interval(lex_ordinal(iv), N)


def precedes(a: DyadicInterval, b: DyadicInterval, N: int) -> bool:
    """Postorder comparison ``a`` before-or-equal ``b``, decided by ordinals."""
    return post_ordinal_closed(a, N) <= post_ordinal_closed(b, N)


def precedes_geometric(a: DyadicInterval, b: DyadicInterval) -> bool:
    """``a`` lies inside ``b``, or is disjoint from and left of ``b``."""
    if a.level >= b.level and a.pos >> (a.level - b.level) == b.pos:
        return True
    # disjoint and left: right end of a <= left end of b
    return (a.pos + 1) << b.level <= b.pos << a.level


class Rearrangement:
    """A bijection of D_N stored as forward and inverse ordinal tables.

    Tables are indexed by lexicographic ordinal minus one.
    """

    __slots__ = ("depth", "kind", "forward", "inverse")

    def __init__(self, N: int, forward: Sequence[int], kind: str = "explicit") -> None:
        check_depth(N)
        size = _size(N)
        forward = tuple(forward)
        if len(forward) != size:
            raise ValueError(f"table has {len(forward)} entries, D_{N} has {size}")
        inverse = [-1] * size
        for i, j in enumerate(forward):
            if not 0 <= j < size or inverse[j] != -1:
                raise ValueError("table is not a permutation of D_N")
            inverse[j] = i
        self.depth = N
        self.kind = kind
        self.forward = forward
        self.inverse = tuple(inverse)

    @classmethod
    def identity(cls, N: int) -> "Rearrangement":
        return cls(N, range(_size(N)), kind="identity")

    @classmethod
    def postorder(cls, N: int) -> "Rearrangement":
        table = [tau(interval_of_index(n), N).index - 1 for n in range(1, _size(N) + 1)]
        return cls(N, table, kind="postorder")

    @classmethod
    def inverse_postorder(cls, N: int) -> "Rearrangement":
        table = [post_interval(n, N).index - 1 for n in range(1, _size(N) + 1)]
        return cls(N, table, kind="inverse_postorder")

    @classmethod
    def from_pairs(cls, N: int, pairs: Iterable[tuple[DyadicInterval, DyadicInterval]]) -> "Rearrangement":
        table: list[Optional[int]] = [None] * _size(N)
        for src, dst in pairs:
            src.check_in(N)
            dst.check_in(N)
            table[src.index - 1] = dst.index - 1
        if any(t is None for t in table):
            raise ValueError("table does not cover D_N")
        return cls(N, table)

    @classmethod
    def random(cls, N: int, rng: random.Random) -> "Rearrangement":
        table = list(range(_size(N)))
        rng.shuffle(table)
        return cls(N, table, kind="random")

    def __call__(self, iv: DyadicInterval) -> DyadicInterval:
        iv.check_in(self.depth)
        return interval_of_index(self.forward[iv.index - 1] + 1)

    def apply_index(self, n: int) -> int:
        return self.forward[n - 1] + 1

    def inverted(self) -> "Rearrangement":
        kind = {"postorder": "inverse_postorder", "inverse_postorder": "postorder"}.get(self.kind, "explicit")
        obj = Rearrangement.__new__(Rearrangement)
        obj.depth, obj.kind = self.depth, kind
        obj.forward, obj.inverse = self.inverse, self.forward
        return obj

    def image(self, C: IntervalSet) -> IntervalSet:
        if C.depth != self.depth:
            raise ValueError("depth mismatch")
        fwd = self.forward
        mask = 0
        for n in C.indices():
            mask |= 1 << fwd[n - 1]
        return IntervalSet.from_mask(self.depth, mask)

    def preimage(self, C: IntervalSet) -> IntervalSet:
        return self.inverted().image(C)

    def pairs(self) -> list[tuple[DyadicInterval, DyadicInterval]]:
        return [(interval_of_index(i + 1), interval_of_index(j + 1)) for i, j in enumerate(self.forward)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rearrangement):
            return NotImplemented
        return self.depth == other.depth and self.forward == other.forward

    def __repr__(self) -> str:
        return f"Rearrangement(N={self.depth}, kind={self.kind!r})"


def build_rearrangement(N: int, kind: str = "postorder", table: Optional[Sequence] = None) -> Rearrangement:
    """Materialise ``postorder`` (tau), ``inverse_postorder`` (sigma) or an explicit table.

    An explicit ``table`` is either a sequence of target ordinals indexed by
    lexicographic position, or a sequence of ``(source, target)`` interval pairs.
    """
    if kind == "postorder":
        return Rearrangement.postorder(N)
    if kind == "inverse_postorder":
        return Rearrangement.inverse_postorder(N)
    if kind == "explicit":
        if table is None:
            raise ValueError("explicit rearrangement needs a table")
        table = list(table)
        if table and isinstance(table[0], tuple):
            return Rearrangement.from_pairs(N, table)
        return Rearrangement(N, table)
    raise ValueError(f"unknown rearrangement kind {kind!r}")


@lru_cache(maxsize=32)
def _post_bits(N: int) -> tuple[int, ...]:
    """``_post_bits(N)[n]`` is the lexicographic bit of postorder ordinal ``n``."""
    return (0,) + tuple(1 << (post_interval(n, N).index - 1) for n in range(1, _size(N) + 1))


def _post_range_mask(lo: int, hi: int, N: int) -> int:
    mask = 0
    if N <= 16:
        bits = _post_bits(N)
        for n in range(lo, hi + 1):
            mask |= bits[n]
        return mask
    for n in range(lo, hi + 1):
        mask |= 1 << (post_interval(n, N).index - 1)
    return mask


def post_order_interval(j1: DyadicInterval, j2: DyadicInterval, N: int) -> IntervalSet:
    """All ``I`` with ``j1 <= I <= j2`` in postorder."""
    a1, a2 = post_ordinal_closed(j1, N), post_ordinal_closed(j2, N)
    if a1 > a2:
        raise ValueError(f"{j1} does not precede {j2} in postorder")
    return IntervalSet.from_mask(N, _post_range_mask(a1, a2, N))


def lex_order_interval(e1: DyadicInterval, e2: DyadicInterval, N: int) -> IntervalSet:
    e1.check_in(check_depth(N))
    e2.check_in(N)
    b1, b2 = lex_ordinal(e1), lex_ordinal(e2)
    if b1 > b2:
        raise ValueError(f"{e1} is lexicographically after {e2}")
    return IntervalSet.from_mask(N, ((1 << (b2 - b1 + 1)) - 1) << (b1 - 1))
