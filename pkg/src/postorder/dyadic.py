"""Dyadic intervals, the complete tree D_N and Carleson constants.

Intervals are addressed internally by their lexicographic ordinal
``2**level + pos`` (1-based). With that numbering the parent of ``n`` is
``n >> 1``, its children are ``2n`` and ``2n + 1`` and the level is
``n.bit_length() - 1``. An ``IntervalSet`` is a bitmask in which bit
``n - 1`` marks membership of the interval with ordinal ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional

from .rationals import DyadicRational

__all__ = [
    "MAX_DEPTH",
    "DyadicInterval",
    "IntervalSet",
    "CarlesonResult",
    "check_depth",
    "enumerate_intervals",
    "children",
    "parent",
    "contains",
    "subtree",
    "lowermost_level",
    "carleson",
    "carleson_witness",
    "interval_of_index",
]

MAX_DEPTH = 60


def check_depth(N: int) -> int:
    if not isinstance(N, int) or isinstance(N, bool):
        raise TypeError(f"depth must be an int, got {type(N).__name__}")
    if not 0 <= N <= MAX_DEPTH:
        raise ValueError(f"depth must satisfy 0 <= N <= {MAX_DEPTH}, got {N}")
    return N


@dataclass(frozen=True, order=True, slots=True)
class DyadicInterval:
    """The half-open interval ``[pos / 2**level, (pos + 1) / 2**level)``.

    Ordering of instances is lexicographic in ``(level, pos)``.
    """

    level: int
    pos: int

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError(f"negative level {self.level}")
        if not 0 <= self.pos < (1 << self.level):
            raise ValueError(f"position {self.pos} out of range for level {self.level}")

    @property
    def index(self) -> int:
        """Lexicographic ordinal ``2**level + pos``."""
        return (1 << self.level) + self.pos

    @property
    def length(self) -> DyadicRational:
        return DyadicRational(1, self.level)

    @property
    def left(self) -> Fraction:
        return Fraction(self.pos, 1 << self.level)

    @property
    def right(self) -> Fraction:
        return Fraction(self.pos + 1, 1 << self.level)

    def check_in(self, N: int) -> "DyadicInterval":
        if self.level > N:
            raise ValueError(f"{self} is not in D_{N}")
        return self

    def to_json(self) -> list[int]:
        return [self.level, self.pos]

    def __str__(self) -> str:
        return f"I[{self.level},{self.pos}]"


def interval_of_index(n: int) -> DyadicInterval:
    level = n.bit_length() - 1
    return DyadicInterval(level, n - (1 << level))


def _iter_bits(mask: int) -> Iterator[int]:
    """Yield the lexicographic ordinals whose bits are set, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


class IntervalSet:
    """An immutable subset of D_N with exact set algebra."""

    __slots__ = ("_N", "_mask")

    def __init__(self, N: int, members: Iterable[DyadicInterval] = ()) -> None:
        check_depth(N)
        mask = 0
        for iv in members:
            if iv.level > N:
                raise ValueError(f"{iv} is not in D_{N}")
            mask |= 1 << (iv.index - 1)
        self._N = N
        self._mask = mask

    @classmethod
    def from_mask(cls, N: int, mask: int) -> "IntervalSet":
        if mask < 0 or mask >> ((1 << (N + 1)) - 1):
            raise ValueError("mask has bits outside D_N")
        obj = cls.__new__(cls)
        obj._N = N
        obj._mask = mask
        return obj

    @classmethod
    def from_indices(cls, N: int, indices: Iterable[int]) -> "IntervalSet":
        mask = 0
        for n in indices:
            mask |= 1 << (n - 1)
        return cls.from_mask(N, mask)

    @classmethod
    def full(cls, N: int) -> "IntervalSet":
        check_depth(N)
        return cls.from_mask(N, (1 << ((1 << (N + 1)) - 1)) - 1)

    @property
    def depth(self) -> int:
        return self._N

    @property
    def mask(self) -> int:
        return self._mask

    def indices(self) -> Iterator[int]:
        return _iter_bits(self._mask)

    def __iter__(self) -> Iterator[DyadicInterval]:
        return (interval_of_index(n) for n in _iter_bits(self._mask))

    def __len__(self) -> int:
        return bin(self._mask).count("1")

    def __bool__(self) -> bool:
        return self._mask != 0

    def __contains__(self, iv: DyadicInterval) -> bool:
        if iv.level > self._N:
            return False
        return bool(self._mask >> (iv.index - 1) & 1)

    def _check(self, other: "IntervalSet") -> None:
        if not isinstance(other, IntervalSet):
            raise TypeError("expected an IntervalSet")
        if other._N != self._N:
            raise ValueError(f"depth mismatch: {self._N} vs {other._N}")

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        self._check(other)
        return IntervalSet.from_mask(self._N, self._mask | other._mask)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        self._check(other)
        return IntervalSet.from_mask(self._N, self._mask & other._mask)

    def __sub__(self, other: "IntervalSet") -> "IntervalSet":
        self._check(other)
        return IntervalSet.from_mask(self._N, self._mask & ~other._mask)

    def isdisjoint(self, other: "IntervalSet") -> bool:
        self._check(other)
        return not self._mask & other._mask

    def issubset(self, other: "IntervalSet") -> bool:
        self._check(other)
        return not self._mask & ~other._mask

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._N == other._N and self._mask == other._mask

    def __hash__(self) -> int:
        return hash((self._N, self._mask))

    def __repr__(self) -> str:
        body = ", ".join(str(iv) for iv in self)
        return f"IntervalSet(N={self._N}, {{{body}}})"

    def to_json(self) -> dict:
        return {"N": self._N, "intervals": [iv.to_json() for iv in self]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntervalSet":
        return cls(int(obj["N"]), (DyadicInterval(l, k) for l, k in obj["intervals"]))


def enumerate_intervals(N: int) -> list[DyadicInterval]:
    """All of D_N in lexicographic order."""
    check_depth(N)
    return [DyadicInterval(l, k) for l in range(N + 1) for k in range(1 << l)]


def children(iv: DyadicInterval, N: int) -> tuple[DyadicInterval, DyadicInterval]:
    iv.check_in(N)
    if iv.level >= N:
        raise ValueError(f"{iv} is a leaf of D_{N}")
    return DyadicInterval(iv.level + 1, 2 * iv.pos), DyadicInterval(iv.level + 1, 2 * iv.pos + 1)


def parent(iv: DyadicInterval) -> DyadicInterval:
    if iv.level == 0:
        raise ValueError("the root has no parent")
    return DyadicInterval(iv.level - 1, iv.pos >> 1)


def contains(outer: DyadicInterval, inner: DyadicInterval) -> bool:
    """True iff ``inner`` is a subset of ``outer``."""
    diff = inner.level - outer.level
    return diff >= 0 and inner.pos >> diff == outer.pos


def _subtree_mask(n: int, N: int) -> int:
    """Bitmask of all D_N intervals inside the interval with ordinal ``n``."""
    mask = 0
    lo = hi = n
    level = n.bit_length() - 1
    for _ in range(level, N + 1):
        width = hi - lo + 1
        mask |= ((1 << width) - 1) << (lo - 1)
        lo, hi = 2 * lo, 2 * hi + 1
    return mask


def _leaf_mask(n: int, N: int) -> int:
    shift = N - (n.bit_length() - 1)
    lo = n << shift
    return ((1 << (1 << shift)) - 1) << (lo - 1)


def subtree(level: int, pos: int, N: int) -> IntervalSet:
    """The complete subtree of D_N rooted at I[level, pos]."""
    root = DyadicInterval(level, pos).check_in(check_depth(N))
    return IntervalSet.from_mask(N, _subtree_mask(root.index, N))


def lowermost_level(level: int, pos: int, N: int) -> IntervalSet:
    """The leaves of D_N below I[level, pos]."""
    root = DyadicInterval(level, pos).check_in(check_depth(N))
    return IntervalSet.from_mask(N, _leaf_mask(root.index, N))


class CarlesonResult(NamedTuple):
    value: DyadicRational
    argsup: Optional[DyadicInterval]
    maximizers: tuple[DyadicInterval, ...]


def _packing(N: int, weights: dict[int, int], candidates: Optional[int]) -> tuple[int, list[int]]:
    """Maximise ``W(I) * 2**level(I)`` over candidate intervals.

    ``weights`` maps ordinals to non-negative integer weights. ``W(I)`` sums
    the weights of all keys inside ``I``. ``candidates`` is a bitmask
    restricting the sup; ``None`` means every ancestor of a weighted key.
    Returns the maximum and the ascending list of maximising ordinals.
    """
    acc: dict[int, int] = {}
    for n, w in weights.items():
        if candidates is None:
            m = n
            while m:
                acc[m] = acc.get(m, 0) + w
                m >>= 1
        else:
            m = n
            while m:
                if candidates >> (m - 1) & 1:
                    acc[m] = acc.get(m, 0) + w
                m >>= 1
    best = 0
    arg: list[int] = []
    for n, w in acc.items():
        v = w << (n.bit_length() - 1)
        if v > best:
            best, arg = v, [n]
        elif v == best:
            arg.append(n)
    arg.sort()
    return best, arg


def carleson_witness(C: IntervalSet) -> CarlesonResult:
    """Carleson constant of ``C`` with its maximising intervals.

    The sum of ``|J|`` over members below ``I`` is kept in units of
    ``2**-N`` so the whole computation stays in integers.
    """
    N = C.depth
    if not C:
        return CarlesonResult(DyadicRational(0), None, ())
    weights = {n: 1 << (N - n.bit_length() + 1) for n in C.indices()}
    best, arg = _packing(N, weights, C.mask)
    maximizers = tuple(interval_of_index(n) for n in arg)
    return CarlesonResult(DyadicRational(best, N), maximizers[0], maximizers)


def carleson(C: IntervalSet) -> DyadicRational:
    return carleson_witness(C).value
