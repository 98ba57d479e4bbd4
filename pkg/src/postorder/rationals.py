"""Exact scalars for dyadic computations.

``DyadicRational`` holds ``num / 2**exp`` in canonical form. ``RootTwoDyadic``
extends it by an integer power of sqrt(2), which is what an orthonormal Haar
transform produces from dyadic samples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

__all__ = ["DyadicRational", "RootTwoDyadic", "as_dyadic"]


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1


class DyadicRational:
    """An exact number ``num / 2**exp`` with ``exp >= 0``.

    The representation is canonical: ``num`` is odd, or ``exp == 0``.
    Instances are immutable and hash like the equal ``Fraction``.
    """

    __slots__ = ("_num", "_exp")

    def __init__(self, num: int = 0, exp: int = 0) -> None:
        if not isinstance(num, int) or not isinstance(exp, int):
            raise TypeError("numerator and exponent must be integers")
        if num == 0:
            exp = 0
        elif exp > 0:
            shift = min(_trailing_zeros(num), exp)
            num >>= shift
            exp -= shift
        if exp < 0:
            num <<= -exp
            exp = 0
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicRational is immutable")

    @property
    def num(self) -> int:
        return self._num

    @property
    def exp(self) -> int:
        return self._exp

    # -- construction -------------------------------------------------

    @classmethod
    def from_fraction(cls, value: Fraction) -> "DyadicRational":
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(value.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "DyadicRational":
        """Parse ``"3"``, ``"-3/8"`` or ``"0.375"``."""
        return cls.from_fraction(Fraction(text.strip()))

    @classmethod
    def from_json(cls, obj: dict) -> "DyadicRational":
        return cls(int(obj["num"]), int(obj["exp"]))

    def to_json(self) -> dict:
        return {"num": str(self._num), "exp": self._exp}

    # -- conversions --------------------------------------------------

    def as_fraction(self) -> Fraction:
        return Fraction(self._num, 1 << self._exp)

    def __float__(self) -> float:
        return self._num / (1 << self._exp)

    def __bool__(self) -> bool:
        return self._num != 0

    def __repr__(self) -> str:
        return f"DyadicRational({self._num}, {self._exp})"

    def __str__(self) -> str:
        if self._exp == 0:
            return str(self._num)
        return f"{self._num}/{1 << self._exp}"

    def __hash__(self) -> int:
        if self._exp == 0:
            return hash(self._num)
        return hash(self.as_fraction())

    # -- arithmetic ---------------------------------------------------

    def _align(self, other: "DyadicRational") -> tuple[int, int, int]:
        e = max(self._exp, other._exp)
        return self._num << (e - self._exp), other._num << (e - other._exp), e

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, e = self._align(other)
        return DyadicRational(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, e = self._align(other)
        return DyadicRational(a - b, e)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return DyadicRational(self._num * other._num, self._exp + other._exp)

    __rmul__ = __mul__

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self._num, self._exp)

    def __pos__(self) -> "DyadicRational":
        return self

    def __abs__(self) -> "DyadicRational":
        return self if self._num >= 0 else -self

    def scale2(self, k: int) -> "DyadicRational":
        """Return ``self * 2**k`` for any integer ``k``."""
        return DyadicRational(self._num, self._exp - k)

    def square(self) -> "DyadicRational":
        return DyadicRational(self._num * self._num, 2 * self._exp)

    # -- comparison ---------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, Fraction):
            lhs = self.as_fraction()
            return (lhs > other) - (lhs < other)
        other = _coerce(other)
        if other is NotImplemented:
            raise TypeError
        a, b, _ = self._align(other)
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other) -> bool:
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other) -> bool:
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other) -> bool:
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other) -> bool:
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented


def _coerce(value):
    if isinstance(value, DyadicRational):
        return value
    if isinstance(value, int):
        return DyadicRational(value)
    return NotImplemented


def as_dyadic(value: Union[int, str, Fraction, DyadicRational]) -> DyadicRational:
    """Convert ints, dyadic fractions and their string forms."""
    if isinstance(value, DyadicRational):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a number here")
    if isinstance(value, int):
        return DyadicRational(value)
    if isinstance(value, Fraction):
        return DyadicRational.from_fraction(value)
    if isinstance(value, str):
        return DyadicRational.parse(value)
    raise TypeError(f"cannot convert {type(value).__name__} to DyadicRational")


class RootTwoDyadic:
    """An exact number ``value * sqrt(2)**half`` with ``half`` in {0, 1}.

    Sums are only defined between operands of equal ``half``; this is always
    the case inside one stage of a Haar pyramid.
    """

    __slots__ = ("_value", "_half")

    def __init__(self, value=0, half: int = 0) -> None:
        value = as_dyadic(value)
        # Absorb even powers of sqrt(2) into the dyadic part.
        even = half - (half & 1)
        object.__setattr__(self, "_value", value.scale2(even // 2))
        object.__setattr__(self, "_half", half & 1 if value else 0)

    def __setattr__(self, name, value):
        raise AttributeError("RootTwoDyadic is immutable")

    @property
    def value(self) -> DyadicRational:
        return self._value

    @property
    def half(self) -> int:
        return self._half

    def times_sqrt2(self, power: int) -> "RootTwoDyadic":
        return RootTwoDyadic(self._value, self._half + power)

    def square(self) -> DyadicRational:
        return self._value.square().scale2(self._half)

    def _same_half(self, other: "RootTwoDyadic") -> None:
        if self._value and other._value and self._half != other._half:
            raise ValueError("cannot add terms with different powers of sqrt(2)")

    def __add__(self, other):
        other = _coerce_r2(other)
        if other is NotImplemented:
            return other
        self._same_half(other)
        half = self._half if self._value else other._half
        return RootTwoDyadic(self._value + other._value, half)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_r2(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __neg__(self) -> "RootTwoDyadic":
        return RootTwoDyadic(-self._value, self._half)

    def __mul__(self, other):
        other = _coerce_r2(other)
        if other is NotImplemented:
            return other
        return RootTwoDyadic(self._value * other._value, self._half + other._half)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _coerce_r2(other)
        if other is NotImplemented:
            return other
        if not self._value and not other._value:
            return True
        return self._half == other._half and self._value == other._value

    def __hash__(self) -> int:
        return hash((self._value, self._half))

    def __bool__(self) -> bool:
        return bool(self._value)

    def __float__(self) -> float:
        return float(self._value) * (math.sqrt(2.0) if self._half else 1.0)

    def is_dyadic(self) -> bool:
        return self._half == 0

    def __repr__(self) -> str:
        return f"RootTwoDyadic({self._value!s}, half={self._half})"

    def __str__(self) -> str:
        return f"{self._value}*sqrt2" if self._half else str(self._value)


def _coerce_r2(value):
    if isinstance(value, RootTwoDyadic):
        return value
    if isinstance(value, (DyadicRational, int)) and not isinstance(value, bool):
        return RootTwoDyadic(value, 0)
    return NotImplemented
