"""Orthonormal discrete Haar transform, batch and single-pass.

A signal of length ``2**M`` yields one trend and ``2**M - 1`` details. The
detail ``d[j][k]`` is attached to the dyadic interval ``I[j, k]`` of
``D_{M-1}``. In exact mode every value is a ``RootTwoDyadic`` so the
``1/sqrt(2)`` per stage never becomes a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .dyadic import DyadicInterval
from .rationals import DyadicRational, RootTwoDyadic, as_dyadic

__all__ = [
    "HaarCoefficients",
    "CoefficientStream",
    "StreamingHaar",
    "signal_depth",
    "analyze_levelwise",
    "analyze_streaming",
    "synthesize",
    "energy",
]

SQRT2 = math.sqrt(2.0)

Value = Union[RootTwoDyadic, float]


def signal_depth(n: int) -> int:
    """``M`` with ``n == 2**M``."""
    if n < 1 or n & (n - 1):
        raise ValueError(f"signal length must be a power of two, got {n}")
    return n.bit_length() - 1


def _lift(x, exact: bool) -> Value:
    if exact:
        if isinstance(x, RootTwoDyadic):
            return x
        if isinstance(x, float):
            raise TypeError("exact mode needs dyadic samples, got a float")
        return RootTwoDyadic(as_dyadic(x))
    return float(x)


def _pair(a: Value, b: Value, exact: bool) -> tuple[Value, Value]:
    """Trend and detail of two neighbouring values."""
    if exact:
        return (a + b).times_sqrt2(-1), (a - b).times_sqrt2(-1)
    return (a + b) / SQRT2, (a - b) / SQRT2


def _lower(x: Value):
    if isinstance(x, RootTwoDyadic) and x.is_dyadic():
        return x.value
    return x


@dataclass(frozen=True)
class HaarCoefficients:
    M: int
    trend: Value
    details: dict  # DyadicInterval -> Value
    exact: bool

    def __post_init__(self) -> None:
        expected = (1 << self.M) - 1
        if len(self.details) != expected:
            raise ValueError(f"expected {expected} details, got {len(self.details)}")
        for iv in self.details:
            if iv.level >= self.M:
                raise ValueError(f"detail at {iv} lies below level {self.M - 1}")


@dataclass(frozen=True)
class CoefficientStream:
    M: int
    emissions: tuple  # of (DyadicInterval, Value), in emission order
    trend: Value
    max_pending: int

    def intervals(self) -> list[DyadicInterval]:
        return [iv for iv, _ in self.emissions]

    def as_coefficients(self, exact: bool) -> HaarCoefficients:
        return HaarCoefficients(self.M, self.trend, dict(self.emissions), exact)


def analyze_levelwise(samples: Sequence, exact: bool = True) -> HaarCoefficients:
    """Mallat pyramid: all details of the finest level first, then coarser."""
    M = signal_depth(len(samples))
    cur = [_lift(x, exact) for x in samples]
    details = {}
    for j in range(M - 1, -1, -1):
        nxt = []
        for k in range(1 << j):
            c, d = _pair(cur[2 * k], cur[2 * k + 1], exact)
            nxt.append(c)
            details[DyadicInterval(j, k)] = d
        cur = nxt
    return HaarCoefficients(M, cur[0], details, exact)


class StreamingHaar:
    """Left-to-right Haar analysis keeping only the pending trends.

    ``push`` returns the details that became determined by that sample.
    The pending stack never holds more than ``M + 1`` entries.
    """

    def __init__(self, M: int, exact: bool = True) -> None:
        if M < 0:
            raise ValueError("M must be non-negative")
        self.M = M
        self.exact = exact
        self._stack: list[tuple[int, int, Value]] = []  # (height, index, trend)
        self._seen = 0
        self.max_pending = 0

    def push(self, sample) -> list[tuple[DyadicInterval, Value]]:
        if self._seen >= 1 << self.M:
            raise ValueError("signal is longer than 2**M samples")
        stack = self._stack
        stack.append((0, self._seen, _lift(sample, self.exact)))
        self._seen += 1
        self.max_pending = max(self.max_pending, len(stack))
        out = []
        while len(stack) >= 2 and stack[-1][0] == stack[-2][0]:
            h, _, b = stack.pop()
            _, i, a = stack.pop()
            c, d = _pair(a, b, self.exact)
            q = i >> 1
            out.append((DyadicInterval(self.M - h - 1, q), d))
            stack.append((h + 1, q, c))
        return out

    def finish(self) -> Value:
        if self._seen != 1 << self.M:
            raise ValueError(f"expected {1 << self.M} samples, got {self._seen}")
        (_, _, trend), = self._stack
        return trend


def analyze_streaming(samples: Iterable, M: int = None, exact: bool = True) -> CoefficientStream:
    """Single pass; each detail is emitted as soon as it is determined.

    ``M`` may be omitted for sized inputs.
    """
    if M is None:
        samples = list(samples)
        M = signal_depth(len(samples))
    sh = StreamingHaar(M, exact)
    emissions = []
    for x in samples:
        emissions.extend(sh.push(x))
    trend = sh.finish()
    return CoefficientStream(M, tuple(emissions), trend, sh.max_pending)


def synthesize(coeffs: HaarCoefficients) -> list:
    """Invert the pyramid. Exact dyadic results come back as ``DyadicRational``."""
    exact = coeffs.exact
    cur = [_lift(coeffs.trend, exact)]
    for j in range(coeffs.M):
        nxt = []
        for k in range(1 << j):
            try:
                d = _lift(coeffs.details[DyadicInterval(j, k)], exact)
            except KeyError:
                raise ValueError(f"missing detail coefficient at I[{j},{k}]") from None
            a, b = _pair(cur[k], d, exact)
            nxt.extend((a, b))
        cur = nxt
    return [_lower(x) for x in cur] if exact else cur


def energy(values: Iterable) -> Union[DyadicRational, float]:
    """Sum of squares; exact for exact values."""
    values = list(values)
    if values and all(not isinstance(v, float) for v in values):
        total = DyadicRational(0)
        for v in values:
            if isinstance(v, (int, str)):
                v = as_dyadic(v)
            total += v.square()
        return total
    return math.fsum(float(v) ** 2 for v in values)
