"""Slow, definition-level oracles shared by the test modules.

Nothing here imports the closed forms under test; intervals are handled
as pairs of Fraction endpoints and functions as values on a fine grid.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import settings

from postorder import DyadicInterval, IntervalSet

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def endpoints(iv):
    return Fraction(iv.pos, 2 ** iv.level), Fraction(iv.pos + 1, 2 ** iv.level)


def inside(inner, outer):
    a, b = endpoints(inner)
    c, d = endpoints(outer)
    return c <= a and b <= d


def carleson_oracle(C):
    """max over I in C of (1/|I|) * sum of |J| for J in C inside I."""
    members = list(C)
    best = Fraction(0)
    for I in members:
        a, b = endpoints(I)
        total = sum((endpoints(J)[1] - endpoints(J)[0] for J in members if inside(J, I)), Fraction(0))
        best = max(best, total / (b - a))
    return best


def postorder_recursive(N, level=0, pos=0):
    if level == N:
        return [DyadicInterval(level, pos)]
    return (postorder_recursive(N, level + 1, 2 * pos)
            + postorder_recursive(N, level + 1, 2 * pos + 1)
            + [DyadicInterval(level, pos)])


def lex_list(N):
    return sorted((DyadicInterval(l, k) for l in range(N + 1) for k in range(2 ** l)),
                  key=lambda iv: (iv.level, iv.pos))


def haar_grid(N, coeffs):
    """Values of sum x_I h_I on the 2**(N+1) cells of the finest half-intervals."""
    cells = 2 ** (N + 1)
    out = [Fraction(0)] * cells
    for iv, x in coeffs.items():
        x = Fraction(x)
        width = cells >> iv.level
        start = iv.pos * width
        for t in range(width):
            out[start + t] += x if t < width // 2 else -x
    return out


def bmo_oracle(N, coeffs):
    """sup over dyadic I of the mean squared oscillation of f on I, on the grid."""
    f = haar_grid(N, coeffs)
    cells = len(f)
    best = Fraction(0)
    for l in range(N + 2):
        width = cells >> l
        for k in range(2 ** l):
            block = f[k * width:(k + 1) * width]
            mean = sum(block, Fraction(0)) / width
            osc = sum(((v - mean) ** 2 for v in block), Fraction(0)) / width
            best = max(best, osc)
    return best


def square_function_grid(N, coeffs):
    cells = 2 ** (N + 1)
    out = [Fraction(0)] * cells
    for iv, x in coeffs.items():
        width = cells >> iv.level
        for t in range(iv.pos * width, (iv.pos + 1) * width):
            out[t] += Fraction(x) ** 2
    return out


def hp_oracle(N, coeffs, p):
    s = square_function_grid(N, coeffs)
    return (sum(float(v) ** (p / 2) for v in s) / len(s)) ** (1 / p)


def inner_oracle(N, f, h):
    a, b = haar_grid(N, f), haar_grid(N, h)
    return sum((x * y for x, y in zip(a, b)), Fraction(0)) / len(a)


def haar_dwt_oracle(samples):
    """Inner products against the orthonormal Haar basis, in floating point."""
    n = len(samples)
    M = n.bit_length() - 1
    trend = sum(samples) / math.sqrt(n)
    details = {}
    for j in range(M):
        width = n >> j
        scale = 1 / math.sqrt(width)
        for k in range(2 ** j):
            seg = samples[k * width:(k + 1) * width]
            half = width // 2
            details[(j, k)] = scale * (sum(seg[:half]) - sum(seg[half:]))
    return trend, details


@pytest.fixture
def report(capsys):
    """Print one status line per acceptance criterion, even when it fails."""
    import time
    from contextlib import contextmanager

    @contextmanager
    def criterion(number, title, limit=None):
        start = time.perf_counter()
        status, detail = "PASS", ""
        try:
            yield
        except AssertionError as exc:
            status, detail = "FAIL", str(exc).splitlines()[0] if str(exc) else ""
            raise
        finally:
            elapsed = time.perf_counter() - start
            if status == "PASS" and limit is not None and elapsed >= limit:
                status, detail = "FAIL", f"time limit {limit}s exceeded"
            bound = f" limit {limit}s" if limit is not None else ""
            with capsys.disabled():
                print(f"\n[criterion {number:>2}] {status}  {title}  ({elapsed:.2f}s{bound}) {detail}".rstrip())
        if limit is not None:
            assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"

    return criterion
