"""Cones, right fill-ups and the maximal-interval decomposition of postorder intervals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .dyadic import (
    DyadicInterval,
    IntervalSet,
    _subtree_mask,
    carleson_witness,
    check_depth,
    contains,
    interval_of_index,
    parent,
)
from .ordinals import post_interval, post_ordinal_closed, post_order_interval
from .rationals import DyadicRational

__all__ = [
    "Cone",
    "RightFillUp",
    "MaximalDecomposition",
    "BoundReport",
    "cone",
    "right_fill_up",
    "maximal_intervals",
    "maximal_intervals_sweep",
    "maximal_decomposition",
    "carleson_cone_fillup",
    "carleson_order_interval",
]


@dataclass(frozen=True)
class Cone:
    """Ancestor chain ``chain[0] = I`` up to ``chain[-1] = J``."""

    depth: int
    chain: tuple[DyadicInterval, ...]

    @property
    def n(self) -> int:
        return len(self.chain)

    def as_set(self) -> IntervalSet:
        return IntervalSet(self.depth, self.chain)


@dataclass(frozen=True)
class RightFillUp:
    """One block per cone step; ``blocks[i]`` fills ``chain[i+1] minus chain[i]``."""

    depth: int
    blocks: tuple[IntervalSet, ...]

    def union(self) -> IntervalSet:
        mask = 0
        for b in self.blocks:
            mask |= b.mask
        return IntervalSet.from_mask(self.depth, mask)

    def __bool__(self) -> bool:
        return any(self.blocks)


def _require_inside(inner: DyadicInterval, outer: DyadicInterval, N: int) -> None:
    check_depth(N)
    inner.check_in(N)
    outer.check_in(N)
    if not contains(outer, inner):
        raise ValueError(f"{inner} is not contained in {outer}")


def cone(inner: DyadicInterval, outer: DyadicInterval, N: int) -> Cone:
    _require_inside(inner, outer, N)
    chain = [inner]
    while chain[-1] != outer:
        chain.append(parent(chain[-1]))
    return Cone(N, tuple(chain))


def right_fill_up(inner: DyadicInterval, outer: DyadicInterval, N: int) -> RightFillUp:
    chain = cone(inner, outer, N).chain
    blocks = []
    for c in chain[:-1]:
        if c.pos & 1:
            blocks.append(IntervalSet.from_mask(N, 0))
        else:
            # c is a left half; the gap is its right sibling
            blocks.append(IntervalSet.from_mask(N, _subtree_mask(c.index + 1, N)))
    return RightFillUp(N, tuple(blocks))


def maximal_intervals(B: IntervalSet) -> list[DyadicInterval]:
    """Inclusion-maximal members of ``B``, ordered left to right."""
    mask = B.mask
    out = []
    for n in B.indices():
        m = n >> 1
        while m and not mask >> (m - 1) & 1:
            m >>= 1
        if not m:
            out.append(interval_of_index(n))
    out.sort(key=lambda iv: iv.left)
    return out


def maximal_intervals_sweep(j1: DyadicInterval, j2: DyadicInterval, N: int) -> list[DyadicInterval]:
    """Maximal intervals of the postorder interval built by a left-to-right sweep.

    Starting from the first ordinal of the range, climb to the highest
    ancestor whose ordinal still lies in range; continue after it.
    """
    lo, hi = post_ordinal_closed(j1, N), post_ordinal_closed(j2, N)
    if lo > hi:
        raise ValueError(f"{j1} does not precede {j2} in postorder")
    out = []
    n = lo
    while n <= hi:
        iv = post_interval(n, N)
        while iv.level > 0:
            up = parent(iv)
            if post_ordinal_closed(up, N) > hi:
                break
            iv = up
        out.append(iv)
        n = post_ordinal_closed(iv, N) + 1
    return out


@dataclass(frozen=True)
class MaximalDecomposition:
    depth: int
    j1: DyadicInterval
    j2: DyadicInterval
    maximal: tuple[DyadicInterval, ...]
    cone: Cone
    fillup: RightFillUp
    subtrees: tuple[IntervalSet, ...]
    order_interval: IntervalSet
    violations: tuple[str, ...] = field(default=())

    @property
    def m(self) -> int:
        return len(self.maximal)

    def union(self) -> IntervalSet:
        mask = self.cone.as_set().mask | self.fillup.union().mask
        for s in self.subtrees:
            mask |= s.mask
        return IntervalSet.from_mask(self.depth, mask)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "N": self.depth,
            "j1": self.j1.to_json(),
            "j2": self.j2.to_json(),
            "maximal": [iv.to_json() for iv in self.maximal],
            "cone": [iv.to_json() for iv in self.cone.chain],
            "fillup": [[iv.to_json() for iv in b] for b in self.fillup.blocks],
            "subtrees": [[iv.to_json() for iv in s] for s in self.subtrees],
            "violations": list(self.violations),
        }


def _check_decomposition(d: MaximalDecomposition) -> list[str]:
    out = []
    L = d.maximal
    m = len(L)
    # pairwise disjoint, as sets of reals
    for a in range(m):
        for b in range(a + 1, m):
            if contains(L[a], L[b]) or contains(L[b], L[a]):
                out.append(f"maximal intervals {L[a]} and {L[b]} overlap")
    for i in range(2, m):  # |L_i| < |L_{i-1}| for 2 <= i <= m-1 (1-based)
        if not L[i - 1].level > L[i - 2].level:
            out.append(f"property (1) fails at i={i}: |{L[i - 1]}| >= |{L[i - 2]}|")
    if m >= 2 and not L[m - 1].level >= L[m - 2].level:
        out.append(f"property (2) fails: |{L[m - 1]}| > |{L[m - 2]}|")
    for i in range(m - 1):
        if L[i].right != L[i + 1].left:
            out.append(f"property (3) fails between {L[i]} and {L[i + 1]}")
    if not contains(L[0], d.j1):
        out.append(f"property (4) fails: {d.j1} not inside L_1={L[0]}")
    if L[-1] != d.j2:
        out.append(f"property (4) fails: J_2={d.j2} differs from L_m={L[-1]}")
    pieces = [d.cone.as_set(), *d.fillup.blocks, *d.subtrees]
    seen = 0
    for p in pieces:
        if seen & p.mask:
            out.append("decomposition pieces are not pairwise disjoint")
            break
        seen |= p.mask
    if seen != d.order_interval.mask:
        out.append("cone, fill-up and subtrees do not reconstruct the order interval")
    return out


def maximal_decomposition(j1: DyadicInterval, j2: DyadicInterval, N: int) -> MaximalDecomposition:
    """Split the postorder interval from ``j1`` to ``j2`` into cone, fill-up and subtrees.

    The maximal intervals come from inclusion-maximality over the
    materialised interval. The reconstruction and the four structural
    properties are checked; any failure is listed in ``violations``.
    """
    B = post_order_interval(j1, j2, N)
    L = maximal_intervals(B)
    first = L[0]
    if not contains(first, j1):
        # cannot happen for a genuine postorder interval; report, do not guess
        return MaximalDecomposition(N, j1, j2, tuple(L), Cone(N, (j1,)), RightFillUp(N, ()), (), B,
                                    (f"no maximal interval contains {j1}",))
    subs = tuple(IntervalSet.from_mask(N, _subtree_mask(iv.index, N)) for iv in L[1:])
    d = MaximalDecomposition(N, j1, j2, tuple(L), cone(j1, first, N), right_fill_up(j1, first, N), subs, B)
    violations = _check_decomposition(d)
    if violations:
        d = MaximalDecomposition(N, j1, j2, d.maximal, d.cone, d.fillup, d.subtrees, B, tuple(violations))
    return d


@dataclass(frozen=True)
class BoundReport:
    """Exact Carleson value with the lower and upper bound it is compared against.

    ``asserted`` is False when the bound is not claimed (empty fill-up); then
    ``ok`` is None.
    """

    value: DyadicRational
    argsup: Optional[DyadicInterval]
    lower: int
    upper: int
    asserted: bool
    ok: Optional[bool]
    lower_ok: bool
    upper_ok: bool

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "value_str": str(self.value),
            "argsup": self.argsup.to_json() if self.argsup else None,
            "lower": self.lower,
            "upper": self.upper,
            "asserted": self.asserted,
            "ok": self.ok,
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
        }


def _report(C: IntervalSet, lower: int, upper: int, asserted: bool) -> BoundReport:
    res = carleson_witness(C)
    lo_ok = lower <= res.value
    hi_ok = res.value <= upper
    return BoundReport(res.value, res.argsup, lower, upper, asserted,
                       (lo_ok and hi_ok) if asserted else None, lo_ok, hi_ok)


def carleson_cone_fillup(inner: DyadicInterval, outer: DyadicInterval, N: int) -> BoundReport:
    """Carleson constant of cone plus right fill-up.

    When the fill-up is non-empty the value must lie in
    ``[N - level(inner) + 1, N - level(outer) + 2]``.
    """
    c = cone(inner, outer, N)
    r = right_fill_up(inner, outer, N)
    C = c.as_set() | r.union()
    return _report(C, N - inner.level + 1, N - outer.level + 2, asserted=bool(r))


def carleson_order_interval(j1: DyadicInterval, j2: DyadicInterval, N: int) -> BoundReport:
    """Carleson constant of a postorder interval against ``[N - level(j1) + 1, N - level(L_1) + 2]``."""
    B = post_order_interval(j1, j2, N)
    L1 = next(iv for iv in maximal_intervals(B) if contains(iv, j1))
    return _report(B, N - j1.level + 1, N - L1.level + 2, asserted=True)
