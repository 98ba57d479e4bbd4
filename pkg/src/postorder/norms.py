"""Haar expansions on D_N, dyadic BMO and H^p norms, and rearrangement operators.

Coefficients are exact (``DyadicRational`` or ``RootTwoDyadic``) unless a
rearrangement on H^p forces an irrational scale, in which case they are
floats. Every identity that is an exact equality is computed exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .dyadic import (
    DyadicInterval,
    IntervalSet,
    _packing,
    carleson,
    carleson_witness,
    check_depth,
    contains,
    interval_of_index,
    lowermost_level,
    subtree,
)
from .geometry import maximal_intervals
from .ordinals import (
    Rearrangement,
    lex_order_interval,
    post_order_interval,
)
from .rationals import DyadicRational, RootTwoDyadic, as_dyadic

__all__ = [
    "HaarExpansion",
    "StepFunction",
    "NormCertificate",
    "FeffermanReport",
    "OperatorBounds",
    "bmo_norm_sq",
    "bmo_norm_sq_witness",
    "square_function",
    "hp_norm",
    "h2_norm_sq",
    "h1_norm_bounds",
    "inner_product",
    "apply_bmo_rearrangement",
    "apply_hp_rearrangement",
    "certify_lower_bound",
    "certify_upper_bound_on_subspace",
    "best_lower_certificate",
    "fefferman_check",
    "top_tree",
    "theorem_operatornorm1_suite",
    "theorem_lexorder_suite",
    "extremality_certificates",
]

Scalar = Union[DyadicRational, RootTwoDyadic, float]


def _normalize(value) -> Scalar:
    if isinstance(value, (DyadicRational, float)):
        return value
    if isinstance(value, RootTwoDyadic):
        return value.value if value.is_dyadic() else value
    return as_dyadic(value)


class HaarExpansion:
    """A finitely supported ``f = sum x_I h_I`` over D_N.

    ``h_I`` is +1 on the left half of ``I`` and -1 on the right half.
    Zero coefficients are dropped.
    """

    __slots__ = ("depth", "_c")

    def __init__(self, N: int, coeffs: Union[Mapping[DyadicInterval, object], Iterable] = ()) -> None:
        check_depth(N)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, Scalar] = {}
        for iv, x in items:
            iv.check_in(N)
            x = _normalize(x)
            if x:
                c[iv.index] = x
        self.depth = N
        self._c = c

    @classmethod
    def _from_indices(cls, N: int, c: dict[int, Scalar]) -> "HaarExpansion":
        obj = cls.__new__(cls)
        obj.depth = N
        obj._c = {n: x for n, x in c.items() if x}
        return obj

    @classmethod
    def indicator_sum(cls, C: IntervalSet) -> "HaarExpansion":
        """``sum of h_I`` over ``I`` in ``C``."""
        one = DyadicRational(1)
        return cls._from_indices(C.depth, {n: one for n in C.indices()})

    @classmethod
    def random(cls, N: int, rng: random.Random, support: Optional[IntervalSet] = None,
               low: int = -8, high: int = 8) -> "HaarExpansion":
        """Integer coefficients drawn uniformly from ``[low, high]``."""
        idx = support.indices() if support is not None else range(1, (1 << (N + 1)))
        return cls._from_indices(N, {n: DyadicRational(rng.randint(low, high)) for n in idx})

    @property
    def coeffs(self) -> dict[DyadicInterval, Scalar]:
        return {interval_of_index(n): x for n, x in sorted(self._c.items())}

    def coefficient(self, iv: DyadicInterval) -> Scalar:
        return self._c.get(iv.index, DyadicRational(0))

    def support(self) -> IntervalSet:
        return IntervalSet.from_indices(self.depth, self._c)

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(x, float) for x in self._c.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, HaarExpansion):
            return NotImplemented
        return self.depth == other.depth and self._c == other._c

    def __repr__(self) -> str:
        terms = ", ".join(f"{interval_of_index(n)}: {x}" for n, x in sorted(self._c.items()))
        return f"HaarExpansion(N={self.depth}, {{{terms}}})"

    def to_json(self) -> dict:
        rows = []
        for n, x in sorted(self._c.items()):
            iv = interval_of_index(n)
            if isinstance(x, DyadicRational):
                rows.append([iv.level, iv.pos, str(x.num), x.exp])
            elif isinstance(x, RootTwoDyadic):
                rows.append([iv.level, iv.pos, str(x.value.num), x.value.exp, x.half])
            else:
                rows.append([iv.level, iv.pos, repr(x)])
        return {"N": self.depth, "coeffs": rows}

    @classmethod
    def from_json(cls, obj: dict) -> "HaarExpansion":
        N = int(obj["N"])
        pairs = []
        for row in obj["coeffs"]:
            iv = DyadicInterval(int(row[0]), int(row[1]))
            if len(row) == 3:
                x: Scalar = float(row[2])
            else:
                x = DyadicRational(int(row[2]), int(row[3]))
                if len(row) > 4:
                    x = RootTwoDyadic(x, int(row[4]))
            pairs.append((iv, x))
        return cls(N, pairs)

    def _squares(self) -> dict[int, DyadicRational]:
        out = {}
        for n, x in self._c.items():
            if isinstance(x, float):
                raise TypeError("exact norm requested for a floating-point expansion")
            out[n] = x.square()
        return out


@dataclass(frozen=True)
class StepFunction:
    """Values on the ``2**N`` leaf cells ``[r / 2**N, (r + 1) / 2**N)``."""

    depth: int
    values: tuple

    def __post_init__(self) -> None:
        if len(self.values) != 1 << self.depth:
            raise ValueError("a step function on D_N needs 2**N values")

    def __call__(self, t: float):
        if not 0 <= t < 1:
            raise ValueError("t must lie in [0, 1)")
        return self.values[int(t * (1 << self.depth))]


def bmo_norm_sq_witness(f: HaarExpansion) -> tuple[DyadicRational, Optional[DyadicInterval]]:
    """Exact squared BMO norm and the lexicographically first interval attaining it."""
    sq = f._squares()
    if not sq:
        return DyadicRational(0), None
    N = f.depth
    E = max(s.exp for s in sq.values())
    weights = {n: s.num << (E - s.exp + N - n.bit_length() + 1) for n, s in sq.items()}
    best, arg = _packing(N, weights, None)
    return DyadicRational(best, E + N), interval_of_index(arg[0])


def bmo_norm_sq(f: HaarExpansion) -> DyadicRational:
    return bmo_norm_sq_witness(f)[0]


def _leaf_square_sums(f: HaarExpansion) -> tuple[list[int], int]:
    """Integer numerators of S(f)**2 on each leaf, over a common ``2**E``."""
    sq = f._squares()
    N = f.depth
    E = max((s.exp for s in sq.values()), default=0)
    cur = [0]
    for level in range(N + 1):
        if level:
            cur = [cur[k >> 1] for k in range(1 << level)]
        base = 1 << level
        for k in range(base):
            s = sq.get(base + k)
            if s is not None:
                cur[k] += s.num << (E - s.exp)
    return cur, E


def square_function(f: HaarExpansion) -> StepFunction:
    """``S(f)**2`` as an exact step function."""
    if not f.is_exact:
        vals = [0.0] * (1 << f.depth)
        for n, x in f._c.items():
            iv = interval_of_index(n)
            shift = f.depth - iv.level
            for r in range(iv.pos << shift, (iv.pos + 1) << shift):
                vals[r] += x * x
        return StepFunction(f.depth, tuple(vals))
    nums, E = _leaf_square_sums(f)
    return StepFunction(f.depth, tuple(DyadicRational(v, E) for v in nums))


def _check_p(p) -> float:
    p = float(p)
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    return p


def hp_norm(f: HaarExpansion, p) -> float:
    """``||S(f)||_{L^p}`` in double precision."""
    p = _check_p(p)
    s2 = [float(v) for v in square_function(f).values]
    total = math.fsum(v ** (p / 2) for v in s2) / (1 << f.depth)
    return total ** (1 / p)


def h2_norm_sq(f: HaarExpansion) -> DyadicRational:
    """Exact ``||f||_{H^2}**2 = sum x_I**2 |I|``."""
    total = DyadicRational(0)
    for n, s in f._squares().items():
        total += s.scale2(-(n.bit_length() - 1))
    return total


def h1_norm_bounds(f: HaarExpansion, bits: int = 64) -> tuple[DyadicRational, DyadicRational]:
    """Dyadic ``lo <= ||f||_{H^1} <= hi`` with about ``bits`` bits per square root."""
    nums, E = _leaf_square_sums(f)
    if E & 1:
        nums = [v << 1 for v in nums]
        E += 1
    lo = hi = 0
    for v in nums:
        r = math.isqrt(v << (2 * bits))
        lo += r
        hi += r if r * r == v << (2 * bits) else r + 1
    scale = E // 2 + bits + f.depth
    return DyadicRational(lo, scale), DyadicRational(hi, scale)


def inner_product(f: HaarExpansion, h: HaarExpansion) -> DyadicRational:
    """Exact ``integral of f*h = sum x_I y_I |I|`` by Haar orthogonality."""
    if f.depth != h.depth:
        raise ValueError("depth mismatch")
    total = RootTwoDyadic(0)
    for n, x in f._c.items():
        y = h._c.get(n)
        if y is not None:
            term = _exact(x) * _exact(y)
            total = total + term.times_sqrt2(-2 * (n.bit_length() - 1))
    if not total.is_dyadic():
        raise ValueError("inner product is not a dyadic rational")
    return total.value


def _exact(x: Scalar) -> RootTwoDyadic:
    if isinstance(x, RootTwoDyadic):
        return x
    if isinstance(x, float):
        raise TypeError("exact arithmetic requested on a floating-point coefficient")
    return RootTwoDyadic(x)


def _check_same_depth(R: Rearrangement, f: HaarExpansion) -> None:
    if R.depth != f.depth:
        raise ValueError(f"depth mismatch: rearrangement on D_{R.depth}, expansion on D_{f.depth}")


def apply_bmo_rearrangement(R: Rearrangement, f: HaarExpansion) -> HaarExpansion:
    """``T h_I = h_{R(I)}``: the coefficient of ``I`` moves to ``R(I)``."""
    _check_same_depth(R, f)
    fwd = R.forward
    return HaarExpansion._from_indices(f.depth, {fwd[n - 1] + 1: x for n, x in f._c.items()})


def apply_hp_rearrangement(R: Rearrangement, p, f: HaarExpansion) -> HaarExpansion:
    """``T (h_I / |I|**(1/p)) = h_{R(I)} / |R(I)|**(1/p)``.

    The coefficient of ``I`` becomes ``x_I * (|I| / |R(I)|)**(1/p)`` at ``R(I)``.
    Exact when ``2/p`` is an integer, float otherwise.
    """
    _check_same_depth(R, f)
    pf = Fraction(p) if not isinstance(p, float) else Fraction(p).limit_denominator(1 << 20)
    if pf <= 0:
        raise ValueError(f"p must be positive, got {p}")
    q = Fraction(2) / pf
    exact = q.denominator == 1 and f.is_exact
    fwd = R.forward
    out: dict[int, Scalar] = {}
    for n, x in f._c.items():
        m = fwd[n - 1] + 1
        shift = (m.bit_length() - 1) - (n.bit_length() - 1)  # level(R(I)) - level(I)
        if exact:
            out[m] = _normalize(_exact(x).times_sqrt2(shift * q.numerator))
        else:
            out[m] = float(x) * 2.0 ** (shift / float(p))
    return HaarExpansion._from_indices(f.depth, out)


@dataclass(frozen=True)
class NormCertificate:
    """A certified bound on ``||T_R restricted to M(C)||**2`` on BMO_N.

    ``ratio_sq`` is ``car(R(C)) / car(C)`` for a lower bound and
    ``car(R(C))`` for an upper bound. It need not be dyadic, hence a Fraction.
    """

    kind: str
    collection: IntervalSet
    ratio_sq: Fraction
    image_carleson: DyadicRational
    source_carleson: DyadicRational
    argsup: Optional[DyadicInterval]
    witness_verified: bool = True
    trials: int = 0
    violations: int = 0
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.witness_verified and self.violations == 0

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ratio_sq": {"num": str(self.ratio_sq.numerator), "den": str(self.ratio_sq.denominator)},
            "ratio_sq_float": float(self.ratio_sq),
            "image_carleson": self.image_carleson.to_json(),
            "source_carleson": self.source_carleson.to_json(),
            "collection": self.collection.to_json(),
            "argsup": self.argsup.to_json() if self.argsup else None,
            "witness_verified": self.witness_verified,
            "trials": self.trials,
            "violations": self.violations,
            "seed": self.seed,
        }


def _nonempty(C: IntervalSet) -> None:
    if not C:
        raise ValueError("collection must be non-empty")


def certify_lower_bound(R: Rearrangement, C: IntervalSet) -> NormCertificate:
    """Lower bound ``car(R(C)) / car(C)`` witnessed by ``x = sum_{I in C} h_I``."""
    _nonempty(C)
    image = carleson_witness(R.image(C))
    source = carleson(C)
    x = HaarExpansion.indicator_sum(C)
    verified = bmo_norm_sq(x) == source and bmo_norm_sq(apply_bmo_rearrangement(R, x)) == image.value
    ratio = image.value.as_fraction() / source.as_fraction()
    return NormCertificate("lower_bound", C, ratio, image.value, source, image.argsup, verified)


def certify_upper_bound_on_subspace(R: Rearrangement, C: IntervalSet, seed: int = 0,
                                    trials: int = 64) -> NormCertificate:
    """Upper bound ``car(R(C))``, checked on ``trials`` random expansions supported in ``C``."""
    _nonempty(C)
    image = carleson_witness(R.image(C))
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        x = HaarExpansion.random(C.depth, rng, support=C)
        if bmo_norm_sq(apply_bmo_rearrangement(R, x)) > image.value * bmo_norm_sq(x):
            bad += 1
    return NormCertificate("upper_bound", C, image.value.as_fraction(), image.value, carleson(C),
                           image.argsup, True, trials, bad, seed)


def best_lower_certificate(R: Rearrangement, C: IntervalSet) -> NormCertificate:
    """Best lower bound over a fixed family of sub-collections of ``C``.

    The family holds ``C`` itself, ``C`` cut to each subtree and to each
    subtree's lowest level, and ``C`` cut to each preimage of a subtree.
    """
    _nonempty(C)
    N = C.depth
    candidates = {C.mask}
    for iv in C:
        candidates.add(C.mask & subtree(iv.level, iv.pos, N).mask)
        candidates.add(C.mask & lowermost_level(iv.level, iv.pos, N).mask)
    for n in range(1, 1 << (N + 1)):
        iv = interval_of_index(n)
        candidates.add(C.mask & R.preimage(subtree(iv.level, iv.pos, N)).mask)
    candidates.discard(0)
    best = None
    best_key = None
    for mask in sorted(candidates):
        S = IntervalSet.from_mask(N, mask)
        ratio = carleson(R.image(S)).as_fraction() / carleson(S).as_fraction()
        if best_key is None or ratio > best_key:
            best_key, best = ratio, S
    return certify_lower_bound(R, best)


@dataclass(frozen=True)
class FeffermanReport:
    integral: DyadicRational
    h1_lower: DyadicRational
    h1_upper: DyadicRational
    bmo_sq: DyadicRational
    holds: bool
    bits: int

    def to_json(self) -> dict:
        return {
            "integral": self.integral.to_json(),
            "h1_lower": float(self.h1_lower),
            "h1_upper": float(self.h1_upper),
            "bmo_sq": self.bmo_sq.to_json(),
            "holds": self.holds,
            "bits": self.bits,
        }


def fefferman_check(f: HaarExpansion, h: HaarExpansion, max_bits: int = 4096) -> FeffermanReport:
    """Decide ``|int f h| <= 2 sqrt(2) ||f||_{H^1} ||h||_{BMO}`` rigorously.

    Both sides are squared; ``||f||_{H^1}`` is bracketed by dyadic bounds
    that are refined until the comparison is decided.
    """
    lhs = inner_product(f, h)
    lhs_sq = lhs.square()
    bmo_sq = bmo_norm_sq(h)
    bits = 32
    while True:
        lo, hi = h1_norm_bounds(f, bits)
        if lhs_sq <= 8 * lo.square() * bmo_sq:
            return FeffermanReport(lhs, lo, hi, bmo_sq, True, bits)
        if lhs_sq > 8 * hi.square() * bmo_sq:
            return FeffermanReport(lhs, lo, hi, bmo_sq, False, bits)
        if bits >= max_bits:
            raise ArithmeticError("Fefferman comparison undecided at maximum precision")
        bits *= 2


def top_tree(M: int, N: int) -> IntervalSet:
    """D_M viewed as the top ``M + 1`` levels of D_N."""
    if not 0 <= M <= N:
        raise ValueError(f"need 0 <= M <= N, got M={M}, N={N}")
    return IntervalSet.from_mask(N, (1 << ((1 << (M + 1)) - 1)) - 1)


@dataclass(frozen=True)
class OperatorBounds:
    """Certified squared-norm sandwich for one restricted operator."""

    operator: str
    restriction: IntervalSet
    lower: NormCertificate
    upper: NormCertificate
    required_lower: Fraction
    required_upper: int
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "lower_sq": str(self.lower.ratio_sq),
            "upper_sq": str(self.upper.ratio_sq),
            "required_lower": str(self.required_lower),
            "required_upper": self.required_upper,
            "lower_witness": self.lower.collection.to_json(),
            "failures": list(self.failures),
        }


def _bounds(name: str, R: Rearrangement, restriction: IntervalSet, witness: IntervalSet,
            need_lo: Fraction, need_hi: int, seed: int, trials: int) -> OperatorBounds:
    lo = certify_lower_bound(R, witness)
    hi = certify_upper_bound_on_subspace(R, restriction, seed=seed, trials=trials)
    fails = []
    if not witness.issubset(restriction):
        fails.append("lower-bound witness leaves the restriction")
    if not lo.witness_verified:
        fails.append("BMO norms of the witness disagree with the Carleson constants")
    if lo.ratio_sq < need_lo:
        fails.append(f"lower bound {lo.ratio_sq} < {need_lo}")
    if hi.ratio_sq != need_hi:
        fails.append(f"upper bound {hi.ratio_sq} != {need_hi}")
    if hi.violations:
        fails.append(f"{hi.violations} random expansions exceed the upper bound")
    return OperatorBounds(name, restriction, lo, hi, need_lo, need_hi, tuple(fails))


def theorem_operatornorm1_suite(N: int, level: int, seed: int = 0,
                                trials: int = 16) -> tuple[OperatorBounds, OperatorBounds]:
    """Certified bounds for tau restricted to the subtree at I[level, 0] and sigma on D_{N-level}.

    Both must satisfy ``(N - level + 1) / 2 <= lower`` and ``upper == N - level + 1``.
    """
    check_depth(N)
    if not 0 <= level <= N:
        raise ValueError(f"level must satisfy 0 <= level <= N, got {level}")
    t = Rearrangement.postorder(N)
    s = t.inverted()
    size = N - level + 1
    need = Fraction(size, 2)
    T = subtree(level, 0, N)
    tau_bounds = _bounds("tau", t, T, lowermost_level(level, 0, N), need, size, seed, trials)
    D = top_tree(N - level, N)
    witness = t.image(subtree(level + 1, 1, N)) if level < N else D
    sigma_bounds = _bounds("sigma", s, D, witness, need, size, seed + 1, trials)
    return tau_bounds, sigma_bounds


def extremality_certificates(N: int) -> tuple[NormCertificate, Fraction, int]:
    """Lower certificate for ``T_tau`` on all of D_N and the universal bound ``N + 1``.

    Returns the certificate, the required ``(N + 1) / 2`` and ``car(D_N)``.
    """
    t = Rearrangement.postorder(N)
    cert = certify_lower_bound(t, lowermost_level(0, 0, N))
    return cert, Fraction(N + 1, 2), int(carleson(IntervalSet.full(N)).num)


@dataclass
class LexorderCase:
    e1: DyadicInterval
    e2: DyadicInterval
    value: DyadicRational
    bound: int
    image_is_order_interval: bool

    @property
    def ok(self) -> bool:
        return self.image_is_order_interval and self.value <= self.bound


def theorem_lexorder_suite(N: int) -> list[LexorderCase]:
    """Every lexicographic order interval ``E``: ``car(sigma(E)) <= N - level(L_1) + 2``.

    Also records whether ``sigma(E)`` is the postorder interval between the
    images of the endpoints.
    """
    check_depth(N)
    s = Rearrangement.inverse_postorder(N)
    size = (1 << (N + 1)) - 1
    out = []
    for b1 in range(1, size + 1):
        e1 = interval_of_index(b1)
        j1 = s(e1)
        for b2 in range(b1, size + 1):
            e2 = interval_of_index(b2)
            image = s.image(lex_order_interval(e1, e2, N))
            B = post_order_interval(j1, s(e2), N)
            L1 = next(iv for iv in maximal_intervals(B) if contains(iv, j1))
            out.append(LexorderCase(e1, e2, carleson(image), N - L1.level + 2, image == B))
    return out
