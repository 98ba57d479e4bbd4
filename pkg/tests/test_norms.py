import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from postorder import (
    DyadicInterval,
    DyadicRational,
    HaarExpansion,
    IntervalSet,
    Rearrangement,
    RootTwoDyadic,
    apply_bmo_rearrangement,
    apply_hp_rearrangement,
    bmo_norm_sq,
    carleson,
    certify_lower_bound,
    certify_upper_bound_on_subspace,
    fefferman_check,
    h1_norm_bounds,
    h2_norm_sq,
    hp_norm,
    inner_product,
    lowermost_level,
    subtree,
    theorem_operatornorm1_suite,
)
from postorder.norms import best_lower_certificate, extremality_certificates, top_tree

from conftest import bmo_oracle, hp_oracle, inner_oracle

I = DyadicInterval


@st.composite
def expansions(draw, max_depth=4):
    N = draw(st.integers(0, max_depth))
    size = 2 ** (N + 1) - 1
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=size, max_size=size))
    exps = draw(st.lists(st.integers(0, 3), min_size=size, max_size=size))
    pairs = [(I(n.bit_length() - 1, n - (1 << (n.bit_length() - 1))), DyadicRational(c, e))
             for n, c, e in zip(range(1, size + 1), coeffs, exps)]
    return HaarExpansion(N, pairs)


def as_fractions(f):
    return {iv: x.as_fraction() for iv, x in f.coeffs.items()}


F = HaarExpansion(2, {I(0, 0): 1, I(1, 0): 2, I(2, 3): -3})


def test_example_norms():
    # values from the grid oracle
    assert bmo_norm_sq(F) == 9
    assert h2_norm_sq(F) == Fraction(21, 4)
    assert hp_norm(F, 1) == pytest.approx(2.15860340379199, rel=1e-12)
    g = HaarExpansion(2, {I(0, 0): "1/2", I(1, 1): 1})
    assert inner_product(F, g) == Fraction(1, 2)


def test_json_round_trip():
    assert HaarExpansion.from_json(F.to_json()) == F
    r = HaarExpansion(1, {I(1, 0): RootTwoDyadic(DyadicRational(3), 1)})
    assert HaarExpansion.from_json(r.to_json()) == r


@given(expansions())
def test_bmo_matches_oracle(f):
    assert bmo_norm_sq(f).as_fraction() == bmo_oracle(f.depth, as_fractions(f))


@given(expansions(), st.sampled_from([0.5, 1, 1.5, 2, 3]))
def test_hp_matches_oracle(f, p):
    assert hp_norm(f, p) == pytest.approx(hp_oracle(f.depth, as_fractions(f), p), rel=1e-11, abs=1e-300)


@given(expansions())
def test_h1_bounds_bracket(f):
    lo, hi = h1_norm_bounds(f, bits=40)
    value = hp_oracle(f.depth, as_fractions(f), 1)
    assert float(lo) <= value * (1 + 1e-12) and value <= float(hi) * (1 + 1e-12)
    assert hi - lo <= DyadicRational(2 ** f.depth + 1, 40)


@given(expansions(), expansions())
def test_inner_product_matches_oracle(f, h):
    if f.depth != h.depth:
        return
    assert inner_product(f, h).as_fraction() == inner_oracle(f.depth, as_fractions(f), as_fractions(h))


@given(st.integers(0, 4).flatmap(lambda N: st.tuples(st.just(N), st.integers(1, 2 ** (2 ** (N + 1) - 1) - 1))))
def test_bmo_of_indicator_sum_is_carleson(args):
    N, mask = args
    C = IntervalSet.from_mask(N, mask)
    assert bmo_norm_sq(HaarExpansion.indicator_sum(C)) == carleson(C)


@given(expansions(), st.integers(0, 10**6))
def test_hp_rearrangement_p2_isometry(f, seed):
    R = Rearrangement.random(f.depth, random.Random(seed))
    assert h2_norm_sq(apply_hp_rearrangement(R, 2, f)) == h2_norm_sq(f)


def test_hp_rearrangement_coefficients():
    N = 2
    t = Rearrangement.postorder(N)
    f = HaarExpansion(N, {I(0, 0): 1})
    # tau(I[0,0]) = I[2,3]: coefficient scales by (|I|/|tau I|)**(1/p) = 4**(1/p)
    assert apply_hp_rearrangement(t, 1, f).coefficient(I(2, 3)) == 4
    assert apply_hp_rearrangement(t, 2, f).coefficient(I(2, 3)) == 2
    assert apply_hp_rearrangement(t, Fraction(2, 3), f).coefficient(I(2, 3)) == 8
    assert apply_hp_rearrangement(t, 4, f).coefficient(I(2, 3)) == pytest.approx(2 ** 0.5)
    g = HaarExpansion(2, {I(1, 0): 1})
    # tau(I[1,0]) = I[1,1]: same level, unchanged
    assert apply_hp_rearrangement(t, 1, g).coefficient(I(1, 1)) == 1
    x = apply_hp_rearrangement(t, 2, HaarExpansion(2, {I(2, 1): 1})).coefficient(I(1, 0))
    assert isinstance(x, RootTwoDyadic) and x.square() == Fraction(1, 2)
    assert apply_hp_rearrangement(t, 3, f).coefficient(I(2, 3)) == pytest.approx(4 ** (1 / 3))
    with pytest.raises(ValueError):
        apply_hp_rearrangement(t, 0, f)


def test_bmo_rearrangement_moves_coefficients():
    t = Rearrangement.postorder(2)
    g = apply_bmo_rearrangement(t, F)
    assert g.coefficient(I(2, 3)) == 1
    assert len(g.coeffs) == 3


def test_fefferman_example():
    rep = fefferman_check(F, HaarExpansion(2, {I(0, 0): 1, I(2, 3): 1}))
    assert rep.holds
    assert rep.integral == 1 + Fraction(-3, 4)


def test_certificates():
    N = 3
    t = Rearrangement.postorder(N)
    lo = certify_lower_bound(t, lowermost_level(0, 0, N))
    assert lo.witness_verified and lo.ratio_sq == Fraction(11, 4)
    hi = certify_upper_bound_on_subspace(t, subtree(0, 0, N), seed=3, trials=8)
    assert hi.ratio_sq == N + 1 and hi.violations == 0
    best = best_lower_certificate(t, IntervalSet.full(N))
    assert best.ratio_sq >= lo.ratio_sq


def test_operator_norm_suite_small():
    for N in range(5):
        for level in range(N + 1):
            for b in theorem_operatornorm1_suite(N, level, trials=4):
                assert b.ok, b.failures


def test_extremality_and_top_tree():
    cert, need, universal = extremality_certificates(4)
    assert cert.ratio_sq >= need and universal == 5
    assert top_tree(2, 4) == IntervalSet.from_indices(4, range(1, 8))
