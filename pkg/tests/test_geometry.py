from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from postorder import (
    DyadicInterval,
    IntervalSet,
    carleson,
    carleson_cone_fillup,
    carleson_order_interval,
    cone,
    maximal_decomposition,
    maximal_intervals,
    right_fill_up,
    subtree,
)
from postorder.geometry import maximal_intervals_sweep

from conftest import carleson_oracle, inside, postorder_recursive

I = DyadicInterval


def test_cone_chain():
    c = cone(I(3, 0), I(0, 0), 3)
    assert c.chain == (I(3, 0), I(2, 0), I(1, 0), I(0, 0))
    assert c.n == 4
    assert carleson(c.as_set()) == Fraction(15, 8)
    with pytest.raises(ValueError):
        cone(I(1, 0), I(1, 1), 3)


def test_right_fill_up_blocks():
    r = right_fill_up(I(2, 1), I(0, 0), 3)
    assert [len(b) for b in r.blocks] == [0, 7]
    assert r.blocks[1] == subtree(1, 1, 3)
    assert not right_fill_up(I(2, 3), I(0, 0), 3)


# Carleson constants of cone plus fill-up from the brute-force oracle
@pytest.mark.parametrize("inner, value, lower, upper", [
    (I(3, 0), 4, 1, 5),
    (I(2, 1), Fraction(13, 4), 2, 5),
])
def test_cone_fillup_examples(inner, value, lower, upper):
    rep = carleson_cone_fillup(inner, I(0, 0), 3)
    assert rep.value == value
    assert (rep.lower, rep.upper) == (lower, upper)
    assert rep.asserted and rep.ok


def test_cone_fillup_not_asserted_without_fill():
    rep = carleson_cone_fillup(I(2, 3), I(0, 0), 3)
    assert not rep.asserted and rep.ok is None


def test_decomposition_example():
    d = maximal_decomposition(I(3, 1), I(2, 2), 3)
    assert d.maximal == (I(1, 0), I(2, 2))
    assert d.cone.chain == (I(3, 1), I(2, 0), I(1, 0))
    assert d.ok
    assert d.union() == d.order_interval
    assert carleson(d.order_interval) == Fraction(11, 4)


def test_maximal_intervals_brute_force():
    for N in range(5):
        seq = postorder_recursive(N)
        for a in range(len(seq)):
            for b in range(a, len(seq)):
                B = seq[a:b + 1]
                brute = sorted((x for x in B if not any(y != x and inside(x, y) for y in B)),
                               key=lambda iv: iv.left)
                assert maximal_intervals(IntervalSet(N, B)) == brute
                assert maximal_intervals_sweep(seq[a], seq[b], N) == brute


@given(st.integers(0, 5).flatmap(lambda N: st.tuples(
    st.just(N), st.integers(1, 2 ** (N + 1) - 1), st.integers(1, 2 ** (N + 1) - 1))))
def test_decomposition_properties(args):
    N, a, b = args
    a, b = min(a, b), max(a, b)
    seq = postorder_recursive(N)
    d = maximal_decomposition(seq[a - 1], seq[b - 1], N)
    assert d.violations == ()
    pieces = [d.cone.as_set(), *d.fillup.blocks, *d.subtrees]
    assert sum(len(p) for p in pieces) == len(d.order_interval)


def test_order_interval_upper_bound_always_holds():
    for N in range(5):
        seq = postorder_recursive(N)
        for a in range(len(seq)):
            for b in range(a, len(seq)):
                rep = carleson_order_interval(seq[a], seq[b], N)
                assert rep.upper_ok
                assert rep.value == carleson_oracle(IntervalSet(N, seq[a:b + 1]))


def test_order_interval_lower_bound_counterexample():
    # B = {I[1,0], I[2,2]} is an antichain, so its constant is 1,
    # yet the lower bound N - level(I[1,0]) + 1 is 2
    rep = carleson_order_interval(I(1, 0), I(2, 2), 2)
    assert rep.value == 1
    assert rep.lower == 2
    assert not rep.lower_ok
