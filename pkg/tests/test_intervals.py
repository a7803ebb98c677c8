import pytest
from hypothesis import given, settings

from firstfit.errors import EmptyIntervalError
from firstfit.generators import random_interval_order, random_rs_free
from firstfit.intervals import (
    IntervalAssignment,
    assign_intervals,
    build_groups,
    compute_b,
    dumps_intervals,
    loads_intervals,
    property_1_violations,
    property_2_violations,
    verify_property_1,
    verify_property_2,
)
from firstfit.poset import Poset, antichain, chain, contains_r_plus_s, disjoint_sum

import oracles
from conftest import posets


def test_b_on_three_chain():
    assert compute_b(chain(3), 2) == (2, 3, 4)


def test_b_on_antichain():
    assert compute_b(antichain(4), 2) == (2, 2, 2, 2)
    assert compute_b(antichain(4), 3) == (2, 2, 2, 2)


def test_b_needs_r_at_least_two():
    with pytest.raises(ValueError):
        compute_b(chain(2), 1)


@settings(max_examples=150, deadline=None)
@given(posets(max_n=8))
def test_b_matches_oracle(p):
    for r in (2, 3, 4):
        assert list(compute_b(p, r)) == oracles.b_values(p, r)


def test_intervals_on_three_chain():
    ia = assign_intervals(chain(3), 2)
    assert [list(ia.interval(x)) for x in range(3)] == [[1], [2], [3]]


def test_intervals_on_antichain():
    ia = assign_intervals(antichain(3), 2)
    assert all(list(ia.interval(x)) == [1] for x in range(3))


def test_short_poset_intervals_run_to_q():
    # height 2 < r=3: every Z(x) is empty
    p = Poset.from_cover_relations(4, [(0, 1), (2, 3), (0, 3)])
    ia = assign_intervals(p, 3)
    assert [list(ia.interval(x)) for x in range(4)] == [[1, 2], [2], [1, 2], [2]]


def test_empty_interval_rejected():
    with pytest.raises(EmptyIntervalError):
        IntervalAssignment(r=2, q=2, h=(1, 2), b=(2, 2))


def test_groups_examples():
    assert build_groups(assign_intervals(chain(3), 2)).groups == ((0,), (1,), (2,))
    assert build_groups(assign_intervals(antichain(3), 2)).groups == ((0, 1, 2),)


@settings(max_examples=100, deadline=None)
@given(posets(min_n=1, max_n=12))
def test_groups_cover_every_element(p):
    gf = build_groups(assign_intervals(p, 2))
    assert set().union(*map(set, gf.groups)) == set(range(p.n))


def test_property_1_singletons():
    p = chain(3)
    assert verify_property_1(p, assign_intervals(p, 2), 2)


def test_property_1_detects_widened_interval():
    # I(0) widened from {1} to {1, 2} puts the 2-chain 0<1 into X_2
    p = chain(3)
    bad = IntervalAssignment(r=2, q=3, h=(1, 2, 3), b=(3, 3, 4))
    assert not verify_property_1(p, bad, 2)
    assert property_1_violations(p, bad, 2) == [(2, [0, 1])]


def test_property_2_antichain():
    p = antichain(4)
    assert verify_property_2(p, assign_intervals(p, 2), 2)


def test_property_2_interval_orders():
    for seed in range(20):
        p = random_interval_order(30, seed)
        assert verify_property_2(p, assign_intervals(p, 2), 2)


def test_property_2_detects_gap():
    # 2-chain next to a 3-chain contains 2+2; I(0)={1} and I(4)={3} leave
    # the integer 2 strictly between them
    p = disjoint_sum(chain(2), chain(3))
    assert contains_r_plus_s(p, 2, 2) is not None
    ia = assign_intervals(p, 2)
    assert (ia.h, ia.b) == ((1, 2, 1, 2, 3), (2, 4, 2, 3, 4))
    assert property_2_violations(p, ia, 2) == [(0, 4)]


@pytest.mark.parametrize("r,s", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 4)])
def test_both_properties_on_rs_free(r, s):
    for seed in range(10):
        p = random_rs_free(50, r, s, 0.15, seed)
        ia = assign_intervals(p, r)
        assert verify_property_1(p, ia, r)
        assert verify_property_2(p, ia, s)


@settings(max_examples=100, deadline=None)
@given(posets(max_n=8))
def test_properties_follow_from_freeness(p):
    for r in (2, 3):
        for s in (2, 3):
            if oracles.r_plus_s(p, r, s) is None:
                ia = assign_intervals(p, r)
                assert verify_property_1(p, ia, r)
                assert verify_property_2(p, ia, s)


def test_interval_text_round_trip():
    ia = assign_intervals(disjoint_sum(chain(2), chain(3)), 2)
    text = dumps_intervals(ia)
    assert text.splitlines()[0] == "0 1 2 [1,1]"
    assert loads_intervals(text, 2) == ia
