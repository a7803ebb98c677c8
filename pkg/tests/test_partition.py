from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from firstfit import partition
from firstfit.errors import BoundViolation
from firstfit.generators import random_interval_order
from firstfit.partition import (
    OrderedChainPartition,
    dumps_partition,
    ff_ratio,
    first_fit,
    first_fit_count,
    linear_bound,
    loads_partition,
    min_chain_partition,
    verify_ff_partition,
)
from firstfit.poset import Poset, antichain, chain, width

import oracles
from conftest import posets


def test_chain_any_order_one_class():
    c = chain(4)
    for order in permutations(range(4)):
        assert first_fit(c, order).m == 1


def test_antichain_k_classes():
    assert first_fit(antichain(5), range(5)).m == 5


def test_two_plus_two_hand_simulation(two_plus_two):
    cp = first_fit(two_plus_two, (0, 3, 1, 2))
    assert cp.chains == ((0, 1), (3, 2))


def test_empty_poset():
    cp = first_fit(Poset([]), ())
    assert cp.m == 0
    assert verify_ff_partition(Poset([]), cp)


def test_rejects_non_permutation():
    with pytest.raises(ValueError):
        first_fit(chain(3), (0, 0, 1))
    with pytest.raises(ValueError):
        first_fit(chain(3), (0, 1))


@settings(max_examples=150, deadline=None)
@given(posets(max_n=10), st.randoms(use_true_random=False))
def test_matches_naive_first_fit(p, rnd):
    order = list(range(p.n))
    rnd.shuffle(order)
    cp = first_fit(p, order)
    assert list(cp.chains) == oracles.first_fit(p, order)
    assert first_fit_count(p, order) == cp.m
    assert verify_ff_partition(p, cp)


def test_split_chain_in_wrong_order_is_not_ff():
    cp = OrderedChainPartition(((0,), (1,)))
    assert not verify_ff_partition(chain(2), cp)


def test_verify_rejects_non_partitions(two_plus_two):
    assert not verify_ff_partition(two_plus_two, OrderedChainPartition(((0, 1),)))
    assert not verify_ff_partition(two_plus_two, OrderedChainPartition(((0, 2), (1, 3))))
    assert not verify_ff_partition(two_plus_two, OrderedChainPartition(((0, 1), (0, 2, 3))))


def test_min_chain_partition_examples(two_plus_two):
    assert min_chain_partition(antichain(5)).m == 5
    assert min_chain_partition(chain(4)).m == 1
    assert min_chain_partition(two_plus_two).m == 2


@settings(max_examples=100, deadline=None)
@given(posets(max_n=12))
def test_min_chain_partition_is_dilworth(p):
    cp = min_chain_partition(p)
    assert cp.m == oracles.width(p)
    assert sorted(x for c in cp.chains for x in c) == list(range(p.n))
    assert all(oracles.is_chain(p, c) for c in cp.chains)


def test_ratio_examples():
    assert linear_bound(3, 2, 2) == 24
    res = ff_ratio(chain(5), range(5), 2, 2)
    assert (res.m, res.w, res.ratio) == (1, 1, Fraction(1))
    res = ff_ratio(antichain(4), range(4), 3, 2)
    assert (res.m, res.w, res.ratio) == (4, 4, Fraction(1))
    res = ff_ratio(Poset([]), (), 2, 2)
    assert res.ratio is None


def test_interval_order_bound_is_8w():
    p = random_interval_order(40, seed=1)
    res = ff_ratio(p, range(p.n), 2, 2)
    assert res.bound == 8 * width(p)
    assert res.m <= res.bound


def test_ratio_raises_on_violation(monkeypatch, two_plus_two):
    monkeypatch.setattr(partition, "linear_bound", lambda w, r, s: 1)
    with pytest.raises(BoundViolation):
        ff_ratio(two_plus_two, (0, 2, 1, 3), 2, 2)


def test_partition_text_round_trip(two_plus_two):
    cp = first_fit(two_plus_two, (0, 3, 1, 2))
    text = dumps_partition(cp)
    assert text == "chain 1: 0 1\nchain 2: 3 2\n"
    assert loads_partition(text) == cp
