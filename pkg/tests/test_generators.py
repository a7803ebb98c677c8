from itertools import combinations

import pytest

from firstfit.errors import GiveUpError
from firstfit.generators import (
    ORDER_STRATEGIES,
    greedy_adversarial_order,
    interval_order,
    order_strategies,
    random_bounded_height_poset,
    random_interval_order,
    random_intervals,
    random_linear_extension,
    random_poset,
    random_rs_free,
)
from firstfit.partition import first_fit_count, is_permutation
from firstfit.poset import antichain, chain, contains_r_plus_s, height

import oracles


def test_random_poset_extremes():
    full = random_poset(6, 1.0, seed=3)
    assert full.is_chain(range(6))
    assert random_poset(6, 0.0, seed=3) == antichain(6)


def test_random_poset_deterministic():
    assert random_poset(30, 0.2, seed=9) == random_poset(30, 0.2, seed=9)
    assert any(
        random_poset(10, 0.5, seed=s).up != random_poset(10, 0.5, seed=s + 100).up for s in range(5)
    )


def test_interval_order_examples():
    assert interval_order([(0, 10), (1, 9), (2, 8)]) == antichain(3)
    assert interval_order([(0, 1), (2, 3), (4, 5)]) == chain(3)
    assert interval_order([(0, 2), (2, 4)]) == antichain(2)


def test_random_interval_orders_are_two_plus_two_free():
    for seed in range(30):
        assert contains_r_plus_s(random_interval_order(25, seed), 2, 2) is None


def test_random_intervals_well_formed():
    for a, b in random_intervals(50, seed=4):
        assert 0 <= a <= b <= 200


def test_bounded_height():
    assert random_bounded_height_poset(7, 1, seed=0) == antichain(7)
    assert random_bounded_height_poset(5, 5, seed=2, edge_prob=1.0).is_chain(range(5))
    for seed in range(20):
        assert height(random_bounded_height_poset(40, 4, seed)) <= 4


@pytest.mark.parametrize("r,s", [(2, 2), (2, 3), (3, 3), (4, 2)])
def test_rs_free_post_condition(r, s):
    for seed in range(10):
        p = random_rs_free(40, r, s, 0.1, seed)
        assert contains_r_plus_s(p, r, s) is None
    assert random_rs_free(40, r, s, 0.1, 5) == random_rs_free(40, r, s, 0.1, 5)


def test_rs_free_two_two_is_interval_order():
    # Characterisation check: the strict down-sets of a 2+2-free order are
    # totally ordered by inclusion.
    for seed in range(15):
        p = random_rs_free(30, 2, 2, 0.15, seed)
        downs = [_down(p, x) for x in range(p.n)]
        for a, b in combinations(downs, 2):
            assert a <= b or b <= a


def _down(p, x):
    return frozenset(y for y in range(p.n) if p.lt(y, x))


def test_rs_free_gives_up():
    with pytest.raises(GiveUpError):
        random_rs_free(60, 2, 2, 0.3, seed=0, max_tries=1)


def test_linear_extension():
    assert random_linear_extension(chain(6), seed=1) == tuple(range(6))
    p = random_poset(30, 0.2, seed=2)
    order = random_linear_extension(p, seed=5)
    pos = {x: i for i, x in enumerate(order)}
    assert is_permutation(order, p.n)
    assert all(pos[x] < pos[y] for x, y in oracles.relation(p))


def test_linear_extension_of_chain_uses_one_class():
    assert first_fit_count(chain(8), random_linear_extension(chain(8), seed=0)) == 1


def test_greedy_never_worse_than_start():
    for seed in range(10):
        p = random_rs_free(25, 2, 3, 0.1, seed)
        start = order_strategies(p, "random", seed)
        greedy = greedy_adversarial_order(p, seed)
        assert is_permutation(greedy, p.n)
        assert first_fit_count(p, greedy) >= first_fit_count(p, start)


@pytest.mark.parametrize("strategy", ORDER_STRATEGIES)
def test_strategies_are_permutations(strategy):
    p = random_poset(20, 0.2, seed=11)
    order = order_strategies(p, strategy, seed=3)
    assert is_permutation(order, p.n)
    assert order == order_strategies(p, strategy, seed=3)


def test_reverse_linext_reverses():
    p = random_poset(15, 0.3, seed=1)
    assert order_strategies(p, "reverse_linext", 4) == order_strategies(p, "linear_extension", 4)[::-1]


def test_unknown_strategy():
    with pytest.raises(ValueError):
        order_strategies(chain(2), "sideways", 0)
