import numpy as np
import pytest
from hypothesis import given, settings

from firstfit.errors import CycleError, FormatError, PosetError, SizeError
from firstfit.poset import (
    Poset,
    antichain,
    chain,
    contains_r_plus_s,
    dilworth,
    disjoint_sum,
    element_height,
    height,
    induced_subposet,
    loads_poset,
    dumps_poset,
    maximum_antichain,
    read_poset,
    width,
    width_bruteforce,
    write_poset,
)

import oracles
from conftest import posets


def test_closure_of_three_chain():
    p = Poset.from_cover_relations(3, [(0, 1), (1, 2)])
    assert oracles.relation(p) == {(0, 1), (1, 2), (0, 2)}


def test_no_covers_is_antichain():
    p = Poset.from_cover_relations(3, [])
    assert oracles.relation(p) == set()


def test_two_cycle_rejected():
    with pytest.raises(CycleError):
        Poset.from_cover_relations(2, [(0, 1), (1, 0)])


def test_longer_cycle_and_self_loop_rejected():
    with pytest.raises(CycleError):
        Poset.from_cover_relations(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(CycleError):
        Poset.from_cover_relations(1, [(0, 0)])


def test_out_of_range_cover():
    with pytest.raises(IndexError):
        Poset.from_cover_relations(2, [(0, 2)])


def test_non_closed_rows_rejected():
    # 0<1<2 without 0<2
    with pytest.raises(PosetError):
        Poset([0b010, 0b100, 0])


def test_heights():
    c = chain(3)
    assert [element_height(c, x) for x in range(3)] == [1, 2, 3]
    assert antichain(4).heights == (1, 1, 1, 1)
    v = Poset.from_cover_relations(3, [(0, 2), (1, 2)])
    assert element_height(v, 2) == 2
    with pytest.raises(IndexError):
        element_height(c, 3)


def test_height_examples():
    assert height(chain(3)) == 3
    assert height(antichain(5)) == 1
    assert height(Poset([])) == 0


@pytest.mark.parametrize("f", [width, width_bruteforce])
def test_width_examples(f, two_plus_two):
    assert f(antichain(5)) == 5
    assert f(chain(3)) == 1
    assert f(two_plus_two) == 2
    assert f(Poset([])) == 0


def test_bruteforce_size_limit():
    with pytest.raises(SizeError):
        width_bruteforce(antichain(25))


@settings(max_examples=150, deadline=None)
@given(posets(max_n=9))
def test_heights_match_oracle(p):
    assert list(p.heights) == oracles.heights(p)


@settings(max_examples=150, deadline=None)
@given(posets(max_n=10))
def test_width_matches_oracle(p):
    w = oracles.width(p)
    assert width(p) == w
    assert width_bruteforce(p) == w
    anti = maximum_antichain(p)
    assert len(anti) == w and oracles.is_antichain(p, anti)


@settings(max_examples=150, deadline=None)
@given(posets(max_n=12))
def test_dilworth_certificate(p):
    dec = dilworth(p)
    assert len(dec.chains) == len(dec.antichain) == width(p)
    assert sorted(x for c in dec.chains for x in c) == list(range(p.n))
    assert all(oracles.is_chain(p, c) for c in dec.chains)
    assert oracles.is_antichain(p, dec.antichain)


def test_two_plus_two_witness(two_plus_two):
    wit = contains_r_plus_s(two_plus_two, 2, 2)
    assert {wit.chain_a, wit.chain_b} == {(0, 1), (2, 3)}


def test_short_poset_has_no_witness():
    p = disjoint_sum(antichain(3), chain(1))
    assert contains_r_plus_s(p, 2, 5) is None
    assert contains_r_plus_s(chain(5), 6, 1) is None


@settings(max_examples=200, deadline=None)
@given(posets(max_n=9))
def test_witness_matches_oracle(p):
    for r in (1, 2, 3):
        for s in (1, 2, 3):
            wit = contains_r_plus_s(p, r, s)
            assert (wit is None) == (oracles.r_plus_s(p, r, s) is None)
            if wit is not None:
                a, b = wit.chain_a, wit.chain_b
                assert len(a) == r and len(b) == s
                assert oracles.is_chain(p, a) and oracles.is_chain(p, b)
                assert all(not oracles.comparable(p, x, y) for x in a for y in b)


def test_disjoint_sum_examples(two_plus_two):
    assert disjoint_sum(chain(2), chain(2)) == two_plus_two
    assert disjoint_sum(two_plus_two, Poset([])) == two_plus_two
    assert width(disjoint_sum(antichain(2), antichain(3))) == 5


def test_induced_subposet_examples():
    c = chain(3)
    full, keep = induced_subposet(c, range(3))
    assert full == c and keep == [0, 1, 2]
    empty, _ = induced_subposet(c, [])
    assert empty.n == 0
    sub, keep = induced_subposet(c, [0, 2])
    assert sub == chain(2) and keep == [0, 2]


@settings(max_examples=100, deadline=None)
@given(posets(max_n=10))
def test_induced_subposet_preserves_order(p):
    elems = list(range(0, p.n, 2))
    sub, keep = induced_subposet(p, elems)
    for i, x in enumerate(keep):
        for j, y in enumerate(keep):
            assert sub.lt(i, j) == p.lt(x, y)


@settings(max_examples=100, deadline=None)
@given(posets(max_n=12))
def test_text_round_trip(p):
    assert loads_poset(dumps_poset(p)) == p


def test_covers_are_hasse_diagram():
    p = Poset.from_cover_relations(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert sorted(p.covers()) == [(0, 1), (1, 2), (2, 3)]


def test_file_round_trip(tmp_path, two_plus_two):
    path = tmp_path / "p.txt"
    write_poset(two_plus_two, path)
    assert read_poset(path) == two_plus_two


@pytest.mark.parametrize(
    "text",
    ["", "poset v2\nn 2\n", "poset v1\nn x\n", "poset v1\nn 2\ncover 0\n", "poset v1\nn 2\nedge 0 1\n"],
)
def test_bad_text_rejected(text):
    with pytest.raises(FormatError):
        loads_poset(text)


def test_matrix_is_read_only(two_plus_two):
    m = two_plus_two.matrix
    assert m.dtype == np.bool_
    with pytest.raises(ValueError):
        m[0, 0] = True
