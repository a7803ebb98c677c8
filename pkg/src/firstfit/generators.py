"""Seeded poset families and presentation orders.

Every generator is a pure function of its arguments: the same seed gives
the same poset, element for element.
"""

from __future__ import annotations

import heapq
from typing import Sequence

import numpy as np

from .errors import GiveUpError
from .partition import first_fit_count, is_permutation
from .poset import Poset, contains_r_plus_s, induced_subposet, to_mask

ORDER_STRATEGIES = ("random", "linear_extension", "reverse_linext", "greedy_adversarial")


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _closed_from_upper(tri: np.ndarray, labels: np.ndarray) -> Poset:
    # tri is strictly upper triangular over positions; labels[pos] is the element id
    n = tri.shape[0]
    up_pos = [0] * n
    for i in range(n - 1, -1, -1):
        row = 0
        for j in np.flatnonzero(tri[i]).tolist():
            row |= (1 << j) | up_pos[j]
        up_pos[i] = row
    up = [0] * n
    for i in range(n):
        row, pos = 0, up_pos[i]
        while pos:
            low = pos & -pos
            row |= 1 << int(labels[low.bit_length() - 1])
            pos ^= low
        up[int(labels[i])] = row
    return Poset(up)


def random_poset(n: int, edge_prob: float, seed) -> Poset:
    """Closure of a random DAG: each pair that is forward in a random
    linear order is related with probability ``edge_prob``."""
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = _rng(seed)
    labels = rng.permutation(n)
    tri = np.triu(rng.random((n, n)) < edge_prob, 1)
    return _closed_from_upper(tri, labels)


def random_intervals(n: int, seed) -> list[tuple[int, int]]:
    """``n`` closed intervals with integer endpoints in ``[0, 4n]``."""
    rng = _rng(seed)
    ends = np.sort(rng.integers(0, 4 * n + 1, size=(n, 2)), axis=1)
    return [(int(a), int(b)) for a, b in ends]


def interval_order(intervals: Sequence[tuple[int, int]]) -> Poset:
    """``[a, b] < [c, d]`` iff ``b < c``; touching intervals are incomparable."""
    n = len(intervals)
    if n == 0:
        return Poset([])
    left = np.array([a for a, _ in intervals])
    right = np.array([b for _, b in intervals])
    rel = right[:, None] < left[None, :]
    return Poset([to_mask(np.flatnonzero(row).tolist()) for row in rel])


def random_interval_order(n: int, seed) -> Poset:
    return interval_order(random_intervals(n, seed))


def random_bounded_height_poset(n: int, hmax: int, seed, edge_prob: float = 0.5) -> Poset:
    """Random poset of height at most ``hmax``.

    Elements are spread over levels ``1 .. hmax`` (the first ``min(n, hmax)``
    elements take one level each so every level is used) and relations only
    go from a lower level to a strictly higher one.
    """
    if hmax < 1:
        raise ValueError("hmax must be at least 1")
    rng = _rng(seed)
    k = min(n, hmax)
    levels = np.concatenate([np.arange(1, k + 1), rng.integers(1, hmax + 1, size=n - k)])
    rel = (levels[:, None] < levels[None, :]) & (rng.random((n, n)) < edge_prob)
    order = np.argsort(levels, kind="stable")
    tri = rel[np.ix_(order, order)]
    return _closed_from_upper(np.triu(tri, 1), order)


def random_rs_free(
    n: int,
    r: int,
    s: int,
    edge_prob: float,
    seed,
    max_tries: int | None = None,
) -> Poset:
    """Random (r+s)-free poset obtained by repair.

    Starts from :func:`random_poset` and, while an induced ``r + s`` remains,
    deletes one element of the witness (chosen by the seeded generator).
    The result usually has fewer than ``n`` elements.  ``max_tries`` caps the
    number of deletions; the default allows up to ``n``.
    """
    if r < 2 or s < 2:
        raise ValueError("r and s must be at least 2")
    rng = _rng(seed)
    p = random_poset(n, edge_prob, rng)
    budget = n if max_tries is None else max_tries
    deletions = 0
    while (witness := contains_r_plus_s(p, r, s)) is not None:
        if deletions == budget:
            raise GiveUpError(f"still contains {r}+{s} after {budget} repairs")
        deletions += 1
        culprits = sorted(witness.chain_a + witness.chain_b)
        drop = culprits[int(rng.integers(len(culprits)))]
        p, _ = induced_subposet(p, (x for x in range(p.n) if x != drop))
    return p


def random_linear_extension(p: Poset, seed) -> tuple[int, ...]:
    rng = _rng(seed)
    prio = rng.random(p.n)
    indeg = [d.bit_count() for d in p.down]
    # only cover edges matter for Kahn's algorithm, but closed rows work too
    heap = [(prio[x], x) for x in range(p.n) if indeg[x] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, x = heapq.heappop(heap)
        out.append(x)
        row = p.up[x]
        while row:
            low = row & -row
            y = low.bit_length() - 1
            row ^= low
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, (prio[y], y))
    return tuple(out)


def greedy_adversarial_order(p: Poset, seed, budget: int | None = None) -> tuple[int, ...]:
    """Hill-climb over presentation orders by random transpositions,
    keeping a swap whenever First-Fit does not get cheaper."""
    rng = _rng(seed)
    order = [int(x) for x in rng.permutation(p.n)]
    if p.n < 2:
        return tuple(order)
    best = first_fit_count(p, order)
    moves = 50 * p.n if budget is None else budget
    pairs = rng.integers(0, p.n, size=(moves, 2))
    for i, j in pairs.tolist():
        if i == j:
            continue
        order[i], order[j] = order[j], order[i]
        m = first_fit_count(p, order)
        if m >= best:
            best = m
        else:
            order[i], order[j] = order[j], order[i]
    return tuple(order)


def order_strategies(p: Poset, strategy: str, seed) -> tuple[int, ...]:
    """Presentation order for ``p`` under one of :data:`ORDER_STRATEGIES`."""
    if strategy == "random":
        order = tuple(int(x) for x in _rng(seed).permutation(p.n))
    elif strategy == "linear_extension":
        order = random_linear_extension(p, seed)
    elif strategy == "reverse_linext":
        order = random_linear_extension(p, seed)[::-1]
    elif strategy == "greedy_adversarial":
        order = greedy_adversarial_order(p, seed)
    else:
        raise ValueError(f"unknown order strategy {strategy!r}")
    assert is_permutation(order, p.n)
    return order
