"""Interval assignment for (r+s)-free posets.

Each element ``x`` gets the integer interval ``I(x) = [h(x), b(x) - 1]``
where ``h`` is its height and ``b(x)`` is the least height of an element
sitting at the top of an ``r``-element chain whose bottom is ``x`` (or
``q + 1`` if no such chain exists, ``q`` being the height of the poset).

The level sets ``X_k = {x : k in I(x)}`` have height at most ``r - 1``, and
incomparable elements get intervals that overlap or sit at most ``s - 2``
integers apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import EmptyIntervalError, FormatError
from .poset import Poset, height, longest_chain_in, to_mask


@dataclass(frozen=True)
class IntervalAssignment:
    r: int
    q: int
    h: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        for x, (hx, bx) in enumerate(zip(self.h, self.b)):
            if bx - 1 < hx:
                raise EmptyIntervalError(f"element {x}: h={hx}, b={bx}")

    @property
    def n(self) -> int:
        return len(self.h)

    def lo(self, x: int) -> int:
        return self.h[x]

    def hi(self, x: int) -> int:
        return self.b[x] - 1

    def interval(self, x: int) -> range:
        return range(self.h[x], self.b[x])


@dataclass(frozen=True)
class GroupFamily:
    """Groups ``X_1 .. X_q``; ``groups[k - 1]`` is ``X_k`` as a sorted tuple."""

    groups: tuple[tuple[int, ...], ...]

    @property
    def q(self) -> int:
        return len(self.groups)

    def group(self, k: int) -> tuple[int, ...]:
        return self.groups[k - 1]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        # index 0 is a placeholder so masks[k] is X_k
        return (0,) + tuple(to_mask(g) for g in self.groups)

    def size(self, k: int) -> int:
        return len(self.groups[k - 1])


def compute_b(p: Poset, r: int) -> tuple[int, ...]:
    """``b(x)`` for every element, with ``q + 1`` when ``x`` starts no
    chain of ``r`` elements."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if p.n == 0:
        return ()
    q = height(p)
    h = np.asarray(p.heights)
    tops = p.reach(r)
    b = np.where(tops, h[None, :], q + 1).min(axis=1)
    return tuple(int(v) for v in b)


def assign_intervals(p: Poset, r: int) -> IntervalAssignment:
    return IntervalAssignment(r=r, q=height(p), h=p.heights, b=compute_b(p, r))


def build_groups(ia: IntervalAssignment) -> GroupFamily:
    members: list[list[int]] = [[] for _ in range(ia.q)]
    for x in range(ia.n):
        for k in ia.interval(x):
            members[k - 1].append(x)
    if any(not g for g in members):
        raise AssertionError("some level set X_k with k <= q is empty")
    return GroupFamily(tuple(tuple(g) for g in members))


def property_1_violations(p: Poset, ia: IntervalAssignment, r: int) -> list[tuple[int, list[int]]]:
    """Groups containing a chain of ``r`` elements, with that chain as evidence."""
    out = []
    for k, g in enumerate(build_groups(ia).groups, start=1):
        top = longest_chain_in(p, to_mask(g))
        if len(top) > r - 1:
            out.append((k, top))
    return out


def verify_property_1(p: Poset, ia: IntervalAssignment, r: int) -> bool:
    return not property_1_violations(p, ia, r)


def property_2_violations(p: Poset, ia: IntervalAssignment, s: int) -> list[tuple[int, int]]:
    """Incomparable pairs whose intervals are more than ``s - 2`` apart."""
    if p.n == 0:
        return []
    lo = np.asarray(ia.h)
    hi = np.asarray(ia.b) - 1
    # integers strictly between the two intervals; negative when they overlap
    gap = np.maximum(lo[None, :] - hi[:, None] - 1, lo[:, None] - hi[None, :] - 1)
    inc = ~(p.matrix | p.matrix.T)
    bad = np.argwhere(np.triu(inc & (gap > s - 2), 1))
    return [(int(x), int(y)) for x, y in bad]


def verify_property_2(p: Poset, ia: IntervalAssignment, s: int) -> bool:
    return not property_2_violations(p, ia, s)


def dumps_intervals(ia: IntervalAssignment) -> str:
    return "".join(
        f"{x} {ia.h[x]} {ia.b[x]} [{ia.lo(x)},{ia.hi(x)}]\n" for x in range(ia.n)
    )


def loads_intervals(text: str, r: int) -> IntervalAssignment:
    h, b = [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4 or int(parts[0]) != len(h):
            raise FormatError(f"unrecognised line: {line!r}")
        h.append(int(parts[1]))
        b.append(int(parts[2]))
    return IntervalAssignment(r=r, q=max(h, default=0), h=tuple(h), b=tuple(b))
