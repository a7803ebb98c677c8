"""First-Fit chain partitioning and the offline optimum it is measured against."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import BoundViolation, FormatError
from .poset import Poset, dilworth, iter_bits, to_mask, width


@dataclass(frozen=True)
class OrderedChainPartition:
    """Chains ``C_1 .. C_m``; each chain lists its elements in arrival order."""

    chains: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.chains)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(c) for c in self.chains)

    def chain_mask(self, j: int) -> int:
        """Mask of ``C_j`` (1-based); chains past ``m`` are empty."""
        if j < 1:
            raise IndexError("chains are numbered from 1")
        return self.masks[j - 1] if j <= self.m else 0

    def color_of(self) -> dict[int, int]:
        return {x: j for j, c in enumerate(self.chains, start=1) for x in c}


def is_permutation(order: Sequence[int], n: int) -> bool:
    return len(order) == n and sorted(order) == list(range(n))


def first_fit(p: Poset, order: Sequence[int]) -> OrderedChainPartition:
    """Online First-Fit: each arriving element joins the lowest-numbered
    class whose members are all comparable to it, else opens a new class."""
    if not is_permutation(order, p.n):
        raise ValueError("order must be a permutation of the poset's elements")
    masks: list[int] = []
    members: list[list[int]] = []
    comp = p.comparable_mask
    for x in order:
        cx = comp[x]
        for j, mask in enumerate(masks):
            if mask & ~cx == 0:
                masks[j] = mask | (1 << x)
                members[j].append(x)
                break
        else:
            masks.append(1 << x)
            members.append([x])
    return OrderedChainPartition(tuple(tuple(c) for c in members))


def first_fit_count(p: Poset, order: Sequence[int]) -> int:
    """Number of chains First-Fit opens; skips building the partition."""
    masks: list[int] = []
    comp = p.comparable_mask
    for x in order:
        cx = comp[x]
        for j, mask in enumerate(masks):
            if mask & ~cx == 0:
                masks[j] = mask | (1 << x)
                break
        else:
            masks.append(1 << x)
    return len(masks)


def verify_ff_partition(p: Poset, cp: OrderedChainPartition) -> bool:
    """Check that ``cp`` is an ordered partition of ``p`` into non-empty chains
    in which every element of a later chain is incomparable to some element
    of each earlier chain."""
    seen = 0
    for c in cp.chains:
        mask = to_mask(c)
        if not c or len(c) != mask.bit_count() or seen & mask:
            return False
        if not p.is_chain(c):
            return False
        seen |= mask
    if seen != p.universe:
        return False
    inc = p.incomparable_mask
    masks = cp.masks
    for j in range(1, len(masks)):
        for x in iter_bits(masks[j]):
            if any(masks[i] & inc[x] == 0 for i in range(j)):
                return False
    return True


def min_chain_partition(p: Poset) -> OrderedChainPartition:
    """A partition into ``width(p)`` chains, ordered by smallest element."""
    return OrderedChainPartition(tuple(tuple(c) for c in dilworth(p).chains))


@dataclass(frozen=True)
class FFRatio:
    m: int
    w: int
    bound: int
    ratio: Fraction | None


def linear_bound(w: int, r: int, s: int) -> int:
    """Chain budget ``8 (r-1) (s-1) w`` for (r+s)-free posets of width ``w``."""
    return 8 * (r - 1) * (s - 1) * w


def ff_ratio(p: Poset, order: Sequence[int], r: int, s: int) -> FFRatio:
    """First-Fit chain count against width; raises :class:`BoundViolation`
    when the count exceeds the linear bound."""
    m = first_fit_count(p, order)
    w = width(p)
    bound = linear_bound(w, r, s)
    if m > bound:
        raise BoundViolation(f"First-Fit used {m} chains, bound is {bound} (w={w}, r={r}, s={s})")
    return FFRatio(m, w, bound, Fraction(m, w) if w else None)


def dumps_partition(cp: OrderedChainPartition) -> str:
    return "".join(
        f"chain {i}: {' '.join(map(str, c))}\n" for i, c in enumerate(cp.chains, start=1)
    )


def loads_partition(text: str) -> OrderedChainPartition:
    chains = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, body = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "chain":
            raise FormatError(f"unrecognised line: {line!r}")
        if int(parts[1]) != len(chains) + 1:
            raise FormatError(f"chains out of sequence at {line!r}")
        chains.append(tuple(int(x) for x in body.split()))
    return OrderedChainPartition(tuple(chains))
