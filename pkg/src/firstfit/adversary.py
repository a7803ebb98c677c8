"""Exhaustive adaptive adversary against First-Fit on posets of bounded width.

The adversary presents elements one at a time.  A move fixes the new
element's relation to everything already shown: its down-set must be an
order ideal, its up-set an order filter, and every element of the former
must lie below every element of the latter so the order stays transitive.
Moves that would push the width above the cap are illegal.  First-Fit then
colours the element and the game continues.

Positions are memoised on a canonical form.  Each First-Fit colour class is
a chain, so an element is pinned down by its colour and its rank inside that
colour; relabelling by ``(colour, rank)`` identifies isomorphic positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import FormatError, SizeError
from .poset import Poset, iter_bits, to_mask, width

MAX_ELEMENTS = 14


@dataclass(frozen=True)
class Move:
    """Element ``id`` arrives; ``below`` are earlier elements under it,
    ``above`` earlier elements over it."""

    id: int
    below: tuple[int, ...]
    above: tuple[int, ...]


@dataclass(frozen=True)
class GameResult:
    forced: bool
    transcript: tuple[Move, ...]
    chains: int


class _Position:
    __slots__ = ("up", "down", "classes", "color")

    def __init__(self):
        self.up: list[int] = []
        self.down: list[int] = []
        self.classes: list[int] = []
        self.color: list[int] = []

    @property
    def size(self) -> int:
        return len(self.up)

    def comparable(self, x: int) -> int:
        return self.up[x] | self.down[x] | (1 << x)

    def ff_color(self, related: int) -> int:
        for j, mask in enumerate(self.classes):
            if mask & ~related == 0:
                return j
        return len(self.classes)

    def push(self, below: int, above: int) -> None:
        x = self.size
        bit = 1 << x
        for d in iter_bits(below):
            self.up[d] |= bit
        for u in iter_bits(above):
            self.down[u] |= bit
        self.up.append(above)
        self.down.append(below)
        j = self.ff_color(below | above)
        if j == len(self.classes):
            self.classes.append(0)
        self.classes[j] |= bit
        self.color.append(j)

    def pop(self) -> None:
        x = self.size - 1
        bit = 1 << x
        self.classes[self.color[x]] &= ~bit
        if not self.classes[-1]:
            self.classes.pop()
        for d in iter_bits(self.down[x]):
            self.up[d] &= ~bit
        for u in iter_bits(self.up[x]):
            self.down[u] &= ~bit
        self.up.pop()
        self.down.pop()
        self.color.pop()

    def key(self) -> tuple:
        label = {}
        for j, mask in enumerate(self.classes):
            members = sorted(iter_bits(mask), key=lambda x: self.down[x].bit_count())
            for rank, x in enumerate(members):
                label[x] = (j, rank)
        names = sorted(label, key=label.get)
        index = {x: i for i, x in enumerate(names)}
        rows = tuple(to_mask(index[y] for y in iter_bits(self.up[x])) for x in names)
        return tuple(c.bit_count() for c in self.classes), rows

    def topo(self) -> list[int]:
        return sorted(range(self.size), key=lambda x: self.down[x].bit_count())


def _closed_sets(order: Sequence[int], req: list[int], idx: int, cur: int) -> Iterator[int]:
    # sets closed under req: x may join only when req[x] is already inside
    if idx == len(order):
        yield cur
        return
    x = order[idx]
    yield from _closed_sets(order, req, idx + 1, cur)
    if req[x] & ~cur == 0:
        yield from _closed_sets(order, req, idx + 1, cur | (1 << x))


def _antichain_at_most(pos: _Position, cand: int, limit: int) -> bool:
    """Whether every antichain inside ``cand`` has at most ``limit`` elements."""

    def grow(size: int, rest: int) -> bool:
        if size > limit:
            return False
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            rest ^= low
            if not grow(size + 1, rest & ~pos.comparable(x)):
                return False
        return True

    return grow(0, cand)


def legal_moves(pos: _Position, width_cap: int) -> list[tuple[int, int]]:
    """All ``(below, above)`` pairs that keep the order transitive and the
    width within ``width_cap``."""
    topo = pos.topo()
    full = (1 << pos.size) - 1
    ideals = list(_closed_sets(topo, pos.down, 0, 0))
    filters = list(_closed_sets(topo[::-1], pos.up, 0, 0))
    out = []
    for below in ideals:
        room = full
        for d in iter_bits(below):
            room &= pos.up[d]
        for above in filters:
            if above & ~room:
                continue
            rest = full & ~(below | above)
            if _antichain_at_most(pos, rest, width_cap - 1):
                out.append((below, above))
    return out


def adversary_game_value(max_elements: int, width_cap: int, chain_target: int) -> GameResult:
    """Decide whether the adversary can force ``chain_target`` First-Fit
    chains with at most ``max_elements`` elements of width ``<= width_cap``.

    Iterative deepening returns a shortest forcing transcript.
    """
    if max_elements > MAX_ELEMENTS:
        raise SizeError(f"exhaustive search limited to {MAX_ELEMENTS} elements")
    if width_cap < 1:
        raise ValueError("width_cap must be at least 1")
    if chain_target <= 0:
        return GameResult(True, (), 0)

    pos = _Position()
    failed: dict[tuple, int] = {}
    path: list[tuple[int, int]] = []

    def win(remaining: int) -> bool:
        m = len(pos.classes)
        if m >= chain_target:
            return True
        if remaining == 0 or m + remaining < chain_target:
            return False
        key = pos.key()
        if failed.get(key, -1) >= remaining:
            return False
        moves = legal_moves(pos, width_cap)
        # moves that open a new chain first
        moves.sort(key=lambda mv: pos.ff_color(mv[0] | mv[1]) != len(pos.classes))
        for below, above in moves:
            pos.push(below, above)
            path.append((below, above))
            ok = win(remaining - 1)
            if ok:
                pos.pop()
                return True
            path.pop()
            pos.pop()
        failed[key] = max(failed.get(key, -1), remaining)
        return False

    for budget in range(1, max_elements + 1):
        if win(budget):
            moves = tuple(
                Move(x, tuple(iter_bits(b)), tuple(iter_bits(a))) for x, (b, a) in enumerate(path)
            )
            return GameResult(True, moves, chain_target)
    return GameResult(False, (), 0)


@dataclass(frozen=True)
class Replay:
    poset: Poset
    chains: int
    max_prefix_width: int
    colors: tuple[int, ...]


def replay(moves: Sequence[Move]) -> Replay:
    """Rebuild the poset a transcript describes and rerun First-Fit online.

    Raises ``ValueError`` if a move is not a legal extension of the order.
    """
    pos = _Position()
    widest = 0
    for i, mv in enumerate(moves):
        if mv.id != i:
            raise ValueError(f"move {i} presents id {mv.id}")
        below, above = to_mask(mv.below), to_mask(mv.above)
        if (below | above) >> i or below & above:
            raise ValueError(f"move {i} references unknown or conflicting ids")
        for d in iter_bits(below):
            if pos.down[d] & ~below:
                raise ValueError(f"move {i}: below-set is not an ideal")
            if above & ~pos.up[d]:
                raise ValueError(f"move {i}: breaks transitivity")
        for u in iter_bits(above):
            if pos.up[u] & ~above:
                raise ValueError(f"move {i}: above-set is not a filter")
        pos.push(below, above)
        widest = max(widest, width(Poset(pos.up, check=False)))
    p = Poset(pos.up)
    return Replay(p, len(pos.classes), widest, tuple(c + 1 for c in pos.color))


def dumps_transcript(moves: Sequence[Move]) -> str:
    return "".join(
        f"present {mv.id} below={','.join(map(str, mv.below))} above={','.join(map(str, mv.above))}\n"
        for mv in moves
    )


def loads_transcript(text: str) -> list[Move]:
    moves = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "present":
            raise FormatError(f"unrecognised line: {line!r}")
        try:
            fields = dict(p.split("=", 1) for p in parts[2:])
            below = tuple(int(v) for v in fields["below"].split(",") if v)
            above = tuple(int(v) for v in fields["above"].split(",") if v)
            moves.append(Move(int(parts[1]), below, above))
        except (KeyError, ValueError) as exc:
            raise FormatError(f"bad move: {line!r}") from exc
    return moves
