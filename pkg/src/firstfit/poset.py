"""Finite posets stored as transitively closed bit rows.

Elements are the integers ``0 .. n-1``.  Row ``up[x]`` is a Python ``int``
used as a bitset holding every ``y`` with ``x < y``; ``down[x]`` is the
transpose.  All set algebra in the package is done on these masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import CycleError, FormatError, PosetError, SizeError

BRUTEFORCE_WIDTH_LIMIT = 24


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(elems: Iterable[int]) -> int:
    mask = 0
    for x in elems:
        mask |= 1 << x
    return mask


def rows_to_masks(rows: np.ndarray) -> list[int]:
    """Bitset ints from the rows of a 2-D boolean array."""
    if rows.shape[0] == 0:
        return []
    packed = np.packbits(np.asarray(rows, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def masks_to_rows(masks: Sequence[int], n: int) -> np.ndarray:
    """Inverse of :func:`rows_to_masks` for masks over ``range(n)``."""
    nbytes = (n + 7) // 8
    buf = b"".join(m.to_bytes(nbytes, "little") for m in masks)
    raw = np.frombuffer(buf, dtype=np.uint8).reshape(len(masks), nbytes)
    return np.unpackbits(raw, axis=1, bitorder="little")[:, :n].astype(bool)


class Poset:
    """An immutable strict partial order on ``range(n)``.

    Build instances with :meth:`from_cover_relations`, :meth:`from_matrix`
    or the helpers :func:`chain` / :func:`antichain`.  The constructor takes
    already closed up-set masks and validates them unless ``check=False``.
    """

    def __init__(self, up: Sequence[int], *, check: bool = True):
        self.up: tuple[int, ...] = tuple(int(m) for m in up)
        self.n = len(self.up)
        self._reach: dict[int, np.ndarray] = {}
        if check:
            self.validate()

    # construction ---------------------------------------------------------

    @classmethod
    def from_cover_relations(cls, n: int, covers: Iterable[tuple[int, int]]) -> "Poset":
        """Transitive closure of the pairs ``u < v`` in ``covers``.

        The pairs need not be a Hasse diagram; any generating relation
        works and duplicates are harmless.
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        succ: list[set[int]] = [set() for _ in range(n)]
        for u, v in covers:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise IndexError(f"pair ({u}, {v}) out of range for n={n}")
            if u == v:
                raise CycleError(f"self-loop on element {u}")
            succ[u].add(v)
        indeg = [0] * n
        for u in range(n):
            for v in succ[u]:
                indeg[v] += 1
        order = [x for x in range(n) if indeg[x] == 0]
        for x in order:
            for v in succ[x]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    order.append(v)
        if len(order) != n:
            stuck = [x for x in range(n) if indeg[x] > 0]
            raise CycleError(f"relation has a directed cycle through {stuck[:8]}")
        up = [0] * n
        for x in reversed(order):
            row = 0
            for v in succ[x]:
                row |= (1 << v) | up[v]
            up[x] = row
        return cls(up)

    @classmethod
    def from_matrix(cls, lt) -> "Poset":
        """Closure of a square boolean relation matrix (``lt[x, y]`` means x < y)."""
        arr = np.asarray(lt, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("relation matrix must be square")
        xs, ys = np.nonzero(arr)
        return cls.from_cover_relations(arr.shape[0], zip(xs.tolist(), ys.tolist()))

    def validate(self) -> None:
        """Raise :class:`PosetError` unless the rows form a strict order."""
        full = (1 << self.n) - 1
        for x, row in enumerate(self.up):
            if row & ~full:
                raise PosetError(f"row {x} references elements outside range({self.n})")
            if row >> x & 1:
                raise PosetError(f"relation is not irreflexive at {x}")
            for y in iter_bits(row):
                other = self.up[y]
                if other >> x & 1:
                    raise PosetError(f"relation is not antisymmetric at ({x}, {y})")
                if other & ~row:
                    raise PosetError(f"relation is not transitive through ({x}, {y})")

    # relation queries -----------------------------------------------------

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(rows_to_masks(self.matrix.T))

    @cached_property
    def comparable_mask(self) -> tuple[int, ...]:
        """Per element, the mask of elements comparable to it (itself included)."""
        return tuple(u | d | (1 << x) for x, (u, d) in enumerate(zip(self.up, self.down)))

    @cached_property
    def incomparable_mask(self) -> tuple[int, ...]:
        full = (1 << self.n) - 1
        return tuple(full & ~c for c in self.comparable_mask)

    @property
    def universe(self) -> int:
        return (1 << self.n) - 1

    def lt(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return bool(self.comparable_mask[x] >> y & 1)

    def incomparable(self, x: int, y: int) -> bool:
        return not self.comparable(x, y)

    def is_chain(self, elems: Iterable[int]) -> bool:
        mask = to_mask(elems)
        return all(mask & ~self.comparable_mask[x] == 0 for x in iter_bits(mask))

    def is_antichain(self, elems: Iterable[int]) -> bool:
        mask = to_mask(elems)
        return all(self.up[x] & mask == 0 for x in iter_bits(mask))

    @cached_property
    def matrix(self) -> np.ndarray:
        """Read-only ``n x n`` boolean array of the strict order."""
        m = masks_to_rows(self.up, self.n) if self.n else np.zeros((0, 0), dtype=bool)
        m.setflags(write=False)
        return m

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        # x < y implies down[x] is a proper subset of down[y]
        return tuple(sorted(range(self.n), key=lambda x: (self.down[x].bit_count(), x)))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        return _longest_to(self.matrix.T, self.topological_order)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        """Size of a largest chain with minimum element ``x``."""
        return _longest_to(self.matrix, self.topological_order[::-1])

    def covers(self) -> list[tuple[int, int]]:
        """The Hasse diagram as sorted ``(u, v)`` pairs."""
        return [
            (x, y)
            for x in range(self.n)
            for y in iter_bits(self.up[x])
            if self.up[x] & self.down[y] == 0
        ]

    def reach(self, k: int) -> np.ndarray:
        """Boolean matrix whose ``[x, z]`` entry says some chain of at least
        ``k`` elements has minimum ``x`` and maximum ``z``.

        ``reach(1)`` is the identity and ``reach(2)`` is the order itself.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        if k not in self._reach:
            if k == 1:
                out = np.eye(self.n, dtype=bool)
            elif k == 2:
                out = self.matrix.copy()
            else:
                prev = self.reach(k - 1).astype(np.float32)
                out = (prev @ self.matrix.astype(np.float32)) > 0
            out.setflags(write=False)
            self._reach[k] = out
        return self._reach[k]

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.up == other.up

    def __hash__(self) -> int:
        return hash(self.up)

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={len(self.covers())})"


def _longest_to(pred: np.ndarray, order: Sequence[int]) -> tuple[int, ...]:
    # pred[x] marks the elements that must precede x; order visits them first
    h = np.zeros(len(order), dtype=np.int64)
    for x in order:
        row = pred[x]
        h[x] = 1 + (h[row].max() if row.any() else 0)
    return tuple(int(v) for v in h)


def chain(n: int) -> Poset:
    """The chain ``0 < 1 < ... < n-1``."""
    full = (1 << n) - 1
    return Poset([full & ~((1 << (x + 1)) - 1) for x in range(n)], check=False)


def antichain(n: int) -> Poset:
    return Poset([0] * n, check=False)


# heights and width ----------------------------------------------------------


def element_height(p: Poset, x: int) -> int:
    """Size of a largest chain whose maximum element is ``x``."""
    if not 0 <= x < p.n:
        raise IndexError(f"element {x} out of range for n={p.n}")
    return p.heights[x]


def height(p: Poset) -> int:
    return max(p.heights, default=0)


def longest_chain_in(p: Poset, mask: int) -> list[int]:
    """A largest chain of the subposet induced by ``mask``, listed bottom up."""
    best: dict[int, int] = {}
    pred: dict[int, int] = {}
    top, top_len = -1, 0
    for x in p.topological_order:
        if not mask >> x & 1:
            continue
        b, arg = 0, -1
        for y in iter_bits(p.down[x] & mask):
            if best[y] > b:
                b, arg = best[y], y
        best[x] = b + 1
        pred[x] = arg
        if b + 1 > top_len:
            top, top_len = x, b + 1
    out = []
    while top != -1:
        out.append(top)
        top = pred[top]
    return out[::-1]


class Decomposition(NamedTuple):
    """A minimum chain cover together with a maximum antichain of equal size."""

    chains: list[list[int]]
    antichain: list[int]


def dilworth(p: Poset) -> Decomposition:
    """Minimum chain cover and maximum antichain via bipartite matching.

    Left copy ``x`` is joined to right copy ``y`` whenever ``x < y``.  A
    maximum matching gives a minimum path cover of the closed relation
    (one chain per unmatched right vertex), and Konig's construction on the
    same matching yields an antichain of the same size.
    """
    n = p.n
    if n == 0:
        return Decomposition([], [])
    rows, cols = np.nonzero(p.matrix)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    mate_left = maximum_bipartite_matching(graph, perm_type="column").tolist()
    mate_right = [-1] * n
    for x, y in enumerate(mate_left):
        if y >= 0:
            mate_right[y] = x

    chains = []
    for start in range(n):
        if mate_right[start] != -1:
            continue
        path, x = [], start
        while x != -1:
            path.append(x)
            x = mate_left[x]
        chains.append(path)
    chains.sort(key=min)

    # alternating reachability from unmatched left vertices
    seen_left = [mate_left[x] == -1 for x in range(n)]
    seen_right = [False] * n
    stack = [x for x in range(n) if seen_left[x]]
    while stack:
        x = stack.pop()
        for y in iter_bits(p.up[x]):
            if seen_right[y]:
                continue
            seen_right[y] = True
            z = mate_right[y]
            if z != -1 and not seen_left[z]:
                seen_left[z] = True
                stack.append(z)
    anti = [x for x in range(n) if seen_left[x] and not seen_right[x]]
    if len(anti) != len(chains):
        raise AssertionError("Konig antichain and chain cover disagree in size")
    return Decomposition(chains, anti)


def width(p: Poset) -> int:
    return len(dilworth(p).antichain)


def maximum_antichain(p: Poset) -> list[int]:
    return dilworth(p).antichain


def _max_antichain_size(p: Poset, candidates: int) -> int:
    best = 0

    def grow(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            grow(size + 1, cand & p.incomparable_mask[x])

    grow(0, candidates)
    return best


def width_bruteforce(p: Poset) -> int:
    """Largest pairwise incomparable subset, by exhaustive subset search.

    Independent of the matching used by :func:`width`; meant as its oracle.
    """
    if p.n > BRUTEFORCE_WIDTH_LIMIT:
        raise SizeError(f"width_bruteforce limited to n <= {BRUTEFORCE_WIDTH_LIMIT}")
    return _max_antichain_size(p, p.universe)


# (r+s) detection -------------------------------------------------------------


@dataclass(frozen=True)
class RsWitness:
    """Two chains with every cross pair incomparable."""

    chain_a: tuple[int, ...]
    chain_b: tuple[int, ...]


def _chain_between(p: Poset, lo: int, hi: int, size: int) -> list[int]:
    # walk upward keeping enough room for the remaining elements
    path, x = [lo], lo
    for remaining in range(size - 1, 0, -1):
        if remaining == 1:
            nxt = hi
        else:
            reach = p.reach(remaining)
            nxt = next(y for y in iter_bits(p.up[x]) if reach[y, hi])
        path.append(nxt)
        x = nxt
    return path


def contains_r_plus_s(p: Poset, r: int, s: int) -> RsWitness | None:
    """Find an induced copy of ``r + s`` (two incomparable chains), if any.

    An element incomparable to both ends of a chain is incomparable to the
    whole chain, so the search only ranges over chain endpoints: for every
    pair ``x <= z`` joined by a chain of ``r`` elements, look for a chain of
    ``s`` elements inside the set incomparable to both ``x`` and ``z``.
    """
    if r < 1 or s < 1:
        raise ValueError("chain sizes must be positive")
    n = p.n
    if n == 0 or max(p.heights) < max(r, s):
        return None
    reach_r = p.reach(r)
    reach_s = p.reach(s).astype(np.float32)
    inc = ~(p.matrix | p.matrix.T)
    np.fill_diagonal(inc, False)

    # a chain from x to z can be shortened to one ending at a minimal z
    order = p.matrix.astype(np.float32)
    shadowed = (reach_r.astype(np.float32) @ order) > 0
    lows_a, highs_a = np.nonzero(reach_r & ~shadowed)
    if lows_a.size == 0:
        return None
    common = inc[lows_a] & inc[highs_a]
    keep = common.sum(axis=1) >= s
    if not keep.any():
        return None
    lows_a, highs_a, common = lows_a[keep], highs_a[keep], common[keep]
    hits = ((common.astype(np.float32) @ reach_s) > 0) & common
    rows = np.flatnonzero(hits.any(axis=1))
    if rows.size == 0:
        return None
    k = int(rows[0])
    x, z = int(lows_a[k]), int(highs_a[k])
    v = int(np.flatnonzero(hits[k])[0])
    u = int(np.flatnonzero(reach_s[:, v].astype(bool) & common[k])[0])
    return RsWitness(
        tuple(_chain_between(p, x, z, r)),
        tuple(_chain_between(p, u, v, s)),
    )


# combination -------------------------------------------------------------------


def disjoint_sum(p: Poset, q: Poset) -> Poset:
    """``p + q``: ids of ``q`` shifted by ``p.n``, no cross relations."""
    return Poset(list(p.up) + [row << p.n for row in q.up], check=False)


def induced_subposet(p: Poset, elems: Iterable[int]) -> tuple[Poset, list[int]]:
    """Restrict ``p`` to ``elems``; returns the subposet and ``new id -> old id``."""
    keep = sorted(set(int(x) for x in elems))
    for x in keep:
        if not 0 <= x < p.n:
            raise IndexError(f"element {x} out of range for n={p.n}")
    idx = np.asarray(keep, dtype=np.int64)
    sub = p.matrix[np.ix_(idx, idx)]
    return Poset(rows_to_masks(sub), check=False), keep


# text format ----------------------------------------------------------------


def dumps_poset(p: Poset) -> str:
    lines = ["poset v1", f"n {p.n}"]
    lines += [f"cover {u} {v}" for u, v in p.covers()]
    return "\n".join(lines) + "\n"


def loads_poset(text: str) -> Poset:
    """Parse the ``poset v1`` line format."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0] != "poset v1":
        raise FormatError("missing 'poset v1' header")
    if len(lines) < 2 or not lines[1].startswith("n "):
        raise FormatError("missing 'n <N>' line")
    try:
        n = int(lines[1].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError(f"bad element count: {lines[1]!r}") from exc
    covers = []
    for line in lines[2:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "cover":
            raise FormatError(f"unrecognised line: {line!r}")
        try:
            covers.append((int(parts[1]), int(parts[2])))
        except ValueError as exc:
            raise FormatError(f"bad cover ids: {line!r}") from exc
    return Poset.from_cover_relations(n, covers)


def read_poset(path) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return loads_poset(fh.read())


def write_poset(p: Poset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_poset(p))
