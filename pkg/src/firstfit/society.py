"""Executable t-societies and their evolution along a First-Fit partition.

A society is an ordered list of surviving groups (a subsequence of
``X_1 .. X_q``) together with ``t = 2(s - 1)`` friendship slots per group.
Each transition consumes one chain ``C_j`` of a First-Fit chain partition
(``C_j`` is empty once ``j > m``) and classifies every group as

* ``ALPHA``  the group meets ``C_j``;
* ``BETA``   otherwise, some friend meets ``C_j``;
* ``GAMMA``  otherwise, for some ``i < j`` the group made more than
  ``eps * (j - i)`` alpha transitions in steps ``i+1 .. j-1``,
  with ``eps = 1 / (2t)``;
* ``DEATH``  none of the above.

Friendship slots are refilled so that every group lists exactly the other
groups within list distance ``s - 1``.  The evolution stops at the first
empty society.

The ``verify_lemma_*`` functions check the inequalities that bound First-Fit
on finished traces; all comparisons are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError, NonFFPartitionError, PreconditionError
from .intervals import GroupFamily, assign_intervals, build_groups
from .partition import OrderedChainPartition, verify_ff_partition
from .poset import Poset, iter_bits, to_mask

EMPTY = None


class Kind(enum.Enum):
    ALPHA = "ALPHA"
    BETA = "BETA"
    GAMMA = "GAMMA"
    DEATH = "DEATH"


Slots = tuple  # tuple[int | None, ...]


@dataclass(frozen=True)
class Society:
    """``S_j`` and ``F_j``: surviving group indices and their slot tables."""

    step: int
    s: int
    members: tuple[int, ...]
    slots: tuple[Slots, ...]

    @property
    def t(self) -> int:
        return 2 * (self.s - 1)

    @property
    def eps(self) -> Fraction:
        return Fraction(1, 2 * self.t)

    def __contains__(self, k: int) -> bool:
        return k in self.position

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def position(self) -> dict[int, int]:
        return {k: i for i, k in enumerate(self.members)}

    def friends(self, k: int) -> Slots:
        return self.slots[self.position[k]]

    def dist(self, y: int, z: int) -> int:
        return abs(self.position[y] - self.position[z])

    def in_range(self, k: int) -> list[int]:
        """Other members within list distance ``s - 1`` of ``k``, in list order."""
        i = self.position[k]
        return list(self.members[max(0, i - self.s + 1) : i] + self.members[i + 1 : i + self.s])


def init_society(gf: GroupFamily, s: int) -> Society:
    """``S_0 = X_1 .. X_q``; each group lists its neighbours within distance
    ``s - 1`` in ascending index order, remaining slots ``EMPTY``."""
    if s < 2:
        raise ValueError("s must be at least 2")
    t = 2 * (s - 1)
    members = tuple(range(1, gf.q + 1))
    shell = Society(0, s, members, ())
    slots = []
    for k in members:
        near = shell.in_range(k)
        slots.append(tuple(near) + (EMPTY,) * (t - len(near)))
    return Society(0, s, members, tuple(slots))


class _Potential:
    """Per-group running quantities that make the gamma test O(1).

    With ``A(k)`` the number of alpha transitions among steps ``1 .. k`` and
    ``phi(k) = 2t * A(k) - k``, the gamma condition at step ``j`` reads
    ``phi(j - 1) - min(phi(0) .. phi(j - 1)) > 1``.
    """

    __slots__ = ("alphas", "phi", "low")

    def __init__(self):
        self.alphas = 0
        self.phi = 0
        self.low = 0


@dataclass
class EvolutionTrace:
    """``S_0 .. S_n`` plus the kind of every transition made by every group.

    ``history[k]`` lists the kinds of ``X_k`` for steps ``1, 2, ...`` in
    order; its last entry is ``DEATH`` unless the trace is still running.
    """

    groups: GroupFamily
    chains: tuple[int, ...]
    r: int
    s: int
    societies: list[Society] = field(default_factory=list)
    history: dict[int, list[Kind]] = field(default_factory=dict)
    _potential: dict[int, _Potential] = field(default_factory=dict, repr=False)

    @property
    def t(self) -> int:
        return 2 * (self.s - 1)

    @property
    def eps(self) -> Fraction:
        return Fraction(1, 2 * self.t)

    @property
    def m(self) -> int:
        return len(self.chains)

    @property
    def n(self) -> int:
        return len(self.societies) - 1

    def chain(self, j: int) -> int:
        return self.chains[j - 1] if 1 <= j <= self.m else 0

    def kind(self, j: int, k: int) -> Kind:
        """Kind of the transition ``S_{j-1} -> S_j`` made by ``X_k``."""
        hist = self.history[k]
        if not 1 <= j <= len(hist):
            raise IndexError(f"X_{k} is not in S_{j - 1}")
        return hist[j - 1]

    def death_step(self, k: int) -> int:
        """Largest ``b`` with ``X_k`` in ``S_b``."""
        hist = self.history[k]
        return len(hist) - 1 if hist and hist[-1] is Kind.DEATH else len(hist)

    def alive(self, k: int, j: int) -> bool:
        return 0 <= j <= self.death_step(k)

    def transitions(self, j: int) -> dict[int, Kind]:
        """All kinds recorded at step ``j``, keyed by group index."""
        return {k: self.kind(j, k) for k in self.societies[j - 1].members}

    @property
    def last_society(self) -> Society | None:
        """``S_{n-1}``, the final non-empty society."""
        return self.societies[-2] if self.n >= 1 else None


def counter(trace: EvolutionTrace, a: Kind, i: int, j: int, k: int) -> int:
    """Number of transitions of kind ``a`` made by ``X_k`` in steps ``i+1 .. j``."""
    if not 0 <= i <= j or not trace.alive(k, j):
        raise IndexError(f"counter needs 0 <= i <= j and X_{k} in S_j (i={i}, j={j})")
    return trace.history[k][i:j].count(a)


def step(society: Society, chain_mask: int, trace: EvolutionTrace) -> Society:
    """Advance ``S_{j-1}`` to ``S_j`` using chain ``C_j`` given as a mask.

    Kinds are appended to ``trace.history``; the running gamma potentials in
    ``trace`` are updated in place.
    """
    j = society.step + 1
    t = society.t
    gmask = trace.groups.masks
    meets = {k for k in society.members if gmask[k] & chain_mask}
    survivors = []
    for k, slots in zip(society.members, society.slots):
        pot = trace._potential[k]
        if k in meets:
            kind = Kind.ALPHA
        elif any(f is not EMPTY and f in meets for f in slots):
            kind = Kind.BETA
        elif pot.phi - pot.low > 1:
            kind = Kind.GAMMA
        else:
            kind = Kind.DEATH
        trace.history[k].append(kind)
        if kind is Kind.ALPHA:
            pot.alphas += 1
        pot.phi = 2 * t * pot.alphas - j
        pot.low = min(pot.low, pot.phi)
        if kind is not Kind.DEATH:
            survivors.append(k)
    return _replace_friends(society, tuple(survivors))


def _replace_friends(prev: Society, members: tuple[int, ...]) -> Society:
    shell = Society(prev.step + 1, prev.s, members, ())
    alive = shell.position
    slots = []
    for k in members:
        old = prev.friends(k)
        kept = [f if f is not EMPTY and f in alive else EMPTY for f in old]
        listed = {f for f in kept if f is not EMPTY}
        incoming = [z for z in shell.in_range(k) if z not in listed]
        free = [i for i, f in enumerate(kept) if f is EMPTY]
        if len(incoming) > len(free):
            raise AssertionError(f"X_{k} has no room for new friends at step {shell.step}")
        for i, z in zip(free, incoming):
            kept[i] = z
        slots.append(tuple(kept))
    return Society(shell.step, shell.s, members, tuple(slots))


def _step_cap(trace: EvolutionTrace) -> int:
    # a group sees at most m alphas, all by step m, and gamma then needs
    # 2t * alphas > j - i with i <= m
    return trace.m * (2 * trace.t + 1) + 2


def evolve(gf: GroupFamily, chains: Sequence[int], r: int, s: int) -> EvolutionTrace:
    """Run the evolution of ``S_0`` built from ``gf`` along chain masks."""
    trace = EvolutionTrace(groups=gf, chains=tuple(chains), r=r, s=s)
    current = init_society(gf, s)
    trace.societies.append(current)
    for k in current.members:
        trace.history[k] = []
        trace._potential[k] = _Potential()
    cap = _step_cap(trace)
    while current.members:
        if current.step >= cap:
            raise AssertionError("evolution failed to terminate")
        current = step(current, trace.chain(current.step + 1), trace)
        trace.societies.append(current)
    return trace


def run_evolution(p: Poset, cp: OrderedChainPartition, r: int, s: int) -> EvolutionTrace:
    """Interval groups of ``p`` evolved along the First-Fit partition ``cp``."""
    if not verify_ff_partition(p, cp):
        raise NonFFPartitionError("chain partition is not a First-Fit chain partition")
    gf = build_groups(assign_intervals(p, r))
    return evolve(gf, cp.masks, r, s)


# trace-level checks --------------------------------------------------------


def replay_kinds(trace: EvolutionTrace) -> bool:
    """Recompute every kind straight from the transition rules and compare
    with the recorded ones.

    Alpha flags come from the chains themselves, and the gamma test scans
    every ``i < j`` rather than using the running potential in :func:`step`.
    """
    gmask = trace.groups.masks
    two_t = 2 * trace.t
    chain_at = [trace.chain(j) for j in range(trace.n + 1)]
    for k, hist in trace.history.items():
        steps = len(hist)
        if steps == 0:
            continue
        hits = np.array([bool(gmask[k] & chain_at[j]) for j in range(1, steps + 1)])
        alpha = np.concatenate([[0], np.cumsum(hits)])
        # gamma[j - 1]: some i < j has 2t * (A(j-1) - A(i)) > j - i
        i = np.arange(steps)[:, None]
        j = np.arange(1, steps + 1)[None, :]
        lhs = two_t * (alpha[j - 1] - alpha[i])
        gamma = ((lhs > j - i) & (i < j)).any(axis=0)
        for jj in range(1, steps + 1):
            if hits[jj - 1]:
                want = Kind.ALPHA
            elif any(
                f is not EMPTY and gmask[f] & chain_at[jj]
                for f in trace.societies[jj - 1].friends(k)
            ):
                want = Kind.BETA
            elif gamma[jj - 1]:
                want = Kind.GAMMA
            else:
                want = Kind.DEATH
            if hist[jj - 1] is not want:
                return False
    return True


def invariant_violations(trace: EvolutionTrace) -> list[str]:
    """Structural problems with a trace; empty when it is well formed."""
    out = []
    socs = trace.societies
    q = trace.groups.q
    if socs[0].members != tuple(range(1, q + 1)):
        out.append("S_0 is not X_1 .. X_q")
    if socs[-1].members:
        out.append("trace does not end with an empty society")
    prev_members: set[int] = set()
    for j, soc in enumerate(socs):
        members = soc.members
        if soc.step != j:
            out.append(f"society {j} carries step {soc.step}")
        if any(not trace.groups.groups[k - 1] for k in members):
            out.append(f"S_{j} contains an empty group")
        if j < len(socs) - 1 and not members:
            out.append(f"S_{j} is empty before the end")
        if any(a >= b for a, b in zip(members, members[1:])):
            out.append(f"S_{j} does not preserve the S_0 order")
        current = set(members)
        if j and not current <= prev_members:
            out.append(f"S_{j} is not contained in S_{j - 1}")
        t = soc.t
        for k, slots in zip(members, soc.slots):
            listed = [f for f in slots if f is not EMPTY]
            if len(slots) != t:
                out.append(f"X_{k} has {len(slots)} slots in S_{j}")
            if len(listed) != len(set(listed)):
                out.append(f"X_{k} lists a friend twice in S_{j}")
            if sorted(listed) != soc.in_range(k):
                out.append(f"X_{k} breaks the distance law in S_{j}")
        if j:
            for k in socs[j - 1].members:
                died = trace.kind(j, k) is Kind.DEATH
                if died == (k in current):
                    out.append(f"kind of X_{k} at step {j} disagrees with survival")
        prev_members = current
    # friendship is kept for as long as both groups survive
    for j in range(1, len(socs)):
        prev, soc = socs[j - 1], socs[j]
        for k in soc.members:
            for slot, f in enumerate(prev.friends(k)):
                if f is not EMPTY and f in soc and soc.friends(k)[slot] != f:
                    out.append(f"X_{k} dropped surviving friend X_{f} at step {j}")
    return out


def friendship_intervals(trace: EvolutionTrace, k: int) -> list[list[tuple[int, int, int]]]:
    """For each slot of ``X_k``, the maximal runs ``(Y, a, b)`` of societies
    ``S_a .. S_b`` in which that slot holds ``Y``."""
    t = trace.t
    runs: list[list[tuple[int, int, int]]] = [[] for _ in range(t)]
    for j in range(trace.death_step(k) + 1):
        for slot, f in enumerate(trace.societies[j].friends(k)):
            if f is EMPTY:
                continue
            cur = runs[slot]
            if cur and cur[-1][0] == f and cur[-1][2] == j - 1:
                cur[-1] = (f, cur[-1][1], j)
            else:
                cur.append((f, j, j))
    return runs


def friendship_is_contiguous(trace: EvolutionTrace) -> bool:
    seen: dict[tuple[int, int], list[int]] = {}
    for j, soc in enumerate(trace.societies):
        for k in soc.members:
            for f in soc.friends(k):
                if f is not EMPTY:
                    seen.setdefault((k, f), []).append(j)
    return all(js[-1] - js[0] + 1 == len(js) for js in seen.values())


def verify_lemma_long_evolution(trace: EvolutionTrace) -> bool:
    """``n >= m + 2`` whenever ``S_0`` is non-empty."""
    return not trace.societies[0].members or trace.n >= trace.m + 2


def verify_lemma_cover(trace: EvolutionTrace) -> bool:
    """Every ``S_i`` covers all chains ``C_j`` with ``j > i``."""
    gmask = trace.groups.masks
    tail = 0
    needed = [0] * (trace.n + 1)
    for i in range(max(trace.n, trace.m), -1, -1):
        if i <= trace.n:
            needed[i] = tail
        tail |= trace.chain(i) if i >= 1 else 0
    for i, soc in enumerate(trace.societies):
        covered = 0
        for k in soc.members:
            covered |= gmask[k]
        if needed[i] & ~covered:
            return False
    return True


def verify_lemma_few_betas(trace: EvolutionTrace) -> bool:
    """``N^beta_{0,n-1}(X) <= t * eps * n`` for every ``X`` in ``S_{n-1}``."""
    last = trace.last_society
    if last is None:
        return True
    limit = trace.t * trace.eps * trace.n
    return all(counter(trace, Kind.BETA, 0, trace.n - 1, k) <= limit for k in last.members)


def verify_lemma_many_alphas(trace: EvolutionTrace) -> bool:
    """``N^alpha_{0,j} >= eps * (N^alpha_{0,j} + N^gamma_{0,j})`` for all live pairs."""
    # a >= (a + g) / 2t, cross-multiplied to stay in integers
    two_t = 2 * trace.t
    for k, hist in trace.history.items():
        a = g = 0
        for j in range(1, trace.death_step(k) + 1):
            kind = hist[j - 1]
            a += kind is Kind.ALPHA
            g += kind is Kind.GAMMA
            if two_t * a < a + g:
                return False
    return True


def verify_lemma_single_col(trace: EvolutionTrace, items: Iterable[tuple[int, int, int]]) -> bool:
    """``sum N^alpha_{a,b}(Y) <= eps * n`` over disjoint ``[a, b]`` where each
    ``b`` is the last step at which ``Y`` survives.

    Items with ``a == b`` contribute nothing and are dropped.
    """
    spans = []
    for k, a, b in items:
        if k not in trace.history:
            raise PreconditionError(f"unknown group X_{k}")
        if b != trace.death_step(k):
            raise PreconditionError(f"b={b} is not the last step of X_{k}")
        if not 0 <= a <= b <= trace.n:
            raise PreconditionError(f"interval [{a}, {b}] outside [0, {trace.n}]")
        if a < b:
            spans.append((a, b, k))
    spans.sort()
    for (_, b1, _), (a2, _, _) in zip(spans, spans[1:]):
        if a2 <= b1:
            raise PreconditionError("intervals overlap")
    total = sum(counter(trace, Kind.ALPHA, a, b, k) for a, b, k in spans)
    return total <= trace.eps * trace.n


def verify_single_col_on_slots(trace: EvolutionTrace) -> bool:
    """Apply the single-column bound to the friendship runs of every slot
    of every group in ``S_{n-1}``."""
    last = trace.last_society
    if last is None:
        return True
    return all(
        verify_lemma_single_col(trace, runs)
        for k in last.members
        for runs in friendship_intervals(trace, k)
    )


def verify_lemma_large_group(trace: EvolutionTrace) -> bool:
    """``|X| >= (n - 2) / 4t`` and ``|X| >= N^alpha_{0,n-1}(X)`` on ``S_{n-1}``."""
    last = trace.last_society
    if last is None:
        return True
    bound = Fraction(trace.n - 2, 4 * trace.t)
    for k in last.members:
        size = trace.groups.size(k)
        if size < bound or size < counter(trace, Kind.ALPHA, 0, trace.n - 1, k):
            return False
    return True


LEMMA_CHECKS = {
    "long_evolution": verify_lemma_long_evolution,
    "cover": verify_lemma_cover,
    "few_betas": verify_lemma_few_betas,
    "many_alphas": verify_lemma_many_alphas,
    "single_col": verify_single_col_on_slots,
    "large_group": verify_lemma_large_group,
}


def check_trace(trace: EvolutionTrace) -> dict[str, bool]:
    """Run every structural and lemma check; maps check name to outcome."""
    results = {
        "invariants": not invariant_violations(trace),
        "contiguous_friendship": friendship_is_contiguous(trace),
        "replay": replay_kinds(trace),
    }
    for name, check in LEMMA_CHECKS.items():
        results[name] = check(trace)
    return results


# text format ------------------------------------------------------------------


def _ids(elems: Iterable[int]) -> str:
    return ",".join(map(str, elems))


def _slot_list(slots: Slots) -> str:
    return ",".join("*" if f is EMPTY else str(f) for f in slots)


def dumps_trace(trace: EvolutionTrace) -> str:
    lines = [f"trace v1 r={trace.r} s={trace.s} m={trace.m} n={trace.n} q={trace.groups.q}"]
    for k, g in enumerate(trace.groups.groups, start=1):
        lines.append(f"groupdef {k} elems={_ids(g)}")
    for j, soc in enumerate(trace.societies):
        lines.append(f"step {j} chain={_ids(iter_bits(trace.chain(j)))}")
        survivors = soc.position
        prev = trace.societies[j - 1].members if j else soc.members
        for k in prev:
            if k in survivors:
                kind = trace.kind(j, k).value if j else "INIT"
                lines.append(f"group {k} kind={kind} friends={_slot_list(soc.friends(k))}")
            else:
                lines.append(f"dead {k}")
    return "\n".join(lines) + "\n"


def _parse_fields(tokens: list[str]) -> dict[str, str]:
    out = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep:
            raise FormatError(f"expected key=value, got {tok!r}")
        out[key] = val
    return out


def _parse_ids(text: str) -> list[int]:
    return [int(v) for v in text.split(",")] if text else []


def loads_trace(text: str) -> EvolutionTrace:
    """Rebuild an :class:`EvolutionTrace` from :func:`dumps_trace` output."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0][:2] != ["trace", "v1"]:
        raise FormatError("missing 'trace v1' header")
    try:
        head = _parse_fields(lines[0][2:])
        r, s, m, q = (int(head[key]) for key in ("r", "s", "m", "q"))
        groups: list[tuple[int, ...]] = []
        chains: list[int] = []
        societies: list[Society] = []
        history: dict[int, list[Kind]] = {}
        cur: list[tuple[int, Slots]] | None = None
        j = -1

        def flush():
            if cur is not None:
                members = tuple(k for k, _ in cur)
                societies.append(Society(j, s, members, tuple(sl for _, sl in cur)))

        for parts in lines[1:]:
            tag = parts[0]
            if tag == "groupdef":
                if int(parts[1]) != len(groups) + 1:
                    raise FormatError("groupdef lines out of order")
                groups.append(tuple(_parse_ids(_parse_fields(parts[2:])["elems"])))
            elif tag == "step":
                flush()
                j = int(parts[1])
                if j != len(societies):
                    raise FormatError(f"step {j} out of sequence")
                cur = []
                chain = to_mask(_parse_ids(_parse_fields(parts[2:])["chain"]))
                if 1 <= j <= m:
                    chains.append(chain)
                elif chain:
                    raise FormatError(f"step {j} carries a chain beyond m={m}")
            elif tag == "group":
                k = int(parts[1])
                f = _parse_fields(parts[2:])
                slots = tuple(EMPTY if v == "*" else int(v) for v in f["friends"].split(","))
                if f["kind"] == "INIT":
                    if j != 0:
                        raise FormatError("INIT kind after step 0")
                    history[k] = []
                else:
                    history[k].append(Kind(f["kind"]))
                cur.append((k, slots))
            elif tag == "dead":
                history[int(parts[1])].append(Kind.DEATH)
            else:
                raise FormatError(f"unrecognised line tag {tag!r}")
        flush()
    except (KeyError, ValueError, IndexError, TypeError) as exc:
        raise FormatError(f"malformed trace: {exc}") from exc
    if len(groups) != q or len(chains) != m:
        raise FormatError("trace header disagrees with its body")
    return EvolutionTrace(
        groups=GroupFamily(tuple(groups)),
        chains=tuple(chains),
        r=r,
        s=s,
        societies=societies,
        history=history,
    )
