"""Colour change rules, closures and the stalled / critical predicates.

The rule is chosen from the digraph itself: when any loop is present every
vertex (filled or not) may force its unique empty out-neighbour; otherwise only
filled vertices force.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, as_mask, members

__all__ = [
    "ForcingTrace",
    "closure",
    "closure_mask",
    "closure_mask_sequential",
    "replay",
    "uses_loop_rule",
    "is_zfs",
    "is_fzfs",
    "is_stalled",
    "is_critical",
    "is_strongly_critical",
]


def uses_loop_rule(d: Digraph) -> bool:
    return d.has_loops


def _check_subset(d: Digraph, mask: int) -> int:
    if mask >> d.n:
        bad = [v for v in members(mask) if v >= d.n]
        raise ValueError(f"vertices {bad} out of range for n={d.n}")
    return mask


@dataclass(frozen=True)
class ForcingTrace:
    """Chronology of colour changes.

    ``rounds`` holds ``(round, forcer, forced)`` triples; round numbering
    starts at 1.  ``final`` is the bitset of the terminal filled set.
    """

    n: int
    initial: int
    rounds: tuple[tuple[int, int, int], ...]
    final: int
    loop_rule: bool = False

    @property
    def final_set(self) -> frozenset[int]:
        return frozenset(members(self.final))

    @property
    def num_rounds(self) -> int:
        return self.rounds[-1][0] if self.rounds else 0

    @property
    def complete(self) -> bool:
        return self.final == (1 << self.n) - 1

    def as_records(self) -> list[dict]:
        return [{"round": r, "forcer": u, "forced": w} for r, u, w in self.rounds]


def closure(d: Digraph, s) -> ForcingTrace:
    """Apply the colour change rule in synchronous rounds until nothing changes.

    Every force valid against the set at the start of a round is recorded and
    then committed together.  When several vertices could force the same
    vertex in one round only the smallest forcer is recorded.
    """
    start = _check_subset(d, as_mask(s))
    loop = d.has_loops
    out = d.out_masks
    filled = start
    rounds = []
    r = 0
    while True:
        r += 1
        new = 0
        forcers = range(d.n) if loop else members(filled)
        for v in forcers:
            e = out[v] & ~filled
            if e and not e & (e - 1) and not new & e:
                new |= e
                rounds.append((r, v, e.bit_length() - 1))
        if not new:
            break
        filled |= new
    return ForcingTrace(d.n, start, tuple(rounds), filled, loop)


def closure_mask(d: Digraph, s) -> int:
    """Terminal filled bitset only (no chronology); the hot path for searches."""
    filled = as_mask(s)
    out = d.out_masks
    if d.has_loops:
        verts = range(d.n)
        while True:
            new = 0
            for v in verts:
                e = out[v] & ~filled
                if e and not e & (e - 1):
                    new |= e
            if not new:
                return filled
            filled |= new
    while True:
        new = 0
        f = filled
        v = 0
        while f:
            if f & 1:
                e = out[v] & ~filled
                if e and not e & (e - 1):
                    new |= e
            f >>= 1
            v += 1
        if not new:
            return filled
        filled |= new


def closure_mask_sequential(d: Digraph, s) -> int:
    """Variant that commits each force immediately, scanning vertices in order.

    Used to confirm the fixed point does not depend on the update schedule.
    """
    filled = as_mask(s)
    out = d.out_masks
    loop = d.has_loops
    changed = True
    while changed:
        changed = False
        for v in range(d.n):
            if not loop and not filled >> v & 1:
                continue
            e = out[v] & ~filled
            if e and not e & (e - 1):
                filled |= e
                changed = True
    return filled


def replay(d: Digraph, trace: ForcingTrace) -> int:
    """Re-apply a trace round by round, checking each recorded force.

    Raises ``ValueError`` on an invalid force; returns the resulting bitset.
    """
    filled = trace.initial
    loop = d.has_loops
    by_round: dict[int, list[tuple[int, int]]] = {}
    for r, u, w in trace.rounds:
        by_round.setdefault(r, []).append((u, w))
    for r in sorted(by_round):
        new = 0
        for u, w in by_round[r]:
            if not loop and not filled >> u & 1:
                raise ValueError(f"round {r}: forcer {u} is empty")
            if d.out_masks[u] & ~filled != 1 << w:
                raise ValueError(f"round {r}: {w} is not the unique empty out-neighbour of {u}")
            if new >> w & 1:
                raise ValueError(f"round {r}: {w} forced twice")
            new |= 1 << w
        filled |= new
    return filled


def is_zfs(d: Digraph, s) -> bool:
    return closure_mask(d, _check_subset(d, as_mask(s))) == d.full


def is_fzfs(d: Digraph, s) -> bool:
    return not is_zfs(d, s)


def is_stalled(d: Digraph, s) -> bool:
    """True when one application of the rule fills nothing new."""
    filled = _check_subset(d, as_mask(s))
    out = d.out_masks
    forcers = range(d.n) if d.has_loops else members(filled)
    for v in forcers:
        e = out[v] & ~filled
        if e and not e & (e - 1):
            return False
    return True


def _hits_once(out_mask: int, w: int) -> bool:
    x = out_mask & w
    return bool(x) and not x & (x - 1)


def is_critical(d: Digraph, w) -> bool:
    """Nonempty ``w`` such that no vertex outside ``w`` has exactly one out-neighbour in ``w``."""
    w = _check_subset(d, as_mask(w))
    if not w:
        return False
    out = d.out_masks
    return not any(_hits_once(out[v], w) for v in range(d.n) if not w >> v & 1)


def is_strongly_critical(d: Digraph, w) -> bool:
    """Nonempty ``w`` such that no vertex at all has exactly one out-neighbour in ``w``."""
    w = _check_subset(d, as_mask(w))
    if not w:
        return False
    return not any(_hits_once(m, w) for m in d.out_masks)
