"""Exact Z(D), F(D), minimum critical sets and minimal/maximal set enumeration.

All searches scan subsets in ascending (or descending) cardinality and, within a
cardinality, in lexicographic order of the sorted vertex tuple (the order of
``itertools.combinations``).  The first hit is therefore the lexicographically
smallest optimum, which keeps witnesses reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .digraph import Digraph, members, popcount
from .forcing import closure_mask

__all__ = [
    "DEFAULT_BOUND",
    "SearchBoundExceeded",
    "Solution",
    "ExtremalFlags",
    "lex_key",
    "zero_forcing_number",
    "failed_zero_forcing_number",
    "min_critical_set",
    "max_fzfs_bruteforce",
    "enumerate_minimal_zfs",
    "enumerate_maximal_fzfs",
    "extremal_predicates",
    "extremal_flags_from_in_masks",
]

DEFAULT_BOUND = 20


class SearchBoundExceeded(ValueError):
    """Raised when an exhaustive search is asked to run on too many vertices."""


class Solution(NamedTuple):
    value: int
    witness: frozenset
    checked: int = 0  # subsets examined (search statistics)


def lex_key(mask: int) -> tuple[int, list[int]]:
    """Sort key: size first, then lexicographic order of sorted members."""
    return popcount(mask), members(mask)


def _check_bound(d: Digraph, bound: int | None) -> None:
    bound = DEFAULT_BOUND if bound is None else bound
    if d.n > bound:
        raise SearchBoundExceeded(f"n={d.n} exceeds the search bound {bound}")


def _combo_masks(pool: list[int], k: int):
    for combo in itertools.combinations(pool, k):
        m = 0
        for v in combo:
            m |= 1 << v
        yield m


def zero_forcing_number(d: Digraph, bound: int | None = None) -> Solution:
    """Minimum zero forcing set by ascending-cardinality search.

    A vertex with no in-neighbour can never be forced, so every ZFS contains
    all of them; only the remaining vertices are enumerated.
    """
    _check_bound(d, bound)
    full = d.full
    required = 0
    for v in range(d.n):
        if d.in_masks[v] == 0:
            required |= 1 << v
    pool = [v for v in range(d.n) if not required >> v & 1]
    base = popcount(required)
    checked = 0
    for k in range(0, len(pool) + 1):
        for m in _combo_masks(pool, k):
            checked += 1
            s = m | required
            if closure_mask(d, s) == full:
                return Solution(base + k, frozenset(members(s)), checked)
    raise AssertionError("V is always a zero forcing set")  # pragma: no cover


def min_critical_set(d: Digraph, strong: bool = False, bound: int | None = None) -> frozenset | None:
    """Minimum (strongly) critical set, or ``None`` when none exists.

    Branch and bound over vertices in index order: a partial set is abandoned
    as soon as some decided vertex whose out-neighbours are all decided has
    exactly one out-neighbour in it (for the weak variant only vertices outside
    the set count).
    """
    res = _min_critical(d, strong, bound)
    return None if res is None else frozenset(members(res[0]))


def _min_critical(d: Digraph, strong: bool, bound: int | None):
    _check_bound(d, bound)
    n = d.n
    out = d.out_masks
    # vertex v is fully decided once the prefix 0..last[v] is decided
    last = [max(v, m.bit_length() - 1) for v, m in enumerate(out)]
    ready_at: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        ready_at[last[v]].append(v)
    stats = [0, 0]

    def violates(w: int, v: int) -> bool:
        if not strong and w >> v & 1:
            return False
        x = out[v] & w
        return bool(x) and not x & (x - 1)

    def search(k: int):
        def rec(start: int, chosen: int, w: int):
            stats[0] += 1
            if chosen == k:
                # everything from start on is excluded
                for i in range(start, n):
                    if any(violates(w, v) for v in ready_at[i]):
                        return None
                return w
            for i in range(start, n - (k - chosen) + 1):
                # choosing i excludes i-1; vertices ready there are now final
                if i > start and any(violates(w, v) for v in ready_at[i - 1]):
                    return None
                w2 = w | (1 << i)
                if any(violates(w2, v) for v in ready_at[i]):
                    stats[1] += 1
                    continue
                found = rec(i + 1, chosen + 1, w2)
                if found is not None:
                    return found
            return None

        return rec(0, 0, 0)

    for k in range(1, n + 1):
        found = search(k)
        if found is not None:
            return found, stats[0]
    return None


def failed_zero_forcing_number(d: Digraph, bound: int | None = None) -> Solution | None:
    """F(D) as ``n`` minus the size of a minimum critical set.

    Loop digraphs use strongly critical sets; ``None`` means F is undefined
    (no strongly critical set exists, equivalently Z(D) = 0).
    """
    res = _min_critical(d, d.has_loops, bound)
    if res is None:
        return None
    w, checked = res
    return Solution(d.n - popcount(w), frozenset(members(d.full & ~w)), checked)


def max_fzfs_bruteforce(d: Digraph, bound: int | None = None) -> Solution | None:
    """Largest failed zero forcing set by descending exhaustive search.

    Independent of the critical-set route; used as a cross-check.
    """
    _check_bound(d, bound)
    full = d.full
    checked = 0
    for k in range(d.n, -1, -1):
        for m in _combo_masks(list(range(d.n)), k):
            checked += 1
            if closure_mask(d, m) != full:
                return Solution(k, frozenset(members(m)), checked)
    return None


def _zfs_table(d: Digraph) -> bytearray:
    """``table[S] == 1`` iff bitset ``S`` is a ZFS, for every subset.

    Supersets of a ZFS are ZFS (closure is monotone), so a subset only needs
    its own closure when no one-smaller subset is already known to be a ZFS.
    """
    n = d.n
    full = d.full
    table = bytearray(1 << n)
    for s in range(1 << n):
        t = s
        hit = False
        while t:
            low = t & -t
            if table[s ^ low]:
                hit = True
                break
            t ^= low
        if hit or closure_mask(d, s) == full:
            table[s] = 1
    return table


def _sorted_sets(masks: list[int]) -> list[frozenset]:
    return [frozenset(members(m)) for m in sorted(masks, key=lex_key)]


def enumerate_minimal_zfs(d: Digraph, bound: int | None = None) -> list[frozenset]:
    """ZFS whose every one-vertex deletion fails, sorted by (size, lex)."""
    _check_bound(d, bound)
    table = _zfs_table(d)
    found = []
    for s in range(1 << d.n):
        if table[s] and all(not table[s & ~(1 << v)] for v in members(s)):
            found.append(s)
    return _sorted_sets(found)


def enumerate_maximal_fzfs(d: Digraph, bound: int | None = None) -> list[frozenset]:
    """FZFS whose every one-vertex extension is a ZFS, sorted by (size, lex)."""
    _check_bound(d, bound)
    table = _zfs_table(d)
    full = d.full
    found = []
    for s in range(1 << d.n):
        if not table[s] and all(table[s | (1 << v)] for v in members(full & ~s)):
            found.append(s)
    return _sorted_sets(found)


@dataclass(frozen=True)
class ExtremalFlags:
    f_is_n_minus_1: bool
    f_is_n_minus_2: bool
    f_is_n_minus_3: bool


def _pair_twin(inn, u, v) -> bool:
    return inn[u] & ~(1 << v) == inn[v] & ~(1 << u)


def extremal_flags_from_in_masks(inn: tuple[int, ...]) -> tuple[bool, bool, bool]:
    """Structural tests for F = n-1, n-2, n-3 on in-neighbour bitsets alone."""
    n = len(inn)
    if any(m == 0 for m in inn):
        return True, False, False
    pairs = itertools.combinations(range(n), 2)
    if any(_pair_twin(inn, u, v) for u, v in pairs):
        return False, True, False
    for u, v, w in itertools.combinations(range(n), 3):
        bu, bv, bw = 1 << u, 1 << v, 1 << w
        if (
            inn[u] & ~(bv | bw) & ~(inn[v] | inn[w]) == 0
            and inn[v] & ~(bu | bw) & ~(inn[u] | inn[w]) == 0
            and inn[w] & ~(bu | bv) & ~(inn[u] | inn[v]) == 0
        ):
            return False, False, True
    return False, False, False


def extremal_predicates(d: Digraph) -> ExtremalFlags:
    """Decide F = n-1, n-2, n-3 from in-neighbourhood conditions, without search.

    * n-1: some vertex is a source.
    * n-2: no source and two vertices ``u, v`` have
      ``N-(u) \\ {v} == N-(v) \\ {u}``.
    * n-3: no source, no such pair, and three vertices ``u, v, w`` with
      ``N-(u) \\ {v, w}`` inside ``N-(v) | N-(w)``, and likewise for ``v`` and ``w``.
    """
    if d.has_loops:
        raise ValueError("extremal predicates are defined for loopless digraphs only")
    return ExtremalFlags(*extremal_flags_from_in_masks(d.in_masks))
