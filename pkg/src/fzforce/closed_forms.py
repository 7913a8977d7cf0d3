"""Closed-form F(D) for the digraph families with known formulas.

Every formula first checks that its input really belongs to the family and
raises :class:`FamilyMismatch` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .digraph import Digraph, Orientation, members, popcount, weak_cycle
from .solvers import failed_zero_forcing_number, zero_forcing_number

__all__ = [
    "FamilyMismatch",
    "UndefinedMetric",
    "CyclePartition",
    "path_order",
    "cycle_order",
    "path_partition",
    "cycle_partition",
    "f_weak_path",
    "f_weak_cycle",
    "construct_weak_cycle",
    "f_components",
    "f_of_disconnected",
    "f_dag",
    "f_oriented_tree",
    "f_star",
    "f_line_digraph",
    "f_auto",
]


class FamilyMismatch(ValueError):
    """The digraph is not in the family a formula was asked for."""


class UndefinedMetric(ValueError):
    """F is undefined (loop digraph with Z = 0)."""


@dataclass(frozen=True)
class CyclePartition:
    """Direction classes of a weak path or weak cycle.

    For cycles the classes hold edge positions ``i`` (edge ``v_i v_{i+1}``);
    for paths they hold vertex positions as in the path formula.  Positions
    are 0-based along ``order``.  ``runs`` lists maximal runs of ``v_zero`` as
    ``(start, length)``.
    """

    kind: str
    order: tuple[int, ...]
    v_minus: frozenset
    v_plus: frozenset
    v_zero: frozenset
    runs: tuple[tuple[int, int], ...] = ()
    ell: int | None = None
    i_star: int | None = None
    j_star: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def to_fixture(self) -> dict:
        """Serialisable record with both 0-based and 1-based positions."""
        one = 1 if self.kind == "path" else 0
        rec = {
            "kind": self.kind,
            "order": list(self.order),
            "v_minus": sorted(self.v_minus),
            "v_plus": sorted(self.v_plus),
            "v_zero": sorted(self.v_zero),
            "runs": [list(r) for r in self.runs],
            "ell": self.ell,
            "i_star": self.i_star,
            "j_star": self.j_star,
        }
        if one:
            rec["one_based"] = {
                "v_minus": [i + 1 for i in sorted(self.v_minus)],
                "v_plus": [i + 1 for i in sorted(self.v_plus)],
                "i_star": None if self.i_star is None else self.i_star + 1,
                "j_star": None if self.j_star is None else self.j_star + 1,
            }
        return rec


# -- shape recognition ----------------------------------------------------------


def _ug_degrees(d: Digraph) -> list[int]:
    return [popcount(m) for m in d.underlying_adjacency()]


def path_order(d: Digraph) -> list[int] | None:
    """Vertices along the underlying path, starting at the smaller endpoint."""
    if d.n == 0 or d.has_loops:
        return None
    if d.n == 1:
        return [0]
    deg = _ug_degrees(d)
    if not d.is_weakly_connected() or len(d.underlying_edges()) != d.n - 1 or max(deg) > 2:
        return None
    adj = d.underlying_adjacency()
    start = min(v for v in range(d.n) if deg[v] == 1)
    order = [start]
    prev = -1
    cur = start
    while len(order) < d.n:
        nxt = [w for w in members(adj[cur]) if w != prev]
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def cycle_order(d: Digraph) -> list[int] | None:
    """Vertices around the underlying cycle from vertex 0 toward its smaller neighbour."""
    if d.n < 3 or d.has_loops:
        return None
    deg = _ug_degrees(d)
    if any(x != 2 for x in deg) or not d.is_weakly_connected():
        return None
    adj = d.underlying_adjacency()
    order = [0]
    prev, cur = -1, 0
    while True:
        nbrs = [w for w in members(adj[cur]) if w != prev]
        nxt = nbrs[0]
        if nxt == 0:
            break
        prev, cur = cur, nxt
        order.append(cur)
    return order if len(order) == d.n else None


def _edge_class(d: Digraph, a: int, b: int) -> str:
    ab, ba = d.has_arc(a, b), d.has_arc(b, a)
    if ab and ba:
        return "0"
    return "+" if ab else "-"


def path_partition(d: Digraph) -> CyclePartition:
    order = path_order(d)
    if order is None:
        raise FamilyMismatch("underlying graph is not a path")
    n = len(order)
    minus = {0}
    plus = {n - 1}
    zero = set()
    for k in range(n - 1):
        c = _edge_class(d, order[k], order[k + 1])
        if c == "-":
            minus.add(k + 1)  # v_{k+1} -> v_k only
        elif c == "+":
            plus.add(k)       # v_k -> v_{k+1} only
        else:
            zero.add(k)
    best = None
    for j in sorted(minus):
        for i in sorted(plus):
            if i >= j and (best is None or i - j < best[0]):
                best = (i - j, i, j)
    ell, i_star, j_star = best
    return CyclePartition("path", tuple(order), frozenset(minus), frozenset(plus),
                          frozenset(zero), (), ell, i_star, j_star)


def _cyclic_runs(positions: set[int], n: int) -> list[tuple[int, int]]:
    if not positions:
        return []
    if len(positions) == n:
        return [(0, n)]
    runs = []
    for p in sorted(positions):
        if (p - 1) % n in positions:
            continue
        length = 1
        while (p + length) % n in positions:
            length += 1
        runs.append((p, length))
    return runs


def cycle_partition(d: Digraph) -> CyclePartition:
    order = cycle_order(d)
    if order is None:
        raise FamilyMismatch("underlying graph is not a cycle on at least 3 vertices")
    n = len(order)
    minus, plus, zero = set(), set(), set()
    for i in range(n):
        c = _edge_class(d, order[i], order[(i + 1) % n])
        {"-": minus, "+": plus, "0": zero}[c].add(i)
    ell = i_hat = j_hat = None
    if minus and plus:
        ell, i_hat, j_hat = min(((j - i) % n, i, j) for i in minus for j in plus)
    return CyclePartition("cycle", tuple(order), frozenset(minus), frozenset(plus),
                          frozenset(zero), tuple(_cyclic_runs(zero, n)), ell, j_hat, i_hat)


# -- formulas -------------------------------------------------------------------


def f_weak_path(d: Digraph) -> int:
    """F = n - 1 - ceil(ell / 2), ell the least forward gap from V_- to V_+."""
    p = path_partition(d)
    return d.n - 1 - math.ceil(p.ell / 2)


def _bidirected_cycle(p: CyclePartition) -> bool:
    return not p.v_minus and not p.v_plus


def f_weak_cycle(d: Digraph) -> int:
    """F for a weak cycle on n >= 3 vertices.

    The fully bidirected cycle has no directed separator for the run formula
    and is answered by the exact solver.
    """
    p = cycle_partition(d)
    n = d.n
    if not p.v_zero:
        if not p.v_minus or not p.v_plus:
            return 0            # directed cycle
        return n - 1            # oriented, not directed: has a source
    if _bidirected_cycle(p):
        return failed_zero_forcing_number(d).value
    if not p.v_minus or not p.v_plus:
        return sum(math.ceil(length / 2) for _, length in p.runs)
    return n - 1 - p.ell // 2


def construct_weak_cycle(n: int, k: int) -> Digraph:
    """A weak cycle on ``n`` vertices with F = ``k``.

    ``k <= n/2``: bidirected edges at 0, 2, .., 2k-2 and forward elsewhere.
    ``k > n/2``: edge 0 forward, edge 2k-n+1 backward, all others bidirected.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must lie in [0, {n - 1}]")
    if 2 * k <= n:
        spec = [Orientation.FORWARD] * n
        for i in range(0, 2 * k - 1, 2):
            spec[i] = Orientation.BOTH
    else:
        spec = [Orientation.BOTH] * n
        spec[0] = Orientation.FORWARD
        spec[2 * k - n + 1] = Orientation.BACKWARD
    return weak_cycle(spec)


def f_components(parts: Sequence[tuple[int, int]]) -> int:
    """Combine per-component ``(F_i, n_i)`` pairs: max_j F_j + sum of the other orders."""
    if not parts:
        raise ValueError("need at least one component")
    total = sum(n_i for _, n_i in parts)
    return max(f_j + total - n_j for f_j, n_j in parts)


def f_of_disconnected(d: Digraph) -> int:
    if d.has_loops:
        raise FamilyMismatch("component formula is applied to loopless digraphs only")
    comps = d.weak_components()
    parts = []
    for comp in comps:
        sub = d.induced(comp)
        value, _, _ = f_auto(sub)
        parts.append((value, sub.n))
    return f_components(parts)


def f_dag(d: Digraph) -> int:
    if d.n == 0 or d.has_loops or not d.is_acyclic():
        raise FamilyMismatch("not a directed acyclic graph")
    return d.n - 1


def f_oriented_tree(d: Digraph) -> int:
    if (
        d.n == 0 or d.has_loops or not d.is_oriented()
        or not d.is_weakly_connected() or len(d.underlying_edges()) != d.n - 1
    ):
        raise FamilyMismatch("not an oriented tree")
    return d.n - 1


def _star_centre(d: Digraph) -> int | None:
    if d.n < 2 or d.has_loops or not d.is_weakly_connected():
        return None
    if len(d.underlying_edges()) != d.n - 1:
        return None
    deg = _ug_degrees(d)
    if d.n == 2:
        return 0
    centres = [v for v in range(d.n) if deg[v] == d.n - 1]
    return centres[0] if len(centres) == 1 else None


def f_star(d: Digraph) -> int:
    """t if oriented or some leaf has in-degree 0, otherwise t - 1."""
    c = _star_centre(d)
    if c is None:
        raise FamilyMismatch("underlying graph is not a star K_{1,t}")
    t = d.n - 1
    leaves = range(d.n) if d.n == 2 else [v for v in range(d.n) if v != c]
    if d.is_oriented() or any(d.in_masks[v] == 0 for v in leaves):
        return t
    return t - 1


def f_line_digraph(d: Digraph) -> int:
    """F of the line digraph of ``d`` from ``d`` alone: 0, m - 1 or m - 2."""
    if d.n < 2 or not d.is_weakly_connected():
        raise FamilyMismatch("base digraph must be weakly connected with at least 2 vertices")
    m = d.num_arcs
    if d.has_loops:
        from .digraph import line_digraph

        ld, _ = line_digraph(d)
        if zero_forcing_number(ld).value == 0:
            raise UndefinedMetric("Z=0 under loop rule")
    if d.is_directed_cycle():
        return 0
    if d.sources():
        return m - 1
    return m - 2


def f_auto(d: Digraph) -> tuple[int | None, str, str]:
    """F by the first matching closed form, else the exact solver.

    Returns ``(value, method, family)``; ``value`` is ``None`` when F is
    undefined.  ``method`` is ``"closed-form"`` or ``"exact"``.
    """
    from .classify import critical_threshold

    n = d.n
    if n == 0:
        raise ValueError("empty vertex set")
    if d.has_loops:
        if d.sources():
            return n - 1, "closed-form", "source"
        sol = failed_zero_forcing_number(d)
        return (None if sol is None else sol.value), "exact", "loop-digraph"
    if n == 1:
        return 0, "closed-form", "single-vertex"
    if d.is_directed_cycle():
        return 0, "closed-form", "directed-cycle"
    if d.sources():
        return n - 1, "closed-form", "source"
    if not d.is_weakly_connected():
        return f_of_disconnected(d), "closed-form", "components"
    if path_order(d) is not None:
        return f_weak_path(d), "closed-form", "weak-path"
    if cycle_order(d) is not None:
        p = cycle_partition(d)
        if not _bidirected_cycle(p):
            return f_weak_cycle(d), "closed-form", "weak-cycle"
    elif _star_centre(d) is not None:
        return f_star(d), "closed-form", "star"
    k = critical_threshold(d)
    if k is not None:
        return n - k, "closed-form", "critical-threshold"
    return failed_zero_forcing_number(d).value, "exact", "general"
