"""Structural recognition of the digraphs with F(D) < Z(D).

Every test is a direct degree / complement check; no isomorphism search.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .digraph import Digraph, members, popcount

__all__ = [
    "ClassKind",
    "Classification",
    "classify_f_less_than_z",
    "classify_oriented",
    "critical_threshold",
    "is_regular_tournament5",
]


class ClassKind(str, enum.Enum):
    DIRECTED_CYCLE = "DirectedCycle"
    REGULAR_TOURNAMENT5 = "RegularTournament5"
    COMPLETE_MINUS_SPANNING_CYCLES = "CompleteMinusSpanningCycles"
    COMPLETE_MINUS_CYCLES_PLUS_VERTEX = "CompleteMinusCyclesPlusVertex"
    COMPLETE_MINUS_CYCLES_PLUS_PENDANT = "CompleteMinusCyclesPlusPendant"
    SINK_OUTJOIN_COMPLEMENT = "SinkOutjoinComplement"
    COMPLETE_OUTJOIN_EMPTY = "CompleteOutjoinEmpty"
    EMPTY_GRAPH = "EmptyGraph"
    TRIANGLE_OUTJOIN_VERTEX = "TriangleOutjoinVertex"
    NONE = "None"


# W critical <=> |W| >= k for these classes
_THRESHOLD = {
    ClassKind.EMPTY_GRAPH: lambda n: 1,
    ClassKind.COMPLETE_OUTJOIN_EMPTY: lambda n: 2,
    ClassKind.COMPLETE_MINUS_SPANNING_CYCLES: lambda n: 3,
    ClassKind.COMPLETE_MINUS_CYCLES_PLUS_VERTEX: lambda n: 3,
    ClassKind.COMPLETE_MINUS_CYCLES_PLUS_PENDANT: lambda n: 3,
    ClassKind.SINK_OUTJOIN_COMPLEMENT: lambda n: 3,
    ClassKind.REGULAR_TOURNAMENT5: lambda n: 4,
    ClassKind.DIRECTED_CYCLE: lambda n: n,
}


@dataclass(frozen=True)
class Classification:
    kind: ClassKind
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.kind is not ClassKind.NONE


def _require_loopless(d: Digraph) -> None:
    if d.has_loops:
        raise ValueError("classification is defined for loopless digraphs only")


def _complement_out(d: Digraph) -> list[int]:
    full = d.full
    return [full & ~m & ~(1 << u) for u, m in enumerate(d.out_masks)]


def _cycle_cover(cout: list[int], verts: int) -> list[list[int]] | None:
    """Cycles of the complement restricted to ``verts`` if it is a cover by cycles of length >= 3.

    Requires every vertex of ``verts`` to have exactly one complement
    out-neighbour and exactly one complement in-neighbour inside ``verts``.
    """
    succ = {}
    indeg = dict.fromkeys(members(verts), 0)
    for u in members(verts):
        m = cout[u] & verts
        if popcount(m) != 1:
            return None
        v = m.bit_length() - 1
        succ[u] = v
        indeg[v] += 1
    if any(c != 1 for c in indeg.values()):
        return None
    cycles = []
    seen = 0
    for u in members(verts):
        if seen >> u & 1:
            continue
        cyc = [u]
        seen |= 1 << u
        v = succ[u]
        while v != u:
            cyc.append(v)
            seen |= 1 << v
            v = succ[v]
        if len(cyc) < 3:
            return None
        cycles.append(cyc)
    return cycles


def is_regular_tournament5(d: Digraph) -> bool:
    if d.n != 5 or d.has_loops or not d.is_oriented():
        return False
    if any(popcount(m) != 2 for m in d.out_masks):
        return False
    # oriented with 10 arcs on 5 vertices covers every pair exactly once
    return d.num_arcs == 10


def _complete_outjoin_empty(d: Digraph):
    full = d.full
    dominators = [v for v in range(d.n) if d.out_masks[v] == full & ~(1 << v)]
    sinks = [v for v in range(d.n) if d.out_masks[v] == 0]
    if len(dominators) >= 2 and len(dominators) + len(sinks) == d.n:
        return {"complete_part": dominators, "empty_part": sinks}
    return None


def _complete_minus_cycles(d: Digraph, cout: list[int]):
    n = d.n
    full = d.full
    if n >= 3:
        cyc = _cycle_cover(cout, full)
        if cyc is not None:
            return ClassKind.COMPLETE_MINUS_SPANNING_CYCLES, {"removed_cycles": cyc}
    if n < 4:
        return None
    cin = [0] * n
    for u in range(n):
        for v in members(cout[u]):
            cin[v] |= 1 << u
    for v in range(n):
        rest = full & ~(1 << v)
        if cin[v]:
            continue
        if cout[v] == 0:
            cyc = _cycle_cover(cout, rest)
            if cyc is not None:
                return ClassKind.COMPLETE_MINUS_CYCLES_PLUS_VERTEX, {"vertex": v, "removed_cycles": cyc}
        elif popcount(cout[v]) == 1:
            cyc = _cycle_cover(cout, rest)
            if cyc is not None:
                u = cout[v].bit_length() - 1
                return ClassKind.COMPLETE_MINUS_CYCLES_PLUS_PENDANT, {
                    "vertex": v, "removed_arc": [v, u], "removed_cycles": cyc,
                }
    return None


def _sink_outjoin(d: Digraph, cout: list[int]):
    n = d.n
    if n < 4:
        return None
    full = d.full
    for v in d.sinks():
        rest = full & ~(1 << v)
        if any(not d.out_masks[u] >> v & 1 for u in members(rest)):
            continue
        cyc = _cycle_cover(cout, rest)
        if cyc is not None:
            return ClassKind.SINK_OUTJOIN_COMPLEMENT, {"sink": v, "removed_cycles": cyc}
    return None


def classify_f_less_than_z(d: Digraph) -> Classification:
    """Which family (if any) of the F < Z characterisation ``d`` belongs to.

    Overlaps are resolved in the order DirectedCycle, EmptyGraph,
    CompleteOutjoinEmpty, complete-minus-cycles variants, sink outjoin,
    RegularTournament5.
    """
    _require_loopless(d)
    if d.is_directed_cycle():
        return Classification(ClassKind.DIRECTED_CYCLE, {"n": d.n})
    if d.n >= 1 and d.num_arcs == 0:
        return Classification(ClassKind.EMPTY_GRAPH, {"n": d.n})
    w = _complete_outjoin_empty(d)
    if w is not None:
        return Classification(ClassKind.COMPLETE_OUTJOIN_EMPTY, w)
    cout = _complement_out(d)
    hit = _complete_minus_cycles(d, cout) or _sink_outjoin(d, cout)
    if hit is not None:
        return Classification(*hit)
    if is_regular_tournament5(d):
        return Classification(ClassKind.REGULAR_TOURNAMENT5, {})
    return Classification(ClassKind.NONE)


def classify_oriented(d: Digraph) -> Classification:
    """F < Z recognition restricted to oriented graphs (no 2-cycles)."""
    _require_loopless(d)
    if not d.is_oriented():
        raise ValueError("input has a 2-cycle; not an oriented graph")
    if d.n >= 1 and d.num_arcs == 0:
        return Classification(ClassKind.EMPTY_GRAPH, {"n": d.n})
    if d.is_directed_cycle():
        return Classification(ClassKind.DIRECTED_CYCLE, {"n": d.n})
    if d.n == 4:
        for v in d.sinks():
            rest = [u for u in range(4) if u != v]
            if d.in_degree(v) == 3 and d.induced(rest).is_directed_cycle():
                return Classification(ClassKind.TRIANGLE_OUTJOIN_VERTEX, {"sink": v, "triangle": rest})
    if is_regular_tournament5(d):
        return Classification(ClassKind.REGULAR_TOURNAMENT5, {})
    return Classification(ClassKind.NONE)


def critical_threshold(d: Digraph) -> int | None:
    """The ``k`` with "W critical iff |W| >= k", when ``d`` is in a listed family."""
    if d.has_loops:
        return None
    c = classify_f_less_than_z(d)
    if not c:
        return None
    return _THRESHOLD[c.kind](d.n)
