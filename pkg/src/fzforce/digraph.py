"""Immutable bitset-backed digraphs, family generators and digraph operators.

Vertex sets are plain Python ints used as bitsets (bit ``v`` set means vertex
``v`` is a member).  Python ints have no width limit, so the same code path
serves every ``n``.
"""

from __future__ import annotations

import enum
import itertools
import re
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Digraph",
    "Orientation",
    "parse_orientations",
    "as_mask",
    "members",
    "popcount",
    "complement",
    "outjoin",
    "line_digraph",
    "disjoint_union",
    "directed_cycle",
    "complete",
    "empty",
    "bidirected_path",
    "weak_path",
    "weak_cycle",
    "star",
    "de_bruijn",
    "kautz",
    "tournament_from_bits",
    "digraph_from_code",
    "oriented_from_code",
    "format_digraph",
    "parse_digraph",
    "read_digraph",
    "write_digraph",
    "to_dot",
    "parse_dot",
    "iter_codes",
]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def members(mask: int) -> list[int]:
    """Vertices of a bitset in increasing order."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def as_mask(vertices) -> int:
    """Convert an int bitset or an iterable of vertex indices to a bitset."""
    if isinstance(vertices, int):
        if vertices < 0:
            raise ValueError("negative bitset")
        return vertices
    mask = 0
    for v in vertices:
        v = int(v)
        if v < 0:
            raise ValueError(f"negative vertex index {v}")
        mask |= 1 << v
    return mask


class Digraph:
    """A finite digraph on vertices ``0..n-1`` without parallel arcs.

    Loops are only accepted when ``allow_loops`` is true.  Instances are
    immutable; every operator returns a new digraph.
    """

    __slots__ = ("_n", "_out", "_in", "_allow_loops", "_loops", "_hash")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = (), allow_loops: bool = False):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        out = [0] * n
        for u, v in arcs:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v and not allow_loops:
                raise ValueError(f"loop at {u} but allow_loops is false")
            out[u] |= 1 << v
        self._init(n, out, allow_loops)

    def _init(self, n, out, allow_loops):
        inn = [0] * n
        for u in range(n):
            m = out[u]
            for v in members(m):
                inn[v] |= 1 << u
        self._n = n
        self._out = tuple(out)
        self._in = tuple(inn)
        self._allow_loops = bool(allow_loops)
        self._loops = any(out[v] >> v & 1 for v in range(n))
        self._hash = None

    @classmethod
    def from_masks(cls, out_masks: Sequence[int], allow_loops: bool = False) -> "Digraph":
        """Build from per-vertex out-neighbour bitsets."""
        n = len(out_masks)
        full = (1 << n) - 1
        out = []
        for u, m in enumerate(out_masks):
            m = int(m)
            if m & ~full:
                raise ValueError(f"out-neighbours of {u} exceed vertex range")
            if not allow_loops and m >> u & 1:
                raise ValueError(f"loop at {u} but allow_loops is false")
            out.append(m)
        d = cls.__new__(cls)
        d._init(n, out, allow_loops)
        return d

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def full(self) -> int:
        """Bitset of all vertices."""
        return (1 << self._n) - 1

    @property
    def out_masks(self) -> tuple[int, ...]:
        return self._out

    @property
    def in_masks(self) -> tuple[int, ...]:
        return self._in

    @property
    def allow_loops(self) -> bool:
        return self._allow_loops

    @property
    def has_loops(self) -> bool:
        return self._loops

    def out_neighbors(self, v: int) -> list[int]:
        return members(self._out[v])

    def in_neighbors(self, v: int) -> list[int]:
        return members(self._in[v])

    def out_degree(self, v: int) -> int:
        return popcount(self._out[v])

    def in_degree(self, v: int) -> int:
        return popcount(self._in[v])

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs, sorted by (tail, head)."""
        return [(u, v) for u in range(self._n) for v in members(self._out[u])]

    @property
    def num_arcs(self) -> int:
        return sum(popcount(m) for m in self._out)

    def sources(self) -> list[int]:
        return [v for v in range(self._n) if self._in[v] == 0]

    def sinks(self) -> list[int]:
        return [v for v in range(self._n) if self._out[v] == 0]

    def is_oriented(self) -> bool:
        """True when there is no 2-cycle (loops are ignored)."""
        return not any(
            self._out[u] & self._in[u] & ~(1 << u) for u in range(self._n)
        )

    def underlying_adjacency(self) -> list[int]:
        """Neighbour bitsets of the underlying simple undirected graph."""
        return [(self._out[v] | self._in[v]) & ~(1 << v) for v in range(self._n)]

    def underlying_edges(self) -> list[tuple[int, int]]:
        adj = self.underlying_adjacency()
        return [(u, v) for u in range(self._n) for v in members(adj[u]) if u < v]

    def weak_components(self) -> list[list[int]]:
        """Vertex lists of the weakly connected components, ordered by least vertex."""
        adj = self.underlying_adjacency()
        seen = 0
        comps = []
        for s in range(self._n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in members(frontier):
                    nxt |= adj[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(members(comp))
        return comps

    def is_weakly_connected(self) -> bool:
        return self._n > 0 and len(self.weak_components()) == 1

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        """Induced subdigraph, relabelled to ``0..k-1`` in increasing order."""
        vs = sorted(set(vertices))
        index = {v: i for i, v in enumerate(vs)}
        arcs = [(index[u], index[v]) for u in vs for v in members(self._out[u]) if v in index]
        return Digraph(len(vs), arcs, allow_loops=self._allow_loops)

    def is_directed_cycle(self) -> bool:
        """Connected, loopless, every in- and out-degree 1, at least 2 vertices."""
        if self._n < 2 or self.has_loops:
            return False
        if any(popcount(m) != 1 for m in self._out) or any(popcount(m) != 1 for m in self._in):
            return False
        v, steps = 0, 0
        while True:
            v = self._out[v].bit_length() - 1
            steps += 1
            if v == 0:
                return steps == self._n

    def is_acyclic(self) -> bool:
        indeg = [popcount(m) for m in self._in]
        stack = [v for v in range(self._n) if indeg[v] == 0]
        done = 0
        while stack:
            u = stack.pop()
            done += 1
            for w in members(self._out[u]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return done == self._n

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self._out == other._out

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._out))
        return self._hash

    def __repr__(self):
        loops = ", allow_loops=True" if self._allow_loops else ""
        return f"Digraph({self._n}, {self.arcs()!r}{loops})"


# -- operators ----------------------------------------------------------------


def complement(d: Digraph) -> Digraph:
    """Arc ``uv`` (``u != v``) is present exactly when it is absent from ``d``."""
    if d.has_loops:
        raise ValueError("complement is only defined for loopless digraphs")
    full = d.full
    return Digraph.from_masks([full & ~m & ~(1 << u) for u, m in enumerate(d.out_masks)])


def outjoin(d: Digraph, h: Digraph) -> Digraph:
    """Disjoint union of ``d`` and ``h`` plus every arc from a ``d``-vertex to an ``h``-vertex.

    ``d`` keeps indices ``0..|d|-1``; ``h`` is shifted up by ``|d|``.
    """
    nd = d.n
    h_all = h.full << nd
    out = [m | h_all for m in d.out_masks] + [m << nd for m in h.out_masks]
    return Digraph.from_masks(out, allow_loops=d.allow_loops or h.allow_loops)


def disjoint_union(digraphs: Sequence[Digraph]) -> Digraph:
    out: list[int] = []
    loops = False
    for g in digraphs:
        shift = len(out)
        out.extend(m << shift for m in g.out_masks)
        loops = loops or g.allow_loops
    return Digraph.from_masks(out, allow_loops=loops)


def line_digraph(d: Digraph) -> tuple[Digraph, list[tuple[int, int]]]:
    """Line digraph of ``d`` together with the vertex -> arc labelling.

    Vertex ``i`` of the result is the ``i``-th arc of ``d`` in (tail, head)
    order; ``ab`` is an arc whenever the head of ``a`` is the tail of ``b``.
    A loop ``uu`` becomes a vertex carrying a loop.
    """
    labels = d.arcs()
    by_tail: dict[int, int] = {}
    for i, (u, _) in enumerate(labels):
        by_tail[u] = by_tail.get(u, 0) | (1 << i)
    out = [by_tail.get(v, 0) for (_, v) in labels]
    loops = any(u == v for u, v in labels)
    return Digraph.from_masks(out, allow_loops=d.allow_loops or loops), labels


# -- generators ---------------------------------------------------------------


class Orientation(str, enum.Enum):
    """Direction of the edge between consecutive vertices ``v_i`` and ``v_{i+1}``."""

    FORWARD = "forward"    # v_i -> v_{i+1}
    BACKWARD = "backward"  # v_{i+1} -> v_i
    BOTH = "both"

    @property
    def code(self) -> str:
        return {"forward": "F", "backward": "B", "both": "D"}[self.value]


_ORIENT_ALIASES = {
    "f": Orientation.FORWARD, "forward": Orientation.FORWARD, ">": Orientation.FORWARD,
    "b": Orientation.BACKWARD, "backward": Orientation.BACKWARD, "<": Orientation.BACKWARD,
    "d": Orientation.BOTH, "both": Orientation.BOTH, "=": Orientation.BOTH,
}


def parse_orientations(spec) -> list[Orientation]:
    """Accept a sequence of Orientation/str or a compact string such as ``"DFDF"``.

    Compact letters: ``F`` forward, ``B`` backward, ``D`` both (double).
    Comma-separated words (``"both,forward"``) also work.
    """
    if isinstance(spec, str):
        items = [s for s in re.split(r"[,\s]+", spec.strip()) if s]
        if len(items) == 1 and items[0].lower() not in _ORIENT_ALIASES:
            items = list(items[0])
    else:
        items = list(spec)
    result = []
    for item in items:
        if isinstance(item, Orientation):
            result.append(item)
            continue
        key = str(item).strip().lower()
        if key not in _ORIENT_ALIASES:
            raise ValueError(f"unknown orientation symbol {item!r}")
        result.append(_ORIENT_ALIASES[key])
    return result


def _oriented_edge_arcs(u: int, v: int, o: Orientation) -> list[tuple[int, int]]:
    if o is Orientation.FORWARD:
        return [(u, v)]
    if o is Orientation.BACKWARD:
        return [(v, u)]
    return [(u, v), (v, u)]


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("a directed cycle needs at least 2 vertices")
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Digraph:
    full = (1 << n) - 1
    return Digraph.from_masks([full & ~(1 << u) for u in range(n)])


def empty(n: int) -> Digraph:
    return Digraph(n)


def weak_path(spec) -> Digraph:
    """Weak path ``v_0 .. v_{n-1}``; one orientation symbol per edge (``n-1`` symbols)."""
    orients = parse_orientations(spec)
    n = len(orients) + 1
    arcs = []
    for i, o in enumerate(orients):
        arcs.extend(_oriented_edge_arcs(i, i + 1, o))
    return Digraph(n, arcs)


def bidirected_path(n: int) -> Digraph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return weak_path([Orientation.BOTH] * (n - 1))


def weak_cycle(spec) -> Digraph:
    """Weak cycle ``v_0 .. v_{n-1}``; symbol ``i`` orients edge ``{v_i, v_{i+1 mod n}}``."""
    orients = parse_orientations(spec)
    n = len(orients)
    if n < 3:
        raise ValueError("weak_cycle needs n >= 3 orientation symbols")
    arcs = []
    for i, o in enumerate(orients):
        arcs.extend(_oriented_edge_arcs(i, (i + 1) % n, o))
    return Digraph(n, arcs)


def star(t: int, spec=None) -> Digraph:
    """Digraph with underlying graph K_{1,t}: centre 0, leaves 1..t.

    ``spec`` holds one symbol per leaf; forward means centre -> leaf.
    Defaults to fully bidirected.
    """
    if t < 1:
        raise ValueError("star needs t >= 1")
    orients = [Orientation.BOTH] * t if spec is None else parse_orientations(spec)
    if len(orients) != t:
        raise ValueError(f"star spec has {len(orients)} symbols, expected {t}")
    arcs = []
    for leaf, o in enumerate(orients, start=1):
        arcs.extend(_oriented_edge_arcs(0, leaf, o))
    return Digraph(t + 1, arcs)


def _string_digraph(words: list[tuple[int, ...]], alphabet: int) -> Digraph:
    index = {w: i for i, w in enumerate(words)}
    arcs = []
    for w in words:
        for x in range(alphabet):
            nxt = w[1:] + (x,)
            if nxt in index:
                arcs.append((index[w], index[nxt]))
    return Digraph(len(words), arcs, allow_loops=True)


def de_bruijn(d: int, m: int) -> tuple[Digraph, list[str]]:
    """de Bruijn digraph B(d, m) and its vertex labels (lexicographic digit strings)."""
    if d < 2 or m < 1:
        raise ValueError("de Bruijn digraph needs d >= 2 and M >= 1")
    words = list(itertools.product(range(d), repeat=m))
    return _string_digraph(words, d), ["".join(map(str, w)) for w in words]


def kautz(d: int, m: int) -> tuple[Digraph, list[str]]:
    """Kautz digraph K(d, m): strings over ``Z_{d+1}`` with no equal neighbours."""
    if d < 2 or m < 1:
        raise ValueError("Kautz digraph needs d >= 2 and M >= 1")
    words = [
        w for w in itertools.product(range(d + 1), repeat=m)
        if all(a != b for a, b in zip(w, w[1:]))
    ]
    g = _string_digraph(words, d + 1)
    return Digraph.from_masks(g.out_masks, allow_loops=False), ["".join(map(str, w)) for w in words]


def tournament_from_bits(n: int, bits: int) -> Digraph:
    """Tournament where bit ``k`` decides the ``k``-th pair ``i < j``: set means ``i -> j``."""
    arcs = []
    for k, (i, j) in enumerate(itertools.combinations(range(n), 2)):
        arcs.append((i, j) if bits >> k & 1 else (j, i))
    return Digraph(n, arcs)


def digraph_from_code(n: int, code: int) -> Digraph:
    """Loopless digraph whose arcs are read off the bits of ``code``.

    Bit ``k`` corresponds to the ``k``-th ordered pair ``(u, v)``, ``u != v``,
    in row-major order.  Codes ``0 .. 2**(n*(n-1)) - 1`` enumerate every
    labelled digraph on ``n`` vertices exactly once.
    """
    out = [0] * n
    k = 0
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if code >> k & 1:
                out[u] |= 1 << v
            k += 1
    return Digraph.from_masks(out)


def oriented_from_code(n: int, code: int) -> Digraph:
    """Oriented graph from a base-3 code: digit per pair ``i < j`` is none / ``i->j`` / ``j->i``."""
    out = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        code, digit = divmod(code, 3)
        if digit == 1:
            out[i] |= 1 << j
        elif digit == 2:
            out[j] |= 1 << i
    return Digraph.from_masks(out)


# -- text formats -------------------------------------------------------------


def format_digraph(d: Digraph) -> str:
    lines = [f"n {d.n}"]
    if d.allow_loops:
        lines.append("loops")
    lines.extend(f"{u} {v}" for u, v in d.arcs())
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    """Parse the ``n <count>`` / ``loops`` / ``u v`` text format."""
    n = None
    loops = False
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected 'n <count>'")
            n = int(parts[1])
            continue
        if parts == ["loops"]:
            loops = True
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            arcs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex in {line!r}") from None
    if n is None:
        raise ValueError("missing 'n <count>' header")
    return Digraph(n, arcs, allow_loops=loops)


def read_digraph(path) -> Digraph:
    with open(path) as fh:
        return parse_digraph(fh.read())


def write_digraph(d: Digraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_digraph(d))


def to_dot(d: Digraph, highlight=0, labels: Sequence[str] | None = None, name: str = "D") -> str:
    """Graphviz DOT text; vertices in ``highlight`` are filled."""
    hl = as_mask(highlight)
    lines = [f"digraph {name} {{"]
    for v in range(d.n):
        attrs = []
        if labels is not None:
            attrs.append(f'label="{labels[v]}"')
        if hl >> v & 1:
            attrs.append("style=filled, fillcolor=lightblue")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {v}{suffix};")
    lines.extend(f"  {u} -> {v};" for u, v in d.arcs())
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_NODE = re.compile(r"^\s*(\d+)\s*(\[.*\])?\s*;\s*$")
_DOT_ARC = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*;\s*$")


def parse_dot(text: str) -> Digraph:
    """Read back the subset of DOT produced by :func:`to_dot`."""
    nodes: set[int] = set()
    arcs = []
    for line in text.splitlines():
        m = _DOT_ARC.match(line)
        if m:
            arcs.append((int(m.group(1)), int(m.group(2))))
            continue
        m = _DOT_NODE.match(line)
        if m:
            nodes.add(int(m.group(1)))
    n = max(nodes | {v for a in arcs for v in a}, default=-1) + 1
    return Digraph(n, arcs, allow_loops=any(u == v for u, v in arcs))


def iter_codes(n: int) -> Iterator[Digraph]:
    """Every labelled loopless digraph on ``n`` vertices."""
    for code in range(1 << (n * (n - 1))):
        yield digraph_from_code(n, code)
