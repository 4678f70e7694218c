"""Integral gain graphs, [a,b]-expansions and height functions.

An edge ``g(i,j)`` with ``i < j`` stands for the hyperplane ``x_j - x_i = g``.
Edges are always stored in this canonical orientation; the reversed view
``(-g)(j,i)`` is computed on demand and never stored.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class GainGraphError(ValueError):
    """Raised on malformed gain graphs, edges, circles or height functions."""


_EDGE_RE = re.compile(r"^\s*(-?\d+)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


@dataclass(frozen=True, order=True)
class GainedEdge:
    lo: int
    hi: int
    gain: int

    def __post_init__(self) -> None:
        if self.lo == self.hi:
            raise GainGraphError(f"loop at vertex {self.lo}")
        if self.lo > self.hi:
            raise GainGraphError(f"edge ({self.lo},{self.hi}) is not in lo<hi orientation")
        if self.lo < 1:
            raise GainGraphError(f"vertex {self.lo} is not positive")

    @classmethod
    def oriented(cls, tail: int, head: int, gain: int) -> GainedEdge:
        """Build the edge ``gain(tail, head)``, flipping it into canonical form if needed."""
        if tail < head:
            return cls(tail, head, gain)
        return cls(head, tail, -gain)

    @classmethod
    def parse(cls, text: str) -> GainedEdge:
        m = _EDGE_RE.match(text)
        if m is None:
            raise GainGraphError(f"cannot parse edge {text!r}; expected g(i,j)")
        g, i, j = (int(x) for x in m.groups())
        if i >= j:
            raise GainGraphError(f"edge {text!r} must be written with i<j")
        return cls(i, j, g)

    @property
    def ends(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def gain_from(self, tail: int) -> int:
        """Gain of the edge when traversed starting at ``tail``."""
        if tail == self.lo:
            return self.gain
        if tail == self.hi:
            return -self.gain
        raise GainGraphError(f"vertex {tail} is not an endpoint of {self}")

    def other(self, v: int) -> int:
        if v == self.lo:
            return self.hi
        if v == self.hi:
            return self.lo
        raise GainGraphError(f"vertex {v} is not an endpoint of {self}")

    def __str__(self) -> str:
        return f"{self.gain}({self.lo},{self.hi})"


@dataclass(frozen=True)
class GainGraph:
    """Gain graph on vertices ``1..n``; ``edges`` is kept sorted by (lo, hi, gain)."""

    n: int
    edges: tuple[GainedEdge, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GainGraphError(f"vertex count must be >= 1, got {self.n}")
        edges = tuple(sorted(self.edges))
        for e in edges:
            if e.hi > self.n:
                raise GainGraphError(f"edge {e} leaves the vertex set [1,{self.n}]")
        for e, f in zip(edges, edges[1:]):
            if e == f:
                raise GainGraphError(f"duplicate edge {e}")
        object.__setattr__(self, "edges", edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def __contains__(self, edge: object) -> bool:
        return edge in self._edge_set

    @property
    def _edge_set(self) -> frozenset[GainedEdge]:
        cached = self.__dict__.get("_edge_set_cache")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edge_set_cache", cached)
        return cached

    def gains_between(self, u: int, v: int) -> list[int]:
        """Gains of edges joining ``u`` and ``v``, read in the direction u -> v."""
        return [e.gain_from(u) for e in self.edges if {e.lo, e.hi} == {u, v}]

    def gain_range(self) -> int:
        """max |g| over all edges, 0 for an edgeless graph."""
        return max((abs(e.gain) for e in self.edges), default=0)

    def induced(self, support: Iterable[int]) -> tuple[GainedEdge, ...]:
        s = set(support)
        return tuple(e for e in self.edges if e.lo in s and e.hi in s)

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        lines.extend(str(e) for e in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> GainGraph:
        n = None
        edges = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("n="):
                n = int(line[2:])
            else:
                edges.append(GainedEdge.parse(line))
        if n is None:
            raise GainGraphError("missing header line n=<int>")
        return cls(n, tuple(edges))


PRESETS: dict[str, tuple[int, int]] = {
    "braid": (0, 0),
    "linial": (1, 1),
    "shi": (0, 1),
    "catalan": (-1, 1),
}


@dataclass(frozen=True)
class ExpansionParams:
    n: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GainGraphError(f"n must be >= 1, got {self.n}")
        if self.a > self.b:
            raise GainGraphError(f"empty gain interval [{self.a},{self.b}]")

    @classmethod
    def preset(cls, name: str, n: int) -> ExpansionParams:
        try:
            a, b = PRESETS[name]
        except KeyError:
            raise GainGraphError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
        return cls(n, a, b)


def build_expansion(params: ExpansionParams) -> GainGraph:
    """The complete [a,b]-expansion K_n^{ab}: every gain in [a,b] on every pair."""
    edges = [
        GainedEdge(i, j, g)
        for i in range(1, params.n + 1)
        for j in range(i + 1, params.n + 1)
        for g in range(params.a, params.b + 1)
    ]
    return GainGraph(params.n, tuple(edges))


def expansion(n: int, a: int, b: int) -> GainGraph:
    return build_expansion(ExpansionParams(n, a, b))


def _walk_circle(circle: Sequence[GainedEdge], start: int | None) -> list[int]:
    """Return the vertex sequence v0, v1, ..., v_{l-1} visited by ``circle``."""
    edges = list(circle)
    if len(edges) < 2:
        raise GainGraphError("a circle needs at least two edges")
    if len(set(edges)) != len(edges):
        raise GainGraphError("a circle cannot repeat an edge")
    first, second = edges[0], edges[1]
    if start is None:
        if len(edges) == 2:
            start = first.lo
        else:
            shared = set(first.ends) & set(second.ends)
            if len(shared) != 1:
                raise GainGraphError(f"edges {first} and {second} are not consecutive on a circle")
            start = first.other(shared.pop())
    if start not in first.ends:
        raise GainGraphError(f"start vertex {start} is not on the first edge {first}")
    walk = [start]
    cur = start
    for e in edges:
        if cur not in e.ends:
            raise GainGraphError(f"edge {e} does not continue the walk at vertex {cur}")
        cur = e.other(cur)
        walk.append(cur)
    if walk[-1] != start:
        raise GainGraphError("edge sequence does not close up")
    if len(set(walk[:-1])) != len(edges):
        raise GainGraphError("edge sequence revisits a vertex; not a circle")
    return walk[:-1]


def circle_gain(
    circle: Sequence[GainedEdge], graph: GainGraph | None = None, start: int | None = None
) -> int:
    """Signed gain sum of a circle, relative to its traversal direction.

    ``circle`` lists the edges in traversal order.  The direction is fixed by
    ``start`` (the first vertex visited); when omitted it is inferred from the
    first two edges, or taken as ``lo`` of the first edge for a digon.  Only
    whether the result is zero is orientation-independent.
    """
    if graph is not None:
        for e in circle:
            if e not in graph:
                raise GainGraphError(f"edge {e} is not in the graph")
    walk = _walk_circle(circle, start)
    return sum(e.gain_from(v) for e, v in zip(circle, walk))


def is_balanced(circle: Sequence[GainedEdge], graph: GainGraph | None = None) -> bool:
    return circle_gain(circle, graph) == 0


class HeightFunction:
    """A map from a vertex subset to the naturals that attains 0.

    Immutable and hashable.  The induced vertex order O_h puts higher vertices
    first and breaks ties by the smaller label.
    """

    __slots__ = ("_h", "_support", "_hash")

    def __init__(self, heights: Mapping[int, int]):
        if not heights:
            raise GainGraphError("height function needs a nonempty support")
        h = {int(v): int(x) for v, x in heights.items()}
        if min(h.values()) != 0:
            raise GainGraphError(f"height function must attain 0 and be nonnegative: {h}")
        self._h = h
        self._support = tuple(sorted(h))
        self._hash = hash(tuple(sorted(h.items())))

    @classmethod
    def normalized(cls, heights: Mapping[int, int]) -> HeightFunction:
        """Shift arbitrary integer heights so that the minimum is 0."""
        m = min(heights.values())
        return cls({v: x - m for v, x in heights.items()})

    @classmethod
    def from_list(cls, values: Sequence[int]) -> HeightFunction:
        return cls({i + 1: x for i, x in enumerate(values)})

    @property
    def support(self) -> tuple[int, ...]:
        return self._support

    def __getitem__(self, v: int) -> int:
        return self._h[v]

    def __contains__(self, v: object) -> bool:
        return v in self._h

    def items(self):
        return self._h.items()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HeightFunction) and self._h == other._h

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{v}:{self._h[v]}" for v in self._support)
        return f"HeightFunction({{{body}}})"

    def to_list(self, n: int | None = None) -> list[int]:
        """Height array indexed by vertex - 1; requires support == [1..n]."""
        if n is None:
            n = len(self._support)
        if self._support != tuple(range(1, n + 1)):
            raise GainGraphError("height array form needs support 1..n")
        return [self._h[v] for v in self._support]

    def restrict(self, support: Iterable[int]) -> HeightFunction:
        return HeightFunction.normalized({v: self._h[v] for v in support})

    @property
    def corner(self) -> int:
        top = max(self._h.values())
        return min(v for v, x in self._h.items() if x == top)

    def vertex_key(self, v: int) -> tuple[int, int]:
        return (-self._h[v], v)

    def vertex_order(self) -> list[int]:
        return sorted(self._support, key=self.vertex_key)

    def edge_key(self, e: GainedEdge) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b = self.vertex_key(e.lo), self.vertex_key(e.hi)
        return (a, b) if a < b else (b, a)

    def is_coherent(self, e: GainedEdge) -> bool:
        return self._h[e.hi] - self._h[e.lo] == e.gain


def _cmp(x, y) -> int:
    return (x > y) - (x < y)


def compare_vertices(h: HeightFunction, u: int, v: int) -> int:
    """-1, 0 or 1 as ``u`` is before, equal to or after ``v`` in O_h."""
    return _cmp(h.vertex_key(u), h.vertex_key(v))


def compare_edges(h: HeightFunction, e1: GainedEdge, e2: GainedEdge) -> int:
    """Lexicographic comparison of coherent edges on their O_h-sorted endpoints."""
    for e in (e1, e2):
        if not h.is_coherent(e):
            raise GainGraphError(f"edge {e} is not coherent with {h}")
    return _cmp(h.edge_key(e1), h.edge_key(e2))


def coherent_subgraph(graph: GainGraph, h: HeightFunction) -> GainGraph:
    """Phi[h]: the edges inside h's support whose gain equals the height difference."""
    edges = tuple(e for e in graph.induced(h.support) if h.is_coherent(e))
    return GainGraph(graph.n, edges)


def _adjacency(edges: Iterable[GainedEdge]) -> dict[int, list[GainedEdge]]:
    adj: dict[int, list[GainedEdge]] = {}
    for e in edges:
        adj.setdefault(e.lo, []).append(e)
        adj.setdefault(e.hi, []).append(e)
    return adj


def is_connected(support: Iterable[int], edges: Iterable[GainedEdge]) -> bool:
    verts = set(support)
    if not verts:
        return False
    adj = _adjacency(e for e in edges if e.lo in verts and e.hi in verts)
    start = min(verts)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for e in adj.get(u, ()):
            w = e.other(u)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def height_of_balanced_tree(
    tree: Iterable[GainedEdge], graph: GainGraph, support: Iterable[int] | None = None
) -> HeightFunction:
    """The unique normalized height function h_T with h(hi) - h(lo) = gain on every tree edge.

    ``support`` defaults to all vertices of ``graph``.
    """
    edges = list(tree)
    verts = set(graph.vertices) if support is None else set(support)
    if not verts:
        raise GainGraphError("tree support is empty")
    for e in edges:
        if e not in graph:
            raise GainGraphError(f"edge {e} is not in the graph")
        if e.lo not in verts or e.hi not in verts:
            raise GainGraphError(f"edge {e} leaves the support")
    if len(edges) != len(verts) - 1:
        raise GainGraphError(f"{len(edges)} edges cannot form a tree on {len(verts)} vertices")
    adj = _adjacency(edges)
    root = min(verts)
    rel = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e in adj.get(u, ()):
            w = e.other(u)
            if w not in rel:
                rel[w] = rel[u] + e.gain_from(u)
                queue.append(w)
    if len(rel) != len(verts):
        raise GainGraphError("edge set is not connected on its support")
    return HeightFunction.normalized(rel)


def _grow_heights(graph: GainGraph, support: Sequence[int]) -> Iterator[dict[int, int]]:
    """Relative height assignments on ``support`` reachable by coherent spanning growth.

    Starting from the smallest vertex at height 0, repeatedly pull in an
    unassigned vertex along an edge; every complete assignment is one whose
    coherent subgraph is connected on ``support``.
    """
    verts = frozenset(support)
    adj = _adjacency(graph.induced(verts))
    root = min(verts)
    start = ((root, 0),)
    seen = {start}
    frontier = [start]
    while frontier:
        state = frontier.pop()
        if len(state) == len(verts):
            yield dict(state)
            continue
        assigned = dict(state)
        for u, hu in state:
            for e in adj.get(u, ()):
                w = e.other(u)
                if w in assigned:
                    continue
                nxt = tuple(sorted(state + ((w, hu + e.gain_from(u)),)))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)


def enumerate_height_functions(graph: GainGraph, support: Iterable[int]) -> list[HeightFunction]:
    """All height functions on ``support`` whose selected subgraph is connected there.

    Results are sorted by their height vectors, so the order is deterministic.
    """
    supp = sorted(set(support))
    if not supp:
        raise GainGraphError("support must be nonempty")
    found = {HeightFunction.normalized(rel) for rel in _grow_heights(graph, supp)}
    return sorted(found, key=lambda h: [h[v] for v in supp])


def height_bound(graph: GainGraph, support_size: int) -> int:
    """Largest height any connected coherent height function on ``support_size`` vertices can reach."""
    return (support_size - 1) * graph.gain_range()
