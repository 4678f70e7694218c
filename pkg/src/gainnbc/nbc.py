"""No-broken-circuit trees and forests of [a,b]-expansions.

Trees are produced one height function at a time.  For a fixed height
function ``h`` the NBC spanning trees of Phi[h] (with respect to O_h) are
built top-down from the corner: removing the corner ``c`` splits an NBC tree
into NBC subtrees, and ``c`` must be joined to each subtree through that
subtree's O_h-smallest vertex among those adjacent to ``c`` in Phi[h].
Forests are unions of such trees over a set partition of the vertices.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .gain import (
    GainedEdge,
    GainGraph,
    GainGraphError,
    HeightFunction,
    enumerate_height_functions,
    height_of_balanced_tree,
    is_connected,
)


class NotNbcError(GainGraphError):
    """Raised when an edge set fails the broken-circuit test it was claimed to pass."""


def set_partitions(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """All set partitions of ``items``; blocks are sorted and listed by their first element."""
    items = sorted(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for r in range(len(rest) + 1):
        for others in itertools.combinations(rest, r):
            block = (first,) + others
            remaining = [x for x in rest if x not in others]
            for tail in set_partitions(remaining):
                yield [block] + tail


@dataclass(frozen=True)
class NbcTree:
    """An NBC spanning tree of Phi[h] on ``support`` together with its height function."""

    support: tuple[int, ...]
    edges: tuple[GainedEdge, ...]
    height: HeightFunction

    def __post_init__(self) -> None:
        object.__setattr__(self, "support", tuple(sorted(self.support)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        if len(self.edges) != len(self.support) - 1 or not is_connected(self.support, self.edges):
            raise GainGraphError(f"edges {list(map(str, self.edges))} are not a tree on {self.support}")
        if self.height.support != self.support:
            raise GainGraphError("height function support differs from the tree support")
        for e in self.edges:
            if not self.height.is_coherent(e):
                raise GainGraphError(f"edge {e} is not coherent with {self.height}")

    @classmethod
    def certify(
        cls, edges: Iterable[GainedEdge], graph: GainGraph, support: Iterable[int] | None = None
    ) -> NbcTree:
        """Build a tree from raw edges, deriving its height and checking it is NBC in ``graph``."""
        edges = tuple(edges)
        supp = tuple(sorted(graph.vertices if support is None else support))
        h = height_of_balanced_tree(edges, graph, supp)
        tree = cls(supp, edges, h)
        if not is_nbc_tree(tree, graph):
            raise NotNbcError(f"tree {tree.edge_strings()} contains a broken circuit")
        return tree

    @property
    def corner(self) -> int:
        return self.height.corner

    def edge_strings(self) -> list[str]:
        return [str(e) for e in self.edges]

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "edges": self.edge_strings(),
            "height": [self.height[v] for v in self.support],
        }

    @classmethod
    def from_json(cls, obj: dict) -> NbcTree:
        supp = tuple(obj["support"])
        heights = obj["height"]
        if len(heights) != len(supp):
            raise GainGraphError("height array length differs from support size")
        h = HeightFunction(dict(zip(supp, heights)))
        return cls(supp, tuple(GainedEdge.parse(s) for s in obj["edges"]), h)


@dataclass(frozen=True)
class NbcForest:
    """NBC trees whose supports partition ``[1..n]``."""

    n: int
    components: tuple[NbcTree, ...]

    def __post_init__(self) -> None:
        comps = tuple(sorted(self.components, key=lambda t: t.support[0]))
        seen: list[int] = []
        for t in comps:
            seen.extend(t.support)
        if sorted(seen) != list(range(1, self.n + 1)):
            raise GainGraphError(f"component supports do not partition [1..{self.n}]")
        object.__setattr__(self, "components", comps)

    @cached_property
    def edges(self) -> tuple[GainedEdge, ...]:
        return tuple(sorted(e for t in self.components for e in t.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def to_json(self) -> list:
        return [t.to_json() for t in self.components]

    @classmethod
    def from_json(cls, obj: list, n: int | None = None) -> NbcForest:
        comps = tuple(NbcTree.from_json(c) for c in obj)
        if n is None:
            n = sum(len(c.support) for c in comps)
        return cls(n, comps)


@dataclass(frozen=True)
class EdgeCountProfile:
    """Number of NBC forests with ``j`` edges, for j = 0..n-1."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.n:
            raise ValueError(f"profile for n={self.n} needs {self.n} entries")
        if self.counts[0] != 1:
            raise ValueError("the empty forest must be counted exactly once")

    def __getitem__(self, j: int) -> int:
        return self.counts[j] if 0 <= j < self.n else 0

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_json(self) -> dict[str, str]:
        return {str(j): str(c) for j, c in enumerate(self.counts)}

    @classmethod
    def from_json(cls, obj: dict[str, str]) -> EdgeCountProfile:
        size = max(int(k) for k in obj) + 1
        counts = [0] * size
        for k, v in obj.items():
            counts[int(k)] = int(v)
        return cls(size, tuple(counts))


def _coherent_adjacency(graph: GainGraph, h: HeightFunction) -> dict[int, dict[int, GainedEdge]]:
    """For each vertex, the unique coherent edge to each coherent neighbour."""
    adj: dict[int, dict[int, GainedEdge]] = {v: {} for v in h.support}
    for e in graph.induced(h.support):
        if h.is_coherent(e):
            adj[e.lo][e.hi] = e
            adj[e.hi][e.lo] = e
    return adj


def _check_coherent_connected(graph: GainGraph, h: HeightFunction, support: Sequence[int]) -> None:
    if tuple(sorted(support)) != h.support:
        raise GainGraphError("height function must be defined exactly on the support")
    edges = [e for e in graph.induced(support) if h.is_coherent(e)]
    if not is_connected(support, edges):
        raise GainGraphError(f"Phi[h] is not connected on {tuple(support)} for {h}")


def _corner_of(block: Iterable[int], h: HeightFunction) -> int:
    return min(block, key=h.vertex_key)


def _attachments(
    rest: Sequence[int], corner: int, h: HeightFunction, adj: dict[int, dict[int, GainedEdge]]
) -> Iterator[list[tuple[tuple[int, ...], GainedEdge]]]:
    """Partitions of ``rest`` into Phi[h]-connected blocks, each paired with its edge to ``corner``.

    The edge to a block runs to the block's O_h-smallest vertex adjacent to the corner.
    """
    corner_adj = adj[corner]
    for partition in set_partitions(rest):
        pairs = []
        for block in partition:
            reach = [v for v in block if v in corner_adj]
            if not reach:
                break
            bset = set(block)
            inner = [e for v in block for w, e in adj[v].items() if w in bset and v < w]
            if not is_connected(block, inner):
                break
            v = min(reach, key=h.vertex_key)
            pairs.append((block, corner_adj[v]))
        else:
            yield pairs


def _tree_edge_sets(
    graph: GainGraph, h: HeightFunction, support: Sequence[int]
) -> list[tuple[GainedEdge, ...]]:
    adj = _coherent_adjacency(graph, h)
    memo: dict[tuple[int, ...], list[tuple[GainedEdge, ...]]] = {}

    def build(block: tuple[int, ...]) -> list[tuple[GainedEdge, ...]]:
        if block in memo:
            return memo[block]
        out: list[tuple[GainedEdge, ...]] = []
        if len(block) == 1:
            out.append(())
        else:
            c = _corner_of(block, h)
            rest = [v for v in block if v != c]
            for pairs in _attachments(rest, c, h, adj):
                links = tuple(e for _, e in pairs)
                for combo in itertools.product(*(build(sub) for sub, _ in pairs)):
                    out.append(tuple(sorted(links + tuple(itertools.chain.from_iterable(combo)))))
        memo[block] = out
        return out

    return build(tuple(sorted(support)))


def _tree_count(graph: GainGraph, h: HeightFunction, support: Sequence[int]) -> int:
    adj = _coherent_adjacency(graph, h)
    memo: dict[tuple[int, ...], int] = {}

    def count(block: tuple[int, ...]) -> int:
        if block not in memo:
            if len(block) == 1:
                memo[block] = 1
            else:
                c = _corner_of(block, h)
                rest = [v for v in block if v != c]
                total = 0
                for pairs in _attachments(rest, c, h, adj):
                    prod = 1
                    for sub, _ in pairs:
                        prod *= count(sub)
                    total += prod
                memo[block] = total
        return memo[block]

    return count(tuple(sorted(support)))


def enumerate_nbc_trees(
    graph: GainGraph, h: HeightFunction, support: Iterable[int] | None = None
) -> list[NbcTree]:
    """NBC spanning trees of Phi[h] on ``support`` with respect to O_h, sorted by edge list."""
    supp = tuple(sorted(h.support if support is None else support))
    _check_coherent_connected(graph, h, supp)
    trees = [NbcTree(supp, edges, h) for edges in _tree_edge_sets(graph, h, supp)]
    trees.sort(key=lambda t: t.edges)
    return trees


def count_nbc_trees(graph: GainGraph, h: HeightFunction, support: Iterable[int] | None = None) -> int:
    supp = tuple(sorted(h.support if support is None else support))
    _check_coherent_connected(graph, h, supp)
    return _tree_count(graph, h, supp)


def is_nbc_tree(tree: NbcTree, graph: GainGraph) -> bool:
    """Corner test: each subtree below the corner hangs from its O_h-smallest vertex adjacent to it.

    Adjacency is taken in Phi[h] built from ``graph``.  Holds for every gain
    interval, not only those where the bijection applies.
    """
    h = tree.height
    adj = _coherent_adjacency(graph, h)
    for e in tree.edges:
        if e not in graph:
            return False
    tree_adj: dict[int, set[int]] = {v: set() for v in tree.support}
    for e in tree.edges:
        tree_adj[e.lo].add(e.hi)
        tree_adj[e.hi].add(e.lo)

    def ok(block: frozenset[int]) -> bool:
        if len(block) == 1:
            return True
        c = _corner_of(block, h)
        seen = {c}
        for start in sorted(tree_adj[c] & block):
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in tree_adj[u]:
                    if w in block and w not in seen and w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            reach = [v for v in comp if v in adj[c]]
            if min(reach, key=h.vertex_key) != start:
                return False
            if not ok(frozenset(comp)):
                return False
        return True

    return ok(frozenset(tree.support))


def nbc_trees_on_block(graph: GainGraph, block: Iterable[int]) -> list[NbcTree]:
    """All NBC trees spanning ``block``, over every coherent height function on it."""
    supp = tuple(sorted(block))
    out: list[NbcTree] = []
    for h in enumerate_height_functions(graph, supp):
        out.extend(enumerate_nbc_trees(graph, h, supp))
    return out


def count_nbc_trees_on_block(graph: GainGraph, block: Iterable[int]) -> int:
    supp = tuple(sorted(block))
    return sum(_tree_count(graph, h, supp) for h in enumerate_height_functions(graph, supp))


def iter_nbc_sets(graph: GainGraph) -> Iterator[NbcForest]:
    """NBC spanning forests, one set partition of the vertices at a time."""
    cache: dict[tuple[int, ...], list[NbcTree]] = {}
    for partition in set_partitions(list(graph.vertices)):
        per_block = []
        for block in partition:
            if block not in cache:
                cache[block] = nbc_trees_on_block(graph, block)
            per_block.append(cache[block])
        for combo in itertools.product(*per_block):
            yield NbcForest(graph.n, combo)


def enumerate_nbc_sets(graph: GainGraph) -> list[NbcForest]:
    return list(iter_nbc_sets(graph))


def nbc_edge_profile(graph: GainGraph) -> EdgeCountProfile:
    """P_{n,j} counted without materializing forests.

    Dynamic programme over vertex subsets: the block holding the smallest
    remaining vertex is peeled off and weighted by its NBC tree count.
    """
    n = graph.n
    verts = list(graph.vertices)
    tree_counts: dict[int, int] = {}

    def block_count(mask: int) -> int:
        if mask not in tree_counts:
            block = [v for i, v in enumerate(verts) if mask >> i & 1]
            tree_counts[mask] = count_nbc_trees_on_block(graph, block)
        return tree_counts[mask]

    # poly[mask][j]: forests on the vertex subset ``mask`` with j edges
    poly: dict[int, list[int]] = {0: [1]}
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        acc = [0] * bin(mask).count("1")
        sub = rest
        while True:
            block = sub | low
            k = block_count(block)
            if k:
                inner = bin(block).count("1") - 1
                for j, c in enumerate(poly[mask ^ block]):
                    acc[j + inner] += k * c
            if sub == 0:
                break
            sub = (sub - 1) & rest
        poly[mask] = acc
    return EdgeCountProfile(n, tuple(poly[(1 << n) - 1]))


def dump_forests(forests: Iterable[NbcForest]) -> str:
    return json.dumps([f.to_json() for f in forests])
