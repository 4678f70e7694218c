"""NBC trees of K_n^{ab} (a + b in {0, 1}) versus (1-a, b)-rooted labelled trees.

An NBC tree is read from its corner downwards.  The canonical gain ``g`` of
the edge from a node to a child becomes the weight ``g`` when positive (the
child is smaller than its parent) and ``1 - g`` otherwise (the child is
larger).  Decoding reverses the rule and rebuilds the heights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .gain import GainedEdge, HeightFunction, expansion
from .nbc import NbcForest, NbcTree, NotNbcError, is_nbc_tree


class BijectionError(ValueError):
    pass


@dataclass(frozen=True)
class ABParams:
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if self.alpha < 0 or self.beta < 0:
            raise BijectionError(f"alpha and beta must be natural, got {self.alpha}, {self.beta}")

    @classmethod
    def from_gains(cls, a: int, b: int) -> ABParams:
        return cls(1 - a, b)

    def allowed(self, parent: int, child: int) -> int:
        """Number of admissible weights on the edge parent -> child."""
        return self.alpha if parent < child else self.beta


@dataclass(frozen=True)
class ABTree:
    """Rooted labelled tree; ``edges`` holds (parent, child, weight) sorted by child."""

    root: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        edges = tuple(sorted((tuple(e) for e in self.edges), key=lambda e: e[1]))
        object.__setattr__(self, "edges", edges)
        children = [c for _, c, _ in edges]
        if len(set(children)) != len(children):
            raise BijectionError("a vertex has two parents")
        if self.root in children:
            raise BijectionError("the root cannot have a parent")
        parent = {c: p for p, c, _ in edges}
        for c in children:
            seen = {c}
            v = c
            while v in parent:
                v = parent[v]
                if v in seen:
                    raise BijectionError("parent map has a cycle")
                seen.add(v)
            if v != self.root:
                raise BijectionError(f"vertex {c} does not descend from the root {self.root}")

    @classmethod
    def from_parents(cls, root: int, parent: Mapping[int, int], weight: Mapping[int, int]) -> ABTree:
        return cls(root, tuple((p, c, weight[c]) for c, p in parent.items()))

    @property
    def parent(self) -> dict[int, int]:
        return {c: p for p, c, _ in self.edges}

    @property
    def weight(self) -> dict[int, int]:
        return {c: w for _, c, w in self.edges}

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted([self.root] + [c for _, c, _ in self.edges]))

    def children(self, v: int) -> list[int]:
        return [c for p, c, _ in self.edges if p == v]

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "edges": [{"parent": p, "child": c, "weight": w} for p, c, w in self.edges],
        }

    @classmethod
    def from_json(cls, obj: dict) -> ABTree:
        return cls(int(obj["root"]), tuple((int(e["parent"]), int(e["child"]), int(e["weight"])) for e in obj["edges"]))


@dataclass(frozen=True)
class ABForest:
    n: int
    trees: tuple[ABTree, ...]

    def __post_init__(self) -> None:
        trees = tuple(sorted(self.trees, key=lambda t: t.support[0]))
        verts = sorted(v for t in trees for v in t.support)
        if verts != list(range(1, self.n + 1)):
            raise BijectionError(f"tree supports do not partition [1..{self.n}]")
        object.__setattr__(self, "trees", trees)

    def to_json(self) -> list:
        return [t.to_json() for t in self.trees]

    @classmethod
    def from_json(cls, obj: list, n: int | None = None) -> ABForest:
        trees = tuple(ABTree.from_json(t) for t in obj)
        if n is None:
            n = sum(len(t.support) for t in trees)
        return cls(n, trees)


@dataclass(frozen=True)
class RootedTree:
    """Unweighted rooted tree, stored as sorted (parent, child) pairs."""

    root: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e[1])))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted([self.root] + [c for _, c in self.edges]))

    def is_increasing(self) -> bool:
        return all(p < c for p, c in self.edges)

    def undirected(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)


def validate_ab_tree(t: ABTree, params: ABParams) -> tuple[bool, list[str]]:
    """Check every weight against its interval; the diagnostics name each bad edge."""
    problems = []
    for p, c, w in t.edges:
        top = params.allowed(p, c)
        side = "parent<child" if p < c else "parent>child"
        if not 1 <= w <= top:
            problems.append(f"edge {p}->{c} ({side}) has weight {w} outside [1,{top}]")
    return (not problems, problems)


def _check_gains(a: int, b: int) -> None:
    if a > b:
        raise BijectionError(f"empty gain interval [{a},{b}]")
    if a + b not in (0, 1):
        raise BijectionError(f"the bijection needs a + b in {{0, 1}}, got a={a}, b={b}")


def _ambient(tree_support: Iterable[int], a: int, b: int):
    return expansion(max(tree_support), a, b)


def encode_tree(t: NbcTree, a: int, b: int) -> ABTree:
    _check_gains(a, b)
    graph = _ambient(t.support, a, b)
    if not is_nbc_tree(t, graph):
        raise NotNbcError(f"{t.edge_strings()} is not an NBC tree of K^{a},{b}")
    adj: dict[int, list[GainedEdge]] = {v: [] for v in t.support}
    for e in t.edges:
        adj[e.lo].append(e)
        adj[e.hi].append(e)
    root = t.corner
    triples = []
    stack = [root]
    seen = {root}
    while stack:
        u = stack.pop()
        for e in adj[u]:
            v = e.other(u)
            if v in seen:
                continue
            seen.add(v)
            stack.append(v)
            triples.append((u, v, e.gain if e.gain > 0 else 1 - e.gain))
    out = ABTree(root, tuple(triples))
    ok, problems = validate_ab_tree(out, ABParams.from_gains(a, b))
    if not ok:
        raise AssertionError(f"encoding left the weight intervals: {problems}")
    return out


def decode_tree(t: ABTree, a: int, b: int) -> NbcTree:
    _check_gains(a, b)
    ok, problems = validate_ab_tree(t, ABParams.from_gains(a, b))
    if not ok:
        raise BijectionError("; ".join(problems))
    rel = {t.root: 0}
    edges = []
    pending = [t.root]
    while pending:
        p = pending.pop()
        for c in t.children(p):
            w = t.weight[c]
            if p < c:
                g = 1 - w
                rel[c] = rel[p] + g
                edges.append(GainedEdge(p, c, g))
            else:
                rel[c] = rel[p] - w
                edges.append(GainedEdge(c, p, w))
            pending.append(c)
    h = HeightFunction.normalized(rel)
    if h.corner != t.root:
        raise AssertionError(f"decoded root {t.root} is not the corner {h.corner}")
    tree = NbcTree(t.support, tuple(edges), h)
    if not is_nbc_tree(tree, _ambient(t.support, a, b)):
        raise AssertionError(f"decoded tree {tree.edge_strings()} is not NBC")
    return tree


def encode_forest(f: NbcForest, a: int, b: int) -> ABForest:
    return ABForest(f.n, tuple(encode_tree(t, a, b) for t in f.components))


def decode_forest(f: ABForest, a: int, b: int) -> NbcForest:
    return NbcForest(f.n, tuple(decode_tree(t, a, b) for t in f.trees))


def _parent_maps(vertices: tuple[int, ...], root: int) -> Iterator[dict[int, int]]:
    """Every parent function on ``vertices`` that makes a tree rooted at ``root``."""
    others = [v for v in vertices if v != root]
    for choice in itertools.product(vertices, repeat=len(others)):
        parent = dict(zip(others, choice))
        if any(parent[v] == v for v in others):
            continue
        ok = True
        for v in others:
            steps = 0
            while v != root:
                v = parent[v]
                steps += 1
                if steps > len(others):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield parent


def _weighted(root: int, parent: dict[int, int], params: ABParams) -> Iterator[ABTree]:
    kids = sorted(parent)
    ranges = [range(1, params.allowed(parent[c], c) + 1) for c in kids]
    for ws in itertools.product(*ranges):
        yield ABTree(root, tuple((parent[c], c, w) for c, w in zip(kids, ws)))


def enumerate_ab_trees(vertices: Iterable[int], params: ABParams) -> list[ABTree]:
    """All (alpha, beta)-rooted labelled trees on ``vertices``, by exhaustive parent maps."""
    verts = tuple(sorted(vertices))
    out = []
    for root in verts:
        for parent in _parent_maps(verts, root):
            out.extend(_weighted(root, parent, params))
    return out


def enumerate_ab_forests(n: int, params: ABParams) -> list[ABForest]:
    """All (alpha, beta)-rooted labelled forests on [1..n]."""
    from .nbc import set_partitions

    out = []
    cache: dict[tuple[int, ...], list[ABTree]] = {}
    for partition in set_partitions(list(range(1, n + 1))):
        for block in partition:
            if block not in cache:
                cache[block] = enumerate_ab_trees(block, params)
        for combo in itertools.product(*(cache[b] for b in partition)):
            out.append(ABForest(n, combo))
    return out


def braid_correspondence(f: NbcForest, a: int = 0, b: int = 0) -> RootedTree:
    """NBC forest of K_n^{00} -> increasing tree on {0, ..., n} rooted at 0."""
    if (a, b) != (0, 0):
        raise BijectionError("braid correspondence needs a = b = 0")
    coded = encode_forest(f, 0, 0)
    edges = [(0, t.root) for t in sorted(coded.trees, key=lambda t: t.root)]
    for t in coded.trees:
        edges.extend((p, c) for p, c, _ in t.edges)
    return RootedTree(0, tuple(edges))


def shi_correspondence(f: NbcForest, a: int = 0, b: int = 1) -> RootedTree:
    """NBC forest of K_n^{01} -> labelled tree on {1, ..., n+1} rooted at n+1."""
    if (a, b) != (0, 1):
        raise BijectionError("Shi correspondence needs a = 0, b = 1")
    coded = encode_forest(f, 0, 1)
    top = f.n + 1
    edges = [(top, t.root) for t in sorted(coded.trees, key=lambda t: t.root)]
    for t in coded.trees:
        edges.extend((p, c) for p, c, _ in t.edges)
    return RootedTree(top, tuple(edges))


def increasing_trees(n: int) -> list[RootedTree]:
    """Trees on {0..n} where every parent is smaller than its child: each v picks a parent < v."""
    out = []
    for choice in itertools.product(*(range(v) for v in range(1, n + 1))):
        out.append(RootedTree(0, tuple((p, c) for c, p in zip(range(1, n + 1), choice))))
    return out


def labelled_trees(vertices: Iterable[int], root: int) -> list[RootedTree]:
    verts = tuple(sorted(vertices))
    return [
        RootedTree(root, tuple((p, c) for c, p in parent.items()))
        for parent in _parent_maps(verts, root)
    ]


__all__ = [
    "ABForest",
    "ABParams",
    "ABTree",
    "BijectionError",
    "RootedTree",
    "braid_correspondence",
    "decode_forest",
    "decode_tree",
    "encode_forest",
    "encode_tree",
    "enumerate_ab_forests",
    "enumerate_ab_trees",
    "increasing_trees",
    "labelled_trees",
    "shi_correspondence",
    "validate_ab_tree",
]
