"""Independent checks that share no code path with the corner recursion.

Two routes:

* brute force from the definitions: list every balanced circle, drop its
  smallest edge under a chosen total order, and test forests for containment;
* finite-field point counting: for a large enough prime q, the number of points
  of (Z/qZ)^n off every hyperplane ``x_hi - x_lo = g`` is chi(q), and n+1 such
  values pin down chi by interpolation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .gain import GainedEdge, GainGraph, GainGraphError, HeightFunction
from .polynomials import IntPolynomial

DEFAULT_MAX_N = 6
DEFAULT_MAX_POINTS = 10**7


class GuardError(RuntimeError):
    """The instance is larger than the configured exhaustive-search guard."""


@dataclass(frozen=True)
class BalancedCircle:
    """Vertices in traversal order and the edge joining each vertex to the next."""

    vertices: tuple[int, ...]
    edges: tuple[GainedEdge, ...]

    def signed_gain(self) -> int:
        return sum(e.gain_from(v) for v, e in zip(self.vertices, self.edges))


class EdgeOrder:
    """A total order on a finite edge set, stored as a rank table."""

    def __init__(self, ranked: Sequence[GainedEdge], name: str = "explicit"):
        self.edges = tuple(ranked)
        self.rank = {e: i for i, e in enumerate(self.edges)}
        if len(self.rank) != len(self.edges):
            raise GainGraphError("edge order lists an edge twice")
        self.name = name

    def __repr__(self) -> str:
        return f"EdgeOrder({self.name}, {len(self.edges)} edges)"

    def key(self, e: GainedEdge) -> int:
        return self.rank[e]

    def smallest(self, edges: Iterable[GainedEdge]) -> GainedEdge:
        return min(edges, key=self.rank.__getitem__)

    @classmethod
    def canonical(cls, graph: GainGraph) -> EdgeOrder:
        return cls(sorted(graph.edges), "canonical")

    @classmethod
    def reverse_canonical(cls, graph: GainGraph) -> EdgeOrder:
        return cls(sorted(graph.edges, reverse=True), "reverse")

    @classmethod
    def from_height(cls, graph: GainGraph, h: HeightFunction) -> EdgeOrder:
        """O_h on the endpoint pairs, ties between parallel edges broken by gain."""
        return cls(sorted(graph.edges, key=lambda e: (h.edge_key(e), e.gain)), "height")

    @classmethod
    def by_key(cls, graph: GainGraph, key: Callable[[GainedEdge], object], name: str = "keyed") -> EdgeOrder:
        return cls(sorted(graph.edges, key=key), name)


def _pair_edges(graph: GainGraph) -> dict[tuple[int, int], dict[int, GainedEdge]]:
    pairs: dict[tuple[int, int], dict[int, GainedEdge]] = {}
    for e in graph.edges:
        pairs.setdefault(e.ends, {})[e.gain] = e
    return pairs


def _vertex_cycles(n: int, present: set[tuple[int, int]]) -> Iterable[tuple[int, ...]]:
    """Simple vertex cycles of length >= 3, starting at their minimum, second vertex < last."""
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in sorted(present):
        adj[u].append(v)
        adj[v].append(u)

    def extend(path: list[int]):
        start, last = path[0], path[-1]
        for w in adj[last]:
            if w == start and len(path) >= 3 and path[1] < path[-1]:
                yield tuple(path)
            elif w > start and w not in path:
                path.append(w)
                yield from extend(path)
                path.pop()

    for s in range(1, n + 1):
        yield from extend([s])


def enumerate_balanced_circles(graph: GainGraph) -> list[BalancedCircle]:
    """Every circle with zero gain sum, once each, in canonical traversal."""
    pairs = _pair_edges(graph)
    out: list[BalancedCircle] = []
    # digons: two parallel edges, traversed lo -> hi -> lo; gain g1 - g2
    for (u, v), by_gain in sorted(pairs.items()):
        for g1, g2 in itertools.combinations(sorted(by_gain), 2):
            if g1 - g2 == 0:
                out.append(BalancedCircle((u, v), (by_gain[g1], by_gain[g2])))
    for cyc in _vertex_cycles(graph.n, set(pairs)):
        steps = list(zip(cyc, cyc[1:] + cyc[:1]))
        options = []
        for u, v in steps:
            by_gain = pairs[(min(u, v), max(u, v))]
            options.append([(e.gain_from(u), e) for _, e in sorted(by_gain.items())])
        # the closing edge is forced by the zero-sum requirement
        u_last, v_last = steps[-1]
        closing = pairs[(min(u_last, v_last), max(u_last, v_last))]
        for combo in itertools.product(*options[:-1]):
            need = -sum(g for g, _ in combo)
            canon_gain = need if u_last < v_last else -need
            e = closing.get(canon_gain)
            if e is not None:
                out.append(BalancedCircle(cyc, tuple(x for _, x in combo) + (e,)))
    return out


def broken_circuits(
    graph: GainGraph, order: EdgeOrder, circles: Sequence[BalancedCircle] | None = None
) -> list[frozenset[GainedEdge]]:
    if circles is None:
        circles = enumerate_balanced_circles(graph)
    out = set()
    for c in circles:
        low = order.smallest(c.edges)
        out.add(frozenset(e for e in c.edges if e != low))
    return sorted(out, key=lambda s: sorted(s))


def _is_forest(edges: Iterable[GainedEdge]) -> bool:
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for e in edges:
        ra, rb = find(e.lo), find(e.hi)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def is_nbc_bruteforce(
    forest: Iterable[GainedEdge],
    graph: GainGraph,
    order: EdgeOrder,
    circuits: Sequence[frozenset[GainedEdge]] | None = None,
) -> bool:
    """True iff no balanced circle minus its ``order``-smallest edge lies inside ``forest``."""
    f = frozenset(forest)
    for e in f:
        if e not in graph:
            raise GainGraphError(f"edge {e} is not in the graph")
    if not _is_forest(f):
        raise GainGraphError("edge set contains a circle; not a forest")
    if circuits is None:
        circuits = broken_circuits(graph, order)
    return not any(bc <= f for bc in circuits)


def count_nbc_bruteforce(
    graph: GainGraph, order: EdgeOrder, max_n: int = DEFAULT_MAX_N
) -> tuple[int, list[int]]:
    """Count NBC forests by backtracking over all forests; returns (total, profile by edge count).

    Broken circuits are indexed by their last edge in the scan so each is
    tested exactly once, when it could first become complete.
    """
    if graph.n > max_n:
        raise GuardError(f"n={graph.n} exceeds the exhaustive guard {max_n}")
    edges = list(graph.edges)
    index = {e: i for i, e in enumerate(edges)}
    closing: list[list[int]] = [[] for _ in edges]
    for bc in broken_circuits(graph, order):
        mask = 0
        for e in bc:
            mask |= 1 << index[e]
        closing[max(index[e] for e in bc)].append(mask)

    profile = [0] * graph.n
    n = graph.n

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def walk(i: int, chosen: int, size: int, parent: list[int]) -> None:
        if i == len(edges):
            profile[size] += 1
            return
        walk(i + 1, chosen, size, parent)
        e = edges[i]
        ra, rb = find(parent, e.lo), find(parent, e.hi)
        if ra == rb:
            return
        with_e = chosen | (1 << i)
        for bc in closing[i]:
            if bc & with_e == bc:
                return
        merged = parent.copy()
        merged[ra] = rb
        walk(i + 1, with_e, size + 1, merged)

    walk(0, 0, 0, list(range(n + 1)))
    return sum(profile), profile


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def min_admissible_prime(graph: GainGraph) -> int:
    """Primes strictly above n * max(|gain|, 1) + 1 are accepted."""
    return graph.n * max(graph.gain_range(), 1) + 1


def admissible_primes(graph: GainGraph, count: int) -> list[int]:
    out = []
    q = min_admissible_prime(graph) + 1
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q += 1
    return out


def finite_field_count(graph: GainGraph, q: int, max_points: int = DEFAULT_MAX_POINTS) -> int:
    """#{x in (Z/qZ)^n : x_hi - x_lo != gain (mod q) for every edge}.

    Translating every coordinate by the same constant preserves the set, so
    only points with x_1 = 0 are visited and the result is scaled by q.
    """
    if not is_prime(q):
        raise GainGraphError(f"{q} is not prime")
    if q <= min_admissible_prime(graph):
        raise GainGraphError(f"prime {q} is too small; need q > {min_admissible_prime(graph)}")
    if q**graph.n > max_points:
        raise GuardError(f"q^n = {q}^{graph.n} exceeds the point-count guard {max_points}")
    n = graph.n
    # forbidden[j]: (i, g) meaning x_j != x_i + g, for i < j
    forbidden: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for e in graph.edges:
        forbidden[e.hi].append((e.lo, e.gain))
    x = [0] * (n + 1)

    def fill(j: int) -> int:
        if j > n:
            return 1
        bad = {(x[i] + g) % q for i, g in forbidden[j]}
        total = 0
        for r in range(q):
            if r not in bad:
                x[j] = r
                total += fill(j + 1)
        return total

    return q * fill(2)


def interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (ascending) of the Lagrange polynomial through ``points``."""
    m = len(points)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k] -= c * xj
                nxt[k + 1] += c
            basis = nxt
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += c * yi / denom
    return coeffs


def charpoly_interpolated(
    graph: GainGraph, primes: Sequence[int] | None = None, max_points: int = DEFAULT_MAX_POINTS
) -> IntPolynomial:
    """chi(q) through finite-field counts at n+1 primes; extra primes are used as consistency checks."""
    n = graph.n
    if primes is None:
        primes = admissible_primes(graph, n + 2)
    primes = sorted(set(primes))
    if len(primes) < n + 1:
        raise GainGraphError(f"need at least {n + 1} distinct primes, got {len(primes)}")
    points = [(q, finite_field_count(graph, q, max_points)) for q in primes]
    coeffs = interpolate(points[: n + 1])
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError(f"interpolated coefficients are not integral: {coeffs}")
    chi = IntPolynomial([int(c) for c in coeffs])
    for q, value in points[n + 1 :]:
        if chi(q) != value:
            raise ArithmeticError(f"count {value} at q={q} disagrees with interpolant {chi}")
    return chi


def regions_from_charpoly(chi: IntPolynomial, n: int) -> int:
    """(-1)^n chi(-1)."""
    if chi.degree != n:
        raise GainGraphError(f"characteristic polynomial has degree {chi.degree}, expected {n}")
    return (-1) ** n * chi(-1)


def standard_orders(graph: GainGraph) -> list[EdgeOrder]:
    """Three orders for order-invariance checks, pairwise distinct once there are 3+ edges."""
    n = graph.n
    h = HeightFunction.normalized({v: (v * 7) % (n + 2) for v in graph.vertices})
    orders = [EdgeOrder.canonical(graph), EdgeOrder.reverse_canonical(graph), EdgeOrder.from_height(graph, h)]
    if orders[2].edges in (orders[0].edges, orders[1].edges):
        # small graphs: the height order can collapse onto one of the others
        rotated = graph.edges[1:] + graph.edges[:1]
        orders[2] = EdgeOrder(rotated, "rotated")
    return orders
