import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gainnbc.gain import (
    ExpansionParams,
    GainedEdge,
    GainGraph,
    GainGraphError,
    HeightFunction,
    build_expansion,
    circle_gain,
    coherent_subgraph,
    compare_edges,
    compare_vertices,
    enumerate_height_functions,
    expansion,
    height_bound,
    height_of_balanced_tree,
    is_balanced,
    is_connected,
)

E = GainedEdge.parse


def edges(*texts):
    return [E(t) for t in texts]


class TestEdges:
    def test_parse_and_format(self):
        e = E("-2(1,3)")
        assert (e.lo, e.hi, e.gain) == (1, 3, -2)
        assert str(e) == "-2(1,3)"

    def test_reversed_orientation_negates_gain(self):
        assert GainedEdge.oriented(3, 1, 2) == GainedEdge(1, 3, -2)
        assert E("2(1,3)").gain_from(3) == -2

    @pytest.mark.parametrize("text", ["1(2,1)", "0(1,1)", "x(1,2)", "1(1 2)"])
    def test_bad_edges(self, text):
        with pytest.raises(GainGraphError):
            E(text)

    def test_loop_rejected(self):
        with pytest.raises(GainGraphError):
            GainedEdge(2, 2, 0)

    def test_duplicate_edges_rejected(self):
        with pytest.raises(GainGraphError):
            GainGraph(3, (E("1(1,2)"), E("1(1,2)")))

    def test_parallel_edges_with_distinct_gains_allowed(self):
        g = GainGraph(2, (E("1(1,2)"), E("0(1,2)")))
        assert [str(e) for e in g.edges] == ["0(1,2)", "1(1,2)"]

    def test_text_format_roundtrip(self):
        g = expansion(3, -1, 1)
        text = g.to_text()
        assert text.splitlines()[0] == "n=3"
        assert GainGraph.from_text(text) == g

    def test_text_format_needs_header(self):
        with pytest.raises(GainGraphError):
            GainGraph.from_text("1(1,2)\n")


class TestExpansion:
    @pytest.mark.parametrize(
        "n,a,b,count",
        [(4, 0, 1, 12), (1, 0, 0, 0), (3, -1, 1, 9), (5, -1, 2, 40)],
    )
    def test_edge_count(self, n, a, b, count):
        g = build_expansion(ExpansionParams(n, a, b))
        assert len(g.edges) == count == (b - a + 1) * n * (n - 1) // 2

    def test_catalan_gains_per_pair(self):
        g = expansion(3, -1, 1)
        for i, j in itertools.combinations(range(1, 4), 2):
            assert sorted(g.gains_between(i, j)) == [-1, 0, 1]

    @pytest.mark.parametrize("n,a,b", [(0, 0, 0), (3, 1, 0)])
    def test_invalid_params(self, n, a, b):
        with pytest.raises(GainGraphError):
            ExpansionParams(n, a, b)

    def test_presets(self):
        assert ExpansionParams.preset("catalan", 4) == ExpansionParams(4, -1, 1)
        assert ExpansionParams.preset("linial", 2) == ExpansionParams(2, 1, 1)
        with pytest.raises(GainGraphError):
            ExpansionParams.preset("nope", 2)


class TestCircles:
    def test_zero_triangle(self):
        c = edges("0(1,2)", "0(2,3)", "0(1,3)")
        assert circle_gain(c) == 0
        assert is_balanced(c)

    def test_unit_triangle_unbalanced(self):
        assert circle_gain(edges("1(1,2)", "1(2,3)", "1(1,3)")) == 1

    def test_mixed_triangle_balanced(self):
        assert circle_gain(edges("1(1,2)", "0(2,3)", "1(1,3)")) == 0

    def test_direction_flips_sign(self):
        c = edges("1(1,2)", "1(2,3)", "1(1,3)")
        assert circle_gain(list(reversed(c))) == -1

    def test_digon(self):
        assert circle_gain(edges("0(1,2)", "1(1,2)")) == -1
        assert circle_gain(edges("0(1,2)", "1(1,2)"), start=2) == 1

    def test_edges_must_be_in_graph(self):
        with pytest.raises(GainGraphError):
            circle_gain(edges("0(1,2)", "0(2,3)", "0(1,3)"), graph=expansion(3, 1, 1))

    @pytest.mark.parametrize(
        "seq",
        [
            ("0(1,2)",),
            ("0(1,2)", "0(2,3)"),
            ("0(1,2)", "0(3,4)", "0(1,4)"),
            ("0(1,2)", "0(2,3)", "0(1,3)", "0(1,4)"),
        ],
    )
    def test_not_a_circle(self, seq):
        with pytest.raises(GainGraphError):
            circle_gain(edges(*seq))


SAMPLE_H = HeightFunction.from_list([0, 1, 0, 1])


class TestHeights:
    def test_height_function_needs_zero(self):
        with pytest.raises(GainGraphError):
            HeightFunction({1: 1, 2: 2})
        with pytest.raises(GainGraphError):
            HeightFunction({})

    def test_corner_of_sample(self):
        assert SAMPLE_H.corner == 2

    def test_tree_height_sample(self):
        g = expansion(4, 0, 1)
        h = height_of_balanced_tree(edges("1(1,2)", "0(1,3)", "1(3,4)"), g)
        assert h.to_list() == [0, 1, 0, 1]
        assert h.corner == 2

    def test_tree_height_zero(self):
        h = height_of_balanced_tree(edges("0(1,2)"), expansion(2, 0, 0))
        assert h.to_list() == [0, 0] and h.corner == 1

    def test_tree_height_negative_gain(self):
        h = height_of_balanced_tree(edges("-1(1,2)"), expansion(2, -1, 1))
        assert h.to_list() == [1, 0] and h.corner == 1

    def test_tree_height_rejects_non_trees(self):
        g = expansion(3, 0, 1)
        with pytest.raises(GainGraphError):
            height_of_balanced_tree(edges("0(1,2)", "0(2,3)", "0(1,3)"), g)
        with pytest.raises(GainGraphError):
            height_of_balanced_tree(edges("0(1,2)"), g)
        with pytest.raises(GainGraphError):
            height_of_balanced_tree([], g, support=[])

    def test_singleton_support(self):
        h = height_of_balanced_tree([], expansion(3, 0, 1), support=[2])
        assert h.support == (2,) and h[2] == 0


class TestCoherence:
    def test_sample_has_five_edges(self):
        sub = coherent_subgraph(expansion(4, 0, 1), SAMPLE_H)
        assert sorted(map(str, sub.edges)) == sorted(["1(1,2)", "0(1,3)", "1(1,4)", "0(2,4)", "1(3,4)"])

    def test_sample_by_definition(self):
        # independent re-derivation: test h(hi) - h(lo) == gain on each of the 12 edges
        h = [None, 0, 1, 0, 1]
        kept = [e for e in expansion(4, 0, 1).edges if h[e.hi] - h[e.lo] == e.gain]
        assert kept == list(coherent_subgraph(expansion(4, 0, 1), SAMPLE_H).edges)

    def test_flat_height_keeps_zero_gains(self):
        g = expansion(4, -1, 2)
        sub = coherent_subgraph(g, HeightFunction.from_list([0, 0, 0, 0]))
        assert sub.edges == tuple(e for e in g.edges if e.gain == 0)


class TestOrders:
    def test_sample_vertex_order(self):
        assert SAMPLE_H.vertex_order() == [2, 4, 1, 3]
        assert compare_vertices(SAMPLE_H, 2, 4) == -1
        assert compare_vertices(SAMPLE_H, 3, 1) == 1
        assert compare_vertices(SAMPLE_H, 3, 3) == 0

    def test_sample_edge_order(self):
        coherent = list(coherent_subgraph(expansion(4, 0, 1), SAMPLE_H).edges)
        ranked = sorted(coherent, key=SAMPLE_H.edge_key)
        assert [str(e) for e in ranked] == ["0(2,4)", "1(1,2)", "1(1,4)", "1(3,4)", "0(1,3)"]
        for x, y in zip(ranked, ranked[1:]):
            assert compare_edges(SAMPLE_H, x, y) == -1

    def test_compare_edges_requires_coherence(self):
        with pytest.raises(GainGraphError):
            compare_edges(SAMPLE_H, E("0(1,2)"), E("0(2,4)"))

    def test_flat_height_gives_natural_order(self):
        assert HeightFunction.from_list([0] * 5).vertex_order() == [1, 2, 3, 4, 5]

    @given(st.lists(st.integers(0, 4), min_size=1, max_size=6).filter(lambda xs: 0 in xs))
    def test_vertex_order_is_strict_total(self, heights):
        h = HeightFunction.from_list(heights)
        vs = h.support
        for u, v in itertools.product(vs, vs):
            assert (compare_vertices(h, u, v) == 0) == (u == v)
            assert compare_vertices(h, u, v) == -compare_vertices(h, v, u)
        for u, v, w in itertools.product(vs, vs, vs):
            if compare_vertices(h, u, v) < 0 and compare_vertices(h, v, w) < 0:
                assert compare_vertices(h, u, w) < 0

    @given(st.lists(st.integers(0, 3), min_size=2, max_size=5).filter(lambda xs: 0 in xs))
    def test_edge_order_is_strict_total_on_coherent_edges(self, heights):
        h = HeightFunction.from_list(heights)
        coherent = coherent_subgraph(expansion(len(heights), -2, 2), h).edges
        keys = [h.edge_key(e) for e in coherent]
        assert len(set(keys)) == len(keys)


def _brute_heights(graph, support):
    """Every vector in [0, bound]^|S| attaining 0 whose coherent subgraph is connected on S."""
    bound = height_bound(graph, len(support))
    out = set()
    for vec in itertools.product(range(bound + 1), repeat=len(support)):
        if 0 not in vec:
            continue
        h = HeightFunction(dict(zip(support, vec)))
        if is_connected(support, [e for e in graph.induced(support) if h.is_coherent(e)]):
            out.add(h)
    return out


class TestHeightEnumeration:
    def test_braid_two(self):
        assert [h.to_list() for h in enumerate_height_functions(expansion(2, 0, 0), [1, 2])] == [[0, 0]]

    def test_shi_two(self):
        assert [h.to_list() for h in enumerate_height_functions(expansion(2, 0, 1), [1, 2])] == [[0, 0], [0, 1]]

    def test_shi_four_contains_sample(self):
        assert SAMPLE_H in enumerate_height_functions(expansion(4, 0, 1), [1, 2, 3, 4])

    def test_edgeless_support(self):
        assert enumerate_height_functions(expansion(3, 0, 1), [2]) == [HeightFunction({2: 0})]

    def test_empty_support(self):
        with pytest.raises(GainGraphError):
            enumerate_height_functions(expansion(3, 0, 1), [])

    @pytest.mark.parametrize(
        "n,a,b,support",
        [
            (3, 0, 0, (1, 2, 3)),
            (3, 0, 1, (1, 2, 3)),
            (4, 0, 1, (1, 2, 3, 4)),
            (4, -1, 1, (1, 2, 3, 4)),
            (3, -1, 2, (1, 2, 3)),
            (4, 1, 1, (1, 2, 3, 4)),
            (5, -1, 1, (1, 3, 5)),
        ],
    )
    def test_matches_bruteforce(self, n, a, b, support):
        g = expansion(n, a, b)
        found = enumerate_height_functions(g, support)
        assert len(found) == len(set(found))
        assert all(min(x for _, x in h.items()) == 0 for h in found)
        assert set(found) == _brute_heights(g, support)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 4), st.integers(-2, 1), st.integers(0, 2))
    def test_coherent_edges_have_gains_in_range(self, n, a, width):
        b = a + width
        g = expansion(n, a, b)
        for h in enumerate_height_functions(g, range(1, n + 1)):
            for i, j in itertools.combinations(range(1, n + 1), 2):
                gap = h[j] - h[i]
                coherent = [e for e in g.edges if e.ends == (i, j) and h.is_coherent(e)]
                assert len(coherent) == (1 if a <= gap <= b else 0)

    def test_tree_heights_select_the_tree(self):
        g = expansion(4, -1, 2)
        for tree in itertools.combinations(g.edges, 3):
            if not is_connected(range(1, 5), tree):
                continue
            h = height_of_balanced_tree(tree, g)
            assert set(tree) <= set(coherent_subgraph(g, h).edges)
