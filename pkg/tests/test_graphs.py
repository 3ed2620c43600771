import random

import pytest
from hypothesis import given

from factorlab.core import FormatError
from factorlab.graphs import (
    MultiGraph,
    components,
    delete_set,
    emit_graph,
    induced,
    mask_of,
    parse_graph,
)
from factorlab.constructions import complete, cycle, path, petersen, star

from .strategies import multigraphs, simple_graphs


def test_parse_edgelist_path():
    g = parse_graph("3 2\n0 1\n1 2\n", "edgelist")
    assert g.n == 3 and g.edges == ((0, 1), (1, 2))


def test_parse_graph6_k4():
    g = parse_graph(emit_graph(complete(4), "graph6"), "graph6")
    assert g.n == 4 and len(g.edges) == 6


def test_parse_edgelist_loop_rejected():
    with pytest.raises(FormatError):
        parse_graph("3 1\n2 2\n", "edgelist")


def test_parse_edgelist_bad_header():
    with pytest.raises(FormatError):
        parse_graph("3\n", "edgelist")


def test_parse_edgelist_out_of_range():
    with pytest.raises(FormatError):
        parse_graph("2 1\n0 5\n", "edgelist")


def test_emit_graph6_rejects_multigraph():
    g = MultiGraph(2, [(0, 1), (0, 1)])
    with pytest.raises(FormatError):
        emit_graph(g, "graph6")


def test_emit_edgelist_line_count():
    text = emit_graph(cycle(5), "edgelist")
    lines = text.strip().splitlines()
    assert lines[0] == "5 5" and len(lines) == 6


@given(multigraphs())
def test_edgelist_round_trip(g):
    assert parse_graph(emit_graph(g, "edgelist"), "edgelist") == g


@given(simple_graphs(max_n=12))
def test_graph6_round_trip(g):
    assert parse_graph(emit_graph(g, "graph6"), "graph6") == g


@given(multigraphs())
def test_degree_sum_is_twice_edges(g):
    assert sum(g.deg) == 2 * len(g.edges)


def test_components_k4():
    st = components(complete(4))
    assert (st.omega, st.iso, st.odd) == (1, 0, 0)


def test_components_edgeless():
    st = components(MultiGraph(3, []))
    assert (st.omega, st.iso, st.odd) == (3, 3, 3)
    assert len(st.stars) == 3


def test_components_boundary_path():
    st = components(path(3), B=[1])
    assert st.omega == 2 and st.iso == 2
    assert st.boundary == (1, 1)


def test_delete_k4_gives_k3():
    sub, relabel = delete_set(complete(4), [0])
    assert sub == complete(3)
    assert relabel == {1: 0, 2: 1, 3: 2}


def test_delete_empty_set_is_identity():
    g = petersen()
    sub, relabel = delete_set(g, [])
    assert sub == g and relabel == {v: v for v in range(10)}


def test_petersen_minus_closed_neighborhood():
    g = petersen()
    closed = [0] + sorted({u for u in range(10) if (g.adj[0] >> u) & 1})
    sub, _ = delete_set(g, closed)
    assert sub.n == 6
    assert len(sub.component_masks()) == 1


def test_induced_mirrors_delete():
    g = complete(4)
    sub, _ = induced(g, [0, 1, 2])
    assert sub == complete(3)
    assert induced(g, [])[0] == MultiGraph(0, [])
    two, _ = induced(cycle(5), [0, 1])
    assert two == MultiGraph(2, [(0, 1)])


def test_star_classification_against_brute_force():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
        if rng.random() < 0.3 and edges:
            edges.append(edges[0])
        g = MultiGraph(n, edges)
        st = components(g)
        star_masks = {comp for comp, _ in st.stars}
        for comp in st.parts:
            vs = [v for v in range(n) if (comp >> v) & 1]
            heavy = [v for v in vs if g.within_degree(v, comp) > 1]
            assert (comp in star_masks) == (len(heavy) <= 1)


def test_star_centers_shapes():
    st = components(MultiGraph(1, []))
    assert st.stars == ((1, 1),)
    st = components(path(2))
    assert st.stars[0][1] == mask_of([0, 1])
    st = components(star(4))
    assert st.stars[0][1] == mask_of([0])
    assert not components(cycle(3)).stars


@given(simple_graphs(max_n=7))
def test_omega_drops_by_at_most_one_per_vertex(g):
    rng = random.Random(g.n * 1009 + len(g.edges))
    full = g.full_mask
    for _ in range(10):
        s_mask = rng.randrange(full + 1) & full
        omega = len(g.component_masks(full & ~s_mask))
        candidates = [v for v in range(g.n) if not (s_mask >> v) & 1]
        if not candidates:
            continue
        v = rng.choice(candidates)
        omega2 = len(g.component_masks(full & ~(s_mask | (1 << v))))
        assert omega2 >= omega - 1


def test_edge_multiset_is_sorted_and_canonical():
    a = MultiGraph(3, [(2, 1), (1, 0), (2, 1)])
    b = MultiGraph(3, [(1, 2), (1, 2), (0, 1)])
    assert a == b and hash(a) == hash(b)
    assert a.edges == ((0, 1), (1, 2), (1, 2))


def test_graph6_string_identity():
    # graph6 encodes the upper triangle uniquely, so parse-then-emit returns
    # the exact input string
    petersen_g6 = "IheA@GUAo"
    assert emit_graph(parse_graph(petersen_g6, "graph6"), "graph6") == petersen_g6


def test_edgelist_emit_is_canonical_fixed_point():
    scrambled = "3 3\n2 1\n0 1\n1 2\n"
    text = emit_graph(parse_graph(scrambled, "edgelist"), "edgelist")
    assert text == "3 3\n0 1\n1 2\n1 2\n"
    assert emit_graph(parse_graph(text, "edgelist"), "edgelist") == text
