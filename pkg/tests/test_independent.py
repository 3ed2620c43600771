import math
import random
from fractions import Fraction

import pytest
from hypothesis import given

from factorlab.core import PreconditionError
from factorlab.graphs import MultiGraph, VertexFn
from factorlab.constructions import complete, cycle, path, star
from factorlab.independent import (
    caro_wei,
    greedy_color_classes,
    greedy_weighted_independent,
    surplus_independent,
)

from .conftest import random_simple
from .oracles import brute_independence_number
from .strategies import weighted_graphs


def _is_independent(g, vs):
    return all(not (g.adj[u] >> v) & 1 for u in vs for v in vs if u != v)


def _is_maximal(g, vs):
    closed = set(vs)
    for v in vs:
        closed.update(u for u in range(g.n) if (g.adj[v] >> u) & 1)
    return closed == set(range(g.n))


def test_greedy_c5_unit_weights():
    rep = greedy_weighted_independent(cycle(5), VertexFn.constant(5, 1))
    assert len(rep.set) == 2
    assert rep.lhs == 5 and rep.rhs == 6


def test_greedy_edgeless_takes_everything():
    g = MultiGraph(4, [])
    phi = VertexFn.of([1, 2, 3, 4])
    rep = greedy_weighted_independent(g, phi)
    assert rep.set == frozenset(range(4))
    assert rep.lhs == rep.rhs == 10


def test_greedy_star_heavy_hub():
    g = star(4)
    phi = VertexFn.of([10, 1, 1, 1, 1])
    rep = greedy_weighted_independent(g, phi)
    assert rep.set == frozenset([0])
    assert rep.lhs == 14 and rep.rhs == 50


def test_greedy_rejects_negative_weights():
    with pytest.raises(PreconditionError):
        greedy_weighted_independent(cycle(4), VertexFn.of([1, 1, 1, -1]))


@given(weighted_graphs())
def test_greedy_certificate_inequality(gw):
    g, phi = gw
    rep = greedy_weighted_independent(g, phi)
    assert rep.lhs <= rep.rhs
    assert _is_independent(g, rep.set) and _is_maximal(g, rep.set)


def test_surplus_zero_weights():
    g = cycle(4)
    d = VertexFn.constant(4, 2)
    rep = surplus_independent(g, d, d)
    assert rep.lhs == rep.rhs == 0
    assert _is_maximal(g, rep.set)


def test_surplus_c4_forces_two_vertices():
    g = cycle(4)
    rep = surplus_independent(g, VertexFn.constant(4, 3), VertexFn.constant(4, 2))
    assert rep.lhs == 4
    assert rep.rhs == 3 * len(rep.set)
    assert len(rep.set) >= 2


def test_surplus_k3_half():
    g = complete(3)
    rep = surplus_independent(g, VertexFn.constant(3, Fraction(5, 2)), VertexFn.constant(3, 2))
    assert rep.lhs == Fraction(3, 2)
    assert len(rep.set) == 1 and rep.rhs == Fraction(3, 2)


def test_surplus_precondition():
    with pytest.raises(PreconditionError):
        surplus_independent(cycle(4), VertexFn.constant(4, 1), VertexFn.constant(4, 2))


def test_caro_wei_values(petersen_graph):
    assert caro_wei(cycle(5)) == Fraction(5, 3)
    assert caro_wei(complete(6)) == 1
    assert caro_wei(petersen_graph) == Fraction(5, 2)
    assert brute_independence_number(10, petersen_graph.edges) == 4


def test_caro_wei_greedy_reaches_ceiling():
    rng = random.Random(77)
    for _ in range(200):
        g = random_simple(rng, max_n=8)
        bound = caro_wei(g)
        phi = VertexFn.of([Fraction(1, 1 + g.deg[v]) for v in range(g.n)])
        rep = greedy_weighted_independent(g, phi)
        assert len(rep.set) >= math.ceil(bound)
        assert brute_independence_number(g.n, g.edges) >= bound


def test_coloring_c5_three_classes():
    classes = greedy_color_classes(cycle(5), 3)
    assert len(classes) == 3
    covered = set().union(*classes)
    assert covered == set(range(5))


def test_coloring_edgeless_single_class():
    classes = greedy_color_classes(MultiGraph(4, []), 1)
    assert classes[0] == frozenset(range(4))


def test_coloring_path_bipartition():
    classes = greedy_color_classes(path(4), 2)
    assert classes[0] == frozenset([0, 2]) and classes[1] == frozenset([1, 3])


def test_coloring_class_budget_enforced():
    with pytest.raises(PreconditionError):
        greedy_color_classes(complete(3), 2)


def test_coloring_classes_always_independent():
    rng = random.Random(13)
    for _ in range(100):
        g = random_simple(rng, max_n=7)
        k = g.max_degree() + 1
        classes = greedy_color_classes(g, k)
        assert len(classes) == k
        seen = set()
        for cls in classes:
            assert _is_independent(g, cls)
            assert not (cls & seen)
            seen |= cls
        assert seen == set(range(g.n))
