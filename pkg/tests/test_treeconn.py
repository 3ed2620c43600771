import random
from fractions import Fraction
from itertools import combinations

import pytest

from factorlab.core import PreconditionError
from factorlab.graphs import MultiGraph, bits, mask_of
from factorlab.constructions import complete, cycle
from factorlab.factors import certificate_from_ids
from factorlab.treeconn import (
    MtcIndex,
    PartitionCertificate,
    TreePacking,
    augment_factor,
    bounded_mtc_factor,
    connected_24_factor,
    cycle_space_dimension,
    is_m_tree_connected,
    mtc_components,
    omega_after_removal,
    spanning_eulerian,
    tree_packing,
    worst_omega_set,
)

from .conftest import random_multi


def assert_valid_packing(g, m, packing):
    seen = set()
    assert len(packing.trees) == m
    for tree in packing.trees:
        assert len(tree) == g.n - 1
        assert not (set(tree) & seen)
        seen.update(tree)
        sub = MultiGraph(g.n, [g.edges[e] for e in tree])
        assert sub.is_connected()


def assert_valid_refutation(g, m, cert):
    assert cert.crossing < m * (len(cert.parts) - 1)
    covered = sorted(v for p in cert.parts for v in p)
    assert covered == list(range(g.n))
    inside = sum(g.edges_inside(mask_of(p)) for p in cert.parts)
    assert cert.crossing == len(g.edges) - inside


def test_packing_k4_two_trees():
    packing = tree_packing(complete(4), 2)
    assert isinstance(packing, TreePacking)
    assert_valid_packing(complete(4), 2, packing)


def test_packing_c4_refuted_by_singletons():
    cert = tree_packing(cycle(4), 2)
    assert isinstance(cert, PartitionCertificate)
    assert len(cert.parts) == 4 and cert.crossing == 4
    assert_valid_refutation(cycle(4), 2, cert)


def test_packing_doubled_edge():
    g = MultiGraph(2, [(0, 1), (0, 1)])
    packing = tree_packing(g, 2)
    assert isinstance(packing, TreePacking)
    assert_valid_packing(g, 2, packing)


def test_packing_self_audit_on_random_multigraphs():
    rng = random.Random(55)
    for _ in range(500):
        g = random_multi(rng, max_n=7)
        m = rng.randint(1, 3)
        res = tree_packing(g, m)
        if isinstance(res, TreePacking):
            assert_valid_packing(g, m, res)
        else:
            assert_valid_refutation(g, m, res)


def test_mtc_m1_is_components():
    g = MultiGraph(5, [(0, 1), (2, 3)])
    part = mtc_components(g, 1)
    assert part.omega_m == 3
    assert set(part.parts) == {frozenset({0, 1}), frozenset({2, 3}), frozenset({4})}


def test_mtc_k4_requires_four_way_merge():
    part = mtc_components(complete(4), 2)
    assert part.parts == (frozenset({0, 1, 2, 3}),)
    assert part.omega_m == 1


def test_mtc_c4_singletons():
    part = mtc_components(cycle(4), 2)
    assert len(part.parts) == 4
    assert part.omega_m == 2


def test_mtc_partition_is_maximal_and_parts_are_mtc():
    rng = random.Random(56)
    for _ in range(120):
        g = random_multi(rng, max_n=6)
        m = rng.randint(1, 2)
        part = mtc_components(g, m)
        masks = list(part.part_masks)
        for mask in masks:
            sub_vertices = list(bits(mask))
            relabel = {v: i for i, v in enumerate(sub_vertices)}
            sub = MultiGraph(
                len(sub_vertices),
                [
                    (relabel[u], relabel[v])
                    for u, v in g.edges
                    if (mask >> u) & 1 and (mask >> v) & 1
                ],
            )
            assert is_m_tree_connected(sub, m)
        for size in range(2, len(masks) + 1):
            for combo in combinations(masks, size):
                union = 0
                for mk in combo:
                    union |= mk
                sub_vertices = list(bits(union))
                relabel = {v: i for i, v in enumerate(sub_vertices)}
                sub = MultiGraph(
                    len(sub_vertices),
                    [
                        (relabel[u], relabel[v])
                        for u, v in g.edges
                        if (union >> u) & 1 and (union >> v) & 1
                    ],
                )
                assert not is_m_tree_connected(sub, m)


def test_mtc_index_partition_agrees_with_fixed_point():
    rng = random.Random(57)
    for _ in range(120):
        g = random_multi(rng, max_n=6)
        m = rng.randint(1, 2)
        index = MtcIndex(g, m)
        fixed = mtc_components(g, m)
        assert sorted(index.partition(g.full_mask)) == sorted(fixed.part_masks)
        assert Fraction(index.omega_m_times_m(g.full_mask), m) == fixed.omega_m


def test_overlapping_mtc_masks_have_mtc_union():
    # the structural fact behind the descending-size partition scan
    rng = random.Random(58)
    for _ in range(60):
        g = random_multi(rng, max_n=6)
        for m in (1, 2):
            index = MtcIndex(g, m)
            masks = [mk for mk in range(1, g.full_mask + 1) if index.is_mtc(mk)]
            for a in masks:
                for b in masks:
                    if a & b and a != b:
                        assert index.is_mtc(a | b)


def test_omega_after_removal_examples():
    assert omega_after_removal(cycle(4), 2, []) == 2
    assert omega_after_removal(cycle(4), 2, [0]) == 2
    assert omega_after_removal(complete(5), 2, []) == 1


def test_omega_1_equals_component_count(named_corpus):
    for g in named_corpus:
        assert mtc_components(g, 1).omega_m == len(g.component_masks())


def test_worst_omega_c4():
    rep = worst_omega_set(cycle(4), 2)
    assert rep.S == frozenset() and rep.value == 2
    assert rep.audit_ok() and rep.maximal_flag


def test_worst_omega_k4_ties_break_to_larger_set():
    # score(S) = Omega_2(K_4 - S) - |S|/2 ties at 1 for S = {} and any single
    # vertex; the larger set wins and its component K_3 has max degree 2 <= m.
    rep = worst_omega_set(complete(4), 2)
    assert rep.S == frozenset({0})
    assert rep.value == Fraction(3, 2)
    assert rep.audit_ok()


def test_worst_omega_edgeless():
    rep = worst_omega_set(MultiGraph(3, []), 1)
    assert rep.S == frozenset() and rep.value == 3
    assert rep.audit_ok()


def test_worst_omega_audit_holds_for_all_tied_extremal_sets():
    rng = random.Random(59)
    for _ in range(60):
        g = random_multi(rng, max_n=6)
        for m in (1, 2):
            index = MtcIndex(g, m)
            full = g.full_mask
            scores = {}
            for s_mask in range(full + 1):
                num = index.omega_m_times_m(full & ~s_mask)
                scores[s_mask] = num - s_mask.bit_count()
            best = max(scores.values())
            best_size = max(s.bit_count() for s, sc in scores.items() if sc == best)
            for s_mask, sc in scores.items():
                if sc != best or s_mask.bit_count() != best_size:
                    continue
                for comp in g.component_masks(full & ~s_mask):
                    ok = index.is_mtc(comp) or all(
                        g.within_degree(v, comp) <= m for v in bits(comp)
                    )
                    assert ok


def test_bounded_mtc_k5_tree_with_degree_caps():
    cert = bounded_mtc_factor(complete(5), 1, u=0)
    assert cert is not None
    assert max(cert.degree_audit) <= 3 and cert.degree_audit[0] <= 2
    assert len(cert.edge_ids) == 4


def test_bounded_mtc_k5_two_trees():
    cert = bounded_mtc_factor(complete(5), 2)
    assert cert is not None
    assert max(cert.degree_audit) <= 5
    sub = MultiGraph(5, [complete(5).edges[e] for e in cert.edge_ids])
    assert is_m_tree_connected(sub, 2)


def test_bounded_mtc_c4_none():
    assert bounded_mtc_factor(cycle(4), 2) is None


def test_augment_matching_to_path():
    g = complete(4)
    matching = certificate_from_ids(g, [i for i, e in enumerate(g.edges) if e in ((0, 1), (2, 3))])
    cert = augment_factor(g, matching, 1, u=0)
    assert cert is not None
    assert set(matching.edge_ids) <= set(cert.edge_ids)
    assert cert.degree_audit[0] == 1
    assert all(cert.degree_audit[v] <= matching.degree_audit[v] + 1 for v in range(4))
    sub = MultiGraph(4, [g.edges[e] for e in cert.edge_ids])
    assert sub.is_connected()


def test_augment_identity_when_already_connected():
    g = cycle(5)
    whole = certificate_from_ids(g, range(5))
    cert = augment_factor(g, whole, 1)
    assert cert is not None and cert.edge_ids == whole.edge_ids


def test_augment_none_when_impossible():
    g = cycle(4)
    empty = certificate_from_ids(g, [])
    assert augment_factor(g, empty, 2) is None


def test_spanning_eulerian_construct_k4():
    cert = spanning_eulerian(complete(4), "construct")
    assert all(d in (2, 4) for d in cert.degree_audit)
    sub = MultiGraph(4, [complete(4).edges[e] for e in cert.edge_ids])
    assert sub.is_connected()


def test_spanning_eulerian_construct_requires_two_trees():
    with pytest.raises(PreconditionError):
        spanning_eulerian(cycle(4), "construct")


def test_spanning_eulerian_petersen_none(petersen_graph):
    assert cycle_space_dimension(petersen_graph) == 6
    assert spanning_eulerian(petersen_graph, "exhaustive") is None


def test_spanning_eulerian_c5_itself():
    cert = spanning_eulerian(cycle(5), "exhaustive")
    assert cert is not None and cert.degree_audit == (2,) * 5


def test_jaeger_construction_on_random_two_tree_connected_graphs():
    rng = random.Random(60)
    found = 0
    while found < 60:
        g = random_multi(rng, max_n=6)
        if g.n < 2 or not is_m_tree_connected(g, 2):
            continue
        found += 1
        cert = spanning_eulerian(g, "construct")
        assert all(d % 2 == 0 and d >= 2 for d in cert.degree_audit)
        sub = MultiGraph(g.n, [g.edges[e] for e in cert.edge_ids])
        assert sub.is_connected()
        # construct and exhaustive agree on existence
        assert spanning_eulerian(g, "exhaustive") is not None


def test_connected_24_k5():
    cert = connected_24_factor(complete(5), "exhaustive")
    assert cert is not None and all(d in (2, 4) for d in cert.degree_audit)
    cert = connected_24_factor(complete(5), "construct")
    assert cert is not None and all(d in (2, 4) for d in cert.degree_audit)


def test_connected_24_c4_itself():
    cert = connected_24_factor(cycle(4), "exhaustive")
    assert cert is not None and len(cert.edge_ids) == 4


def test_connected_24_petersen_none(petersen_graph):
    assert connected_24_factor(petersen_graph, "exhaustive") is None


def test_connected_24_modes_agree():
    rng = random.Random(61)
    for _ in range(40):
        g = random_multi(rng, max_n=6)
        exhaustive = connected_24_factor(g, "exhaustive")
        construct = connected_24_factor(g, "construct")
        if construct is not None:
            assert exhaustive is not None
            assert all(d in (2, 4) for d in construct.degree_audit)


from hypothesis import given

from .strategies import multigraphs


@given(multigraphs(max_n=6))
def test_packing_dichotomy_property(g):
    for m in (1, 2):
        res = tree_packing(g, m)
        if isinstance(res, TreePacking):
            assert_valid_packing(g, m, res)
            assert is_m_tree_connected(g, m)
        else:
            assert_valid_refutation(g, m, res)
            assert not is_m_tree_connected(g, m)


def test_packing_engine_matches_partition_condition_oracle():
    # Tutte/Nash-Williams over all set partitions, independent of the
    # matroid-union machinery
    from .oracles import brute_tree_packing_feasible

    rng = random.Random(2718)
    for _ in range(200):
        g = random_multi(rng, max_n=6)
        for m in (1, 2, 3):
            assert is_m_tree_connected(g, m) == brute_tree_packing_feasible(
                g.n, g.edges, m
            )


def test_mtc_partition_swallows_every_tree_connected_subset():
    # defining property of the component partition: every vertex set whose
    # induced subgraph packs m trees lies inside a single part
    from .oracles import brute_tree_packing_feasible

    rng = random.Random(2719)
    for _ in range(60):
        g = random_multi(rng, max_n=6)
        for m in (1, 2):
            part_of = {}
            for mask in mtc_components(g, m).part_masks:
                for v in bits(mask):
                    part_of[v] = mask
            for mask in range(1, g.full_mask + 1):
                vs = list(bits(mask))
                relabel = {v: i for i, v in enumerate(vs)}
                sub_edges = [
                    (relabel[u], relabel[v])
                    for u, v in g.edges
                    if (mask >> u) & 1 and (mask >> v) & 1
                ]
                if brute_tree_packing_feasible(len(vs), sub_edges, m):
                    assert len({part_of[v] for v in vs}) == 1
