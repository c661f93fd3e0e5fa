"""Blocks, cut vertices, and canonical triconnected components."""

import dataclasses
import random

import pytest

from linkident import (
    BrokenPairing,
    Disconnected,
    Graph,
    NotBiconnected,
    TooSmall,
    UnknownBlock,
    UnknownPair,
    biconnected_components,
    cut_vertices,
    decompose_links,
    enumerate_all_connected_graphs,
    k_vertex_connected,
    neighboring_components,
    reassemble,
    triconnected_components,
)

from helpers import bowtie_on_edge, c5, k4, path_graph, prism, triangle, \
    two_triangles


def rebuilt(g):
    """g without monitors/metrics, for comparing against reassemble."""
    return Graph(g.nodes, [g.links[i] for i in sorted(g.links)])


# -- blocks ------------------------------------------------------------


def test_cut_vertices_pins():
    assert cut_vertices(two_triangles()) == {2}
    assert cut_vertices(path_graph(3)) == {1, 2}
    assert cut_vertices(c5()) == set()
    assert cut_vertices(k4()) == set()


def test_blocks_of_two_triangles():
    bct = biconnected_components(two_triangles())
    assert bct.cut_vertices == frozenset({2})
    assert [(b.bid, b.links, b.nodes) for b in bct.blocks] == [
        (0, (0, 1, 2), (0, 1, 2)),
        (1, (3, 4, 5), (2, 3, 4)),
    ]
    assert bct.edges == ((0, 2), (1, 2))
    assert bct.blocks_of_node(2) == (0, 1)
    assert bct.blocks_of_node(0) == (0,)
    assert bct.blocks_of_node(99) == ()
    assert bct.block(0).bid == 0
    with pytest.raises(UnknownBlock):
        bct.block(5)


def test_bridges_become_single_link_blocks():
    bct = biconnected_components(path_graph(3))
    assert [(b.bid, b.links) for b in bct.blocks] == [
        (0, (0,)), (1, (1,)), (2, (2,))]
    assert sorted(bct.cut_vertices) == [1, 2]
    assert bct.edges == ((0, 1), (1, 1), (1, 2), (2, 2))


def test_biconnected_graph_is_one_block():
    bct = biconnected_components(c5())
    assert len(bct.blocks) == 1
    assert bct.blocks[0].links == (0, 1, 2, 3, 4)
    assert bct.cut_vertices == frozenset()


def test_blocks_need_a_connected_graph():
    with pytest.raises(Disconnected):
        biconnected_components(Graph(range(4), [(0, 1), (2, 3)]))


def test_block_links_partition_the_graph():
    for g in [two_triangles(), path_graph(4), bowtie_on_edge(), prism()]:
        bct = biconnected_components(g)
        seen = [eid for b in bct.blocks for eid in b.links]
        assert sorted(seen) == sorted(g.links)


# -- triconnected components -------------------------------------------


def test_k4_is_one_rigid_component():
    tri = triconnected_components(k4())
    assert [c.kind for c in tri.components] == ["rigid"]
    assert tri.components[0].virtuals == frozenset()
    assert tri.virtual_pairing == {}


def test_cycle_is_one_polygon():
    tri = triconnected_components(c5())
    assert [c.kind for c in tri.components] == ["polygon"]
    assert sorted(tri.components[0].real_links()) == [0, 1, 2, 3, 4]


def test_triangle_is_one_polygon():
    kinds = [c.kind for c in triconnected_components(triangle()).components]
    assert kinds == ["polygon"]


def test_wheel_is_one_rigid_component():
    rim = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]
    w5 = Graph(range(6), [(0, i) for i in range(1, 6)] + rim)
    tri = triconnected_components(w5)
    assert [c.kind for c in tri.components] == ["rigid"]
    assert tri.components[0].virtuals == frozenset()


def test_theta_graph_splits_into_bond_plus_polygons():
    theta = Graph(range(5), [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
    kinds = sorted(c.kind for c in
                   triconnected_components(theta).components)
    assert kinds == ["bond", "polygon", "polygon", "polygon"]


def test_bowtie_full_decomposition():
    tri = triconnected_components(bowtie_on_edge())
    assert tri.to_json() == {
        "components": [
            {"cid": 0, "kind": "bond", "nodes": [0, 1],
             "links": {"0": [0, 1], "5": [0, 1], "6": [0, 1]},
             "virtuals": [5, 6]},
            {"cid": 1, "kind": "polygon", "nodes": [0, 1, 2],
             "links": {"1": [0, 2], "2": [1, 2], "5": [0, 1]},
             "virtuals": [5]},
            {"cid": 2, "kind": "polygon", "nodes": [0, 1, 3],
             "links": {"3": [0, 3], "4": [1, 3], "6": [0, 1]},
             "virtuals": [6]},
        ],
        "virtual_pairing": {"5": [0, 1], "6": [0, 2]},
        "split_pairs": {"0": [[0, 1]], "1": [[0, 1]], "2": [[0, 1]]},
        "pair_nodes": {"5": [0, 1], "6": [0, 1]},
    }


def test_component_accessors():
    tri = triconnected_components(bowtie_on_edge())
    c1 = tri.component(1)
    assert (c1.cid, c1.kind) == (1, "polygon")
    assert sorted(c1.links) == [1, 2, 5]
    assert c1.virtuals == frozenset({5})
    assert c1.nodes == (0, 1, 2)
    assert sorted(c1.real_links()) == [1, 2]
    assert tri.partner(0, 5) == 1
    assert tri.partner(1, 5) == 0
    with pytest.raises(UnknownBlock):
        tri.component(9)


def test_neighboring_components_expands_through_the_bond():
    tri = triconnected_components(bowtie_on_edge())
    ns = tri.neighboring_components(1, (0, 1))
    assert ns.components == (2,)
    assert ns.real_link == 0
    assert neighboring_components(tri, 1, (0, 1)) == ns
    assert tri.neighboring_components(1, (1, 0)) == ns


def test_neighboring_components_rejects_non_split_pairs():
    with pytest.raises(UnknownPair):
        triconnected_components(k4()).neighboring_components(0, (0, 2))


def test_requires_biconnected_input():
    with pytest.raises(NotBiconnected):
        triconnected_components(two_triangles())
    with pytest.raises(TooSmall):
        triconnected_components(Graph([0, 1], [(0, 1)]))
    with pytest.raises(TooSmall):
        triconnected_components(Graph([0], []))


def test_decompose_links_keeps_caller_ids():
    tt = two_triangles()
    blk = biconnected_components(tt).block(1)
    dec = decompose_links({eid: tt.links[eid] for eid in blk.links})
    assert [(c.cid, c.kind, sorted(c.links)) for c in dec.components] == [
        (0, "polygon", [3, 4, 5])]


def test_reassemble_round_trips_pinned_graphs():
    for g in [bowtie_on_edge(), c5(), prism(), k4(), triangle()]:
        assert reassemble(triconnected_components(g)) == rebuilt(g)


def test_reassemble_round_trips_every_small_biconnected_graph():
    count = 0
    for n in range(3, 6):
        for g in enumerate_all_connected_graphs(n):
            if k_vertex_connected(g, 2):
                tri = triconnected_components(g)
                assert reassemble(tri) == rebuilt(g)
                count += 1
    assert count == 249


def test_reassemble_rejects_tampered_decompositions():
    tri = triconnected_components(bowtie_on_edge())
    endpoints = dataclasses.replace(
        tri, pair_nodes={**tri.pair_nodes, 5: (0, 2)})
    dropped = dataclasses.replace(tri, components=tri.components[:-1])
    phantom = dataclasses.replace(
        tri, pair_nodes={**tri.pair_nodes, 99: (0, 1)})
    for bad in [endpoints, dropped, phantom]:
        with pytest.raises(BrokenPairing):
            reassemble(bad)


def test_component_kinds_survive_relabeling():
    rng = random.Random(4)
    for g in [bowtie_on_edge(), prism(), k4(), c5()]:
        kinds0 = sorted(c.kind for c in
                        triconnected_components(g).components)
        names = rng.sample(range(100, 100 + len(g.nodes)), len(g.nodes))
        perm = dict(zip(g.nodes, names))
        h = Graph(sorted(perm.values()),
                  [(perm[g.links[i][0]], perm[g.links[i][1]])
                   for i in sorted(g.links)])
        kinds1 = sorted(c.kind for c in
                        triconnected_components(h).components)
        assert kinds0 == kinds1


def test_structural_invariants_of_component_kinds():
    """Rigid pieces are 3-connected after gluing, polygons are cycles,
    bonds are parallel bundles of at least three links."""
    for n in range(4, 6):
        for g in enumerate_all_connected_graphs(n):
            if not k_vertex_connected(g, 2):
                continue
            tri = triconnected_components(g)
            for c in tri.components:
                degs = {}
                for u, v in c.links.values():
                    degs[u] = degs.get(u, 0) + 1
                    degs[v] = degs.get(v, 0) + 1
                if c.kind == "polygon":
                    assert len(c.links) == len(c.nodes) >= 3
                    assert set(degs.values()) == {2}
                elif c.kind == "bond":
                    assert len(c.nodes) == 2 and len(c.links) >= 3
                else:
                    assert c.kind == "rigid"
                    assert len(c.nodes) >= 4
                    merged = Graph(
                        c.nodes,
                        [tuple(p) for p in c.links.values()])
                    assert k_vertex_connected(merged, 3)


def test_real_links_partition_across_components():
    for g in [bowtie_on_edge(), prism(), k4(), c5()]:
        tri = triconnected_components(g)
        seen = [eid for c in tri.components for eid in c.real_links()]
        assert sorted(seen) == sorted(g.links)


def test_every_virtual_id_lives_in_exactly_two_components():
    tri = triconnected_components(bowtie_on_edge())
    where = {}
    for c in tri.components:
        for vid in c.virtuals:
            where.setdefault(vid, []).append(c.cid)
    assert {vid: tuple(cids) for vid, cids in where.items()} == \
        {vid: pair for vid, pair in tri.virtual_pairing.items()}
