"""Structural classification engine: categories, marking rules, and
agreement with the exact oracle on pinned instances."""

import random

import pytest

from linkident import (
    ALL_RULES,
    Category,
    Graph,
    SplitPairClass,
    Structure,
    UnknownPair,
    WrongAgentCount,
    analyze,
    classify_component,
    classify_split_pair,
    diff_instance,
    gnp_connected,
    identifiable_links_bruteforce,
    replace_virtual_link,
)
from linkident.structural import _Claims

from helpers import bowtie_on_edge, path_graph, prism, triangle, \
    two_triangles


def rules_of(report):
    return {eid: (v.identifiable, v.rule)
            for eid, v in report.verdicts.items()}


def transit_rigid_instance():
    """Rigid core crossed between two split pairs: a complete graph on
    {2,3,4,5} entered through carrier paths 2-6-3 and 4-7-5."""
    core = [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
    carriers = [(2, 6), (6, 3), (4, 7), (7, 5)]
    return Graph(range(2, 8), core + carriers, monitors=(6, 7))


def transit_triangle_instance():
    """Triangle {1,2,3} crossed between pairs (1,2) and (1,3), each
    side doubled by a two-hop detour so the triangle survives the
    canonical merge."""
    edges = [(1, 2), (1, 3), (2, 3), (1, 4), (4, 2), (1, 5), (5, 3)]
    return Graph(range(1, 6), edges, monitors=(4, 5))


def hanging_component_instance():
    """The transit-rigid instance with an extra diamond hanging off
    the core pair (2,4), whose parallel real link no local rule can
    decide."""
    core = [(2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
    carriers = [(2, 6), (6, 3), (4, 7), (7, 5)]
    hang = [(2, 8), (8, 4), (2, 9), (9, 4), (8, 9)]
    return Graph(range(2, 10), core + carriers + hang, monitors=(6, 7))


# -- analyze on pinned graphs ------------------------------------------


def test_triangle_report():
    rep = analyze(triangle(monitors=(0, 1)))
    assert rep.to_json() == {
        "links": [
            {"edge": [0, 1], "verdict": "identifiable",
             "rule": "direct-agent-link"},
            {"edge": [0, 2], "verdict": "unidentifiable",
             "rule": "agent-pair-exterior"},
            {"edge": [1, 2], "verdict": "unidentifiable",
             "rule": "agent-pair-exterior"},
        ],
        "summary": {"identifiable": 1, "total": 3},
    }
    assert rep.categories == {0: ((0, Category.AGENT_PAIR),)}
    assert rep.fallback_blocks == frozenset()
    assert rep.identifiable() == {0}


def test_square_falls_back_to_the_oracle():
    c4 = Graph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)],
               monitors=(0, 2))
    rep = analyze(c4)
    assert rep.fallback_blocks == {0}
    assert all(v.rule == "oracle-fallback" and not v.identifiable
               for v in rep.verdicts.values())


def test_bridge_chain_rules():
    rep = analyze(path_graph(2, monitors=(0, 2)))
    assert rules_of(rep) == {0: (False, "direct-agent-link"),
                             1: (False, "direct-agent-link")}
    assert rep.categories == {0: ((None, Category.SINGLE_LINK),),
                              1: ((None, Category.SINGLE_LINK),)}

    lone = analyze(Graph([0, 1], [(0, 1)], monitors=(0, 1)))
    assert rules_of(lone) == {0: (True, "direct-agent-link")}


def test_prism_demotes_to_fallback_and_matches_the_oracle():
    g = prism(monitors=(0, 5))
    rep = analyze(g)
    assert rep.fallback_blocks == {0}
    assert rep.categories == {0: ((0, Category.FALLBACK),)}
    assert rep.identifiable() == identifiable_links_bruteforce(g)
    direct = rep.verdicts[g.link_between(0, 5)]
    assert direct.identifiable and direct.rule == "direct-agent-link"


def test_bowtie_reports_under_three_monitor_placements():
    b = bowtie_on_edge()
    rep = analyze(b.with_monitors(0, 1))
    assert rules_of(rep) == {
        0: (True, "direct-agent-link"),
        1: (False, "agent-pair-exterior"),
        2: (False, "agent-pair-exterior"),
        3: (False, "agent-pair-exterior"),
        4: (False, "agent-pair-exterior"),
    }
    rep = analyze(b.with_monitors(2, 3))
    assert rules_of(rep) == {
        0: (True, "inner-agent-interior"),
        1: (False, "inner-agent-exterior"),
        2: (False, "inner-agent-exterior"),
        3: (False, "inner-agent-exterior"),
        4: (False, "inner-agent-exterior"),
    }
    assert rep.categories == {0: ((1, Category.INNER_AGENT),
                                  (2, Category.INNER_AGENT))}
    rep = analyze(b.with_monitors(0, 3))
    assert rules_of(rep) == {
        0: (False, "agent-pair-exterior"),
        1: (False, "agent-pair-exterior"),
        2: (False, "agent-pair-exterior"),
        3: (True, "direct-agent-link"),
        4: (False, "agent-pair-exterior"),
    }
    for monitors in [(0, 1), (2, 3), (0, 3)]:
        g = b.with_monitors(*monitors)
        assert analyze(g).identifiable() == \
            identifiable_links_bruteforce(g)


def test_transit_rigid_instance_rules():
    g = transit_rigid_instance()
    rep = analyze(g)
    assert rep.fallback_blocks == frozenset()
    got = rules_of(rep)
    for eid in range(6):
        assert got[eid] == (True, "transit-rigid")
    for eid in range(6, 10):
        assert got[eid] == (False, "inner-agent-exterior")
    cats = dict(rep.categories[0])
    assert cats[1] is Category.TRANSIT_RIGID
    assert rep.identifiable() == identifiable_links_bruteforce(g)


def test_transit_triangle_instance_rules():
    g = transit_triangle_instance()
    rep = analyze(g)
    assert rep.fallback_blocks == frozenset()
    got = rules_of(rep)
    assert got[0] == (True, "transit-triangle-crosslink")    # (1,2)
    assert got[1] == (True, "transit-triangle-crosslink")    # (1,3)
    assert got[2] == (True, "transit-triangle-shortcut")     # (2,3)
    for eid in range(3, 7):
        assert got[eid] == (False, "inner-agent-exterior")
    assert Category.TRANSIT_TRIANGLE in dict(rep.categories[0]).values()
    assert rep.identifiable() == identifiable_links_bruteforce(g)


def test_hanging_component_defers_its_pair_link_to_the_oracle():
    g = hanging_component_instance()
    rep = analyze(g)
    assert rep.fallback_blocks == frozenset()
    got = rules_of(rep)
    assert got[1] == (True, "pair-link-deferred-resolved")   # (2,4)
    assert got[14] == (True, "agent-pair-interior")          # (8,9)
    assert got[10] == (False, "agent-pair-exterior")
    assert rep.identifiable() == identifiable_links_bruteforce(g)


def test_single_agent_block_gets_too_few_agents():
    g = two_triangles().with_monitors(0, 1)
    rep = analyze(g)
    assert rules_of(rep) == {
        0: (True, "direct-agent-link"),
        1: (False, "agent-pair-exterior"),
        2: (False, "agent-pair-exterior"),
        3: (False, "too-few-agents"),
        4: (False, "too-few-agents"),
        5: (False, "too-few-agents"),
    }
    assert rep.identifiable() == identifiable_links_bruteforce(g)


# -- classification primitives -----------------------------------------


def test_rigid_pair_ok_pins():
    k4 = Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
                          (2, 3)])
    assert Structure(k4).rigid_pair_ok(0, 0, (0, 1))
    st = Structure(prism())
    assert not st.rigid_pair_ok(0, 0, (0, 5))
    assert st.rigid_pair_ok(0, 0, (0, 4))


def test_classify_component_pins():
    k4 = Graph(range(4), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
                          (2, 3)])
    cls = classify_component(Structure(k4), 0, 0, (0, 1))
    assert cls.category is Category.AGENT_PAIR
    assert cls.effective_pair == (0, 1)

    cls = classify_component(Structure(prism()), 0, 0, (0, 5))
    assert cls.category is Category.FALLBACK

    stb = Structure(bowtie_on_edge())
    cls = classify_component(stb, 0, 1, (0, 3))
    assert cls.category is Category.AGENT_PAIR
    assert cls.effective_pair == (0, 1)
    cls = classify_component(stb, 0, 1, (2, 3))
    assert cls.category is Category.INNER_AGENT
    assert cls.inner_agent == 2 and cls.toward_pair == (0, 1)
    with pytest.raises(ValueError):
        classify_component(stb, 0, 0, (2, 3))

    st8 = Structure(transit_rigid_instance())
    cls = classify_component(st8, 0, 1, (6, 7))
    assert cls.category is Category.TRANSIT_RIGID
    assert cls.det_pairs == ((2, 3), (4, 5))

    stc = Structure(transit_triangle_instance())
    cls = classify_component(stc, 0, 2, (4, 5))
    assert cls.category is Category.TRANSIT_TRIANGLE
    assert cls.det_pairs == ((1, 2), (1, 3))


def test_classify_split_pair_pins():
    st = Structure(bowtie_on_edge())
    assert classify_split_pair(st, 0, 1, (0, 1), (2, 3)) is \
        SplitPairClass.ONE_BEYOND
    assert classify_split_pair(st, 0, 1, (0, 1), (0, 2)) is \
        SplitPairClass.NONE_BEYOND
    assert classify_split_pair(st, 0, 0, (0, 1), (2, 3)) is \
        SplitPairClass.TWO_BEYOND
    with pytest.raises(UnknownPair):
        classify_split_pair(st, 0, 1, (0, 2), (2, 3))
    with pytest.raises(WrongAgentCount):
        classify_split_pair(st, 0, 1, (0, 1), (2, 2))
    with pytest.raises(WrongAgentCount):
        classify_component(st, 0, 1, (2, 2))


def test_replace_virtual_link_pins():
    st = Structure(bowtie_on_edge())
    assert replace_virtual_link(st, 0, 1, 5) == (0,)
    with pytest.raises(UnknownPair):
        replace_virtual_link(st, 0, 1, 99)

    dia = Graph(range(5), [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                           (0, 4), (4, 1)])
    std = Structure(dia)
    d = std.tri(0)
    poly = next(c for c in d.components if c.kind == "polygon")
    assert replace_virtual_link(std, 0, poly.cid, min(poly.virtuals)) \
        == (0, 2)


def test_replacement_paths_join_the_pair_with_real_links():
    g = hanging_component_instance()
    st = Structure(g)
    d = st.tri(0)
    for comp in d.components:
        for vid in comp.virtuals:
            path = replace_virtual_link(st, 0, comp.cid, vid)
            assert path
            assert all(eid in g.links for eid in path)
            ends = set(d.pair_nodes[vid])
            seq = [g.links[eid] for eid in path]
            walk = {x for pair in seq for x in pair}
            assert ends <= walk


# -- engine plumbing ----------------------------------------------------


def test_monitor_order_does_not_matter():
    g = prism()
    assert analyze(g.with_monitors(0, 5)).to_json() == \
        analyze(g.with_monitors(5, 0)).to_json()


def test_shared_structure_and_monitor_override():
    g = prism()
    st = Structure(g)
    base = analyze(g.with_monitors(0, 5)).to_json()
    assert analyze(g.with_monitors(0, 5), structure=st).to_json() == base
    assert analyze(g, monitors=(0, 5), structure=st).to_json() == base
    with pytest.raises(ValueError):
        analyze(bowtie_on_edge().with_monitors(0, 1), structure=st)


def test_monitor_transit_flag_is_accepted_and_inert():
    g = prism(monitors=(0, 5))
    assert analyze(g, allow_monitor_transit=True).to_json() == \
        analyze(g).to_json()


def test_claims_keep_the_first_rule_and_reject_conflicts():
    claims = _Claims()
    claims.claim(3, True, "a")
    claims.claim(3, True, "b")
    assert claims.rules[3] == "a"
    assert 3 in claims and 4 not in claims
    with pytest.raises(AssertionError):
        claims.claim(3, False, "c")


def test_every_link_gets_a_verdict_with_a_known_rule():
    for i in range(60):
        rng = random.Random(8300 + i)
        g = gnp_connected(rng.randint(2, 8), 0.45, rng)
        m1, m2 = rng.sample(g.nodes, 2)
        g = g.with_monitors(m1, m2)
        rep = analyze(g)
        assert set(rep.verdicts) == set(g.links)
        homes = {b.bid: set(b.links)
                 for b in Structure(g).bct.blocks}
        for eid, v in rep.verdicts.items():
            assert v.link == eid
            assert v.endpoints == g.links[eid]
            assert v.rule in ALL_RULES
            assert eid in homes[v.block]
        assert not diff_instance(g).mismatch
