"""Connectivity predicates over graphs and multigraphs.

All tests here are deliberately brute force: delete every (k-1)-subset
of nodes or links and BFS what remains. At the scales this library
works at (a few dozen nodes) that is fast, trivially correct, and easy
to cross-check against an independent max-flow formulation in the test
suite.
"""

from __future__ import annotations

from itertools import combinations

from .errors import MonitorsUnset, TooSmall
from .graph import MultiGraph


def _edge_pairs(g):
    """Links of g as a list of (u, v) pairs (parallel links repeat)."""
    return list(g.links.values())


def _connected(nodes, pairs):
    """BFS connectivity of an explicit node set / edge pair list."""
    if not nodes:
        return True
    adj = {v: [] for v in nodes}
    for u, w in pairs:
        adj[u].append(w)
        adj[w].append(u)
    first = next(iter(nodes))
    seen = {first}
    stack = [first]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(nodes)


def is_connected(g):
    """Connectivity for Graph or MultiGraph (empty graph counts as
    connected)."""
    return _connected(set(g.nodes), _edge_pairs(g))


def k_vertex_connected(g, k):
    """No deletion of any (k-1) nodes disconnects g. k in {1, 2, 3}.

    Parallel links do not matter here. Raises TooSmall when the graph
    has k or fewer nodes, where the notion degenerates.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    nodes = set(g.nodes)
    if len(nodes) <= k:
        raise TooSmall(f"need more than {k} nodes, have {len(nodes)}")
    pairs = [p for p in _edge_pairs(g)]
    for cut in combinations(sorted(nodes), k - 1):
        gone = set(cut)
        kept_nodes = nodes - gone
        kept_pairs = [(u, v) for u, v in pairs
                      if u not in gone and v not in gone]
        if not _connected(kept_nodes, kept_pairs):
            return False
    return True


def k_edge_connected(g, k):
    """No deletion of any (k-1) links disconnects g. k in {1, 2, 3}.

    Parallel links count individually. A quick minimum-degree reject
    (counting multiplicity) covers most failures before the subset
    scan.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    nodes = set(g.nodes)
    pairs = _edge_pairs(g)
    if len(nodes) <= 1:
        return True
    if k > 1:
        deg = {v: 0 for v in nodes}
        for u, w in pairs:
            deg[u] += 1
            deg[w] += 1
        if min(deg.values()) < k:
            return False
    for cut in combinations(range(len(pairs)), k - 1):
        gone = set(cut)
        kept = [p for i, p in enumerate(pairs) if i not in gone]
        if not _connected(nodes, kept):
            return False
    return True


def _bridgeless_connected(nodes, links, skip):
    """Is the multigraph connected with no bridge, ignoring link skip?

    links is a list of (link id, (u, v)); parallel links shield each
    other (the DFS tracks parent link ids, not parent nodes).
    """
    adj = {v: [] for v in nodes}
    for eid, (u, w) in links:
        if eid == skip:
            continue
        adj[u].append((w, eid))
        adj[w].append((u, eid))
    disc = {}
    low = {}
    counter = [0]
    ok = [True]

    def dfs(v, parent_link):
        disc[v] = low[v] = counter[0]
        counter[0] += 1
        for w, eid in adj[v]:
            if eid == parent_link:
                continue
            if w not in disc:
                dfs(w, eid)
                low[v] = min(low[v], low[w])
                if low[w] > disc[v]:
                    ok[0] = False
            else:
                low[v] = min(low[v], disc[w])

    first = next(iter(nodes))
    dfs(first, None)
    return ok[0] and len(disc) == len(nodes)


def _three_edge_connected(g):
    """Equivalent to k_edge_connected(g, 3), in one DFS per link.

    A graph is 3-edge-connected iff removing any single link leaves it
    connected and bridgeless, which one bridge-finding pass per link
    settles without enumerating link pairs.
    """
    nodes = set(g.nodes)
    if len(nodes) <= 1:
        return True
    links = list(g.links.items())
    deg = {v: 0 for v in nodes}
    for _, (u, w) in links:
        deg[u] += 1
        deg[w] += 1
    if min(deg.values()) < 3:
        return False
    return all(_bridgeless_connected(nodes, links, eid)
               for eid, _ in links)


def _monitor_lobes(g, m1, m2):
    """Connected components of g minus both monitors, as node sets."""
    rest = [v for v in g.nodes if v not in (m1, m2)]
    adj = {v: set() for v in rest}
    for u, v in g.links.values():
        if u in adj and v in adj:
            adj[u].add(v)
            adj[v].add(u)
    seen = set()
    out = []
    for v in rest:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(comp)
    return out


def _simple_path_link_sets(links, a, b):
    """Link-id set of every simple a-b path over an explicit link dict."""
    adj = {}
    for eid, (u, v) in links.items():
        adj.setdefault(u, []).append((v, eid))
        adj.setdefault(v, []).append((u, eid))
    out = []

    def dfs(v, seen, used):
        if v == b:
            out.append(frozenset(used))
            return
        for w, eid in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                used.append(eid)
                dfs(w, seen, used)
                used.pop()
                seen.remove(w)

    dfs(a, {a}, [])
    return out


def _once_crossed_cut_hits_interior(links, interior, m1, m2, lobe):
    """Is some interior link in a cut that every monitor path crosses
    exactly once?

    Cuts are enumerated as node bipartitions: m1 plus any subset of the
    lobe on one side, m2 and the rest on the other. Path link sets are
    only materialized for the first cut that touches an interior link;
    cuts entirely through monitor links cannot condemn anything and are
    skipped. The virtual bypass link would cross every enumerated cut
    exactly once, so leaving it out of both the cuts and the paths
    changes no answer.
    """
    paths = None
    members = sorted(lobe)
    for r in range(len(members) + 1):
        for extra in combinations(members, r):
            side = {m1, *extra}
            cut = {eid for eid, (u, v) in links.items()
                   if (u in side) != (v in side)}
            if not cut & interior:
                continue
            if paths is None:
                paths = _simple_path_link_sets(links, m1, m2)
            if all(len(p & cut) == 1 for p in paths):
                return True
    return False


def interior_identifiability_predicate(g):
    """Are all links away from the monitors guaranteed identifiable?

    A simple monitor-to-monitor path never revisits a monitor, so each
    measurement stays inside one lobe: a connected component of the
    graph minus both monitors, taken together with its links up to the
    monitors. Measurements therefore split cleanly over lobes, and the
    predicate is the conjunction of three conditions per lobe, each
    tested on the lobe plus a virtual bypass link joining the monitors
    (standing in for the direct link and for every other lobe):

      * 3-edge-connected;
      * 3-vertex-connected;
      * no interior link lies in a once-crossed cut: a link set that
        every simple monitor path crosses exactly once. Raising all
        links of such a cut by t while lowering all links of another
        one by t changes no path sum (the cut of all monitor links at
        one monitor always serves as the other one), so every link of
        such a cut is condemned together. The triangular prism measured
        across one rung is the smallest graph where this condition
        bites while both connectivity conditions hold: the other two
        rungs form a once-crossed cut with that monitor's links.

    Lobes of a single node carry monitor links only, so they have no
    say about interior links and are skipped. When no lobe has two or
    more nodes the graph has no interior links at all and the answer
    is False, matching what the connectivity conditions say about any
    such graph once its single-node lobes are dropped: what remains of
    a bare monitor-to-monitor bridge, or of a parallel pair of them,
    never reaches minimum degree three.
    """
    if g.monitors is None:
        raise MonitorsUnset("predicate needs monitors")
    m1, m2 = g.monitors
    big = [lobe for lobe in _monitor_lobes(g, m1, m2) if len(lobe) >= 2]
    if not big:
        return False
    vid = (max(g.links) + 1) if g.links else 0
    for lobe in big:
        links = {eid: pair for eid, pair in g.links.items()
                 if pair[0] in lobe or pair[1] in lobe}
        interior = {eid for eid, (u, v) in links.items()
                    if u in lobe and v in lobe}
        aug = MultiGraph(lobe | {m1, m2}, {**links, vid: (m1, m2)},
                         virtual=(vid,))
        if not _three_edge_connected(aug):
            return False
        if not k_vertex_connected(aug, 3):
            return False
        if _once_crossed_cut_hits_interior(links, interior, m1, m2, lobe):
            return False
    return True


def has_disjoint_fan(nodes, pairs, sources, targets):
    """Two fully vertex-disjoint paths from {s1, s2} to {t1, t2}?

    nodes/pairs describe the graph; sources and targets are disjoint
    2-sets of its nodes. By Menger's theorem two such paths exist iff
    no single vertex deletion separates the remaining sources from the
    remaining targets, which is what gets brute-forced here.
    """
    src = set(sources)
    tgt = set(targets)
    for x in nodes:
        kept_nodes = set(nodes) - {x}
        kept_pairs = [(u, v) for u, v in pairs if x not in (u, v)]
        adj = {v: [] for v in kept_nodes}
        for u, v in kept_pairs:
            adj[u].append(v)
            adj[v].append(u)
        starts = src - {x}
        goals = tgt - {x}
        if not starts or not goals:
            return False
        seen = set(starts)
        stack = list(starts)
        hit = False
        while stack and not hit:
            v = stack.pop()
            if v in goals:
                hit = True
                break
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if not hit and not (seen & goals):
            return False
    return True
