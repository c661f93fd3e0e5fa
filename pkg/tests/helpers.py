"""Shared test fixtures-as-functions: small named graphs and an
independent max-flow implementation.

The connectivity cross-checks here deliberately reimplement Menger
counting with augmenting paths instead of reusing the library code, so
that the two sides of every comparison share nothing but the inputs.
"""

from fractions import Fraction

from linkident import Graph


# -- small named graphs --------------------------------------------------

PRISM_EDGES = [(0, 3), (0, 4), (0, 5), (1, 2), (1, 4), (1, 5), (2, 3),
               (2, 5), (3, 4)]


def triangle(monitors=(0, 1)):
    return Graph(range(3), [(0, 1), (0, 2), (1, 2)], monitors=monitors)


def k4(monitors=None):
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return Graph(range(4), edges, monitors=monitors)


def c5(monitors=None):
    return Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
                 monitors=monitors)


def path_graph(k, monitors=None):
    """Path on k+1 nodes 0..k, links (i, i+1)."""
    return Graph(range(k + 1), [(i, i + 1) for i in range(k)],
                 monitors=monitors)


def prism(monitors=(0, 5)):
    """Triangular prism; with monitors (0, 5) on a rung, the other two
    rungs (1, 4) and (2, 3) are unidentifiable despite the graph being
    3-vertex-connected."""
    return Graph(range(6), PRISM_EDGES, monitors=monitors)


def bowtie_on_edge(monitors=None):
    """Two triangles glued on the edge (0, 1), which is present: the
    smallest graph whose decomposition has a bond, with links
    0:(0,1) 1:(0,2) 2:(1,2) 3:(0,3) 4:(1,3)."""
    return Graph(range(4), [(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)],
                 monitors=monitors)


def two_triangles(monitors=None):
    """Triangles {0,1,2} and {2,3,4} sharing the cut vertex 2."""
    return Graph(range(5), [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)],
                 monitors=monitors)


def k23(monitors=None):
    """Complete bipartite graph on parts {0, 1} and {2, 3, 4}."""
    return Graph(range(5), [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
                 monitors=monitors)


# -- independent Menger counters ------------------------------------------

def edge_disjoint_paths(nodes, pairs, s, t):
    """Maximum number of pairwise edge-disjoint s-t paths.

    Unit-capacity max flow with BFS augmenting paths; undirected links
    become one unit of capacity in each direction.
    """
    cap = {}
    for u, v in pairs:
        cap[(u, v)] = cap.get((u, v), 0) + 1
        cap[(v, u)] = cap.get((v, u), 0) + 1
    flow = 0
    while True:
        prev = {s: None}
        queue = [s]
        while queue and t not in prev:
            v = queue.pop(0)
            for w in nodes:
                if w not in prev and cap.get((v, w), 0) > 0:
                    prev[w] = v
                    queue.append(w)
        if t not in prev:
            return flow
        v = t
        while prev[v] is not None:
            u = prev[v]
            cap[(u, v)] -= 1
            cap[(v, u)] = cap.get((v, u), 0) + 1
            v = u
        flow += 1


def vertex_disjoint_paths(nodes, pairs, s, t):
    """Maximum number of internally vertex-disjoint s-t paths.

    Standard node splitting: v becomes (v, in) -> (v, out) with
    capacity 1 (unbounded at s and t), links get unbounded capacity.
    """
    big = len(pairs) + 1
    cap = {}
    for v in nodes:
        cap[((v, "i"), (v, "o"))] = big if v in (s, t) else 1
    for u, v in pairs:
        cap[((u, "o"), (v, "i"))] = big
        cap[((v, "o"), (u, "i"))] = big
    source, sink = (s, "o"), (t, "i")
    verts = [(v, side) for v in nodes for side in ("i", "o")]
    flow = 0
    while True:
        prev = {source: None}
        queue = [source]
        while queue and sink not in prev:
            a = queue.pop(0)
            for b in verts:
                if b not in prev and cap.get((a, b), 0) > 0:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            return flow
        b = sink
        while prev[b] is not None:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] = cap.get((b, a), 0) + 1
            b = a
        flow += 1


def vertex_connectivity(g):
    """Exact vertex connectivity; n - 1 for complete graphs."""
    nodes = list(g.nodes)
    pairs = list(g.links.values())
    present = {frozenset(p) for p in pairs}
    nonadj = [(u, v) for i, u in enumerate(nodes) for v in nodes[i + 1:]
              if frozenset((u, v)) not in present]
    if not nonadj:
        return len(nodes) - 1
    return min(vertex_disjoint_paths(nodes, pairs, u, v)
               for u, v in nonadj)


def edge_connectivity(g):
    """Exact edge connectivity (0 for disconnected graphs)."""
    nodes = list(g.nodes)
    pairs = list(g.links.values())
    s = nodes[0]
    return min(edge_disjoint_paths(nodes, pairs, s, t)
               for t in nodes[1:])


# -- measurement arithmetic ------------------------------------------------

def path_sum(g, path_nodes, values):
    """Sum of the given per-link values along a node-sequence path."""
    total = Fraction(0)
    for a, b in zip(path_nodes, path_nodes[1:]):
        total += values[g.link_between(a, b)]
    return total
