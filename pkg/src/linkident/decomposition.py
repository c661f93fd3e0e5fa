"""Structural decomposition: blocks and triconnected components.

Two classical layers:

  * biconnected components (blocks) with cut vertices, arranged in the
    block-cut tree; bridges are single-link blocks;
  * the canonical split of each block into triconnected components
    (polygons, bonds, rigid pieces) joined by paired virtual links at
    its separation pairs.

The triconnected split is done by quadratic separation-pair search
followed by canonical merging (adjacent polygons merge, adjacent bonds
merge), which lands on the same unique decomposition as the linear
time algorithms at a fraction of the code.

Within a decomposition, real links keep their input ids and virtual
link ids continue past the largest real id. Every virtual id appears
in exactly two components with the same endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    BrokenPairing,
    Disconnected,
    NotBiconnected,
    TooSmall,
    UnknownBlock,
    UnknownPair,
)
from .graph import Graph, MultiGraph

POLYGON = "polygon"
BOND = "bond"
RIGID = "rigid"


# -- blocks ------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One biconnected component: its links and the nodes they span."""

    bid: int
    links: tuple
    nodes: tuple


@dataclass
class BlockCutTree:
    """Blocks, cut vertices, and their bipartite tree incidence."""

    blocks: list
    cut_vertices: frozenset
    edges: tuple                    # (block id, cut vertex) pairs
    _node_blocks: dict = field(repr=False, default_factory=dict)

    def block(self, bid):
        try:
            return self.blocks[bid]
        except IndexError:
            raise UnknownBlock(f"no block {bid}") from None

    def blocks_of_node(self, v):
        """Ids of the blocks containing node v (several iff v cuts)."""
        return self._node_blocks.get(v, ())


def biconnected_components(g):
    """Block-cut tree of a connected graph."""
    if not g.is_connected():
        raise Disconnected("graph is not connected")
    disc = {}
    low = {}
    stack = []
    raw_blocks = []
    cuts = set()
    counter = [0]

    def dfs(v, parent_link):
        disc[v] = low[v] = counter[0]
        counter[0] += 1
        children = 0
        for w, eid in g.neighbors(v):
            if eid == parent_link:
                continue
            if w not in disc:
                stack.append(eid)
                children += 1
                dfs(w, eid)
                low[v] = min(low[v], low[w])
                if low[w] >= disc[v]:
                    if parent_link is not None or children > 1:
                        cuts.add(v)
                    blk = []
                    while True:
                        e = stack.pop()
                        blk.append(e)
                        if e == eid:
                            break
                    raw_blocks.append(blk)
            elif disc[w] < disc[v]:
                stack.append(eid)
                low[v] = min(low[v], disc[w])

    if g.nodes:
        dfs(g.nodes[0], None)

    raw_blocks.sort(key=min)
    blocks = []
    node_blocks = {}
    for bid, linkids in enumerate(raw_blocks):
        nodes = sorted({x for eid in linkids for x in g.links[eid]})
        blocks.append(Block(bid=bid, links=tuple(sorted(linkids)),
                            nodes=tuple(nodes)))
        for v in nodes:
            node_blocks.setdefault(v, []).append(bid)
    edges = tuple(sorted((b.bid, v) for b in blocks for v in b.nodes
                         if v in cuts))
    tree = BlockCutTree(blocks=blocks, cut_vertices=frozenset(cuts),
                        edges=edges)
    tree._node_blocks = {v: tuple(bids) for v, bids in node_blocks.items()}
    return tree


def cut_vertices(g):
    """Nodes whose removal disconnects the (connected) graph."""
    return set(biconnected_components(g).cut_vertices)


# -- triconnected split ------------------------------------------------


def _endpoints(links):
    return {x for pair in links.values() for x in pair}


def _kind_of(links):
    nodes = _endpoints(links)
    if len(nodes) == 2:
        return BOND
    deg = {v: 0 for v in nodes}
    for u, w in links.values():
        deg[u] += 1
        deg[w] += 1
    if all(d == 2 for d in deg.values()):
        return POLYGON
    return RIGID


def _separation_classes(links, a, b):
    """Partition of links at the node pair {a, b}.

    One class per component of the link set minus {a, b} (the
    component's links plus its links into a and b), plus one singleton
    class per direct a-b link. Classes come out in deterministic
    order: components by smallest contained node, then direct links by
    id.
    """
    adj = {}
    for eid, (u, v) in links.items():
        if u in (a, b) or v in (a, b):
            continue
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    others = sorted(_endpoints(links) - {a, b})
    comp_of = {}
    comps = []
    for start in others:
        if start in comp_of:
            continue
        comp = {start}
        stack = [start]
        comp_of[start] = len(comps)
        while stack:
            v = stack.pop()
            for w in adj.get(v, ()):
                if w not in comp_of:
                    comp_of[w] = len(comps)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    classes = [{} for _ in comps]
    directs = []
    for eid, (u, v) in sorted(links.items()):
        if {u, v} == {a, b}:
            directs.append({eid: (u, v)})
        elif u in (a, b):
            classes[comp_of[v]][eid] = (u, v)
        else:
            classes[comp_of[u]][eid] = (u, v)
    return classes + directs


def _find_split_pair(links, nodes):
    """First qualifying separation pair and its classes, or None.

    A pair qualifies when its classes can be divided into two sides of
    at least two links each: at least two classes, excluding the case
    of exactly two classes where one is a lone direct link.
    """
    for a, b in combinations(nodes, 2):
        classes = _separation_classes(links, a, b)
        if len(classes) < 2:
            continue
        if len(classes) == 2 and (len(classes[0]) == 1
                                  or len(classes[1]) == 1):
            continue
        return (a, b), classes
    return None, None


def _split(block_links):
    """Recursive split into raw (unmerged) triconnected parts.

    Returns (list of link dicts, virtual id -> endpoint pair).
    """
    vpairs = {}
    vnext = max(block_links) + 1
    out = []
    work = [dict(block_links)]
    while work:
        links = work.pop()
        nodes = sorted(_endpoints(links))
        if len(nodes) == 2 or _kind_of(links) == POLYGON:
            out.append(links)
            continue
        pair, classes = _find_split_pair(links, nodes)
        if pair is None:
            out.append(links)
            continue
        a, b = pair
        e1 = next(c for c in classes if len(c) >= 2)
        vid = vnext
        vnext += 1
        vpairs[vid] = (a, b) if a < b else (b, a)
        side1 = dict(e1)
        side1[vid] = vpairs[vid]
        side2 = {eid: p for eid, p in links.items() if eid not in e1}
        side2[vid] = vpairs[vid]
        work.append(side1)
        work.append(side2)
    return out, vpairs


def _merge_same_kind(comps, vpairs):
    """Canonical merging: collapse polygon-polygon and bond-bond pairs
    sharing a virtual link, until none remain."""
    changed = True
    while changed:
        changed = False
        holders = {}
        for i, c in enumerate(comps):
            for eid in c:
                if eid in vpairs:
                    holders.setdefault(eid, []).append(i)
        for vid in sorted(holders):
            i, j = holders[vid]
            ki = _kind_of(comps[i])
            if ki in (POLYGON, BOND) and ki == _kind_of(comps[j]):
                merged = {**comps[i], **comps[j]}
                del merged[vid]
                del vpairs[vid]
                comps = [c for k, c in enumerate(comps) if k not in (i, j)]
                comps.append(merged)
                changed = True
                break
    return comps, vpairs


# -- decomposition result ----------------------------------------------


@dataclass(frozen=True)
class TriComponent:
    """One triconnected component of a block."""

    cid: int
    kind: str
    graph: MultiGraph

    @property
    def links(self):
        return self.graph.links

    @property
    def virtuals(self):
        return self.graph.virtual

    @property
    def nodes(self):
        return self.graph.nodes

    def real_links(self):
        return self.graph.real_links()


@dataclass(frozen=True)
class NeighborSet:
    """Components attached at a separation pair, seen from one side.

    components lists the non-bond components reachable at the pair
    (expanding through a bond when one sits there); real_link is the
    id of a real link joining the pair in parallel, if any.
    """

    components: tuple
    real_link: int | None


@dataclass
class TriconnectedDecomposition:
    """Canonical triconnected components of one biconnected block."""

    components: list                 # TriComponent, by cid
    virtual_pairing: dict            # virtual id -> (cid, cid)
    split_pairs: dict                # cid -> sorted unique node pairs
    pair_nodes: dict                 # virtual id -> (a, b)

    def component(self, cid):
        if 0 <= cid < len(self.components):
            return self.components[cid]
        raise UnknownBlock(f"no component {cid}")

    def partner(self, cid, vid):
        x, y = self.virtual_pairing[vid]
        return y if cid == x else x

    def to_json(self):
        """Plain-dict mirror of the decomposition, ready for json.dump."""
        return {
            "components": [
                {
                    "cid": c.cid,
                    "kind": c.kind,
                    "nodes": list(c.nodes),
                    "links": {str(eid): list(pair)
                              for eid, pair in sorted(c.links.items())},
                    "virtuals": sorted(c.virtuals),
                }
                for c in self.components
            ],
            "virtual_pairing": {str(vid): list(cids)
                                for vid, cids in sorted(self.virtual_pairing.items())},
            "split_pairs": {str(cid): [list(p) for p in pairs]
                            for cid, pairs in sorted(self.split_pairs.items())},
            "pair_nodes": {str(vid): list(pair)
                           for vid, pair in sorted(self.pair_nodes.items())},
        }

    def neighboring_components(self, cid, pair):
        """Who else is attached at this separation pair of cid.

        Expands through a bond: the bond itself is never listed, its
        other attachments are, and a real link it carries is reported
        as real_link. Raises UnknownPair when the pair carries no
        virtual link of cid.
        """
        comp = self.component(cid)
        a, b = pair
        key = (a, b) if a < b else (b, a)
        vids = [vid for vid in comp.virtuals
                if self.pair_nodes[vid] == key]
        if not vids:
            raise UnknownPair(f"{key} is not a split pair of component"
                              f" {cid}")
        found = set()
        real = None
        for vid in vids:
            other = self.component(self.partner(cid, vid))
            if other.kind == BOND:
                for eid in other.links:
                    if eid == vid:
                        continue
                    if eid in self.pair_nodes:
                        found.add(self.partner(other.cid, eid))
                    else:
                        real = eid
            else:
                found.add(other.cid)
        found.discard(cid)
        return NeighborSet(components=tuple(sorted(found)), real_link=real)


def decompose_links(block_links):
    """Canonical decomposition of a biconnected link dict (id -> pair).

    Core of triconnected_components that preserves the caller's link
    ids, for decomposing one block of a larger graph in place. The
    links must form a biconnected graph; this is not re-checked here.
    """
    comps, vpairs = _split(dict(block_links))
    comps, vpairs = _merge_same_kind(comps, vpairs)

    # renumber surviving virtual ids compactly above the real ids, in
    # creation order (deterministic given the deterministic split)
    base = max(block_links) + 1
    remap = {old: base + i for i, old in enumerate(sorted(vpairs))}
    comps = [{remap.get(eid, eid): pair for eid, pair in c.items()}
             for c in comps]
    vpairs = {remap[old]: pair for old, pair in vpairs.items()}

    def comp_key(c):
        reals = sorted(eid for eid in c if eid not in vpairs)
        if reals:
            return (0, reals[0])
        return (1, tuple(sorted(_endpoints(c))))

    comps.sort(key=comp_key)

    components = []
    pairing = {}
    split_pairs = {}
    for cid, links in enumerate(comps):
        virtual = frozenset(eid for eid in links if eid in vpairs)
        mg = MultiGraph(_endpoints(links), links, virtual=virtual)
        components.append(TriComponent(cid=cid, kind=_kind_of(links),
                                       graph=mg))
        for vid in virtual:
            pairing.setdefault(vid, []).append(cid)
        split_pairs[cid] = sorted({vpairs[vid] for vid in virtual})
    pairing = {vid: tuple(sorted(cids)) for vid, cids in pairing.items()}
    return TriconnectedDecomposition(
        components=components,
        virtual_pairing=pairing,
        split_pairs=split_pairs,
        pair_nodes=dict(vpairs),
    )


def triconnected_components(block):
    """Canonical decomposition of a biconnected graph.

    The input must be simple, connected, free of cut vertices, and
    have at least 3 nodes (single links and node pairs are handled at
    the block level, not here).
    """
    if isinstance(block, Graph):
        if block.n < 3:
            raise TooSmall(f"need at least 3 nodes, have {block.n}")
        if not block.is_connected() or cut_vertices(block):
            raise NotBiconnected("input is not 2-connected")
        return decompose_links(block.links)
    raise TypeError("triconnected_components expects a Graph")


def reassemble(d):
    """Undo a decomposition: glue at virtual links, keep real links.

    Validates the pairing (every virtual id in exactly two components
    with identical endpoints, every real id in exactly one) and
    returns the block as a Graph. Link ids become positional in
    ascending original-id order, so a block whose ids were already
    0..m-1 comes back identical.
    """
    seen_virtual = {}
    real = {}
    for comp in d.components:
        for eid, pair in comp.links.items():
            if eid in comp.virtuals:
                seen_virtual.setdefault(eid, []).append(pair)
            else:
                if eid in real:
                    raise BrokenPairing(f"real link {eid} in two"
                                        " components")
                real[eid] = pair
    for vid, pairs in seen_virtual.items():
        if len(pairs) != 2 or pairs[0] != pairs[1]:
            raise BrokenPairing(f"virtual link {vid} is not properly"
                                " paired")
        if vid not in d.pair_nodes or d.pair_nodes[vid] != pairs[0]:
            raise BrokenPairing(f"virtual link {vid} endpoints disagree"
                                " with the pairing table")
    for vid in d.pair_nodes:
        if vid not in seen_virtual:
            raise BrokenPairing(f"virtual link {vid} missing from"
                                " components")
    nodes = sorted({x for pair in real.values() for x in pair})
    edges = [real[eid] for eid in sorted(real)]
    return Graph(nodes, edges)


def neighboring_components(d, cid, pair):
    """Module-level spelling of d.neighboring_components(cid, pair)."""
    return d.neighboring_components(cid, pair)
