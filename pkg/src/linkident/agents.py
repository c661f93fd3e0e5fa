"""Per-block measurement endpoints.

Every monitor-to-monitor path crosses a given block through two fixed
nodes: the monitor itself when it lies inside the block, otherwise
the unique cut vertex through which the block is reached from that
monitor. We call these two nodes the block's agents. All analysis of
a block only ever sees path segments between its agents, so they act
as stand-in monitors for the block (with one caveat around a direct
agent-to-agent link, handled by the classifier).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .decomposition import biconnected_components
from .errors import UnknownBlock


@dataclass(frozen=True)
class AgentAssignment:
    """The two agents of one block.

    agents[i] is where paths from monitors[i] enter the block;
    connecting_paths[i] is a shortest node path from monitors[i] to
    its agent as a witness (a single-node tuple when the monitor is
    in the block itself). The two agents coincide exactly when both
    monitors reach the block through the same cut vertex.
    """

    block: int
    monitors: tuple
    agents: tuple
    connecting_paths: tuple


def _entry_node(g, m, block_nodes):
    """First node of the block hit from m, with a witness path.

    Every path from m into the block enters through the same node (m
    itself, or one cut vertex), so a plain BFS finds it: that node is
    strictly closer to m than any other node of the block.
    """
    if m in block_nodes:
        return m, (m,)
    prev = {m: None}
    queue = deque([m])
    while queue:
        v = queue.popleft()
        for w, _ in g.neighbors(v):
            if w in prev:
                continue
            prev[w] = v
            if w in block_nodes:
                path = [w]
                while path[-1] is not None:
                    path.append(prev[path[-1]])
                path.pop()
                return w, tuple(reversed(path))
            queue.append(w)
    raise UnknownBlock("block nodes are unreachable from monitor"
                       f" {m!r}")


def locate_agents(g, bct=None):
    """Agents of every block for the graph's two monitors.

    Returns a dict mapping block id to its AgentAssignment.
    """
    m1, m2 = g.require_monitors()
    if bct is None:
        bct = biconnected_components(g)
    out = {}
    for block in bct.blocks:
        nodes = set(block.nodes)
        a1, p1 = _entry_node(g, m1, nodes)
        a2, p2 = _entry_node(g, m2, nodes)
        out[block.bid] = AgentAssignment(
            block=block.bid,
            monitors=(m1, m2),
            agents=(a1, a2),
            connecting_paths=(p1, p2),
        )
    return out


def distinct_agent_count(assignments, bid):
    """How many distinct agents a block has: 1 or 2."""
    try:
        a = assignments[bid]
    except KeyError:
        raise UnknownBlock(f"no block {bid}") from None
    return len(set(a.agents))
