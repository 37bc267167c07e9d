"""Trace graph linking requirements back to pattern and role instances.

Nodes share one ID namespace: derivation IDs (``G1``, ``G1.1``, ``O1``,
``R1s``), gap IDs (``X1``), role idents, the reserved ``system`` agent,
and the single ``pattern`` node.  Edges point from the dependent element
toward what it resolves to, so the audit can walk requirement ->
obstacle -> goal -> gap -> (pattern, role) chains directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import Analysis
from .model import SYSTEM_AGENT, OversightModel

PATTERN_NODE_ID = "pattern"

# node kinds
PATTERN = "pattern"
ROLE = "role"
GAP = "gap"
GOAL = "goal"
SUBGOAL = "subgoal"
OBSTACLE = "obstacle"
REQUIREMENT = "requirement"
SYSTEM_AGENT_KIND = "system_agent"

# edge kinds
MITIGATES = "mitigates"
REFINES = "refines"
ASSIGNED = "assigned"
BLOCKS = "blocks"
ADDRESSES = "addresses"
INSTANTIATES = "instantiates"


@dataclass(frozen=True)
class Node:
    node_id: str
    kind: str


@dataclass(frozen=True)
class Edge:
    kind: str
    source: str
    target: str


class TraceCycleError(ValueError):
    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("cycle detected: " + " -> ".join(cycle))


class UnresolvedReferenceError(ValueError):
    pass


@dataclass
class TraceGraph:
    nodes: dict[str, Node] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)

    def add_node(self, node_id: str, kind: str):
        existing = self.nodes.get(node_id)
        if existing is not None and existing.kind != kind:
            # Goal-like IDs share a namespace; a subgoal reusing a goal ID
            # collapses onto it (how malformed-ID cycles become visible).
            if {existing.kind, kind} <= {GOAL, SUBGOAL}:
                kind = GOAL
            else:
                raise UnresolvedReferenceError(
                    f"node '{node_id}' declared as both {existing.kind} "
                    f"and {kind}"
                )
        self.nodes[node_id] = Node(node_id, kind)

    def add_edge(self, kind: str, source: str, target: str):
        self.edges.append(Edge(kind, source, target))

    def out_edges(self, node_id: str, kind: str | None = None) -> list[Edge]:
        return [
            e
            for e in self.edges
            if e.source == node_id and (kind is None or e.kind == kind)
        ]

    def find_cycle(self) -> list[str] | None:
        """Return one cycle as a node-ID path, or None if acyclic."""
        adjacency: dict[str, list[str]] = {}
        for edge in self.edges:
            adjacency.setdefault(edge.source, []).append(edge.target)
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {node_id: WHITE for node_id in self.nodes}
        stack: list[str] = []

        def visit(node_id: str) -> list[str] | None:
            color[node_id] = GRAY
            stack.append(node_id)
            for target in adjacency.get(node_id, ()):
                if color.get(target, BLACK) == GRAY:
                    return stack[stack.index(target):] + [target]
                if color.get(target, BLACK) == WHITE:
                    found = visit(target)
                    if found:
                        return found
            stack.pop()
            color[node_id] = BLACK
            return None

        for node_id in list(self.nodes):
            if color[node_id] == WHITE:
                found = visit(node_id)
                if found:
                    return found
        return None


def build_trace_graph(model: OversightModel, analysis: Analysis) -> TraceGraph:
    """Assemble the trace graph for a semantically valid model.

    Dangling derivation references (normally pre-empted by
    ``validate_semantics``) raise ``UnresolvedReferenceError``; a cycle
    among derivation elements raises ``TraceCycleError``.
    """
    graph = TraceGraph()
    graph.add_node(PATTERN_NODE_ID, PATTERN)
    graph.add_node(SYSTEM_AGENT, SYSTEM_AGENT_KIND)
    for role in analysis.roles:
        graph.add_node(role.role_ident, ROLE)
    gap_by_role: dict[str, str] = {}
    for gap in analysis.gaps:
        graph.add_node(gap.gap_id, GAP)
        graph.add_edge(INSTANTIATES, gap.gap_id, PATTERN_NODE_ID)
        graph.add_edge(INSTANTIATES, gap.gap_id, gap.role.role_ident)
        gap_by_role[gap.role.role_ident] = gap.gap_id

    if model.derivation is None:
        return graph

    block = model.derivation
    for goal in block.goals:
        graph.add_node(goal.ident, GOAL)
        for sub in goal.subgoals:
            graph.add_node(sub.ident, SUBGOAL)
    for obstacle in block.obstacles:
        graph.add_node(obstacle.ident, OBSTACLE)
    for req in block.requirements:
        graph.add_node(req.ident, REQUIREMENT)

    def require(node_id: str, what: str):
        if node_id not in graph.nodes:
            raise UnresolvedReferenceError(f"unresolved {what} '{node_id}'")

    for goal in block.goals:
        for role_ident in goal.mitigates:
            require(role_ident, "role")
            graph.add_edge(MITIGATES, goal.ident, gap_by_role[role_ident])
        for sub in goal.subgoals:
            graph.add_edge(REFINES, sub.ident, goal.ident)
            if sub.agent is not None:
                require(sub.agent, "agent")
                graph.add_edge(ASSIGNED, sub.ident, sub.agent)
    for obstacle in block.obstacles:
        require(obstacle.blocks, "goal")
        graph.add_edge(BLOCKS, obstacle.ident, obstacle.blocks)
    for req in block.requirements:
        require(req.addresses, "obstacle")
        graph.add_edge(ADDRESSES, req.ident, req.addresses)

    cycle = graph.find_cycle()
    if cycle is not None:
        raise TraceCycleError(cycle)
    return graph
