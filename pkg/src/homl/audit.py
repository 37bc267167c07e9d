"""Quality audit of a model, its analysis, and its trace graph.

Three rule families, each mapped to a quality attribute:

===========  ========  ===============================================
rule         severity  fires when
===========  ========  ===============================================
COMP-1       Error     an archetype gap is mitigated by no goal
COMP-2       Error     a subgoal has no assigned agent
COMP-3       Error     an obstacle is addressed by no requirement
COMP-4       Warning   an obstacle lacks a system-side/human-side pair
COMP-5       Warning   a top-level goal mitigates no gap
CONS-1       Error     a role sits in an incompatible/conflicting cell
CONS-2       Warning   a role sits in any other non-archetype cell
CONS-3       Error     duplicate role idents or duplicate role shapes
TRACE-1      Error     a requirement's chain to (pattern, role) breaks
TRACE-2      Error     the trace graph contains a cycle
TRACE-3      Warning   ID numbering has holes (e.g. O1, O3 without O2)
===========  ========  ===============================================

Rule IDs are a compatibility contract; severities never change between
releases without a schema version bump.
"""

from __future__ import annotations

import enum
import hashlib
import re
from dataclasses import dataclass, field

from .analysis import Analysis
from .backbone import RoleCellStatus, classify_role_cell
from .model import OversightModel, SourceSpan
from .render import render_source
from .trace import (
    ADDRESSES,
    BLOCKS,
    GAP,
    GOAL,
    INSTANTIATES,
    MITIGATES,
    OBSTACLE,
    PATTERN,
    REFINES,
    REQUIREMENT,
    ROLE,
    SUBGOAL,
    TraceGraph,
)


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Finding:
    rule_id: str
    severity: Severity
    message: str
    subject: str
    location: SourceSpan | None = None

    @property
    def attribute(self) -> str:
        return _ATTRIBUTE_BY_PREFIX[self.rule_id.split("-")[0]]

    def __str__(self):
        sev = self.severity.value
        return f"{self.rule_id} [{sev}] {self.subject}: {self.message}"


_ATTRIBUTE_BY_PREFIX = {
    "COMP": "completeness",
    "CONS": "consistency",
    "TRACE": "traceability",
    "CONF": "conformance",
}

ATTRIBUTES = ("completeness", "consistency", "traceability", "conformance")

RULE_CATALOG = (
    ("COMP-1", Severity.ERROR, "Archetype gap is mitigated by no goal."),
    ("COMP-2", Severity.ERROR, "Subgoal has no assigned agent."),
    ("COMP-3", Severity.ERROR, "Obstacle is addressed by no requirement."),
    ("COMP-4", Severity.WARNING,
     "Obstacle lacks at least one system-side and one human-side requirement."),
    ("COMP-5", Severity.WARNING, "Top-level goal mitigates no gap."),
    ("CONS-1", Severity.ERROR,
     "Role occupies an incompatible or conflicting cell."),
    ("CONS-2", Severity.WARNING,
     "Role occupies an atypical (non-archetype) cell."),
    ("CONS-3", Severity.ERROR,
     "Duplicate role identifiers or duplicate role configurations."),
    ("TRACE-1", Severity.ERROR,
     "Requirement chain to (pattern, role) does not fully resolve."),
    ("TRACE-2", Severity.ERROR, "Trace graph contains a cycle."),
    ("TRACE-3", Severity.WARNING, "Identifier numbering has holes."),
)


@dataclass(frozen=True)
class AuditReport:
    findings: tuple[Finding, ...]
    counts: dict  # severity value -> int
    attribute_summary: dict  # attribute -> bool (pass)
    model_digest: str

    @property
    def error_count(self) -> int:
        return self.counts.get(Severity.ERROR.value, 0)

    @property
    def warning_count(self) -> int:
        return self.counts.get(Severity.WARNING.value, 0)


def audit_completeness(
    model: OversightModel, analysis: Analysis, graph: TraceGraph
) -> list[Finding]:
    findings: list[Finding] = []

    mitigated_gaps = {
        edge.target for edge in graph.edges if edge.kind == MITIGATES
    }
    for gap in analysis.gaps:
        if gap.gap_type is not None and gap.gap_id not in mitigated_gaps:
            findings.append(
                Finding(
                    "COMP-1",
                    Severity.ERROR,
                    f"{gap.gap_type.name} for role '{gap.role.role_ident}' "
                    f"is mitigated by no goal",
                    subject=gap.gap_id,
                )
            )

    block = model.derivation
    if block is None:
        return findings

    for goal in block.goals:
        for sub in goal.subgoals:
            if sub.agent is None:
                findings.append(
                    Finding(
                        "COMP-2",
                        Severity.ERROR,
                        f"subgoal {sub.ident} has no assigned agent",
                        subject=sub.ident,
                        location=sub.span,
                    )
                )

    reqs_by_obstacle: dict[str, list] = {}
    for req in block.requirements:
        reqs_by_obstacle.setdefault(req.addresses, []).append(req)
    for obstacle in block.obstacles:
        reqs = reqs_by_obstacle.get(obstacle.ident, [])
        if not reqs:
            findings.append(
                Finding(
                    "COMP-3",
                    Severity.ERROR,
                    f"obstacle {obstacle.ident} is addressed by no "
                    f"requirement",
                    subject=obstacle.ident,
                    location=obstacle.span,
                )
            )
        else:
            sides = {req.side for req in reqs}
            if sides != {"system", "human"}:
                missing = "human" if "human" not in sides else "system"
                findings.append(
                    Finding(
                        "COMP-4",
                        Severity.WARNING,
                        f"obstacle {obstacle.ident} has no {missing}-side "
                        f"requirement",
                        subject=obstacle.ident,
                        location=obstacle.span,
                    )
                )

    for goal in block.goals:
        if not goal.mitigates:
            findings.append(
                Finding(
                    "COMP-5",
                    Severity.WARNING,
                    f"goal {goal.ident} mitigates no gap",
                    subject=goal.ident,
                    location=goal.span,
                )
            )
    return findings


def audit_consistency(model: OversightModel) -> list[Finding]:
    findings: list[Finding] = []
    for decl in model.roles:
        cell = classify_role_cell(decl.authority, decl.interaction)
        if cell.status in (RoleCellStatus.INCOMPATIBLE, RoleCellStatus.CONFLICTING):
            findings.append(
                Finding(
                    "CONS-1",
                    Severity.ERROR,
                    f"role '{decl.ident}' "
                    f"({decl.authority.value}, {decl.interaction.value}): "
                    f"{cell.note}",
                    subject=decl.ident,
                    location=decl.span,
                )
            )
        elif cell.status is not RoleCellStatus.ARCHETYPE:
            findings.append(
                Finding(
                    "CONS-2",
                    Severity.WARNING,
                    f"role '{decl.ident}' "
                    f"({decl.authority.value}, {decl.interaction.value}): "
                    f"{cell.note}",
                    subject=decl.ident,
                    location=decl.span,
                )
            )

    seen_idents: set[str] = set()
    seen_shapes: dict[tuple, str] = {}
    for decl in model.roles:
        if decl.ident in seen_idents:
            findings.append(
                Finding(
                    "CONS-3",
                    Severity.ERROR,
                    f"duplicate role identifier '{decl.ident}'",
                    subject=decl.ident,
                    location=decl.span,
                )
            )
        seen_idents.add(decl.ident)
        shape = (decl.authority, decl.interaction, frozenset(decl.extensions))
        if shape in seen_shapes:
            findings.append(
                Finding(
                    "CONS-3",
                    Severity.ERROR,
                    f"role '{decl.ident}' duplicates the configuration of "
                    f"role '{seen_shapes[shape]}'",
                    subject=decl.ident,
                    location=decl.span,
                )
            )
        else:
            seen_shapes[shape] = decl.ident
    return findings


def _chain_resolves(graph: TraceGraph, req_id: str) -> bool:
    obstacles = [
        e.target for e in graph.out_edges(req_id, ADDRESSES)
        if e.target in graph.nodes
    ]
    if not obstacles:
        return False
    for obstacle_id in obstacles:
        for blocked in (
            e.target for e in graph.out_edges(obstacle_id, BLOCKS)
            if e.target in graph.nodes
        ):
            kind = graph.nodes[blocked].kind
            if kind == SUBGOAL:
                goal_ids = [
                    e.target for e in graph.out_edges(blocked, REFINES)
                    if e.target in graph.nodes
                ]
            elif kind == GOAL:
                goal_ids = [blocked]
            else:
                continue
            for goal_id in goal_ids:
                for gap_id in (
                    e.target for e in graph.out_edges(goal_id, MITIGATES)
                    if e.target in graph.nodes
                ):
                    targets = {
                        graph.nodes[e.target].kind
                        for e in graph.out_edges(gap_id, INSTANTIATES)
                        if e.target in graph.nodes
                    }
                    if {PATTERN, ROLE} <= targets:
                        return True
    return False


def audit_traceability(graph: TraceGraph) -> list[Finding]:
    findings: list[Finding] = []
    requirement_ids = sorted(
        node_id
        for node_id, node in graph.nodes.items()
        if node.kind == REQUIREMENT
    )
    for req_id in requirement_ids:
        if not _chain_resolves(graph, req_id):
            findings.append(
                Finding(
                    "TRACE-1",
                    Severity.ERROR,
                    f"requirement {req_id} has no resolvable chain to a "
                    f"(pattern, role) gap",
                    subject=req_id,
                )
            )

    cycle = graph.find_cycle()
    if cycle is not None:
        findings.append(
            Finding(
                "TRACE-2",
                Severity.ERROR,
                "cycle: " + " -> ".join(cycle),
                subject=cycle[0],
            )
        )

    findings.extend(_numbering_findings(graph))
    return findings


def _numbering_findings(graph: TraceGraph) -> list[Finding]:
    findings: list[Finding] = []
    series = {
        "goal": (GOAL, re.compile(r"G([0-9]+)\Z")),
        "obstacle": (OBSTACLE, re.compile(r"O([0-9]+)\Z")),
        "requirement": (REQUIREMENT, re.compile(r"R([0-9]+)[sh]\Z")),
    }
    for label, (kind, pattern) in series.items():
        numbers = set()
        for node_id, node in graph.nodes.items():
            if node.kind != kind:
                continue
            match = pattern.match(node_id)
            if match:
                numbers.add(int(match.group(1)))
        if not numbers:
            continue
        missing = sorted(set(range(1, max(numbers) + 1)) - numbers)
        if missing:
            findings.append(
                Finding(
                    "TRACE-3",
                    Severity.WARNING,
                    f"{label} numbering skips "
                    + ", ".join(str(n) for n in missing),
                    subject=f"{label}s",
                )
            )
    return findings


def audit_all(
    model: OversightModel, analysis: Analysis, graph: TraceGraph
) -> AuditReport:
    findings = (
        audit_completeness(model, analysis, graph)
        + audit_consistency(model)
        + audit_traceability(graph)
    )
    counts: dict[str, int] = {}
    for finding in findings:
        key = finding.severity.value
        counts[key] = counts.get(key, 0) + 1
    summary = {
        attribute: not any(
            f.severity is Severity.ERROR and f.attribute == attribute
            for f in findings
        )
        for attribute in ATTRIBUTES
    }
    digest = hashlib.sha256(render_source(model).encode("utf-8")).hexdigest()
    return AuditReport(
        findings=tuple(findings),
        counts=counts,
        attribute_summary=summary,
        model_digest=digest,
    )
