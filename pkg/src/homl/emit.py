"""Artifact emission: canonical JSON, Markdown, and CSV renderings.

The JSON artifact is the machine-readable record of one analyzed
scenario (``schema_version`` "1", schema published in
``homl/schemas/artifact.schema.json``).  Canonical form: UTF-8, LF,
2-space indent, lexicographically sorted keys, arrays in declaration
order.  Markdown targets CommonMark; CSV follows RFC 4180 with LF
terminators.  All emitters are deterministic: same model, same bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources

from .analysis import Analysis
from .audit import AuditReport
from .backbone import RoleCellStatus, catalog
from .model import DerivationBlock, OversightModel
from .trace import TraceGraph

SCHEMA_VERSION = "1"


@dataclass(frozen=True)
class ArtifactBundle:
    json: bytes
    markdown: str
    csv: str
    produced_from: str  # model digest
    schema_version: str = SCHEMA_VERSION


def load_schema() -> dict:
    """The published JSON schema for the artifact document."""
    text = (
        resources.files("homl.schemas")
        .joinpath("artifact.schema.json")
        .read_text(encoding="utf-8")
    )
    return json.loads(text)


def _extensions_doc(extensions) -> list[dict]:
    return [{"key": e.key, "value": e.value} for e in extensions]


def _derivation_doc(block: DerivationBlock | None):
    if block is None:
        return None
    return {
        "goals": [
            {
                "id": goal.ident,
                "text": goal.text,
                "mitigates": list(goal.mitigates),
                "subgoals": [
                    {"id": sub.ident, "agent": sub.agent, "text": sub.text}
                    for sub in goal.subgoals
                ],
            }
            for goal in block.goals
        ],
        "obstacles": [
            {"id": o.ident, "blocks": o.blocks, "text": o.text}
            for o in block.obstacles
        ],
        "requirements": [
            {
                "id": r.ident,
                "side": r.side,
                "role": r.role,
                "addresses": r.addresses,
                "text": r.text,
            }
            for r in block.requirements
        ],
    }


def build_document(
    model: OversightModel,
    analysis: Analysis,
    graph: TraceGraph,
    report: AuditReport,
) -> dict:
    roles_doc = []
    for role in analysis.roles:
        decl = model.role(role.role_ident)
        entry = {
            "ident": role.role_ident,
            "display_name": decl.display_name if decl else None,
            "authority": role.authority.value,
            "interaction": role.interaction.value,
            "cell_status": role.cell.status.value,
            "extensions": _extensions_doc(role.extensions),
        }
        if role.cell.archetype is not None:
            entry["archetype"] = role.cell.archetype.value
        roles_doc.append(entry)

    gaps_doc = []
    for gap in analysis.gaps:
        entry = {
            "gap_id": gap.gap_id,
            "role": gap.role.role_ident,
            "qualifier": gap.qualifier,
        }
        if gap.gap_type is not None:
            entry["gap_type"] = gap.gap_type.ident
        gaps_doc.append(entry)

    return {
        "schema_version": SCHEMA_VERSION,
        "scenario": model.scenario_name,
        "system": {
            "control": analysis.pattern.control.value,
            "transparency": analysis.pattern.transparency.value,
            "extensions": _extensions_doc(analysis.pattern.extensions),
            "pattern": analysis.pattern.archetype.name.value,
        },
        "roles": roles_doc,
        "gaps": gaps_doc,
        "derivation": _derivation_doc(model.derivation),
        "trace_edges": [
            {"kind": e.kind, "source": e.source, "target": e.target}
            for e in graph.edges
        ],
        "audit": {
            "findings": [
                {
                    "rule_id": f.rule_id,
                    "severity": f.severity.value,
                    "message": f.message,
                    "subject": f.subject,
                }
                for f in report.findings
            ],
            "summary": {
                "errors": report.error_count,
                "warnings": report.warning_count,
                "attributes": dict(report.attribute_summary),
                "model_digest": report.model_digest,
            },
        },
    }


def canonical_json(document: dict) -> bytes:
    text = json.dumps(
        document, indent=2, sort_keys=True, ensure_ascii=False
    )
    return (text + "\n").encode("utf-8")


def emit_json(
    model: OversightModel,
    analysis: Analysis,
    graph: TraceGraph,
    report: AuditReport,
) -> bytes:
    return canonical_json(build_document(model, analysis, graph, report))


def _md_escape(text: str) -> str:
    return text.replace("|", "\\|")


def emit_markdown(
    model: OversightModel,
    analysis: Analysis,
    graph: TraceGraph,
    report: AuditReport,
) -> str:
    pattern = analysis.pattern.archetype
    lines = [
        f"# Oversight analysis: {model.scenario_name}",
        "",
        "## System pattern",
        "",
        f"- Control: {analysis.pattern.control.value}",
        f"- Transparency: {analysis.pattern.transparency.value}",
    ]
    for ext in analysis.pattern.extensions:
        lines.append(f"- Extension: {ext.key} = {ext.value}")
    lines += [
        "",
        f"**{pattern.display_name}** — {pattern.description}",
        "",
        "## Roles",
        "",
        "| Role | Authority | Interaction | Cell |",
        "| --- | --- | --- | --- |",
    ]
    for role in analysis.roles:
        if role.cell.archetype is not None:
            cell_text = role.cell.archetype.value.capitalize()
        else:
            cell_text = _md_escape(role.cell.note)
        lines.append(
            f"| {role.role_ident} | {role.authority.value} "
            f"| {role.interaction.value} | {cell_text} |"
        )

    lines += [
        "",
        "## Responsibility gaps",
        "",
        "| Gap | Role | Archetype / status | Gap type | Qualifier "
        "| Mitigating goals |",
        "| --- | --- | --- | --- | --- | --- |",
    ]
    mitigating: dict[str, list[str]] = {}
    if model.derivation is not None:
        gap_by_role = {g.role.role_ident: g.gap_id for g in analysis.gaps}
        for goal in model.derivation.goals:
            for role_ident in goal.mitigates:
                gap_id = gap_by_role.get(role_ident)
                if gap_id is not None:
                    mitigating.setdefault(gap_id, []).append(goal.ident)
    for gap in analysis.gaps:
        if gap.gap_type is not None:
            status = gap.role.cell.archetype.value.capitalize()
            gap_name = gap.gap_type.name
        else:
            status = _md_escape(gap.role.cell.note)
            gap_name = "—"
        goals = ", ".join(mitigating.get(gap.gap_id, [])) or "—"
        lines.append(
            f"| {gap.gap_id} | {gap.role.role_ident} | {status} "
            f"| {gap_name} | {gap.qualifier or '—'} | {goals} |"
        )

    lines += ["", "## Derivation", ""]
    if model.derivation is None:
        lines.append("No derivation block is present in this model.")
    else:
        block = model.derivation
        obstacles_by_block: dict[str, list] = {}
        for obstacle in block.obstacles:
            obstacles_by_block.setdefault(obstacle.blocks, []).append(obstacle)
        reqs_by_obstacle: dict[str, list] = {}
        for req in block.requirements:
            reqs_by_obstacle.setdefault(req.addresses, []).append(req)
        for goal in block.goals:
            suffix = (
                " (mitigates " + ", ".join(goal.mitigates) + ")"
                if goal.mitigates
                else ""
            )
            lines.append(f"### {goal.ident}{suffix}")
            lines += ["", goal.text, ""]
            targets = [(goal.ident, None)] + [
                (sub.ident, sub) for sub in goal.subgoals
            ]
            for target_id, sub in targets:
                if sub is not None:
                    agent = sub.agent or "unassigned"
                    lines.append(f"- **{sub.ident}** [{agent}] {sub.text}")
                for obstacle in obstacles_by_block.get(target_id, []):
                    lines.append(
                        f"  - Obstacle **{obstacle.ident}**: {obstacle.text}"
                    )
                    for req in reqs_by_obstacle.get(obstacle.ident, []):
                        actor = (
                            "system" if req.side == "system" else req.role
                        )
                        lines.append(
                            f"    - **{req.ident}** ({actor}): {req.text}"
                        )
            lines.append("")

    lines += ["## Audit", ""]
    lines.append(
        f"Errors: {report.error_count}, warnings: {report.warning_count}."
    )
    lines.append("")
    for attribute, passed in report.attribute_summary.items():
        verdict = "pass" if passed else "fail"
        lines.append(f"- {attribute}: {verdict}")
    if report.findings:
        lines.append("")
        for finding in report.findings:
            lines.append(f"- {finding}")
    lines.append("")
    lines.append(f"Model digest: `{report.model_digest}`")
    return "\n".join(lines) + "\n"


def emit_csv(analysis: Analysis) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["gap_id", "role", "pattern", "archetype", "gap_type", "qualifier"]
    )
    for gap in analysis.gaps:
        writer.writerow([
            gap.gap_id,
            gap.role.role_ident,
            gap.pattern.archetype.name.value,
            gap.role.cell.archetype.value if gap.role.cell.archetype else "",
            gap.gap_type.ident if gap.gap_type else "",
            gap.qualifier,
        ])
    return buffer.getvalue()


def emit_bundle(
    model: OversightModel,
    analysis: Analysis,
    graph: TraceGraph,
    report: AuditReport,
) -> ArtifactBundle:
    return ArtifactBundle(
        json=emit_json(model, analysis, graph, report),
        markdown=emit_markdown(model, analysis, graph, report),
        csv=emit_csv(analysis),
        produced_from=report.model_digest,
    )


def emit_reference_tables(format: str = "markdown") -> str:
    """Render the full static catalog (4 + 12 + 20 cells)."""
    data = catalog()
    if format == "json":
        doc = {
            "system_table": [
                {
                    "control": control.value,
                    "transparency": transparency.value,
                    "pattern": archetype.name.value,
                    "display_name": archetype.display_name,
                    "description": archetype.description,
                }
                for (control, transparency), archetype
                in data.system_table.items()
            ],
            "human_table": [
                {
                    "authority": authority.value,
                    "interaction": interaction.value,
                    "status": cell.status.value,
                    "archetype": cell.archetype.value if cell.archetype else None,
                    "note": cell.note,
                }
                for (authority, interaction), cell in data.human_table.items()
            ],
            "gap_table": [
                {
                    "pattern": gap.pattern.value,
                    "role": gap.role.value,
                    "name": gap.name,
                    "gap_type": gap.ident,
                    "description": gap.description,
                }
                for gap in data.gap_table.values()
            ],
        }
        return canonical_json(doc).decode("utf-8")
    if format != "markdown":
        raise ValueError(f"unknown format {format!r}")

    lines = ["# Reference tables", "", "## System-side patterns", ""]
    lines += ["| Control | Transparency | Pattern | Description |",
              "| --- | --- | --- | --- |"]
    for (control, transparency), archetype in catalog().system_table.items():
        lines.append(
            f"| {control.value} | {transparency.value} "
            f"| {archetype.display_name} | {_md_escape(archetype.description)} |"
        )
    lines += ["", "## Human-side role cells", "",
              "| Authority | Interaction | Cell | Note |",
              "| --- | --- | --- | --- |"]
    for (authority, interaction), cell in catalog().human_table.items():
        name = cell.archetype.value.capitalize() if cell.archetype else cell.status.value
        lines.append(
            f"| {authority.value} | {interaction.value} | {name} "
            f"| {_md_escape(cell.note)} |"
        )
    lines += ["", "## Responsibility gap types", "",
              "| Pattern | Role | Gap | Description |",
              "| --- | --- | --- | --- |"]
    for gap in catalog().gap_table.values():
        lines.append(
            f"| {gap.pattern.value} | {gap.role.value} | {gap.name} "
            f"| {_md_escape(gap.description)} |"
        )
    return "\n".join(lines) + "\n"
