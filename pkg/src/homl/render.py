"""Canonical source rendering for oversight models.

Rendering is the inverse of parsing: the output re-parses to a
structurally equal model.  Formatting is fixed (2-space indentation, one
declaration per line, LF endings) so rendered files are stable targets
for diffs and digests.
"""

from __future__ import annotations

import re

from .backbone import ExtensionFactor
from .model import DerivationBlock, Goal, OversightModel, RoleDecl, SystemDecl
from .parser import INTERACTION_KEYWORDS

_INTERACTION_WORDS = {mode: word for word, mode in INTERACTION_KEYWORDS.items()}
_IDENT_OK = re.compile(r"[a-z][a-z0-9_]*\Z")


def _quote(text: str) -> str:
    escaped = (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\t", "\\t")
    )
    return f'"{escaped}"'


def _ext_value(value: str) -> str:
    # Bare identifier where possible, quoted string otherwise.
    return value if _IDENT_OK.match(value) else _quote(value)


def _extensions(extensions: tuple[ExtensionFactor, ...], indent: str) -> list[str]:
    return [
        f"{indent}extension {ext.key} = {_ext_value(ext.value)}"
        for ext in extensions
    ]


def _system(decl: SystemDecl) -> list[str]:
    lines = [
        "  system {",
        f"    control: {decl.control.value}",
        f"    transparency: {decl.transparency.value}",
    ]
    lines.extend(_extensions(decl.extensions, "    "))
    lines.append("  }")
    return lines


def _role(decl: RoleDecl) -> list[str]:
    head = f"  role {decl.ident}"
    if decl.display_name is not None:
        head += f" {_quote(decl.display_name)}"
    lines = [
        head + " {",
        f"    authority: {decl.authority.value}",
        f"    interaction: {_INTERACTION_WORDS[decl.interaction]}",
    ]
    lines.extend(_extensions(decl.extensions, "    "))
    lines.append("  }")
    return lines


def _goal(goal: Goal) -> list[str]:
    head = f"    goal {goal.ident} {_quote(goal.text)}"
    if goal.mitigates:
        head += " mitigates " + ", ".join(goal.mitigates)
    if not goal.subgoals:
        return [head]
    lines = [head + " {"]
    for sub in goal.subgoals:
        piece = f"      subgoal {sub.ident}"
        if sub.agent is not None:
            piece += f" for {sub.agent}"
        piece += f" {_quote(sub.text)}"
        lines.append(piece)
    lines.append("    }")
    return lines


def _derivation(block: DerivationBlock) -> list[str]:
    lines = ["  derivation {"]
    for goal in block.goals:
        lines.extend(_goal(goal))
    for obstacle in block.obstacles:
        lines.append(
            f"    obstacle {obstacle.ident} blocks {obstacle.blocks} "
            f"{_quote(obstacle.text)}"
        )
    for req in block.requirements:
        actor = "system" if req.side == "system" else f"human({req.role})"
        lines.append(
            f"    requirement {req.ident} {actor} addresses {req.addresses} "
            f"{_quote(req.text)}"
        )
    lines.append("  }")
    return lines


def render_source(model: OversightModel) -> str:
    """Render a model to canonical `.homl` source text."""
    lines = [f"scenario {_quote(model.scenario_name)} {{"]
    lines.extend(_system(model.system))
    for role in model.roles:
        lines.extend(_role(role))
    if model.derivation is not None:
        lines.extend(_derivation(model.derivation))
    lines.append("}")
    return "\n".join(lines) + "\n"
