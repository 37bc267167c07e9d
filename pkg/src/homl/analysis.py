"""Deductive analysis pipeline, steps 1-3.

Step 1 resolves the system declaration to a pattern instance, step 2
resolves each role declaration to a role instance, and step 3 pairs the
pattern with every role to produce gap instances.  Extensions ride along
unmodified; they qualify the resulting gap labels but never influence
which table cell is selected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .backbone import (
    ExtensionFactor,
    GapType,
    PatternArchetype,
    RoleCell,
    RoleCellStatus,
    classify_pattern,
    classify_role_cell,
    lookup_gap,
)
from .backbone import AuthorityLevel, ControlFrequency, InteractionMode, TransparencyLevel
from .model import OversightModel, RoleDecl, SystemDecl


@dataclass(frozen=True)
class PatternInstance:
    archetype: PatternArchetype
    control: ControlFrequency
    transparency: TransparencyLevel
    extensions: tuple[ExtensionFactor, ...]


@dataclass(frozen=True)
class RoleInstance:
    role_ident: str
    cell: RoleCell
    authority: AuthorityLevel
    interaction: InteractionMode
    extensions: tuple[ExtensionFactor, ...]

    @property
    def is_archetype(self) -> bool:
        return self.cell.status is RoleCellStatus.ARCHETYPE


@dataclass(frozen=True)
class GapInstance:
    gap_id: str  # X1, X2, ... in role declaration order
    pattern: PatternInstance
    role: RoleInstance
    gap_type: GapType | None  # absent for non-archetype role cells
    qualifier: str  # e.g. "under sensitivity=high"; empty when no extensions


@dataclass(frozen=True)
class Analysis:
    """Steps 1-3 bundled: one pattern, roles in declaration order, gaps."""

    pattern: PatternInstance
    roles: tuple[RoleInstance, ...]
    gaps: tuple[GapInstance, ...]


def analyze_system(decl: SystemDecl) -> PatternInstance:
    return PatternInstance(
        archetype=classify_pattern(decl.control, decl.transparency),
        control=decl.control,
        transparency=decl.transparency,
        extensions=decl.extensions,
    )


def analyze_roles(decls: list[RoleDecl] | tuple[RoleDecl, ...]) -> list[RoleInstance]:
    if not decls:
        raise ValueError("at least one role declaration is required")
    return [
        RoleInstance(
            role_ident=decl.ident,
            cell=classify_role_cell(decl.authority, decl.interaction),
            authority=decl.authority,
            interaction=decl.interaction,
            extensions=decl.extensions,
        )
        for decl in decls
    ]


def gap_qualifier(pattern: PatternInstance) -> str:
    if not pattern.extensions:
        return ""
    pairs = ", ".join(f"{e.key}={e.value}" for e in pattern.extensions)
    return f"under {pairs}"


def analyze_gaps(
    pattern: PatternInstance, roles: list[RoleInstance] | tuple[RoleInstance, ...]
) -> list[GapInstance]:
    qualifier = gap_qualifier(pattern)
    gaps = []
    for index, role in enumerate(roles, start=1):
        gap_type = None
        if role.is_archetype:
            gap_type = lookup_gap(pattern.archetype.name, role.cell.archetype)
        gaps.append(
            GapInstance(
                gap_id=f"X{index}",
                pattern=pattern,
                role=role,
                gap_type=gap_type,
                qualifier=qualifier,
            )
        )
    return gaps


def analyze(model: OversightModel) -> Analysis:
    """Run steps 1-3 over a parsed model."""
    pattern = analyze_system(model.system)
    roles = analyze_roles(model.roles)
    gaps = analyze_gaps(pattern, roles)
    return Analysis(pattern=pattern, roles=tuple(roles), gaps=tuple(gaps))
