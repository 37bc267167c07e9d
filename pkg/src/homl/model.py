"""Abstract syntax for `.homl` oversight scenario files.

A model captures exactly one scenario: one system declaration, one or
more role declarations, and an optional derivation block holding the
goal-oriented requirement derivation.  All nodes carry source spans so
downstream diagnostics can point back into the input text.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .backbone import (
    AuthorityLevel,
    ControlFrequency,
    ExtensionFactor,
    InteractionMode,
    TransparencyLevel,
)

SYSTEM_AGENT = "system"


@dataclass(frozen=True)
class SourceSpan:
    line: int  # 1-based
    column: int  # 1-based
    end_line: int
    end_column: int

    def __str__(self):
        return f"{self.line}:{self.column}"

    @classmethod
    def point(cls, line: int, column: int) -> "SourceSpan":
        return cls(line, column, line, column)


SYNTHETIC_SPAN = SourceSpan(0, 0, 0, 0)


@dataclass(frozen=True)
class Diagnostic:
    """A parse or semantic problem tied to a source location."""

    rule_id: str
    message: str
    span: SourceSpan

    def __str__(self):
        return f"{self.span}: {self.rule_id}: {self.message}"


class ParseError(Exception):
    """Raised when source text cannot be parsed into a model."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class SystemDecl:
    control: ControlFrequency
    transparency: TransparencyLevel
    extensions: tuple[ExtensionFactor, ...] = ()
    span: SourceSpan = SYNTHETIC_SPAN


@dataclass(frozen=True)
class RoleDecl:
    ident: str
    authority: AuthorityLevel
    interaction: InteractionMode
    display_name: str | None = None
    extensions: tuple[ExtensionFactor, ...] = ()
    span: SourceSpan = SYNTHETIC_SPAN


@dataclass(frozen=True)
class Subgoal:
    ident: str  # e.g. "G1.1"
    agent: str | None  # role ident, SYSTEM_AGENT, or None when unassigned
    text: str
    span: SourceSpan = SYNTHETIC_SPAN


@dataclass(frozen=True)
class Goal:
    ident: str  # e.g. "G1"
    text: str
    mitigates: tuple[str, ...] = ()  # role idents
    subgoals: tuple[Subgoal, ...] = ()
    span: SourceSpan = SYNTHETIC_SPAN


@dataclass(frozen=True)
class Obstacle:
    ident: str  # e.g. "O1"
    blocks: str  # goal or subgoal ident
    text: str
    span: SourceSpan = SYNTHETIC_SPAN


@dataclass(frozen=True)
class Requirement:
    ident: str  # e.g. "R1s" / "R1h"
    side: str  # "system" or "human"
    role: str | None  # role ident when side == "human"
    addresses: str  # obstacle ident
    text: str
    span: SourceSpan = SYNTHETIC_SPAN

    @property
    def suffix(self) -> str:
        return self.ident[-1]


@dataclass(frozen=True)
class DerivationBlock:
    goals: tuple[Goal, ...] = ()
    obstacles: tuple[Obstacle, ...] = ()
    requirements: tuple[Requirement, ...] = ()
    span: SourceSpan = SYNTHETIC_SPAN


@dataclass(frozen=True)
class OversightModel:
    scenario_name: str
    system: SystemDecl
    roles: tuple[RoleDecl, ...]
    derivation: DerivationBlock | None = None
    span: SourceSpan = SYNTHETIC_SPAN

    def role(self, ident: str) -> RoleDecl | None:
        for decl in self.roles:
            if decl.ident == ident:
                return decl
        return None


def structurally_equal(a: OversightModel, b: OversightModel) -> bool:
    """Equality that ignores source spans (used for round-trip checks)."""
    return _strip(a) == _strip(b)


def _strip(node):
    if isinstance(node, OversightModel):
        return (
            node.scenario_name,
            _strip(node.system),
            tuple(_strip(r) for r in node.roles),
            _strip(node.derivation) if node.derivation else None,
        )
    if isinstance(node, SystemDecl):
        return (node.control, node.transparency, node.extensions)
    if isinstance(node, RoleDecl):
        return (
            node.ident,
            node.display_name,
            node.authority,
            node.interaction,
            node.extensions,
        )
    if isinstance(node, DerivationBlock):
        return (
            tuple(_strip(g) for g in node.goals),
            tuple(_strip(o) for o in node.obstacles),
            tuple(_strip(r) for r in node.requirements),
        )
    if isinstance(node, Goal):
        return (
            node.ident,
            node.text,
            node.mitigates,
            tuple(_strip(s) for s in node.subgoals),
        )
    if isinstance(node, Subgoal):
        return (node.ident, node.agent, node.text)
    if isinstance(node, Obstacle):
        return (node.ident, node.blocks, node.text)
    if isinstance(node, Requirement):
        return (node.ident, node.side, node.role, node.addresses, node.text)
    raise TypeError(type(node))
