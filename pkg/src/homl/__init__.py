"""Oversight requirements compiler for GenAI-enabled systems.

Parses `.homl` scenario models, classifies the system and its human
roles against fixed backbone tables, deduces responsibility gap
instances, scaffolds goal-oriented oversight requirement derivations,
audits them for completeness, consistency, and traceability, and emits
traceable analysis artifacts (JSON / Markdown / CSV).
"""

__version__ = "0.1.0"

from .analysis import (
    Analysis,
    GapInstance,
    PatternInstance,
    RoleInstance,
    analyze,
    analyze_gaps,
    analyze_roles,
    analyze_system,
)
from .audit import AuditReport, Finding, Severity, audit_all
from .backbone import (
    AuthorityLevel,
    BackboneCatalog,
    ControlFrequency,
    ExtensionFactor,
    GapType,
    InteractionMode,
    PatternArchetype,
    PatternArchetypeName,
    RoleArchetypeName,
    RoleCell,
    RoleCellStatus,
    TransparencyLevel,
    catalog,
    classify_pattern,
    classify_role_cell,
    lookup_gap,
)
from .emit import ArtifactBundle, emit_bundle, emit_csv, emit_json, emit_markdown, emit_reference_tables
from .model import (
    DerivationBlock,
    Diagnostic,
    Goal,
    Obstacle,
    OversightModel,
    ParseError,
    Requirement,
    RoleDecl,
    Subgoal,
    SystemDecl,
    structurally_equal,
)
from .parser import parse
from .render import render_source
from .scaffold import NothingToScaffoldError, scaffold_derivation
from .semantics import validate_semantics
from .trace import TraceCycleError, TraceGraph, build_trace_graph

__all__ = [name for name in dir() if not name.startswith("_")]
