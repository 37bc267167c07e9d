"""Fixed classification tables for oversight analysis.

Three lookup tables anchor every deduction the tool makes:

* the system-side table maps (control frequency x transparency level) to
  one of four generation pattern archetypes;
* the human-side table maps (authority level x interaction mode) to one
  of twelve role cells, five of which are named role archetypes;
* the gap table maps (pattern archetype x role archetype) to one of
  twenty named responsibility gap types.

The tables are compiled into the program rather than loaded from data
files: they are normative, not configuration.  ``emit_reference_tables``
in :mod:`homl.emit` exposes them externally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType


class ControlFrequency(enum.Enum):
    """How often humans can intervene in or adjust generation."""

    HIGH = "high"
    LOW = "low"


class TransparencyLevel(enum.Enum):
    """Degree to which the model's reasoning is interpretable."""

    HIGH = "high"
    LOW = "low"


class AuthorityLevel(enum.Enum):
    """Scope of decision power assigned to a human role."""

    OPERATIONAL = "operational"
    SUPERVISORY = "supervisory"
    AUDIT = "audit"


class InteractionMode(enum.Enum):
    """How a human role engages with the generative system."""

    ACTIVE_CONTROL = "active_control"
    APPROVAL_VALIDATION = "approval_validation"
    MONITORING_AUDITING = "monitoring_auditing"
    CORRECTIVE_MAINTENANCE = "corrective_maintenance"


class PatternArchetypeName(enum.Enum):
    CO_GENERATION = "co_generation"
    BLIND_STEERING = "blind_steering"
    REVIEW_AND_APPROVE = "review_and_approve"
    AUTONOMOUS_GENERATION = "autonomous_generation"


class RoleArchetypeName(enum.Enum):
    OPERATOR = "operator"
    REVIEWER = "reviewer"
    COORDINATOR = "coordinator"
    MAINTAINER = "maintainer"
    AUDITOR = "auditor"


class RoleCellStatus(enum.Enum):
    ARCHETYPE = "archetype"
    RARE = "rare"
    LIMITED = "limited"
    UNCOMMON = "uncommon"
    DELEGATED = "delegated"
    INCOMPATIBLE = "incompatible"
    CONFLICTING = "conflicting"
    GOVERNANCE_LEVEL = "governance_level"


@dataclass(frozen=True)
class ExtensionFactor:
    """Analyst-defined qualifier attached to a system or role declaration.

    Extensions refine the backbone classification narratively; they never
    change which table cell a declaration resolves to.
    """

    key: str
    value: str
    side: str  # "system" or "human"


@dataclass(frozen=True)
class PatternArchetype:
    name: PatternArchetypeName
    display_name: str
    description: str


@dataclass(frozen=True)
class RoleCell:
    status: RoleCellStatus
    archetype: RoleArchetypeName | None
    note: str

    def __post_init__(self):
        if (self.archetype is not None) != (self.status is RoleCellStatus.ARCHETYPE):
            raise ValueError("archetype present iff status is ARCHETYPE")


@dataclass(frozen=True)
class GapType:
    name: str
    description: str
    pattern: PatternArchetypeName
    role: RoleArchetypeName

    @property
    def ident(self) -> str:
        """Stable snake_case identifier, e.g. ``accountability_gap``."""
        return self.name.lower().replace(" ", "_")


_PATTERNS = {
    (ControlFrequency.HIGH, TransparencyLevel.HIGH): PatternArchetype(
        PatternArchetypeName.CO_GENERATION,
        "Co-generation",
        "systems where humans and the model collaborate continuously with "
        "high interpretability and frequent control, such as interactive "
        "design support or adaptive writing assistants.",
    ),
    (ControlFrequency.HIGH, TransparencyLevel.LOW): PatternArchetype(
        PatternArchetypeName.BLIND_STEERING,
        "Blind steering",
        "systems with frequent human interventions but limited visibility "
        "into the model reasoning, such as real-time recommendation tools "
        "with opaque decision updates.",
    ),
    (ControlFrequency.LOW, TransparencyLevel.HIGH): PatternArchetype(
        PatternArchetypeName.REVIEW_AND_APPROVE,
        "Review and approve",
        "systems where the model produces interpretable outputs that humans "
        "validate after generation, such as structured content generation or "
        "report synthesis systems.",
    ),
    (ControlFrequency.LOW, TransparencyLevel.LOW): PatternArchetype(
        PatternArchetypeName.AUTONOMOUS_GENERATION,
        "Autonomous generation",
        "systems that operate independently with minimal interpretability or "
        "control, such as automated summarization or decision-support "
        "modules functioning without intermediate feedback.",
    ),
}

_A = AuthorityLevel
_I = InteractionMode
_S = RoleCellStatus
_R = RoleArchetypeName

_ROLE_CELLS = {
    (_A.OPERATIONAL, _I.ACTIVE_CONTROL): RoleCell(
        _S.ARCHETYPE, _R.OPERATOR,
        "performs direct control of generative processes through continuous "
        "interaction.",
    ),
    (_A.OPERATIONAL, _I.APPROVAL_VALIDATION): RoleCell(
        _S.RARE, None,
        "Rare configuration; validation normally requires independent "
        "authority.",
    ),
    (_A.OPERATIONAL, _I.MONITORING_AUDITING): RoleCell(
        _S.LIMITED, None,
        "Limited oversight value; duplicates operational actions.",
    ),
    (_A.OPERATIONAL, _I.CORRECTIVE_MAINTENANCE): RoleCell(
        _S.ARCHETYPE, _R.MAINTAINER,
        "performs adjustments and corrections after generation.",
    ),
    (_A.SUPERVISORY, _I.ACTIVE_CONTROL): RoleCell(
        _S.UNCOMMON, None,
        "Uncommon; high authority rarely performs low-level control.",
    ),
    (_A.SUPERVISORY, _I.APPROVAL_VALIDATION): RoleCell(
        _S.ARCHETYPE, _R.REVIEWER,
        "validates or approves generative outcomes.",
    ),
    (_A.SUPERVISORY, _I.MONITORING_AUDITING): RoleCell(
        _S.ARCHETYPE, _R.COORDINATOR,
        "oversees processes and manages communication among actors.",
    ),
    (_A.SUPERVISORY, _I.CORRECTIVE_MAINTENANCE): RoleCell(
        _S.DELEGATED, None,
        "Typically delegated; supervisors set corrective policies but seldom "
        "act directly.",
    ),
    (_A.AUDIT, _I.ACTIVE_CONTROL): RoleCell(
        _S.INCOMPATIBLE, None,
        "Incompatible with audit independence.",
    ),
    (_A.AUDIT, _I.APPROVAL_VALIDATION): RoleCell(
        _S.CONFLICTING, None,
        "Conflicts with audit mandate.",
    ),
    (_A.AUDIT, _I.MONITORING_AUDITING): RoleCell(
        _S.ARCHETYPE, _R.AUDITOR,
        "retrospectively evaluates compliance and traceability.",
    ),
    (_A.AUDIT, _I.CORRECTIVE_MAINTENANCE): RoleCell(
        _S.GOVERNANCE_LEVEL, None,
        "Governance-level; links audit outcomes to organizational policy.",
    ),
}

_P = PatternArchetypeName

# (pattern, role archetype) -> (gap name, description)
_GAP_DATA = {
    (_P.CO_GENERATION, _R.OPERATOR): (
        "Procedural gap",
        "uncertainty about when to intervene or hand over control during "
        "shared generation cycles.",
    ),
    (_P.CO_GENERATION, _R.REVIEWER): (
        "Redundancy gap",
        "overlapping validation steps cause duplicated effort and unclear "
        "division of accountability.",
    ),
    (_P.CO_GENERATION, _R.COORDINATOR): (
        "Coordination gap",
        "boundaries between operational and supervisory authority are "
        "undefined, leading to unclear oversight.",
    ),
    (_P.CO_GENERATION, _R.MAINTAINER): (
        "Temporal gap",
        "maintenance updates lag behind active generation, creating "
        "misaligned responsibility over time.",
    ),
    (_P.CO_GENERATION, _R.AUDITOR): (
        "Trace gap",
        "frequent revisions obscure provenance and weaken auditability of "
        "collaborative outputs.",
    ),
    (_P.BLIND_STEERING, _R.OPERATOR): (
        "Epistemic gap",
        "operator makes interventions without understanding the model’s "
        "reasoning or underlying logic.",
    ),
    (_P.BLIND_STEERING, _R.REVIEWER): (
        "Informational gap",
        "reviewer must approve opaque results without access to sufficient "
        "explanatory information.",
    ),
    (_P.BLIND_STEERING, _R.COORDINATOR): (
        "Delegation gap",
        "coordinator lacks visibility into model behavior, limiting capacity "
        "to allocate responsibility.",
    ),
    (_P.BLIND_STEERING, _R.MAINTAINER): (
        "Visibility gap",
        "maintainer corrects issues without causal insight into how or why "
        "they occurred.",
    ),
    (_P.BLIND_STEERING, _R.AUDITOR): (
        "Traceability gap",
        "audit logs are incomplete, leaving the source and accountability "
        "chain uncertain.",
    ),
    (_P.REVIEW_AND_APPROVE, _R.OPERATOR): (
        "Normative gap",
        "operator is accountable for outcomes but lacks the authority to "
        "influence the system’s behavior.",
    ),
    (_P.REVIEW_AND_APPROVE, _R.REVIEWER): (
        "Credibility gap",
        "reviewer depends on partial or unreliable model evidence when "
        "approving outputs.",
    ),
    (_P.REVIEW_AND_APPROVE, _R.COORDINATOR): (
        "Escalation gap",
        "overlapping supervision tiers create confusion about who must "
        "respond to identified issues.",
    ),
    (_P.REVIEW_AND_APPROVE, _R.MAINTAINER): (
        "Feedback gap",
        "delayed return of information blurs accountability for timely "
        "corrective action.",
    ),
    (_P.REVIEW_AND_APPROVE, _R.AUDITOR): (
        "Control gap",
        "auditor detects noncompliance but lacks the mandate or tools to "
        "intervene directly.",
    ),
    (_P.AUTONOMOUS_GENERATION, _R.OPERATOR): (
        "Disempowerment gap",
        "human remains accountable for outcomes produced by unseen or "
        "autonomous processes.",
    ),
    (_P.AUTONOMOUS_GENERATION, _R.REVIEWER): (
        "Accountability gap",
        "reviewer formally approves automation results they have no "
        "authority to modify.",
    ),
    (_P.AUTONOMOUS_GENERATION, _R.COORDINATOR): (
        "Ownership gap",
        "distributed actors share responsibility, yet none assume clear "
        "accountability for outcomes.",
    ),
    (_P.AUTONOMOUS_GENERATION, _R.MAINTAINER): (
        "Reactive gap",
        "maintainer acts only after harm occurs, leaving preventive "
        "responsibility unassigned.",
    ),
    (_P.AUTONOMOUS_GENERATION, _R.AUDITOR): (
        "Moral gap",
        "accountability is deferred to post hoc justification once "
        "consequences become visible.",
    ),
}

_GAPS = {
    key: GapType(name, desc, key[0], key[1])
    for key, (name, desc) in _GAP_DATA.items()
}


@dataclass(frozen=True)
class BackboneCatalog:
    """The complete static catalog: 4 + 12 + 20 cells."""

    system_table: MappingProxyType
    human_table: MappingProxyType
    gap_table: MappingProxyType


_CATALOG = BackboneCatalog(
    system_table=MappingProxyType(_PATTERNS),
    human_table=MappingProxyType(_ROLE_CELLS),
    gap_table=MappingProxyType(_GAPS),
)


def classify_pattern(
    control: ControlFrequency, transparency: TransparencyLevel
) -> PatternArchetype:
    """Resolve a (control, transparency) pair to its pattern archetype."""
    return _PATTERNS[(control, transparency)]


def classify_role_cell(
    authority: AuthorityLevel, interaction: InteractionMode
) -> RoleCell:
    """Resolve an (authority, interaction) pair to its role cell."""
    return _ROLE_CELLS[(authority, interaction)]


def lookup_gap(
    pattern: PatternArchetypeName, archetype: RoleArchetypeName
) -> GapType:
    """Resolve a (pattern, role archetype) pair to its gap type."""
    return _GAPS[(pattern, archetype)]


def pattern_by_name(name: PatternArchetypeName) -> PatternArchetype:
    for archetype in _PATTERNS.values():
        if archetype.name is name:
            return archetype
    raise KeyError(name)


def catalog() -> BackboneCatalog:
    """Return the full static catalog; identical on every call."""
    return _CATALOG
