"""Derivation scaffolding, pipeline step 4.

Turns gap instances into a goal-oriented derivation skeleton: one goal
per archetype gap, a human-assigned and a system-assigned subgoal under
it, one obstacle per subgoal, and one system-side plus one human-side
requirement stub per obstacle.  Placeholder texts are TODO markers that
quote the gap description, so generated files are self-documenting and
ready for analyst editing.  Gaps whose role cell is not an archetype are
skipped; if none remain there is nothing to scaffold.
"""

from __future__ import annotations

from .analysis import GapInstance, RoleInstance
from .model import SYSTEM_AGENT, DerivationBlock, Goal, Obstacle, Requirement, Subgoal


class NothingToScaffoldError(ValueError):
    """No archetype gaps available to derive requirements from."""


def scaffold_derivation(
    gaps: list[GapInstance] | tuple[GapInstance, ...],
    roles: list[RoleInstance] | tuple[RoleInstance, ...],
) -> DerivationBlock:
    archetype_gaps = [gap for gap in gaps if gap.gap_type is not None]
    if not archetype_gaps:
        raise NothingToScaffoldError("nothing to scaffold: no archetype gaps")

    goals: list[Goal] = []
    obstacles: list[Obstacle] = []
    requirements: list[Requirement] = []
    obstacle_index = 0
    for goal_index, gap in enumerate(archetype_gaps, start=1):
        gap_type = gap.gap_type
        role = gap.role.role_ident
        todo = f"TODO({gap_type.name}): {gap_type.description}"
        goal_id = f"G{goal_index}"
        subgoals = (
            Subgoal(
                ident=f"{goal_id}.1",
                agent=role,
                text=f"TODO: state what {role} ensures toward {goal_id}",
            ),
            Subgoal(
                ident=f"{goal_id}.2",
                agent=SYSTEM_AGENT,
                text=f"TODO: state what the system provides toward {goal_id}",
            ),
        )
        goals.append(
            Goal(
                ident=goal_id,
                text=todo,
                mitigates=(role,),
                subgoals=subgoals,
            )
        )
        for sub in subgoals:
            obstacle_index += 1
            oid = f"O{obstacle_index}"
            obstacles.append(
                Obstacle(
                    ident=oid,
                    blocks=sub.ident,
                    text=f"TODO: describe what may prevent {sub.ident}",
                )
            )
            requirements.append(
                Requirement(
                    ident=f"R{obstacle_index}s",
                    side="system",
                    role=None,
                    addresses=oid,
                    text=f"TODO: system-side measure mitigating {oid}",
                )
            )
            requirements.append(
                Requirement(
                    ident=f"R{obstacle_index}h",
                    side="human",
                    role=role,
                    addresses=oid,
                    text=f"TODO: human-side measure mitigating {oid}",
                )
            )

    return DerivationBlock(
        goals=tuple(goals),
        obstacles=tuple(obstacles),
        requirements=tuple(requirements),
    )
