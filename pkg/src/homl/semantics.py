"""Semantic validation of parsed oversight models.

Checks that every cross-reference in the derivation block resolves and
that identifier forms follow the labeling scheme: goals ``G<n>``,
subgoals ``G<n>.<m>``, obstacles ``O<k>``, requirements ``R<k>s`` /
``R<k>h`` with the suffix matching the declared side.  Each violation
yields one located diagnostic; an empty result means the model is
semantically valid.
"""

from __future__ import annotations

import re

from .model import SYSTEM_AGENT, Diagnostic, OversightModel

_TOP_GOAL_RE = re.compile(r"G[0-9]+\Z")


def validate_semantics(model: OversightModel) -> list[Diagnostic]:
    diagnostics: list[Diagnostic] = []
    role_idents = {role.ident for role in model.roles}
    if model.derivation is None:
        return diagnostics
    block = model.derivation

    goal_ids: set[str] = set()
    seen: set[str] = set()

    def check_unique(ident, span):
        if ident in seen:
            diagnostics.append(
                Diagnostic("SEM-DUPLICATE-ID", f"duplicate ID '{ident}'", span)
            )
        seen.add(ident)

    for goal in block.goals:
        check_unique(goal.ident, goal.span)
        goal_ids.add(goal.ident)
        if not _TOP_GOAL_RE.match(goal.ident):
            diagnostics.append(
                Diagnostic(
                    "SEM-ID-FORM",
                    f"top-level goal ID '{goal.ident}' must have form G<n>",
                    goal.span,
                )
            )
        for role in goal.mitigates:
            if role not in role_idents:
                diagnostics.append(
                    Diagnostic(
                        "SEM-UNRESOLVED-ROLE",
                        f"goal {goal.ident} mitigates undeclared role "
                        f"'{role}'",
                        goal.span,
                    )
                )
        for sub in goal.subgoals:
            check_unique(sub.ident, sub.span)
            goal_ids.add(sub.ident)
            if not sub.ident.startswith(goal.ident + ".") or not re.match(
                r"[0-9]+\Z", sub.ident[len(goal.ident) + 1 :]
            ):
                diagnostics.append(
                    Diagnostic(
                        "SEM-ID-FORM",
                        f"subgoal ID '{sub.ident}' must have form "
                        f"{goal.ident}.<m>",
                        sub.span,
                    )
                )
            if sub.agent is not None and sub.agent != SYSTEM_AGENT:
                if sub.agent not in role_idents:
                    diagnostics.append(
                        Diagnostic(
                            "SEM-UNRESOLVED-ROLE",
                            f"subgoal {sub.ident} assigned to undeclared "
                            f"role '{sub.agent}'",
                            sub.span,
                        )
                    )

    obstacle_ids: set[str] = set()
    for obstacle in block.obstacles:
        check_unique(obstacle.ident, obstacle.span)
        obstacle_ids.add(obstacle.ident)
        if obstacle.blocks not in goal_ids:
            diagnostics.append(
                Diagnostic(
                    "SEM-UNRESOLVED-GOAL",
                    f"obstacle {obstacle.ident} blocks unknown goal "
                    f"'{obstacle.blocks}'",
                    obstacle.span,
                )
            )

    for req in block.requirements:
        check_unique(req.ident, req.span)
        expected_suffix = "s" if req.side == "system" else "h"
        if req.suffix != expected_suffix:
            diagnostics.append(
                Diagnostic(
                    "SEM-SIDE-MISMATCH",
                    f"requirement {req.ident} declared with side "
                    f"'{req.side}' but ID suffix is '{req.suffix}'",
                    req.span,
                )
            )
        if req.side == "human" and req.role not in role_idents:
            diagnostics.append(
                Diagnostic(
                    "SEM-UNRESOLVED-ROLE",
                    f"requirement {req.ident} assigned to undeclared role "
                    f"'{req.role}'",
                    req.span,
                )
            )
        if req.addresses not in obstacle_ids:
            diagnostics.append(
                Diagnostic(
                    "SEM-UNRESOLVED-OBSTACLE",
                    f"requirement {req.ident} addresses unknown obstacle "
                    f"'{req.addresses}'",
                    req.span,
                )
            )

    return diagnostics
