from dataclasses import replace

import pytest

from homl.analysis import analyze
from homl.audit import audit_all
from homl.parser import parse
from homl.scaffold import NothingToScaffoldError, scaffold_derivation
from homl.semantics import validate_semantics
from homl.trace import build_trace_graph


def test_legal_scenario_counts(legal_source):
    model = replace(parse(legal_source), derivation=None)
    analysis = analyze(model)
    block = scaffold_derivation(analysis.gaps, analysis.roles)
    assert len(block.goals) == 2
    assert sum(len(g.subgoals) for g in block.goals) == 4
    assert len(block.obstacles) == 4
    assert len(block.requirements) == 8


def test_single_gap_id_scheme(scenario_a_source):
    model = parse(scenario_a_source)
    analysis = analyze(model)
    block = scaffold_derivation(analysis.gaps, analysis.roles)
    ids = (
        {g.ident for g in block.goals}
        | {s.ident for g in block.goals for s in g.subgoals}
        | {o.ident for o in block.obstacles}
        | {r.ident for r in block.requirements}
    )
    assert ids == {"G1", "G1.1", "G1.2", "O1", "O2", "R1s", "R1h", "R2s", "R2h"}


def test_goal_text_names_gap(scenario_a_source):
    analysis = analyze(parse(scenario_a_source))
    block = scaffold_derivation(analysis.gaps, analysis.roles)
    assert block.goals[0].text.startswith("TODO(Procedural gap):")
    assert block.goals[0].mitigates == ("physician",)


def test_subgoal_agents_pair_role_and_system(scenario_b_source):
    analysis = analyze(parse(scenario_b_source))
    block = scaffold_derivation(analysis.gaps, analysis.roles)
    for goal, gap in zip(block.goals, [g for g in analysis.gaps if g.gap_type]):
        assert goal.subgoals[0].agent == gap.role.role_ident
        assert goal.subgoals[1].agent == "system"


def test_nothing_to_scaffold():
    source = """\
scenario "s" {
  system {
    control: low
    transparency: low
  }
  role x {
    authority: audit
    interaction: control
  }
}
"""
    analysis = analyze(parse(source))
    with pytest.raises(NothingToScaffoldError):
        scaffold_derivation(analysis.gaps, analysis.roles)


def test_scaffold_skips_non_archetype_roles():
    source = """\
scenario "s" {
  system {
    control: high
    transparency: low
  }
  role x {
    authority: audit
    interaction: control
  }
  role op {
    authority: operational
    interaction: control
  }
}
"""
    analysis = analyze(parse(source))
    block = scaffold_derivation(analysis.gaps, analysis.roles)
    assert len(block.goals) == 1
    assert block.goals[0].mitigates == ("op",)


def test_scaffold_output_validates_and_audits_clean(corpus_source):
    model = replace(parse(corpus_source), derivation=None)
    analysis = analyze(model)
    block = scaffold_derivation(analysis.gaps, analysis.roles)
    scaffolded = replace(model, derivation=block)
    assert validate_semantics(scaffolded) == []
    graph = build_trace_graph(scaffolded, analysis)
    report = audit_all(scaffolded, analysis, graph)
    assert report.error_count == 0
    assert not [f for f in report.findings if f.rule_id.startswith("COMP")]
