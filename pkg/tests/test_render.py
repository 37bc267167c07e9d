from dataclasses import replace

from homl.model import structurally_equal
from homl.parser import parse
from homl.render import render_source


def test_render_is_deterministic(legal_source):
    model = parse(legal_source)
    assert render_source(model) == render_source(model)


def test_render_parse_is_idempotent(corpus_source):
    model = parse(corpus_source)
    rendered = render_source(model)
    again = render_source(parse(rendered))
    assert rendered == again


def test_declaration_order_preserved(legal_source):
    model = parse(legal_source)
    reordered = replace(model, roles=tuple(reversed(model.roles)))
    rendered = render_source(reordered)
    assert rendered.index("role coordinator") < rendered.index("role reviewer")


def test_no_derivation_section_when_absent(scenario_a_source):
    model = parse(scenario_a_source)
    assert model.derivation is None
    assert "derivation" not in render_source(model)


def test_canonical_formatting(legal_source):
    rendered = render_source(parse(legal_source))
    lines = rendered.split("\n")
    assert lines[0].startswith('scenario "')
    assert all(not line.endswith(" ") for line in lines)
    assert rendered.endswith("}\n")
    # 2-space indentation steps
    assert "  system {" in lines
    assert "    control: low" in lines
