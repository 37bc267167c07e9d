import json

import jsonschema
import pytest

from homl.analysis import analyze
from homl.audit import audit_all
from homl.emit import (
    SCHEMA_VERSION,
    build_document,
    emit_bundle,
    emit_csv,
    emit_json,
    emit_markdown,
    emit_reference_tables,
    load_schema,
)
from homl.parser import parse
from homl.trace import build_trace_graph


def _pipeline(source):
    model = parse(source)
    analysis = analyze(model)
    graph = build_trace_graph(model, analysis)
    report = audit_all(model, analysis, graph)
    return model, analysis, graph, report


def test_document_core_fields(legal_source):
    doc = build_document(*_pipeline(legal_source))
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["scenario"] == "legal-contract-review"
    assert doc["system"]["pattern"] == "autonomous_generation"
    assert doc["system"]["control"] == "low"
    assert doc["system"]["extensions"] == [
        {"key": "sensitivity", "value": "high"}
    ]
    idents = [r["ident"] for r in doc["roles"]]
    assert idents == ["reviewer", "coordinator"]
    assert doc["roles"][0]["archetype"] == "reviewer"
    assert doc["roles"][0]["cell_status"] == "archetype"
    assert doc["gaps"][0] == {
        "gap_id": "X1",
        "role": "reviewer",
        "gap_type": "accountability_gap",
        "qualifier": "under sensitivity=high",
    }
    assert doc["audit"]["summary"]["errors"] == 0
    assert doc["derivation"] is not None


def test_document_without_derivation(scenario_a_source):
    doc = build_document(*_pipeline(scenario_a_source))
    assert doc["derivation"] is None
    assert doc["system"]["pattern"] == "co_generation"
    assert doc["gaps"][0]["gap_type"] == "procedural_gap"


def test_json_is_canonical(legal_source):
    payload = emit_json(*_pipeline(legal_source))
    text = payload.decode("utf-8")
    assert text.endswith("\n")
    assert "\r" not in text
    doc = json.loads(text)
    recoded = (
        json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    )
    assert recoded.encode("utf-8") == payload


def test_json_emission_is_byte_stable(corpus_source):
    first = emit_json(*_pipeline(corpus_source))
    second = emit_json(*_pipeline(corpus_source))
    assert first == second


def test_artifacts_validate_against_schema(corpus_source):
    schema = load_schema()
    jsonschema.Draft202012Validator.check_schema(schema)
    doc = build_document(*_pipeline(corpus_source))
    jsonschema.validate(doc, schema)


def test_schema_rejects_extra_keys(legal_source):
    doc = build_document(*_pipeline(legal_source))
    doc["unexpected"] = True
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, load_schema())


def test_markdown_contains_gap_rows(legal_source):
    text = emit_markdown(*_pipeline(legal_source))
    assert "# Oversight analysis: legal-contract-review" in text
    assert "| X1 | reviewer |" in text
    assert "Accountability gap" in text
    assert "under sensitivity=high" in text
    assert "G1" in text
    assert text.endswith("\n")


def test_markdown_without_derivation(scenario_b_source):
    text = emit_markdown(*_pipeline(scenario_b_source))
    assert "No derivation block is present in this model." in text


def test_csv_rows(legal_source):
    _, analysis, _, _ = _pipeline(legal_source)
    text = emit_csv(analysis)
    lines = text.split("\n")
    assert lines[0] == "gap_id,role,pattern,archetype,gap_type,qualifier"
    assert lines[1] == (
        "X1,reviewer,autonomous_generation,reviewer,"
        "accountability_gap,under sensitivity=high"
    )
    assert lines[2] == (
        "X2,coordinator,autonomous_generation,coordinator,"
        "ownership_gap,under sensitivity=high"
    )
    assert lines[3] == ""
    assert len(lines) == 4


def test_csv_quotes_embedded_commas():
    source = """\
scenario "s" {
  system {
    control: low
    transparency: low
    extension context = "audits, external"
  }
  role reviewer {
    authority: supervisory
    interaction: validation
  }
}
"""
    _, analysis, _, _ = _pipeline(source)
    text = emit_csv(analysis)
    assert '"under context=audits, external"' in text


def test_bundle_ties_artifacts_together(legal_source):
    model, analysis, graph, report = _pipeline(legal_source)
    bundle = emit_bundle(model, analysis, graph, report)
    assert bundle.produced_from == report.model_digest
    assert bundle.schema_version == SCHEMA_VERSION
    assert bundle.json == emit_json(model, analysis, graph, report)
    assert bundle.csv == emit_csv(analysis)


def test_reference_tables_markdown_counts():
    text = emit_reference_tables("markdown")
    headers = {
        "| Control | Transparency | Pattern | Description |",
        "| Authority | Interaction | Cell | Note |",
        "| Pattern | Role | Gap | Description |",
    }
    rows = [line for line in text.splitlines() if line.startswith("|")]
    data_rows = [
        r for r in rows if not r.startswith("| ---") and r not in headers
    ]
    assert len(data_rows) == 4 + 12 + 20


def test_reference_tables_json_counts():
    doc = json.loads(emit_reference_tables("json"))
    assert len(doc["system_table"]) == 4
    assert len(doc["human_table"]) == 12
    assert len(doc["gap_table"]) == 20


def test_reference_tables_rejects_unknown_format():
    with pytest.raises(ValueError):
        emit_reference_tables("xml")


def test_reference_tables_are_stable():
    assert emit_reference_tables("markdown") == emit_reference_tables("markdown")
    assert emit_reference_tables("json") == emit_reference_tables("json")
