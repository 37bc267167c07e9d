import shutil

import pytest

from homl.cli import EXIT_FINDINGS, EXIT_IO, EXIT_OK, EXIT_USAGE, run
from homl.model import structurally_equal
from homl.parser import parse

from conftest import CORPUS_DIR


@pytest.fixture
def legal_path(tmp_path):
    target = tmp_path / "legal_review.homl"
    shutil.copy(CORPUS_DIR / "legal_review.homl", target)
    return target


@pytest.fixture
def scenario_b_path(tmp_path):
    target = tmp_path / "scenario_b.homl"
    shutil.copy(CORPUS_DIR / "scenario_b.homl", target)
    return target


def test_check_clean_file(legal_path, capsys):
    assert run(["check", str(legal_path)]) == EXIT_OK
    assert capsys.readouterr().err == ""


def test_check_reports_diagnostics(tmp_path, capsys):
    bad = tmp_path / "bad.homl"
    bad.write_text('scenario "x" {\n', encoding="utf-8")
    assert run(["check", str(bad)]) == EXIT_FINDINGS
    err = capsys.readouterr().err
    assert str(bad) in err
    assert "SYN-ERROR" in err


def test_check_missing_file_is_io_error(tmp_path, capsys):
    assert run(["check", str(tmp_path / "nope.homl")]) == EXIT_IO
    assert "cannot read" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(legal_path, capsys):
    assert run(["check", "--bogus", str(legal_path)]) == EXIT_USAGE
    capsys.readouterr()


def test_gaps_output(legal_path, capsys):
    assert run(["gaps", str(legal_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "pattern: Autonomous generation" in out
    assert "X1 reviewer: Accountability gap under sensitivity=high" in out
    assert "X2 coordinator: Ownership gap under sensitivity=high" in out


def test_init_writes_parseable_template(tmp_path, capsys):
    path = tmp_path / "new.homl"
    assert run(["init", str(path)]) == EXIT_OK
    parse(path.read_text(encoding="utf-8"))
    assert run(["init", str(path)]) == EXIT_IO
    assert run(["init", str(path), "--force"]) == EXIT_OK
    capsys.readouterr()


def test_derive_refuses_existing_derivation(legal_path, capsys):
    before = legal_path.read_text(encoding="utf-8")
    assert run(["derive", str(legal_path)]) == EXIT_FINDINGS
    assert "--force" in capsys.readouterr().err
    assert legal_path.read_text(encoding="utf-8") == before


def test_derive_then_audit_clean(scenario_b_path, capsys):
    assert run(["audit", str(scenario_b_path)]) == EXIT_FINDINGS
    assert "COMP-1" in capsys.readouterr().err
    assert run(["derive", str(scenario_b_path)]) == EXIT_OK
    assert run(["check", str(scenario_b_path)]) == EXIT_OK
    assert run(["audit", str(scenario_b_path)]) == EXIT_OK
    err = capsys.readouterr().err
    assert "errors: 0, warnings: 0" in err
    derived = parse(scenario_b_path.read_text(encoding="utf-8"))
    assert derived.derivation is not None


def test_derive_to_separate_output(scenario_b_path, tmp_path, capsys):
    out = tmp_path / "derived.homl"
    assert run(["derive", str(scenario_b_path), "--output", str(out)]) == EXIT_OK
    original = parse(scenario_b_path.read_text(encoding="utf-8"))
    assert original.derivation is None
    assert parse(out.read_text(encoding="utf-8")).derivation is not None
    capsys.readouterr()


def test_derive_with_nothing_to_scaffold(tmp_path, capsys):
    path = tmp_path / "bare.homl"
    path.write_text(
        'scenario "s" {\n'
        "  system {\n"
        "    control: low\n"
        "    transparency: low\n"
        "  }\n"
        "  role off_cell {\n"
        "    authority: operational\n"
        "    interaction: monitoring\n"
        "  }\n"
        "}\n",
        encoding="utf-8",
    )
    assert run(["derive", str(path)]) == EXIT_FINDINGS
    capsys.readouterr()


def test_audit_strict_fails_on_warnings(tmp_path, capsys):
    path = tmp_path / "warn.homl"
    path.write_text(
        'scenario "s" {\n'
        "  system {\n"
        "    control: low\n"
        "    transparency: low\n"
        "  }\n"
        "  role odd {\n"
        "    authority: operational\n"
        "    interaction: validation\n"
        "  }\n"
        "}\n",
        encoding="utf-8",
    )
    assert run(["audit", str(path)]) == EXIT_OK
    assert run(["audit", str(path), "--strict"]) == EXIT_FINDINGS
    err = capsys.readouterr().err
    assert "CONS-2" in err


def test_render_json_round_trips(legal_path, tmp_path, capsys):
    out = tmp_path / "artifact.json"
    assert run(["render", str(legal_path), "--output", str(out)]) == EXIT_OK
    import json

    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["schema_version"] == "1"
    assert doc["system"]["pattern"] == "autonomous_generation"
    capsys.readouterr()


def test_render_csv_to_stdout(legal_path, capsys):
    assert run(["render", str(legal_path), "--format", "csv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("gap_id,role,pattern,archetype,gap_type,qualifier\n")


def test_render_md(legal_path, capsys):
    assert run(["render", str(legal_path), "--format", "md"]) == EXIT_OK
    assert "## Responsibility gaps" in capsys.readouterr().out


def test_render_is_byte_stable(legal_path, tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(["render", str(legal_path), "--output", str(a)])
    run(["render", str(legal_path), "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


def test_tables_command(capsys):
    assert run(["tables"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "# Reference tables" in out
    assert run(["tables", "--format", "json"]) == EXIT_OK
    import json

    doc = json.loads(capsys.readouterr().out)
    assert len(doc["gap_table"]) == 20


def test_derive_preserves_original_declarations(scenario_b_path, capsys):
    original = parse(scenario_b_path.read_text(encoding="utf-8"))
    run(["derive", str(scenario_b_path)])
    derived = parse(scenario_b_path.read_text(encoding="utf-8"))
    from dataclasses import replace

    assert structurally_equal(original, replace(derived, derivation=None))
    capsys.readouterr()
