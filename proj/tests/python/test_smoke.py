"""Smoke tests for the pybind11 module."""

import os
import subprocess

import pytest

import semprop

FIXTURES = os.environ.get("SEMPROP_FIXTURE_DIR", "tests/fixtures")


def fixture(name: str) -> str:
    return os.path.join(FIXTURES, name)


def test_registry_has_35_builtins():
    names = semprop.registry_names()
    assert len(names) == 35
    assert "require" in names
    assert "time-complexity" in names


def test_registry_entry_lookup_resolves_aliases():
    entry = semprop.registry_entry("modify")
    assert entry["name"] == "modifies"
    assert entry["category"] == "Contracts"
    concurrency = semprop.registry_entry("concurrency")
    assert concurrency["formality"] == "formal"
    with pytest.raises(semprop.UsageError):
        semprop.registry_entry("frobnicate")


def test_isoff_fixture_parses_six_instances():
    constructs = semprop.constructs([fixture("isoff.java")])
    features = [c for c in constructs if c["kind"] == "feature"]
    assert len(features) == 1
    names = [p["name"] for p in features[0]["properties"]]
    assert names == ["concurrency", "require", "modify", "param", "return", "review"]
    require = features[0]["properties"][1]
    assert require["payload_kind"] == "expression"
    assert require["expression"] == "(thread != null)"


def test_lint_flags_misplaced_invariant(tmp_path):
    source = tmp_path / "bad.java"
    source.write_text(
        "class T {\n"
        "  /** d.\n"
        "   * @invariant (x > 0) misplaced\n"
        "   */\n"
        "  void f() { }\n"
        "}\n"
    )
    codes = {d["code"] for d in semprop.lint([str(source)])}
    assert "SP020" in codes


def test_implies_verdicts():
    assert semprop.implies("(x > 0)", "(x >= 0)")["verdict"] == "true"
    narrowed = semprop.implies("(x >= 0)", "(x > 0)")
    assert narrowed["verdict"] == "false"
    assert narrowed["witness"] == "x=0"


def test_translate_round_trip():
    tags = semprop.translate(fixture("scanner.e"), "eiffel-indexing", "java-doc-comment")
    assert "@description The Extended BON scanner." in tags


def test_flatten_shows_inherited_description():
    text = semprop.flatten([fixture("p.java"), fixture("c.java")], "C")
    assert "Computes the frob index for a widget." in text


def test_kind_queries():
    assert semprop.kind_ancestors(fixture("loop.kind"), "Loop") == {
        "ComputationalStructure"
    }
    assert semprop.kind_parts(fixture("loop.kind"), "Loop") == {
        "InitialState",
        "IncrementFunction",
        "GuardPredicate",
        "LoopBody",
    }


def test_conform_reports_missing_feature():
    codes = {
        d["code"]
        for d in semprop.conform(fixture("stack.ebon"), [fixture("stack.java")])
    }
    assert "SP051" in codes
    assert "SP053" in codes


def test_fnv1a64_reference_vector():
    assert semprop.fnv1a64_hex("") == "cbf29ce484222325"
    assert semprop.fnv1a64_hex("foobar") == "85944171f73967e8"


def test_cli_binary_matches_bindings():
    cli = os.environ.get("SEMPROP_CLI")
    if not cli:
        pytest.skip("SEMPROP_CLI not set")
    proc = subprocess.run(
        [cli, "registry", "list"], capture_output=True, text=True, check=True
    )
    assert len(proc.stdout.splitlines()) == len(semprop.registry_names())


def test_coverage_buckets():
    report = semprop.coverage([fixture("isoff.java")])
    assert report["feature"]["total"] == 1
    assert report["feature"]["documented"] == 1
    assert report["feature"]["coverage_percent"] == 100.0
    assert report["missing_required"] == []
