"""Command-line interface: exit codes, output formats, input resolution."""

import json

import pytest

from kuranil import catalog
from kuranil.algebra import ComplexStructureAlgebra, LieAlgebra, parse_salamon
from kuranil.cli import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    CheckResult,
    InputError,
    load_algebra,
    main,
    run_entry_checks,
)
from kuranil.kuranishi import KuranishiReport, analyze


# -- input resolution --------------------------------------------------------


def test_load_algebra_resolves_catalog_names_and_aliases():
    assert load_algebra("(0,0,12)").name == "(0,0,12)"
    assert load_algebra("heisenberg").name == "(0,0,12)"
    assert load_algebra("  HEISENBERG ").name == "(0,0,12)"
    assert isinstance(load_algebra("general7"), ComplexStructureAlgebra)


def test_load_algebra_parses_inline_structure_strings():
    L = load_algebra("(0,0,12,13,23)")
    assert isinstance(L, LieAlgebra)
    assert L.dim == 5
    with pytest.raises(InputError):
        load_algebra("(0,0,99)")


def test_load_algebra_sniffs_file_formats(tmp_path):
    brackets = tmp_path / "heis.txt"
    brackets.write_text("dim 3\nbracket 1 2 = -1*3\n")
    L = load_algebra(str(brackets))
    assert isinstance(L, LieAlgebra)
    assert L.bracket(1, 2) == {3: -1}

    structure = tmp_path / "mixed.alg"
    structure.write_text("# comment\ndim 7\ndw6 = w1^w2\ndw7 = w3^w4 + cw1^w5\n")
    csa = load_algebra(str(structure))
    assert isinstance(csa, ComplexStructureAlgebra)
    assert csa.classify() == "generic"


def test_load_algebra_rejects_unresolvable_targets(tmp_path):
    with pytest.raises(InputError):
        load_algebra("definitely-not-an-algebra")
    bad = tmp_path / "bad.txt"
    bad.write_text("dim 3\nbracket 1 = nonsense\n")
    with pytest.raises(InputError):
        load_algebra(str(bad))


# -- analyze -----------------------------------------------------------------


def test_analyze_text_report(capsys):
    assert main(["analyze", "(0,0,0,12)"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "h^1(Theta)" in out
    assert "t1_2*t3_1 - t1_1*t3_2" in out
    assert "smooth         no" in out


def test_analyze_json_round_trips_to_equal_report(capsys):
    assert main(["analyze", "heisenberg", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    report = KuranishiReport.from_dict(payload)
    assert report == analyze(catalog.get("heisenberg").build())
    assert report["smooth"] is True


def test_analyze_file_input(tmp_path, capsys):
    path = tmp_path / "heis.txt"
    path.write_text("dim 3\nbracket 1 2 = -1*3\n")
    assert main(["analyze", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "smooth         yes" in out


def test_analyze_complex_structure_file_uses_general_path(capsys):
    assert main(["analyze", "general7"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "kind           generic" in out
    assert "phi_2" in out


def test_analyze_general_flag_on_parallelisable_input(capsys):
    assert main(["analyze", "(0,0,12)", "--general", "--max-degree", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "kind           parallelisable" in out
    assert "max degree     2" in out


def test_analyze_unknown_target_is_input_error(capsys):
    assert main(["analyze", "no-such-thing"]) == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err


# -- catalog -----------------------------------------------------------------


def test_catalog_json_lists_every_entry(capsys):
    assert main(["catalog", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload) == len(list(catalog.entries())) == 16
    by_name = {row["name"]: row for row in payload}
    assert by_name["(0,0,12)"]["smooth"] is True
    assert by_name["(0,0,0,12,13)"]["cylinder_dim"] == 9
    assert by_name["general7"]["kind"] == "general"


def test_catalog_table_output(capsys):
    assert main(["catalog"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "name" in out and "(0,0,12,13,23)" in out


# -- verify ------------------------------------------------------------------


def test_verify_fast_subset_passes(capsys):
    rc = main(["verify", "a_2", "(0,0,12)", "(0,0,0,12)", "--timeout", "60"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "[FAIL]" not in out
    assert "PASSED" in out.splitlines()[-1]


def test_verify_with_lex_order(capsys):
    rc = main(["verify", "(0,0,0,12)", "--order", "lex", "--timeout", "60"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "[FAIL]" not in out


def test_verify_jobs_flag_runs_entries_concurrently(capsys):
    rc = main(["verify", "a_2", "a_3", "(0,0,12,13)", "--jobs", "2",
               "--timeout", "60"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert out.splitlines()[-1].startswith("PASSED")


def test_verify_tiny_timeout_reports_documented_skip(capsys):
    rc = main(["verify", "(0,0,0,12,13+24)", "--timeout", "2"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK  # SKIP is not a failure
    assert "[SKIP] (0,0,0,12,13+24) :: intersection" in out
    assert "SKIPPED 1" in out.splitlines()[-1]


def test_verify_unknown_entry_is_input_error(capsys):
    assert main(["verify", "not-in-catalog"]) == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err


def test_verify_all_selector_expands_to_every_entry(monkeypatch, capsys):
    from kuranil import cli

    seen = {}

    def fake_checks(names=None, timeout=300.0, order=None, jobs=1):
        seen["names"] = names
        return [CheckResult("x", "invariants", "PASS")]

    monkeypatch.setattr(cli, "run_catalog_checks", fake_checks)
    assert main(["verify", "all"]) == EXIT_OK
    assert seen["names"] is None  # full catalog requested
    capsys.readouterr()


def test_verify_failure_exit_code(monkeypatch, capsys):
    from kuranil import cli

    def fake_checks(names=None, timeout=300.0, order=None, jobs=1):
        return [CheckResult("x", "invariants", "FAIL", "forced")]

    monkeypatch.setattr(cli, "run_catalog_checks", fake_checks)
    assert main(["verify", "a_1"]) == EXIT_CHECK_FAILED
    assert "[FAIL] x :: invariants" in capsys.readouterr().out


def test_run_entry_checks_detects_wrong_expectations():
    entry = catalog.CatalogEntry(
        name="wrong", dim=3, nu=2, computed_h1=99, smooth=False,
        salamon="(0,0,12)")
    results = run_entry_checks(entry)
    invariants = [r for r in results if r.check == "invariants"]
    assert invariants and invariants[0].status == "FAIL"
    assert not invariants[0].ok
