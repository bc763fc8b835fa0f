import io
import sys
from pathlib import Path

import pytest

from hclab.cli import (
    MathCheckFailed,
    ScenarioError,
    emit_report,
    main,
    parse_scenario,
    run_command,
)

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


def read(name):
    return (SCENARIOS / name).read_text()


def test_parse_s2_roundtrip():
    scenario = parse_scenario(read("s2.scn"))
    again = parse_scenario(scenario.canonical_text())
    assert scenario == again


@pytest.mark.parametrize("name", ["s1.scn", "s3.scn", "s4.scn", "s5.scn"])
def test_parse_all_scenarios_roundtrip(name):
    scenario = parse_scenario(read(name))
    assert parse_scenario(scenario.canonical_text()) == scenario


def test_bad_characteristic():
    text = read("s1.scn").replace("field = Q", "field = Fp 4")
    with pytest.raises(ScenarioError, match="prime"):
        parse_scenario(text)


def test_non_normalized_group_cocycle():
    text = read("s2.scn").replace(
        "values = 1 1 1 1  1 1 1 1  1 -1 1 -1  1 -1 1 -1",
        "values = 1 2 1 1  1 1 1 1  1 -1 1 -1  1 -1 1 -1")
    with pytest.raises(MathCheckFailed, match="normalization"):
        parse_scenario(text)


def test_mutated_cocycle_names_triple():
    text = read("s2.scn").replace(
        "values = 1 1 1 1  1 1 1 1  1 -1 1 -1  1 -1 1 -1",
        "values = 1 1 1 1  1 1 1 -1  1 -1 1 -1  1 -1 1 -1")
    with pytest.raises(MathCheckFailed, match="cocycle identity"):
        parse_scenario(text)


def test_syntax_error_line_number():
    with pytest.raises(ScenarioError, match="line 2"):
        parse_scenario("field = Q\nnonsense without equals\n")


def test_missing_action_table_entry():
    text = read("s5.scn").replace("map = 1 1 : 0 -1\n", "")
    with pytest.raises(ScenarioError, match="missing"):
        parse_scenario(text)


def test_run_verify_s1():
    scenario = parse_scenario(read("s1.scn"))
    report = run_command("verify", scenario)
    assert report.passed
    assert any("cylinder" in name for name, _, _ in report.checks)


def test_run_hc_s2():
    scenario = parse_scenario(read("s2.scn"))
    report = run_command("hc", scenario)
    assert report.passed
    titles = {t: dims for t, dims in report.tables}
    assert titles["cyclic homology of the crossed product"] == [1, 0, 1]
    assert titles["cyclic homology of the total complex"] == [1, 0, 1]


def test_run_collapse_s2():
    scenario = parse_scenario(read("s2.scn"))
    report = run_command("collapse", scenario)
    assert report.passed
    titles = {t: dims for t, dims in report.tables}
    assert titles["cyclic homology, direct"] == [1, 0, 1]


def test_run_collapse_s4_refused():
    scenario = parse_scenario(read("s4.scn"))
    with pytest.raises(ScenarioError, match="semisimple"):
        run_command("collapse", scenario)


def test_run_e1_s1():
    scenario = parse_scenario(read("s1.scn"))
    report = run_command("e1", scenario)
    entries = {(p, q): d for _, p, q, d in report.pages}
    assert entries[(0, 0)] == 2 and entries[(1, 1)] == 0


def test_machine_and_human_same_data():
    scenario = parse_scenario(read("s1.scn"))
    report = run_command("hc", scenario)
    human = emit_report(report, machine=False)
    machine = emit_report(report, machine=True)
    for _, dims in report.tables:
        joined = " ".join(str(d) for d in dims)
        assert joined in machine
        assert ", ".join(f"{n}:{d}" for n, d in enumerate(dims)) in human
    assert ("overall: PASS" in human) == ("overall PASS" in machine)


def test_cli_exit_codes(tmp_path, capsys):
    target = tmp_path / "s1.scn"
    target.write_text(read("s1.scn"))
    assert main(["verify", str(target)]) == 0
    capsys.readouterr()

    bad = tmp_path / "bad.scn"
    bad.write_text(read("s1.scn").replace("field = Q", "field = Fp 4"))
    assert main(["verify", str(bad)]) == 2
    capsys.readouterr()

    mutated = tmp_path / "mut.scn"
    mutated.write_text(read("s2.scn").replace(
        "values = 1 1 1 1  1 1 1 1  1 -1 1 -1  1 -1 1 -1",
        "values = 1 1 1 1  1 1 1 -1  1 -1 1 -1  1 -1 1 -1"))
    assert main(["verify", str(mutated)]) == 1
    err = capsys.readouterr().err
    assert "cocycle identity" in err

    assert main(["verify", str(tmp_path / "missing.scn")]) == 2
    capsys.readouterr()

    capped = tmp_path / "capped.scn"
    capped.write_text(read("s2.scn"))
    assert main(["report", str(capped), "--cap", "3"]) == 3
    capsys.readouterr()


def test_cli_report_deterministic(tmp_path, capsys):
    target = tmp_path / "s5.scn"
    target.write_text(read("s5.scn"))
    assert main(["report", str(target), "--machine"]) == 0
    first = capsys.readouterr().out
    assert main(["report", str(target), "--machine"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.encode() == second.encode()
