"""Driving the pipeline from scenario files, as the CLI does.

Scenario files are small sectioned key-value texts; parsing runs every
construction-time axiom check, so a file that parses is already a
verified mathematical object.  The same machinery backs the hclab
command line:

    hclab verify   scenarios/s2.scn
    hclab hc       scenarios/s2.scn
    hclab e1       scenarios/s4.scn --machine
    hclab collapse scenarios/s3.scn
    hclab report   scenarios/s1.scn

Exit codes: 0 all checks pass, 1 a mathematical identity failed,
2 invalid input, 3 resource cap exceeded.
"""

from pathlib import Path

from hclab.cli import emit_report, parse_scenario, run_command

scenarios = Path(__file__).resolve().parent.parent / "scenarios"

scenario = parse_scenario((scenarios / "s2.scn").read_text())
print("parsed and validated the sign-cocycle scenario;",
      "canonical form round-trips:",
      parse_scenario(scenario.canonical_text()) == scenario)

report = run_command("hc", scenario)
print(emit_report(report))

print("machine rendering of the collapse command:")
print(emit_report(run_command("collapse", scenario), machine=True))
