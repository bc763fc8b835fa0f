"""Scenario ingestion and the hclab command-line driver.

Scenario files are line-oriented sectioned key-value text::

    # comments start with '#'
    field = Q                  # or: field = Fp 2
    [hopf]
    kind = group
    group = C2xC2              # C{n}, C{n}xC{m}..., S3
    [algebra]
    kind = ground              # ground | group G | functions G |
                               # dual_numbers | matrix n | table ...
    [action]
    kind = trivial             # trivial | permutation | table
    # permutation lines:  perm = H_INDEX : j0 j1 ...
    # table lines:        map = H_INDEX A_INDEX : c0 c1 ...
    [cocycle]
    kind = trivial             # trivial | group_table | table
    values = 1 1 1 1  1 1 1 1  1 -1 1 -1  1 -1 1 -1
    [compute]
    max_degree = 2
    max_p = 2
    max_q = 2
    cap = 200000

Scalars are integers or fractions 'a/b'.  Every construction-time axiom
check (Hopf axioms, cocommutativity, weak action, the three cocycle
conditions, convolution invertibility) runs at ingestion; a violation is
an input error.  Commands: verify, hc, e1, e2, collapse, report.  Exit
codes: 0 all checks pass, 1 a mathematical check failed, 2 invalid
input, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field as dc_field

from .algebra import (
    FiniteGroup, FinDimAlgebra, GroupTableError, dual_numbers,
    function_algebra, ground_algebra, group_algebra, matrix_algebra,
    validate_algebra,
)
from .crossed import (
    ActionMap, Cocycle, GroupCocycleError, build_crossed_product,
    convolution_inverse, lift_group_cocycle, trivial_action,
    trivial_cocycle, twisted_scalar_algebra, validate_cocycle,
    validate_weak_action, verify_action_upgrade,
)
from .cycliccore import cyclic_homology_mixed, cyclic_homology_of_algebra
from .cylinder import (
    build_cylinder, check_cylindrical, check_coefficient_action,
    check_row_identification, tot_mixed_complex,
)
from .exactlinalg import DimensionCapExceeded, ExactLinalgError, Field
from .hopf import (
    UnsupportedSemisimplicityQuery, group_hopf, is_cocommutative,
    is_semisimple, validate_hopf,
)
from .spectral import (
    SpectralError, collapse_check, compute_E1, compute_E2,
)


class ScenarioError(ValueError):
    """Structurally invalid scenario text; carries a line number when
    known.  Mapped to exit code 2."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MathCheckFailed(RuntimeError):
    """A verified mathematical identity failed (an axiom violation in the
    input tables, or a broken derived identity).  Mapped to exit code 1,
    with the violated identity named."""


@dataclass
class Scenario:
    field_characteristic: int
    hopf_kind: str
    hopf_group: str
    algebra_kind: str
    algebra_arg: str
    action_kind: str
    action_lines: tuple
    cocycle_kind: str
    cocycle_values: tuple
    max_degree: int = 2
    max_p: int = 2
    max_q: int = 2
    cap: int = 200_000

    def canonical_text(self):
        lines = []
        if self.field_characteristic == 0:
            lines.append("field = Q")
        else:
            lines.append(f"field = Fp {self.field_characteristic}")
        lines.append("[hopf]")
        lines.append(f"kind = {self.hopf_kind}")
        lines.append(f"group = {self.hopf_group}")
        lines.append("[algebra]")
        if self.algebra_arg:
            lines.append(f"kind = {self.algebra_kind} {self.algebra_arg}")
        else:
            lines.append(f"kind = {self.algebra_kind}")
        lines.append("[action]")
        lines.append(f"kind = {self.action_kind}")
        for raw in self.action_lines:
            lines.append(raw)
        lines.append("[cocycle]")
        lines.append(f"kind = {self.cocycle_kind}")
        if self.cocycle_values:
            lines.append("values = " + " ".join(self.cocycle_values))
        lines.append("[compute]")
        lines.append(f"max_degree = {self.max_degree}")
        lines.append(f"max_p = {self.max_p}")
        lines.append(f"max_q = {self.max_q}")
        lines.append(f"cap = {self.cap}")
        return "\n".join(lines) + "\n"


def parse_scenario(text):
    """Parse and semantically validate a scenario; raises ScenarioError."""
    section = None
    data = {"": {}, "hopf": {}, "algebra": {}, "action": {},
            "cocycle": {}, "compute": {}}
    extra = {"action": [], "cocycle": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in data:
                raise ScenarioError(f"unknown section [{section}]", lineno)
            continue
        if "=" not in line:
            raise ScenarioError("expected 'key = value'", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        sec = section or ""
        if key in ("perm", "map") and sec == "action":
            extra["action"].append((lineno, f"{key} = {value}"))
        elif key in ("mul", "unit", "labels", "dim", "table") and \
                sec == "algebra":
            data["algebra"].setdefault("_lines", []).append(
                (lineno, key, value))
        else:
            data[sec][key] = (lineno, value)

    def take(sec, key, default=None):
        if key in data[sec]:
            return data[sec][key][1]
        if default is not None:
            return default
        lineno = None
        raise ScenarioError(f"missing '{key}' in section [{sec}]", lineno)

    field_spec = take("", "field")
    if field_spec == "Q":
        char = 0
    elif field_spec.startswith("Fp"):
        try:
            char = int(field_spec.split()[1])
        except (IndexError, ValueError):
            raise ScenarioError("expected 'field = Fp <prime>'",
                                data[""]["field"][0])
        try:
            Field(char)
        except ExactLinalgError as exc:
            raise ScenarioError(str(exc), data[""]["field"][0])
    else:
        raise ScenarioError(f"unknown field {field_spec!r}",
                            data[""]["field"][0])

    hopf_kind = take("hopf", "kind")
    if hopf_kind != "group":
        raise ScenarioError("only group Hopf algebras are supported; "
                            "scalar cocycles on anything else are out of "
                            "scope")
    hopf_group = take("hopf", "group")

    algebra_spec = take("algebra", "kind").split()
    algebra_kind = algebra_spec[0]
    algebra_arg = " ".join(algebra_spec[1:])
    if algebra_kind not in ("ground", "group", "functions", "dual_numbers",
                            "matrix"):
        raise ScenarioError(f"unknown algebra kind {algebra_kind!r}")

    action_kind = take("action", "kind", "trivial")
    action_lines = tuple(t for _, t in extra["action"])
    cocycle_kind = take("cocycle", "kind", "trivial")
    cocycle_values = ()
    if cocycle_kind in ("group_table", "table"):
        values = take("cocycle", "values")
        cocycle_values = tuple(values.split())
    elif cocycle_kind != "trivial":
        raise ScenarioError(f"unknown cocycle kind {cocycle_kind!r}")

    def int_opt(key, default):
        if key in data["compute"]:
            lineno, value = data["compute"][key]
            try:
                return int(value)
            except ValueError:
                raise ScenarioError(f"'{key}' must be an integer", lineno)
        return default

    scenario = Scenario(
        field_characteristic=char,
        hopf_kind=hopf_kind,
        hopf_group=hopf_group,
        algebra_kind=algebra_kind,
        algebra_arg=algebra_arg,
        action_kind=action_kind,
        action_lines=action_lines,
        cocycle_kind=cocycle_kind,
        cocycle_values=cocycle_values,
        max_degree=int_opt("max_degree", 2),
        max_p=int_opt("max_p", 2),
        max_q=int_opt("max_q", 2),
        cap=int_opt("cap", 200_000),
    )
    build_objects(scenario)  # ingestion-time axiom checks
    return scenario


@dataclass
class BuiltScenario:
    scenario: Scenario
    field: Field
    hopf: object
    algebra: FinDimAlgebra
    action: ActionMap
    cocycle: Cocycle


def build_objects(scenario):
    """Construct and validate every ingredient; ScenarioError on any
    semantic violation, with the axiom named."""
    field = Field(scenario.field_characteristic)
    try:
        group = FiniteGroup.named(scenario.hopf_group)
    except (GroupTableError, ValueError) as exc:
        raise ScenarioError(f"bad group: {exc}")
    hopf = group_hopf(field, group)
    bad = validate_hopf(hopf)
    if bad is not None:
        raise MathCheckFailed(f"Hopf axiom violation: {bad}")
    if not is_cocommutative(hopf):
        raise MathCheckFailed("the Hopf algebra is not cocommutative")

    kind, arg = scenario.algebra_kind, scenario.algebra_arg
    if kind == "ground":
        algebra = ground_algebra(field)
    elif kind == "group":
        algebra = group_algebra(field, FiniteGroup.named(arg or
                                                         scenario.hopf_group))
    elif kind == "functions":
        algebra = function_algebra(field, FiniteGroup.named(
            arg or scenario.hopf_group))
    elif kind == "dual_numbers":
        algebra = dual_numbers(field)
    elif kind == "matrix":
        try:
            algebra = matrix_algebra(field, int(arg))
        except ValueError:
            raise ScenarioError("matrix algebra needs a size, "
                                "e.g. 'kind = matrix 2'")
    else:
        raise ScenarioError(f"unknown algebra kind {kind!r}")
    bad = validate_algebra(algebra)
    if bad is not None:
        raise MathCheckFailed(f"algebra axiom violation: {bad}")

    action = _build_action(scenario, field, hopf, algebra)
    bad = validate_weak_action(action)
    if bad is not None:
        raise MathCheckFailed(f"action axiom violation: {bad}")

    cocycle = _build_cocycle(scenario, field, hopf, action)
    bad = validate_cocycle(cocycle, action)
    if bad is not None:
        raise MathCheckFailed(f"cocycle condition violation: {bad}")
    return BuiltScenario(scenario=scenario, field=field, hopf=hopf,
                         algebra=algebra, action=action, cocycle=cocycle)


def _build_action(scenario, field, hopf, algebra):
    if scenario.action_kind == "trivial":
        return trivial_action(hopf, algebra)
    if scenario.action_kind == "permutation":
        table = [None] * hopf.dim
        for line in scenario.action_lines:
            body = line.split("=", 1)[1].strip()
            head, _, images = body.partition(":")
            try:
                h = int(head)
                imgs = [int(x) for x in images.split()]
            except ValueError:
                raise ScenarioError(f"bad permutation line {line!r}")
            if h >= hopf.dim or len(imgs) != algebra.dim or \
                    sorted(imgs) != list(range(algebra.dim)):
                raise ScenarioError(f"bad permutation line {line!r}")
            table[h] = [{imgs[a]: field.one} for a in range(algebra.dim)]
        if any(row is None for row in table):
            raise ScenarioError("permutation action must cover every "
                                "Hopf basis element")
        return ActionMap(hopf, algebra, table)
    if scenario.action_kind == "table":
        table = [[None] * algebra.dim for _ in range(hopf.dim)]
        for line in scenario.action_lines:
            body = line.split("=", 1)[1].strip()
            head, _, coords = body.partition(":")
            try:
                h, a = (int(x) for x in head.split())
                vec = [field.parse(c) for c in coords.split()]
            except (ValueError, ExactLinalgError):
                raise ScenarioError(f"bad action table line {line!r}")
            if h >= hopf.dim or a >= algebra.dim or len(vec) != algebra.dim:
                raise ScenarioError(f"bad action table line {line!r}")
            table[h][a] = {i: c for i, c in enumerate(vec) if c}
        for h in range(hopf.dim):
            for a in range(algebra.dim):
                if table[h][a] is None:
                    raise ScenarioError(
                        f"action table is missing the pair ({h},{a})")
        return ActionMap(hopf, algebra, table)
    raise ScenarioError(f"unknown action kind {scenario.action_kind!r}")


def _build_cocycle(scenario, field, hopf, action):
    if scenario.cocycle_kind == "trivial":
        return trivial_cocycle(hopf)
    d = hopf.dim
    raw = scenario.cocycle_values
    if len(raw) != d * d:
        raise ScenarioError(
            f"cocycle table needs {d * d} scalars, got {len(raw)}")
    try:
        flat = [field.parse(v) for v in raw]
    except (ValueError, ExactLinalgError) as exc:
        raise ScenarioError(f"bad cocycle scalar: {exc}")
    table = [flat[i * d:(i + 1) * d] for i in range(d)]
    if scenario.cocycle_kind == "group_table":
        try:
            return lift_group_cocycle(hopf, table)
        except GroupCocycleError as exc:
            raise MathCheckFailed(str(exc))
    inverse = convolution_inverse(hopf, table)
    if inverse is None:
        raise MathCheckFailed("the cocycle table is not convolution "
                              "invertible")
    return Cocycle(hopf, table, inverse)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    scenario: Scenario
    command: str
    checks: list = dc_field(default_factory=list)   # (name, ok, detail)
    tables: list = dc_field(default_factory=list)   # (title, [int dims])
    pages: list = dc_field(default_factory=list)    # (page, p, q, dim)

    def add_check(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)


def emit_report(report, machine=False):
    """Render a report; both renderings carry identical data and are
    byte-stable across runs."""
    lines = []
    if machine:
        lines.append("hclab-report 1")
        lines.append(f"command {report.command}")
        lines.append("scenario-begin")
        lines.extend(report.scenario.canonical_text().splitlines())
        lines.append("scenario-end")
        for name, ok, detail in report.checks:
            token = "PASS" if ok else "FAIL"
            suffix = f" {detail}" if detail else ""
            lines.append(f"check\t{name}\t{token}{suffix}")
        for title, dims in report.tables:
            lines.append("dims\t" + title + "\t" +
                         " ".join(str(d) for d in dims))
        for page, p, q, dim in report.pages:
            lines.append(f"page\t{page}\t{p}\t{q}\t{dim}")
        lines.append("overall " + ("PASS" if report.passed else "FAIL"))
    else:
        lines.append(f"== hclab {report.command} ==")
        lines.append("scenario:")
        for ln in report.scenario.canonical_text().splitlines():
            lines.append("    " + ln)
        if report.checks:
            lines.append("checks:")
            for name, ok, detail in report.checks:
                token = "PASS" if ok else "FAIL"
                suffix = f"  ({detail})" if detail else ""
                lines.append(f"    [{token}] {name}{suffix}")
        for title, dims in report.tables:
            rendered = ", ".join(f"{n}:{d}" for n, d in enumerate(dims))
            lines.append(f"{title}: {rendered}")
        if report.pages:
            lines.append("pages:")
            for page, p, q, dim in report.pages:
                lines.append(f"    E{page}[{p},{q}] = {dim}")
        lines.append("overall: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"


def run_command(command, scenario):
    """Execute a command against a parsed scenario and report."""
    built = build_objects(scenario)
    cyl = build_cylinder(built.hopf, built.action, built.cocycle,
                         check=False, cap=scenario.cap)
    report = Report(scenario=scenario, command=command)
    if command in ("verify", "report"):
        _run_verify(built, cyl, report)
    if command in ("hc", "report"):
        _run_hc(built, cyl, report)
    if command in ("e1", "report"):
        page, _ = compute_E1(cyl, scenario.max_p, scenario.max_q)
        for (p, q) in sorted(page.entries):
            report.pages.append((1, p, q, page.entries[(p, q)]))
        report.add_check("first page: row homology = Hopf homology", True)
    if command in ("e2", "report"):
        page = compute_E2(cyl, scenario.max_p, scenario.max_q)
        for (p, q) in sorted(page.entries):
            report.pages.append((2, p, q, page.entries[(p, q)]))
        report.add_check("second page computed without well-definedness "
                         "failures", True)
    if command in ("collapse", "report"):
        _run_collapse(built, cyl, scenario, report, command)
    return report


def _run_verify(built, cyl, report):
    scenario = built.scenario
    report.add_check("Hopf axioms", validate_hopf(built.hopf) is None)
    report.add_check("cocommutativity", is_cocommutative(built.hopf))
    bad = validate_weak_action(built.action)
    report.add_check("weak action axioms", bad is None,
                     "" if bad is None else str(bad))
    bad = validate_cocycle(built.cocycle, built.action)
    report.add_check("cocycle conditions and convolution inverse",
                     bad is None, "" if bad is None else str(bad))
    upgraded = verify_action_upgrade(built.action, built.cocycle)
    report.add_check("module action upgrade", upgraded is None)
    try:
        build_crossed_product(built.action, built.cocycle)
        report.add_check("crossed product associativity revalidated", True)
    except Exception as exc:
        report.add_check("crossed product associativity revalidated",
                         False, str(exc))
    bad = check_cylindrical(cyl, scenario.max_p, scenario.max_q)
    report.add_check(
        f"cylinder identities through ({scenario.max_p},{scenario.max_q})",
        bad is None, "" if bad is None else str(bad))
    try:
        tot_mixed_complex(cyl, scenario.max_degree)
        report.add_check("total mixed complex identities", True)
    except Exception as exc:
        report.add_check("total mixed complex identities", False, str(exc))
    ts = twisted_scalar_algebra(built.cocycle)
    bad = check_row_identification(cyl, ts, 0, min(scenario.max_p, 2))
    report.add_check("row = Hochschild complex of the twisted algebra",
                     bad is None, "" if bad is None else str(bad))
    bad = check_coefficient_action(cyl, 0)
    report.add_check("coefficient action closed form", bad is None)


def _run_hc(built, cyl, report):
    scenario = built.scenario
    cp = build_crossed_product(built.action, built.cocycle, check=False)
    direct = cyclic_homology_of_algebra(cp.product, scenario.max_degree,
                                        cap=scenario.cap)
    report.tables.append(("cyclic homology of the crossed product",
                          direct.dims))
    tot = tot_mixed_complex(cyl, scenario.max_degree + 1)
    via_tot = cyclic_homology_mixed(tot, scenario.max_degree)
    report.tables.append(("cyclic homology of the total complex",
                          via_tot.dims))
    report.add_check("total complex matches the crossed product",
                     direct.dims == via_tot.dims)


def _run_collapse(built, cyl, scenario, report, command):
    try:
        semisimple = is_semisimple(built.hopf)
    except UnsupportedSemisimplicityQuery as exc:
        raise ScenarioError(str(exc))
    if not semisimple:
        if command == "collapse":
            raise ScenarioError(
                "collapse comparison refused: the Hopf algebra is not "
                "semisimple; the zeroth column is the coinvariant space, "
                "see the second page instead")
        report.add_check("collapse comparison (skipped: non-semisimple)",
                         True, "not semisimple")
        return
    rep = collapse_check(cyl, scenario.max_degree)
    report.tables.append(("cyclic homology, direct", rep.direct))
    report.tables.append(("cyclic homology via invariants",
                          rep.via_invariants))
    report.add_check("collapse comparison", rep.passed)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="hclab",
        description="exact cyclic homology of Hopf crossed products")
    parser.add_argument("command",
                        choices=["verify", "hc", "e1", "e2", "collapse",
                                 "report"])
    parser.add_argument("scenario", help="path to a scenario file")
    parser.add_argument("--max-degree", type=int, default=None)
    parser.add_argument("--cap", type=int, default=None)
    parser.add_argument("--machine", action="store_true",
                        help="machine-readable output")
    args = parser.parse_args(argv)
    try:
        with open(args.scenario, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        scenario = parse_scenario(text)
        if args.max_degree is not None:
            scenario.max_degree = args.max_degree
        if args.cap is not None:
            scenario.cap = args.cap
        report = run_command(args.command, scenario)
    except ScenarioError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except DimensionCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:
        if isinstance(exc, (MathCheckFailed, SpectralError)) or \
                exc.__class__.__name__ in ("MixedComplexError",
                                           "NormalizationError",
                                           "HopfComplexError",
                                           "ModuleLawError",
                                           "CylinderError",
                                           "CrossedProductError"):
            print(f"mathematical check failed: {exc}", file=sys.stderr)
            return 1
        raise
    sys.stdout.write(emit_report(report, machine=args.machine))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
