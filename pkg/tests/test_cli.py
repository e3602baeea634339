# tests/test_cli.py
import csv
import io
import json
from pathlib import Path

import pytest

from app.cli import Check, Report, Section, Verdict, body, format_problem, parse_problem
from app.cli.commands import resolve_settings
from app.core.exceptions import ProblemSyntaxError, SemanticError
from app.main import main

CUBIC = """
# the A2 singularity
ring x;
W = x^3;
mf P = [[x]] | [[x^2]];
"""

CORNER = """
node (0,0) = 1;
node (0,1) = 1;
node (1,0) = 2;
d1 (0,0) = [[1]];
d2 (0,0) = [[1],[0]];
"""


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_parse_cubic_problem():
    spec = parse_problem(CUBIC)
    assert spec.variables == ("x",)
    assert list(spec.factorizations) == ["P"]
    assert spec.factorizations["P"].rank == (1, 1)
    assert spec.pair.degree == 3


def test_wrong_factorization_is_semantic_error():
    with pytest.raises(SemanticError):
        parse_problem("ring x; W = x^3; mf Q = [[x]] | [[x]];")


@pytest.mark.parametrize("text", [
    "ring x; W = y^2;",
    "ring x; W = 0.5*x^2;",
    "ring x; W = x^2; W = x^3;",
    "ring x, x; W = x^2;",
    "ring x; W = 5;",
])
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse_problem(text)


def test_missing_terminator_reports_position():
    with pytest.raises(ProblemSyntaxError) as info:
        parse_problem("ring x;\nW = x^3\n")
    assert info.value.line == 2
    assert info.value.column == 8
    assert info.value.expected == [";"]


def test_unknown_statement_is_syntax_error():
    with pytest.raises(ProblemSyntaxError) as info:
        parse_problem("ring x;\n  potential = x^3;")
    assert (info.value.line, info.value.column) == (2, 3)


def test_format_problem_round_trips():
    spec = parse_problem("option truncate = 8;" + CUBIC + CORNER)
    text = format_problem(spec)
    assert parse_problem(text) == spec
    assert format_problem(parse_problem(text)) == text


def test_flags_override_options():
    config = resolve_settings({"truncate": "6", "backend": "socle"}, {"truncate": "9", "backend": None})
    assert config.TRUNCATION == 9
    assert config.TRACE_BACKEND == "socle"
    config = resolve_settings({}, {"backend": "truncate"})
    assert config.HOM_BACKEND == "truncate"


@pytest.mark.parametrize("options", [
    {"scale": "0"},
    {"scale": "abc"},
    {"window": "3:1"},
    {"backend": "magic"},
    {"order": "revlex"},
])
def test_invalid_options_are_semantic_errors(options):
    with pytest.raises(SemanticError):
        resolve_settings(options)


def test_report_verdict_precedence():
    report = Report(tool="t", version="1", command="bulk")
    report.sections = [Section(name="a", checks=[Check(name="x", verdict=Verdict.SKIPPED, detail="why")])]
    assert report.finalize().verdict == Verdict.SKIPPED
    assert report.reason == "why"
    report.sections[0].check("y", True)
    assert report.finalize().verdict == Verdict.PASS
    report.sections[0].check("z", False)
    assert report.finalize().verdict == Verdict.FAIL
    assert report.reason == "failed: a.z"
    assert report.exit_code == 2


def test_bulk_command_reports_gram_matrix(tmp_path, capsys):
    code, out = _run(capsys, ["bulk", _write(tmp_path, "x3.lg", CUBIC)])
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "PASS"
    section = report["sections"][0]
    assert section["data"]["milnor_number"] == 2
    assert section["data"]["gram"] == [["0", "1/3"], ["1/3", "0"]]
    assert section["data"]["determinant"] == "-1/9"


def test_reports_are_deterministic(tmp_path, capsys):
    path = _write(tmp_path, "x3.lg", CUBIC)
    outputs = []
    for _ in range(2):
        _, out = _run(capsys, ["boundary", path])
        outputs.append(Report.model_validate_json(out))
    assert body(outputs[0]) == body(outputs[1])
    assert outputs[0].verdict == Verdict.PASS


def test_non_isolated_potential_is_skipped(tmp_path, capsys):
    code, out = _run(capsys, ["bulk", _write(tmp_path, "x2y.lg", "ring x, y; W = x^2*y;")])
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "SKIPPED"
    assert report["reason"] == "critical locus not finite"


def test_spectral_command_on_node_file(tmp_path, capsys):
    code, out = _run(capsys, ["spectral", _write(tmp_path, "corner.lg", CORNER)])
    assert code == 0
    section = json.loads(out)["sections"][0]
    assert section["data"]["condition"] == "A"
    assert section["data"]["total"] == {"0": 0, "1": 2}


def test_csv_output_to_file(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code, _ = _run(capsys, ["bulk", _write(tmp_path, "x3.lg", CUBIC), "--format", "csv", "--out", str(out)])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text(encoding="utf-8"))))
    assert rows[0] == ["section", "key", "value"]
    assert ["report", "verdict", "PASS"] in rows
    assert ["bulk", "determinant", "-1/9"] in rows


@pytest.mark.parametrize("argv", [
    ["bulk", "does-not-exist.lg"],
    ["bulk"],
])
def test_input_errors_exit_with_one(argv, capsys):
    code, out = _run(capsys, argv)
    assert code == 1
    assert out == ""


def test_syntax_error_exits_with_one(tmp_path, capsys):
    code, _ = _run(capsys, ["bulk", _write(tmp_path, "bad.lg", "ring x; W = x^3")])
    assert code == 1


def test_invalid_flag_exits_with_one(tmp_path, capsys):
    code, _ = _run(capsys, ["bulk", _write(tmp_path, "x3.lg", CUBIC), "--scale", "0"])
    assert code == 1


PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
ALL_COMMANDS = ("bulk", "koszul", "boundary", "spectral", "category")
EXPECTED_EXIT = {
    "corner.lg": {"spectral": 0},
    "x2y.lg": {"bulk": 0, "koszul": 0, "boundary": 0, "category": 0},
    "x3.lg": dict.fromkeys(ALL_COMMANDS, 0),
    "x5.lg": dict.fromkeys(ALL_COMMANDS, 0),
    "fermat_cubic.lg": dict.fromkeys(ALL_COMMANDS, 0),
    "quadric.lg": dict.fromkeys(ALL_COMMANDS, 0),
}
HEAVY = {
    ("fermat_cubic.lg", "boundary"),
    ("fermat_cubic.lg", "category"),
    ("quadric.lg", "category"),
    ("x5.lg", "category"),
}


def _shipped_runs():
    for problem, commands in sorted(EXPECTED_EXIT.items()):
        for command, code in commands.items():
            marks = [pytest.mark.slow] if (problem, command) in HEAVY else []
            yield pytest.param(problem, command, code, marks=marks, id=f"{problem[:-3]}-{command}")


def test_every_shipped_problem_has_expectations():
    assert sorted(p.name for p in PROBLEMS.glob("*.lg")) == sorted(EXPECTED_EXIT)


@pytest.mark.parametrize("problem, command, expected", list(_shipped_runs()))
def test_shipped_problems_exit_as_expected(problem, command, expected, capsys):
    code, out = _run(capsys, [command, str(PROBLEMS / problem), "--log-level", "ERROR"])
    assert code == expected
    report = json.loads(out)
    assert report["command"] == command
    assert report["verdict"] in ("PASS", "SKIPPED")
