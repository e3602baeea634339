#!/usr/bin/env python3
"""
Run every command over the problems/ directory
Writes one JSON report per (problem, command) into reports/
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.cli.commands import COMMANDS  # noqa: E402
from app.main import main  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
# problems that only make sense for some commands
COMMANDS_FOR = {
    "corner.lg": ["spectral"],
    "x2y.lg": ["bulk", "koszul", "boundary", "category"],
}


def run_suite(problems: Path, reports: Path) -> int:
    reports.mkdir(parents=True, exist_ok=True)
    failures = 0

    print(f"📦 Problems in {problems}")
    for problem in sorted(problems.glob("*.lg")):
        commands = COMMANDS_FOR.get(problem.name, sorted(COMMANDS))
        print(f"  📐 {problem.name}")
        for command in commands:
            out = reports / f"{problem.stem}.{command}.json"
            code = main([command, str(problem), "--out", str(out), "--log-level", "ERROR"])
            marker = {0: "✅", 2: "⚠️"}.get(code, "❌")
            print(f"    {marker} {command} -> exit {code}")
            failures += code != 0

    if failures:
        print(f"❌ {failures} runs did not pass")
    else:
        print("🎉 All runs passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(run_suite(ROOT / "problems", ROOT / "reports"))
