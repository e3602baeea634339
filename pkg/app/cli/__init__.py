# app/cli/__init__.py
"""Problem files, report documents and command handlers"""
from app.cli.problem import ProblemSpec, format_problem, parse_problem
from app.cli.report import Check, Report, Section, Verdict, body, new_report, render

__all__ = [
    "ProblemSpec",
    "format_problem",
    "parse_problem",
    "Check",
    "Report",
    "Section",
    "Verdict",
    "body",
    "new_report",
    "render",
]
