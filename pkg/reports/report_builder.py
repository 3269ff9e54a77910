# reports/report_builder.py

import os
from datetime import datetime

from jinja2 import Environment, FileSystemLoader, select_autoescape

TEMPLATE_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "templates")


def _environment():
    return Environment(loader=FileSystemLoader(TEMPLATE_DIR), autoescape=select_autoescape(["html"]))


def build_verify_report(results, output_path, suite="fast"):
    """Render verify-suite records as an HTML PASS/FAIL table"""
    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    template = _environment().get_template("verify_report.html")
    passed = sum(1 for r in results if r["passed"])
    rendered = template.render(
        suite=suite,
        results=results,
        passed=passed,
        failed=len(results) - passed,
        total_seconds=sum(r["seconds"] for r in results),
        timestamp=datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
    )

    with open(output_path, "w", encoding="utf-8") as f:
        f.write(rendered)
    return output_path
