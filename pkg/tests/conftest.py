from __future__ import annotations

import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA: dict[int, list[tuple[str, bool, str]]] = {}
_NAME = re.compile(r"test_criterion_(\d+)_(\w+?)(\[.*\])?$")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = _NAME.search(report.nodeid.split("::")[-1])
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        reason = ""
        if report.failed:
            lines = str(report.longrepr).strip().splitlines()
            reason = next((ln.strip() for ln in lines if ln.startswith("E ")), "")
            reason = reason[1:].strip()
        label = m.group(2).replace("_", " ") + (m.group(3) or "")
        _CRITERIA.setdefault(int(m.group(1)), []).append((label, report.passed, reason))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        parts = _CRITERIA[num]
        ok = all(p for _, p, _ in parts)
        failed = [f"{label}: {why}" if why else label for label, p, why in parts if not p]
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'} ({parts[0][0].split('[')[0]})"
        if failed:
            line += " | failing: " + "; ".join(failed)
        terminalreporter.write_line(line)
