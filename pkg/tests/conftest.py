import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# criterion number -> list of (label, passed); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool]]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[number]
        ok = all(passed for _, passed in checks)
        labels = "; ".join(label for label, _ in checks)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  ({labels})")
