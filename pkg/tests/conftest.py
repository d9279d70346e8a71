"""Shared pytest configuration: prints the acceptance summary at the end of the run."""

ACCEPTANCE_LINES: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
