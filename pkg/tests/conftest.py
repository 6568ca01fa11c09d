"""Shared pytest wiring: surface the acceptance verdict lines."""


def pytest_terminal_summary(terminalreporter):
    lines = []
    for reports in terminalreporter.stats.values():
        for report in reports:
            if getattr(report, "when", None) != "call":
                continue
            for name, value in getattr(report, "user_properties", []):
                if name == "criterion_line":
                    lines.append(str(value))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(set(lines)):
        terminalreporter.write_line(line)
