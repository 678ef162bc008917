from helpers import CRITERIA


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in CRITERIA:
        terminalreporter.write_line(("PASS  " if ok else "FAIL  ") + label)
