import support


def pytest_terminal_summary(terminalreporter):
    if not support.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, line in sorted(support.RESULTS):
        terminalreporter.write_line(line)
