ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        r = ACCEPTANCE_RESULTS[num]
        mark = "PASS" if r["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {num:>2}: {mark}  {r['name']} ({r['seconds']:.2f}s)")
