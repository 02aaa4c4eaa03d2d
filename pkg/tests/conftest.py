def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid, _, _ in CRITERIA:
        if cid in RESULTS:
            terminalreporter.write_line(RESULTS[cid][1])
