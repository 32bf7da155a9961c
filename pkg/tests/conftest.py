def pytest_terminal_summary(terminalreporter):
    import test_acceptance as acc
    if acc.RESULTS:
        terminalreporter.section("acceptance")
        for k in sorted(acc.RESULTS):
            terminalreporter.write_line(acc.line(k))
