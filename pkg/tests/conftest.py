def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    outcomes = test_acceptance.evaluated()
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for o in outcomes:
        terminalreporter.write_line(o.line())
        for note in o.notes:
            terminalreporter.write_line(f"    {note}")
