def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One verdict line per acceptance criterion at the end of the run."""
    reports = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in getattr(rep, "nodeid", ""):
                reports.append((rep.nodeid.split("::")[-1], outcome == "passed"))
    if not reports:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, ok in sorted(reports):
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'}")
