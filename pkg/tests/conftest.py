from hypothesis import settings

settings.register_profile("repo", deadline=None, max_examples=40)
settings.load_profile("repo")


# one PASS/FAIL line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
