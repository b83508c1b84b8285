import re

_LABELS = {
    1: "constant tilted field closed form",
    2: "rotating field closed form",
    3: "holonomy route agreement",
    4: "invariance suite",
    5: "two-loop gate synthesis",
    6: "gate identities",
    7: "propagator properties",
    8: "observable-space metric and torsor",
}

_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    results = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _PATTERN.search(getattr(rep, "nodeid", ""))
            if m is None:
                continue
            n = int(m.group(1))
            results[n] = results.get(n, True) and outcome == "passed"
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(results):
        verdict = "PASS" if results[n] else "FAIL"
        terminalreporter.write_line(
            f"ACCEPTANCE CRITERION {n}: {verdict} ({_LABELS.get(n, '')})"
        )
