import pytest

from ovlk.simulation import bundled_config, run_simulation

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, name, passed, detail)."""

    def record(number, name, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {name}"
        if detail:
            line += f" ({detail})"
        print(line)
        _CRITERIA.append((number, line))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERIA, key=lambda t: t[0]):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def table2_report():
    """Bundled four-scenario study at R = 1000, seed 1234."""
    return run_simulation(bundled_config("table2"))


@pytest.fixture(scope="session")
def consistency_report():
    """S1, S3, S4 at sizes (50,50,50) and (100,150,200), R = 1000."""
    cfg = bundled_config("table2")
    from ovlk.simulation import Scenario

    scenarios = tuple(
        Scenario(s.name, s.populations, ((50, 50, 50), (100, 150, 200)), s.reference_delta)
        for s in cfg.scenarios
        if s.name in ("S1", "S3", "S4")
    )
    return run_simulation(cfg.replace(scenarios=scenarios))
