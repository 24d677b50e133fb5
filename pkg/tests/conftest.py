import math

import pytest

from birefringence.planewave import CrystalMedium

_ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(number, description, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {description}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def fig5_medium():
    return CrystalMedium.from_mean(1.30, 0.15)


@pytest.fixture
def fig6_medium():
    return CrystalMedium.from_mean(1.35, 0.5)


@pytest.fixture
def fig3_medium():
    # a = dn / (4 (n_bar - 1)) = 0.15
    return CrystalMedium.from_mean(1.25, 0.15)


BETA_FIG = 0.21 * math.pi
