from __future__ import annotations

import pytest

from varjump.config import default_config

_CRITERIA: list = []


@pytest.fixture
def criterion_log():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    def log(number: int, title: str, passed: bool, detail: str = "") -> None:
        line = f"criterion {number} {'PASS' if passed else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        _CRITERIA.append((number, line))
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERIA):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_cfg():
    """A fast configuration for unit-level exercise of the checks."""
    return default_config(
        N=128, sequence_count=300, oracle_count=120, oracle_max_length=8, field_count=3,
        atom_count=6, uniform_atom_count=6, combination_count=2, farfield_probes=5)
