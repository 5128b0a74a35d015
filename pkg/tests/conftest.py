import numpy as np
import pytest

from sparsetrig import FrequencyLattice, build_matrix, deterministic_points

_ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def n11_matrix():
    """Raw sampling matrix for q=2, d=2, N=11 (the guaranteed-recovery workhorse)."""
    return build_matrix(deterministic_points(11, 2), FrequencyLattice.uniform(2, 2))


@pytest.fixture(scope="session")
def n11_normalized(n11_matrix):
    return n11_matrix.normalized_copy()


def unit_complex_vector(rng, size):
    v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return v / np.linalg.norm(v)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE_RESULTS.append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{name}: {verdict}")
