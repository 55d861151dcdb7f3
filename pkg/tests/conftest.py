"""Shared fixtures and the acceptance-criteria terminal summary."""

import re

import pytest

_ACCEPTANCE_RE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_acceptance_results = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(num, title): marks a test as one acceptance criterion"
    )


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _ACCEPTANCE_RE.search(report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    title = m.group(2).replace("_", " ")
    expected_fail = hasattr(report, "wasxfail")
    _acceptance_results[num] = (report.outcome, title, expected_fail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_acceptance_results):
        outcome, title, expected_fail = _acceptance_results[num]
        if outcome == "passed":
            verdict = "PASS"
        elif expected_fail:
            verdict = "FAIL (expected, see README)"
        else:
            verdict = "FAIL"
        tr.write_line(f"criterion {num:2d} {verdict}  {title}")


@pytest.fixture(scope="session")
def rng_factory():
    import numpy as np

    def make(seed):
        return np.random.default_rng(seed)

    return make


@pytest.fixture(scope="session")
def triangle_spectrum_4096():
    """Dense spectrum of the triangle kernel at M=4096, shared across tests."""
    from hankelspec.eigensolve import dense_spectrum
    from hankelspec.hankel_core import dense_matrix
    from hankelspec.model import ContinuousKernelSpec
    from hankelspec.quadrature import build_uniform

    spec = ContinuousKernelSpec(alpha=1.0, local_singularities=[(1.0, 0, 1.0)])
    H = build_uniform(spec, 1.0, 4096)
    return dense_spectrum(dense_matrix(H))
