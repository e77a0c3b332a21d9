import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20260814)


@pytest.fixture
def fib_matrix():
    """Block-triangular exponent matrix with known degree data."""
    return ((2, 0), (1, 3))


@pytest.fixture
def golden_matrix():
    """Exponent matrix whose degree growth follows the golden-mean recursion."""
    return ((2, 1), (1, 1))


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Shared sink for acceptance-criterion outcomes, echoed after the run."""
    results: list[tuple[int, str, bool]] = []
    request.config._acceptance_results = results
    return results


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", None)
    if not results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num, desc, ok in sorted(results):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {verdict}  {desc}")
