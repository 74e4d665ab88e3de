import pytest
from hypothesis import HealthCheck, settings

from ladderpt.algebra import HW, SU2

# the algebra fixture only carries a parameter, so sharing it across examples is safe
settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow,
                                                 HealthCheck.function_scoped_fixture])
settings.load_profile("default")


@pytest.fixture(params=[HW, SU2])
def algebra(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
