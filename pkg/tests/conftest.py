import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from persaut.graph import Graph  # noqa: E402
from persaut.persist import Filtration  # noqa: E402


@pytest.fixture
def square_filtration():
    """Four-step tower ending in the 4-cycle 0-1-2-3-0.

    Step 1 adds {1,2}, step 2 adds {0,3}, step 3 adds {0,1} and {2,3}.
    """
    steps = [[], [(1, 2)], [(1, 2), (0, 3)], [(1, 2), (0, 3), (0, 1), (2, 3)]]
    return Filtration((0.0, 1.0, 2.0, 3.0), tuple(Graph.from_edges(4, e) for e in steps))


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
