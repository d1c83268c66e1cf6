import os
import sys
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from curvecomp.arith.parse import parse_poly, parse_system  # noqa: E402
from curvecomp.corpus import PLANE, SPACE  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@lru_cache(maxsize=None)
def plane_result(name):
    from curvecomp.sa.planar import plane_curve_components
    return plane_curve_components(parse_poly(PLANE[name], 2))


@lru_cache(maxsize=None)
def space_result(name, seed=0):
    from curvecomp.space.components import curve_components
    return curve_components(space_system(name), seed=seed)


def space_system(name):
    return parse_system("\n".join(SPACE[name]), 3)


@pytest.fixture(params=sorted(PLANE))
def plane_name(request):
    return request.param


@pytest.fixture(params=sorted(SPACE))
def space_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
