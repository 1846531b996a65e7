import importlib

import pytest

from superstar import _purepy

try:
    _compiled = importlib.import_module("superstar._kernels")
except ImportError:
    _compiled = None

BACKENDS = [pytest.param(_purepy, id="python")]
if _compiled is not None:
    BACKENDS.append(pytest.param(_compiled, id="cython"))

requires_compiled = pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def compiled():
    if _compiled is None:
        pytest.skip("compiled kernels not built")
    return _compiled


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
