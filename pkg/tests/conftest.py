import numpy as np
import pytest

from qwmix import z2n


@pytest.fixture(params=sorted(z2n.KERNELS))
def kernel(request):
    """Each available FWHT kernel (compiled and pure numpy)."""
    return z2n.KERNELS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
