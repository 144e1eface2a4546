from __future__ import annotations

import pytest

from atomchip.trapgeom import PhysicalConstants, TrapConfiguration

BX, BZ = 80e-4, 2e-4  # T


def single(r0, convention="bare", **kw):
    return TrapConfiguration.single_wire(r0, BX, BZ, constants=PhysicalConstants(g_convention=convention), **kw)


def double(d_over_ybar, ybar=10e-6, convention="bare"):
    return TrapConfiguration.double_wire(ybar, d_over_ybar * ybar, BX, BZ,
                                         constants=PhysicalConstants(g_convention=convention))


@pytest.fixture
def cfg5():
    return single(5e-6)


@pytest.fixture
def cfg100():
    return single(100e-6)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
