import pytest

from hecc.gf import GF2m
from hecc.hierarchical import BlockSpec, HierConfig, build


@pytest.fixture(scope="session")
def gf16():
    return GF2m(4, 0x13)


@pytest.fixture(scope="session")
def gf8():
    return GF2m(3)


@pytest.fixture(scope="session")
def gf256():
    return GF2m(8)


def two_block_config(gf):
    b = gf.exp
    blk = BlockSpec(3, 3, 1, tuple(b(i) for i in (1, 2, 3, 4)), tuple(b(i) for i in (8, 9, 10, 11)))
    return HierConfig(gf, [blk, blk])


@pytest.fixture(scope="session")
def tb(gf16):
    return build(two_block_config(gf16))


def powers(gf, logs):
    """Field elements from a list of discrete logs, ``None`` meaning zero."""
    return [0 if e is None else gf.exp(e) for e in logs]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
