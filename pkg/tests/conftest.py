import sys

import pytest

from conjrank.catalog import builtin_group
from conjrank.perm_core import Permutation, close_generators, sylow_subgroup


def perm(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def group(n, *gens):
    return close_generators(n, [perm(n, *g) for g in gens])


@pytest.fixture(scope="session")
def S3():
    return builtin_group("S3")


@pytest.fixture(scope="session")
def C3_in_S3(S3):
    return sylow_subgroup(S3, 3)


@pytest.fixture(scope="session")
def S4():
    return builtin_group("S4")


@pytest.fixture(scope="session")
def D8_in_S4(S4):
    return sylow_subgroup(S4, 2)


@pytest.fixture(scope="session")
def D8():
    return builtin_group("D8")


@pytest.fixture(scope="session")
def C2():
    return builtin_group("C2")


# every builtin group of order <= 48 (all of them)
CATALOG_GROUPS = [f"C{n}" for n in range(1, 17)] + [
    "S3", "A4", "S4", "D8", "Q8", "C2xC2", "D12", "SL23"]

SMALL_GROUPS = ["C1", "C2", "C4", "C6", "S3", "C2xC2", "D8", "Q8", "A4", "D12", "S4", "SL23"]

CATALOG_FUSION = {
    "F_C2(C2)": ("C2", 2),
    "F_C3(C3)": ("C3", 3),
    "F_D8(D8)": ("D8", 2),
    "F_C3(S3)": ("S3", 3),
    "F_D8(S4)": ("S4", 2),
    "F_Q8(SL23)": ("SL23", 2),
}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
