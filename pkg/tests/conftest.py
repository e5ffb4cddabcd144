import os
import sys

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from convcodes import field_create  # noqa: E402
from convcodes.code import ConvolutionalCode  # noqa: E402
from convcodes.poly import PolyMatrix  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

EX1_G = [[[1], [1], [0, 1]], [[0, 0, 1], [1], [1, 1]]]
EX1_GT = [[[1, 1, 1], [0, 1], [1, 0, 1]], [[0, 0, 1], [1], [1, 1]]]
EX1_H = [[[1], [1, 1, 0, 1], [1, 0, 1]]]
MDP7_G = [[[4, 3, 4], [3, 6, 5]]]


@pytest.fixture(scope="session")
def F2():
    return field_create(2)


@pytest.fixture(scope="session")
def ex1(F2):
    return ConvolutionalCode(PolyMatrix.from_entries(F2, EX1_G))


@pytest.fixture(scope="session")
def ex1_tilde(F2):
    return ConvolutionalCode(PolyMatrix.from_entries(F2, EX1_GT))


@pytest.fixture(scope="session")
def mdp7():
    """A (2,1,2) code over F_7 that is MDP and reverse MDP (found by search, frozen)."""
    F = field_create(7)
    return ConvolutionalCode(PolyMatrix.from_entries(F, MDP7_G))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
