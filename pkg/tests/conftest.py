from fractions import Fraction
from itertools import combinations

import hypothesis.strategies as st
import pytest

from supercache.system_model import CapacityProfile, SystemConfig

GRID = 64


@st.composite
def instances(draw, k_min=1, k_max=9, allow_full_cache=True):
    K = draw(st.integers(k_min, k_max))
    t = draw(st.integers(0, K if allow_full_cache else K - 1))
    alphas = draw(st.lists(st.integers(1, GRID), min_size=K, max_size=K))
    return SystemConfig(K, t, K), CapacityProfile.from_sequence([Fraction(a, GRID) for a in alphas])


def enum_cumulative(K, t, k):
    """Count (t+1)-subsets whose smallest member is <= k, by listing them."""
    return sum(1 for s in combinations(range(1, K + 1), t + 1) if s[0] <= k)


@pytest.fixture
def cfg41():
    return SystemConfig(4, 1, 4)


@pytest.fixture
def prof_uneven():
    return CapacityProfile.from_sequence(["1/2", "3/4", "1", "1"])


@pytest.fixture
def prof_example1():
    return CapacityProfile.from_sequence(["1/2", "1", "1", "1"])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail, elapsed = mod.RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d} ({elapsed:.2f}s): {detail}")
