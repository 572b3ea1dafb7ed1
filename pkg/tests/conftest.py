import os
import random

import pytest
from hypothesis import HealthCheck, settings

from weilforge.algebra import algebra_from_table, truncated_algebra

SEED = int(os.environ.get("WEILFORGE_SEED", "20240613"))

settings.register_profile(
    "weilforge",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("weilforge")


@pytest.fixture
def rng():
    return random.Random(SEED)


def seeded(offset: int) -> random.Random:
    return random.Random(SEED * 1000003 + offset)


def fat_point(n: int):
    """R[x1..xn]/(all degree-2 monomials): height 1, width n."""
    d = n + 1
    labels = ["1"] + [f"x{i}" for i in range(1, n + 1)]
    table = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        table[0][i][i] = 1
        table[i][0][i] = 1
    return algebra_from_table(labels, table)


def sample_algebras():
    """Small algebras used across property tests (dim <= 10)."""
    algs = [truncated_algebra(m, l) for m, l in [(1, 1), (1, 2), (1, 3), (1, 5), (2, 1), (2, 2), (3, 1)]]
    algs.append(fat_point(2))
    return algs


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
