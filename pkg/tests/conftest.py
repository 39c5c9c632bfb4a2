import itertools
import math

import pytest


def reflection_axes(units, n):
    """Count reflections u -> c - u (mod n) that map the set onto itself."""
    s = {u - 1 for u in units}
    return sum(1 for c in range(n) if {(c - u) % n for u in s} == s)


def naive_cog(units, n):
    xs = [math.cos(2 * math.pi * (u - 1) / n) for u in units]
    ys = [math.sin(2 * math.pi * (u - 1) / n) for u in units]
    return sum(xs) / len(xs), sum(ys) / len(ys)


def all_subsets(n):
    for size in range(1, n + 1):
        yield from itertools.combinations(range(1, n + 1), size)


@pytest.fixture
def subsets():
    return all_subsets
