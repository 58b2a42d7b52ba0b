import random

import pytest

from afbench.core import Framework


def random_framework(rng: random.Random, n: int, p: float) -> Framework:
    attacks = [(a, b) for a in range(n) for b in range(n) if rng.random() < p]
    return Framework(range(n), attacks)


def all_frameworks(n: int):
    """Every framework over arguments 0..n-1 (all edge subsets)."""
    pairs = [(a, b) for a in range(n) for b in range(n)]
    for mask in range(1 << len(pairs)):
        yield Framework(range(n), [pairs[i] for i in range(len(pairs))
                                   if mask >> i & 1])


@pytest.fixture
def chain():
    """1 -> 2 -> 3: grounded IN {1, 3}, OUT {2}."""
    return Framework({1, 2, 3}, {(1, 2), (2, 3)})


@pytest.fixture
def mutual_pair():
    return Framework({1, 2}, {(1, 2), (2, 1)})


@pytest.fixture
def three_cycle():
    return Framework({1, 2, 3}, {(1, 2), (2, 3), (3, 1)})


@pytest.fixture
def table_framework():
    """Eight-argument framework whose complete labellings match the three
    reference labellings used in the classification tests."""
    return Framework(range(1, 9), {(1, 2), (7, 4), (3, 5), (5, 3), (3, 8)})
