"""Shared brute-force oracles, independent of the library's search paths."""

from __future__ import annotations

import random
from itertools import product

import pytest

from margo import ConfigSpace, ContingencyTable, from_facets, marginal_map


def naive_tables(space: ConfigSpace, degree: int):
    """All tables of the exact total, by direct composition enumeration."""
    size = space.size

    def rec(ix, left):
        if ix == size - 1:
            yield (left,)
            return
        for v in range(left + 1):
            for rest in rec(ix + 1, left - v):
                yield (v,) + rest

    if size == 0:
        if degree == 0:
            yield ()
        return
    for counts in rec(0, degree):
        yield ContingencyTable(space, counts)


def naive_fiber(cx, space, b):
    """The fiber by filtering every table of the right degree."""
    return [u for u in naive_tables(space, b.degree) if marginal_map(cx, u) == b]


def naive_marginal(u: ContingencyTable, members) -> tuple[int, ...]:
    """B-marginal by explicit cylinder summation, in lex order over X_B."""
    members = sorted(set(members))
    axes = [range(u.space.cardinalities[i - 1]) for i in members]
    out = []
    for y in product(*axes):
        fixed = dict(zip(members, y))
        total = 0
        for x, c in zip(u.space.configs(), u.counts):
            if all(x[i - 1] == v for i, v in fixed.items()):
                total += c
        out.append(total)
    return tuple(out)


def random_complex(rng: random.Random, n: int):
    """A complex from a random generator list (may be facet-free)."""
    ngens = rng.randint(0, 5)
    gens = []
    for _ in range(ngens):
        gens.append({i for i in range(1, n + 1) if rng.random() < 0.5})
    return from_facets(n, gens)


def random_table(rng: random.Random, space: ConfigSpace, degree: int) -> ContingencyTable:
    counts = [0] * space.size
    for _ in range(degree):
        counts[rng.randrange(space.size)] += 1
    return ContingencyTable(space, tuple(counts))


@pytest.fixture
def rng():
    return random.Random(0)
