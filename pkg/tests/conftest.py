import functools
from itertools import combinations

import pytest

from satgeom.geometry import build_pg2, plane_from_lines
from satgeom.gf import field_of_order

# The seven classical lines of the Fano plane, written out by hand.
FANO_TRIPLES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


@functools.lru_cache(maxsize=None)
def pg2(q):
    return build_pg2(field_of_order(q))


@pytest.fixture(scope="session")
def fano():
    return plane_from_lines(2, FANO_TRIPLES, name="fano")


def naive_multiplicity(lines, point, subset):
    """Sum over lines through ``point`` of C(|line & subset|, 2), straight from the definition."""
    subset = set(subset)
    total = 0
    for line in lines:
        if point in line:
            r = len(subset & set(line))
            total += r * (r - 1) // 2
    return total


def naive_lines_of_space(space):
    """All lines of PG(N, q) as frozensets, built from raw coordinate arithmetic."""
    fld = space.field
    coords = [tuple(int(x) for x in row) for row in space.coords]
    index = {c: i for i, c in enumerate(coords)}

    def canon(v):
        lead = next(x for x in v if x)
        inv = fld.inv(lead)
        return tuple(fld.mul(inv, x) for x in v)

    lines = set()
    for a, b in combinations(range(len(coords)), 2):
        pts = {a, b}
        for t in range(1, fld.q):
            v = tuple(fld.add(x, fld.mul(t, y)) for x, y in zip(coords[a], coords[b]))
            pts.add(index[canon(v)])
        lines.add(frozenset(pts))
    return [sorted(l) for l in lines]
