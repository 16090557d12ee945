import io
from itertools import combinations

import numpy as np
import pytest

from satgeom.errors import AxiomViolation, ParseError, SamePoint, SpaceTooLarge
from satgeom.geometry import (build_pg2, build_space, dump_plane, line_points, line_through,
                              load_plane, plane_from_lines, theta)
from satgeom.gf import field_new, field_of_order

from conftest import FANO_TRIPLES, naive_lines_of_space, pg2

ORDERS = [2, 3, 4, 5, 7, 8, 9]


def test_small_counts():
    P2 = pg2(2)
    assert (P2.n_points, P2.n_lines, P2.lines.shape[1]) == (7, 7, 3)
    P4 = pg2(4)
    assert (P4.n_points, P4.n_lines) == (21, 21)
    assert P4.point_lines.shape == (21, 5)


def test_point_order():
    P = pg2(3)
    c = [tuple(r) for r in P.coords.tolist()]
    assert c[0] == (0, 0, 1)
    assert c[1:4] == [(0, 1, 0), (0, 1, 1), (0, 1, 2)]
    assert c[4:] == [(1, a, b) for a in range(3) for b in range(3)]


@pytest.mark.parametrize("q", ORDERS)
def test_axioms_exhaustive(q):
    P = pg2(q)
    n = q * q + q + 1
    lines = [set(l) for l in P.lines.tolist()]
    assert len(lines) == n and len({frozenset(l) for l in lines}) == n
    assert all(len(l) == q + 1 for l in lines)
    deg = np.bincount(P.lines.ravel(), minlength=n)
    assert (deg == q + 1).all()
    # every pair of points on exactly one line
    shared = np.zeros((n, n), dtype=int)
    for l in P.lines:
        shared[np.ix_(l, l)] += 1
    off = ~np.eye(n, dtype=bool)
    assert (shared[off] == 1).all()
    # dual counts
    assert sum(map(len, lines)) == n * (q + 1) == int(deg.sum())


@pytest.mark.parametrize("q", [3, 4, 5, 8, 9])
def test_lines_are_zero_sets_of_linear_forms(q):
    P = pg2(q)
    F = P.field
    coords = P.coords
    for l in P.lines[: min(len(P.lines), 12)]:
        pts = coords[l]
        # solve for a form vanishing on the line by trying all canonical forms
        hits = []
        for a in coords:
            vals = F.add_arr(F.add_arr(F.mul_arr(a[0], pts[:, 0]), F.mul_arr(a[1], pts[:, 1])),
                             F.mul_arr(a[2], pts[:, 2]))
            if (vals == 0).all():
                hits.append(tuple(a))
        assert len(hits) == 1


def test_q3_pairs():
    P = pg2(3)
    pairs = list(combinations(range(13), 2))
    assert len(pairs) == 78
    for a, b in pairs:
        common = [i for i, l in enumerate(P.lines.tolist()) if a in l and b in l]
        assert len(common) == 1
        assert line_through(P, a, b) == common[0]


def test_deterministic():
    a, b = build_pg2(field_of_order(9)), build_pg2(field_of_order(9))
    assert np.array_equal(a.lines, b.lines) and np.array_equal(a.point_lines, b.point_lines)
    assert a.digest == b.digest


@pytest.mark.parametrize("q", [2, 3, 4])
def test_round_trip(q):
    P = pg2(q)
    text = dump_plane(P)
    Q = load_plane(text)
    assert sorted(map(tuple, Q.lines.tolist())) == sorted(map(tuple, P.lines.tolist()))
    assert Q.name == P.name and Q.source == "ingested"
    assert dump_plane(Q) == text


def test_writer_format():
    text = dump_plane(pg2(2))
    rows = text.splitlines()
    assert rows[0] == "q 2 points 7 lines 7"
    body = [tuple(map(int, r.split())) for r in rows[1:] if not r.startswith("#")]
    assert body == sorted(body)
    assert all(list(r) == sorted(r) for r in body)


def test_three_point_line_rejected():
    rows = [list(l) for l in pg2(3).lines.tolist()]
    rows[5] = rows[5][:3]
    text = "q 3 points 13 lines 13\n" + "\n".join(" ".join(map(str, r)) for r in rows)
    with pytest.raises(AxiomViolation) as e:
        load_plane(text)
    assert e.value.which == "line size" and e.value.witness == (5,)


def test_unique_line_violation():
    # two copies of the same line: counts fine, degree breaks
    bad = list(FANO_TRIPLES)
    bad[1] = bad[0]
    with pytest.raises(AxiomViolation) as e:
        plane_from_lines(2, bad)
    assert e.value.which == "point degree"


def test_parse_errors():
    with pytest.raises(ParseError):
        load_plane("q 2 points seven lines 7\n")
    with pytest.raises(ParseError):
        load_plane("q 2 points 7 lines 7\n0 1 2\n")
    with pytest.raises(ParseError) as e:
        load_plane("q 2 points 7 lines 7\n0 1 9\n")
    assert e.value.lineno == 2
    with pytest.raises(ParseError):
        load_plane("")


def test_fano_from_triples(fano):
    assert fano.q == 2 and fano.name == "fano"
    assert line_through(fano, 0, 1) == FANO_TRIPLES.index((0, 1, 2))
    text = "q 2 points 7 lines 7\n" + "\n".join(" ".join(map(str, t)) for t in FANO_TRIPLES)
    P = load_plane(io.StringIO(text))
    assert P.name == P.digest and P.name.startswith("plane:")


def test_line_through_x0_zero():
    P = pg2(3)
    # points (0,0,1) and (0,1,a) have indices 0..3 and span x0 = 0
    target = [i for i, l in enumerate(P.lines.tolist()) if l == [0, 1, 2, 3]]
    assert len(target) == 1
    assert line_through(P, 1, 3) == target[0]
    with pytest.raises(SamePoint):
        line_through(P, 4, 4)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_space_matches_plane(q):
    fld = field_of_order(q)
    S = build_space(fld, 2)
    P = pg2(q)
    assert np.array_equal(S.coords, P.coords)
    for a, b in combinations(range(P.n_points), 2):
        assert line_points(S, a, b) == P.lines[line_through(P, a, b)].tolist()


def test_pg32():
    S = build_space(field_new(2), 3)
    assert S.n_points == theta(3, 2) == 15
    lines = naive_lines_of_space(S)
    assert len(lines) == 35
    for a, b in combinations(range(15), 2):
        pts = line_points(S, a, b)
        assert len(pts) == 3 and a in pts and b in pts
        assert pts in lines
    with pytest.raises(SamePoint):
        line_points(S, 2, 2)


def test_pg33_line_count():
    S = build_space(field_new(3), 3)
    assert S.n_points == 40
    # (theta_3 * theta_2 / (q+1)) lines, each 4 points
    assert len(naive_lines_of_space(S)) == 40 * 13 // 4


def test_space_cap():
    with pytest.raises(SpaceTooLarge):
        build_space(field_new(2), 30)
