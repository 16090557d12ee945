import csv
import io

import numpy as np
import pytest

from satgeom.bounds import space_bounds, theorem1_bound
from satgeom.codes import (CSV_FIELDS, ParityCheckMatrix, check_mcf, dump_matrix,
                           export_parity_check, length_bound, length_function_table, load_matrix,
                           rank, syndrome_multiplicities, write_table_csv)
from satgeom.errors import EmptySet, InvalidMatrix, NoCoordinates, ParseError
from satgeom.geometry import build_space
from satgeom.gf import field_new
from satgeom.oracle import brute_covering_radius, brute_min_saturating
from satgeom.saturation import coverage_profile, is_mu_saturating, is_saturating

from conftest import pg2


def spanning_sets(q, count, seed):
    P = pg2(q)
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        S = sorted(rng.choice(P.n_points, rng.integers(3, P.n_points + 1), replace=False).tolist())
        if rank(P.field, P.coords[S].T) == 3:
            out.append(S)
    return out


def test_export_fano_arc():
    P = pg2(2)
    coords = [tuple(r) for r in P.coords.tolist()]
    arc = sorted(coords.index(v) for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
    assert is_saturating(P, arc)
    H = export_parity_check(P, arc)
    assert H.matrix.shape == (3, 4) and H.q == 2
    assert [tuple(c) for c in H.matrix.T.tolist()] == [coords[i] for i in arc]
    assert H.column_points() == arc


def test_export_errors(fano):
    with pytest.raises(NoCoordinates):
        export_parity_check(fano, [0, 1, 3, 6])
    with pytest.raises(EmptySet):
        export_parity_check(pg2(3), [])


def test_matrix_invariants():
    F = field_new(3)
    with pytest.raises(InvalidMatrix):
        ParityCheckMatrix(F, [[1, 1], [0, 0], [1, 1]])
    with pytest.raises(InvalidMatrix):
        ParityCheckMatrix(F, [[1, 2], [1, 2], [0, 0]])  # second column is twice the first
    with pytest.raises(InvalidMatrix):
        ParityCheckMatrix(F, [[0, 1], [0, 0], [0, 1]])
    with pytest.raises(InvalidMatrix):
        ParityCheckMatrix(F, [[3, 1], [0, 0], [1, 1]])


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_columns_decode_to_points(q):
    P = pg2(q)
    S = list(range(0, P.n_points, 2))
    assert export_parity_check(P, S).column_points() == S


def test_matrix_file_round_trip():
    H = export_parity_check(pg2(4), [0, 5, 9, 17])
    text = dump_matrix(H)
    assert text.splitlines()[0] == "4 3 4"
    H2 = load_matrix(text)
    assert np.array_equal(H2.matrix, H.matrix) and H2.q == 4
    assert dump_matrix(H2) == text
    with pytest.raises(ParseError):
        load_matrix("4 3\n")
    with pytest.raises(ParseError):
        load_matrix("2 3 2\n1 0\n0 1\n")


@pytest.mark.parametrize("q", [2, 3])
def test_radius_equivalence(q):
    P = pg2(q)
    for S in spanning_sets(q, 100, 10 + q):
        H = export_parity_check(P, S)
        assert bool(is_saturating(P, S)) == (brute_covering_radius(H) <= 2)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_mcf_routes_agree(q):
    P = pg2(q)
    for S in spanning_sets(q, 60, 20 + q):
        H = export_parity_check(P, S)
        prof = coverage_profile(P, S)
        counts = syndrome_multiplicities(H)
        assert counts == {int(Q): int(prof.multiplicity[Q]) for Q in prof.outside()}
        for mu in (1, 2, 3, 4):
            want = bool(is_mu_saturating(P, S, mu))
            assert check_mcf(H, mu) == want
            assert check_mcf(H, mu, method="syndrome") == want


def test_mcf_on_verified_mu2_set():
    P = pg2(4)
    S = brute_min_saturating(P, 2).witness
    H = export_parity_check(P, S)
    assert check_mcf(H, 2) and check_mcf(H, 2, method="syndrome")
    with pytest.raises(ValueError):
        check_mcf(H, 1, method="magic")


def test_mcf_space():
    space = build_space(field_new(2), 3)
    S = list(range(0, 15, 2))
    H = export_parity_check(space, S)
    assert H.r == 4
    assert check_mcf(H, 1) == check_mcf(H, 1, method="syndrome")


def test_length_table():
    row = length_bound(97, 1, 2)
    assert row["bound"] == pytest.approx(theorem1_bound(97)) and row["valid"]
    row2 = length_bound(97, 2, 2)
    assert row2["bound"] == pytest.approx(2 * 2.4 * (98 * np.log(98)) ** 0.5 + 2)
    row6 = length_bound(81, 1, 6)
    assert row6["bound"] == pytest.approx(space_bounds(6, 81).approx) and row6["valid"]
    bad = length_bound(81, 1, 8)
    assert not bad["valid"]


def test_csv_schema():
    rows = length_function_table([2, 97], [1, 2], [2, 4])
    text = write_table_csv(rows)
    assert text.splitlines()[0] == ",".join(CSV_FIELDS) == "q,mu,N,bound,valid,prior_bound,improves"
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == 8
    first = parsed[0]
    assert first["q"] == "2" and first["valid"] in ("true", "false")
    q97 = [r for r in parsed if r["q"] == "97" and r["mu"] == "1" and r["N"] == "2"][0]
    assert float(q97["bound"]) == theorem1_bound(97) and q97["improves"] == "true"
