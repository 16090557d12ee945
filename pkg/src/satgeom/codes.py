"""Parity-check matrices of point sets and the covering-code side of saturation.

The columns of a parity-check matrix H are the canonical coordinates of the
points of S.  S is saturating exactly when the code has covering radius at
most 2, and (1, mu)-saturating exactly when every syndrome outside the
columns' span-of-one is hit by at least mu column pairs (counted per line as
C(|l & S|, 2)).
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from . import bounds
from .errors import EmptySet, InvalidMatrix, NoApplicableRow, NoCoordinates, ParseError
from .geometry import IncidencePlane, ProjectiveSpace, build_pg2, build_space, canonicalize, index_of
from .gf import FieldSpec, field_of_order
from .oracle import EnumerationBudget, _Meter
from .saturation import PointSet, coverage_profile, space_coverage


@dataclass(eq=False)
class ParityCheckMatrix:
    field: FieldSpec
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.int64)
        if self.matrix.ndim != 2:
            raise InvalidMatrix("matrix must be two-dimensional")
        if ((self.matrix < 0) | (self.matrix >= self.field.q)).any():
            raise InvalidMatrix("entries must encode elements of GF(q)")
        cols = self.matrix.T
        if (cols == 0).all(axis=1).any():
            raise InvalidMatrix("zero column")
        canon = canonicalize(self.field, cols)
        if len({tuple(c) for c in canon.tolist()}) != len(canon):
            raise InvalidMatrix("two columns are proportional")

    @property
    def r(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def q(self) -> int:
        return self.field.q

    def column_points(self) -> list[int]:
        """Point indices of the columns in PG(r-1, q)."""
        return [int(i) for i in index_of(self.field, self.matrix.T)]


def export_parity_check(geometry, S) -> ParityCheckMatrix:
    indices = list(S.indices if isinstance(S, PointSet) else sorted(S))
    if not indices:
        raise EmptySet("empty point set has no parity-check matrix")
    coords = getattr(geometry, "coords", None)
    if coords is None or geometry.field is None:
        raise NoCoordinates(f"{geometry.name} carries no coordinates")
    return ParityCheckMatrix(geometry.field, coords[indices].T.copy())


def rank(fld: FieldSpec, mat) -> int:
    """Rank over GF(q) by Gaussian elimination."""
    rows = [list(map(int, r)) for r in np.asarray(mat)]
    rk, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = fld.inv(rows[rk][c])
        rows[rk] = [fld.mul(inv, x) for x in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][c]:
                f = rows[i][c]
                rows[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def _geometry_for(H: ParityCheckMatrix):
    if H.r == 3:
        return build_pg2(H.field)
    return build_space(H.field, H.r - 1)


def syndrome_multiplicities(H: ParityCheckMatrix, budget: EnumerationBudget | None = None) -> dict[int, int]:
    """Pair counts for every syndrome not proportional to a column.

    Enumerates each nonzero syndrome s of GF(q)^r up to scalars and counts
    unordered column pairs {i, j} with s = a h_i + b h_j.  Keys are the point
    indices of the syndromes.
    """
    fld, q, r = H.field, H.q, H.r
    meter = _Meter(budget)
    meter.reserve(q ** r)
    cols = H.matrix.T
    col_points = set(H.column_points())
    theta = (q ** r - 1) // (q - 1)
    counts = {s: 0 for s in range(theta) if s not in col_points}
    t = np.arange(q, dtype=np.int64)[:, None]
    for i, j in itertools.combinations(range(H.n), 2):
        meter.tick()
        # points on the line spanned by the two columns, other than the columns
        vecs = fld.add_arr(cols[i][None, :], fld.mul_arr(t[1:], cols[j][None, :]))
        for s in set(int(x) for x in index_of(fld, vecs)):
            if s in counts:
                counts[s] += 1
    return counts


def check_mcf(H: ParityCheckMatrix, mu: int, method: str = "geometry",
              budget: EnumerationBudget | None = None) -> bool:
    """Whether the code is a (2, mu) multiple covering of the farthest-off points.

    ``method="geometry"`` maps syndromes to points and uses the coverage
    profile; ``method="syndrome"`` counts column pairs directly.
    """
    if mu < 1:
        raise ValueError("mu must be >= 1")
    if method == "syndrome":
        counts = syndrome_multiplicities(H, budget)
        return all(v >= mu for v in counts.values())
    if method != "geometry":
        raise ValueError(f"unknown method {method!r}")
    _Meter(budget).reserve(H.q ** H.r)
    geom = _geometry_for(H)
    S = PointSet(None, tuple(H.column_points()))
    prof = coverage_profile(geom, S) if isinstance(geom, IncidencePlane) else space_coverage(geom, S)
    low = prof.min_outside()
    return low is None or low >= mu


# -- matrix files -----------------------------------------------------------

def dump_matrix(H: ParityCheckMatrix, stream: TextIO | None = None) -> str:
    lines = [f"{H.q} {H.r} {H.n}"] + [" ".join(map(str, row)) for row in H.matrix.tolist()]
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text


def load_matrix(stream: TextIO | str) -> ParityCheckMatrix:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    rows = []
    header = None
    for lineno, raw in enumerate(stream, start=1):
        text = raw.partition("#")[0].strip()
        if not text:
            continue
        try:
            vals = [int(t) for t in text.split()]
        except ValueError:
            raise ParseError(lineno, "non-integer entry") from None
        if header is None:
            if len(vals) != 3:
                raise ParseError(lineno, "expected header 'q r n'")
            header = vals
            continue
        if len(vals) != header[2]:
            raise ParseError(lineno, f"expected {header[2]} entries")
        rows.append(vals)
    if header is None:
        raise ParseError(0, "empty matrix file")
    q, r, n = header
    if len(rows) != r:
        raise ParseError(lineno, f"expected {r} rows, found {len(rows)}")
    return ParityCheckMatrix(field_of_order(q), np.array(rows, dtype=np.int64).reshape(r, n))


# -- length-function tables -------------------------------------------------

CSV_FIELDS = ["q", "mu", "N", "bound", "valid", "prior_bound", "improves"]


def length_bound(q: int, mu: int, N: int) -> dict:
    """Upper bound on the mu-length function l_mu(2, N+1, q) as a table row."""
    row = {"q": q, "mu": mu, "N": N, "prior_bound": None, "improves": None}
    if N == 2:
        cmp = bounds.comparison_bounds(q, mu)
        row["bound"], row["valid"] = cmp["ours"], cmp["ours"] is not None
        if mu == 1:
            row["prior_bound"] = cmp["prior_3sqrt2"]
        elif cmp["prior_66_applicable"]:
            row["prior_bound"] = cmp["prior_66"]
        if row["valid"] and row["prior_bound"] is not None:
            row["improves"] = row["bound"] < row["prior_bound"]
        if row["bound"] is None:
            row["bound"] = math.nan
    else:
        bv = bounds.space_bounds(N, q, mu, strict=False)
        row["bound"], row["valid"] = bv.approx, bv.valid
    return row


def length_function_table(qs: Iterable[int], mus: Iterable[int], Ns: Iterable[int]) -> list[dict]:
    mus, Ns = list(mus), list(Ns)
    return [length_bound(q, mu, N) for q in qs for mu in mus for N in Ns]


def write_table_csv(rows: list[dict], stream: TextIO | None = None) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        out = dict(row)
        out["bound"] = "" if out["bound"] is None or math.isnan(out["bound"]) else repr(float(out["bound"]))
        out["prior_bound"] = "" if out["prior_bound"] is None else repr(float(out["prior_bound"]))
        out["valid"] = str(bool(out["valid"])).lower()
        out["improves"] = "" if out["improves"] is None else str(bool(out["improves"])).lower()
        writer.writerow(out)
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text
