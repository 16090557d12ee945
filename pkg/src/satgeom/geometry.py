"""Projective planes and spaces over GF(q), plus ingestion of abstract planes.

Points of PG(N, q) are canonical homogeneous tuples whose first nonzero
coordinate is 1, indexed in lexicographic order of their coordinate
encodings.  For N = 2 that order is (0,0,1), (0,1,a), (1,a,b).

Lines are stored as an ``(L, q+1)`` integer array of sorted point indices;
``point_lines`` is the transposed incidence, an ``(P, q+1)`` array of line
indices.  Gathering through these arrays is how coverage counts are taken.
"""
from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field as dc_field
from typing import Iterable, TextIO

import numpy as np

from .errors import AxiomViolation, FieldTooLarge, ParseError, SamePoint, SpaceTooLarge
from .gf import FieldSpec

MAX_INCIDENCES = 2 ** 27
MAX_SPACE_POINTS = 2 ** 22


@dataclass(frozen=True)
class PlanePoint:
    index: int
    coords: tuple[int, ...] | None


@dataclass(eq=False)
class IncidencePlane:
    q: int
    lines: np.ndarray
    point_lines: np.ndarray
    source: str
    name: str
    field: FieldSpec | None = None
    coords: np.ndarray | None = None
    _digest: str | None = dc_field(default=None, repr=False)

    @property
    def n_points(self) -> int:
        return len(self.point_lines)

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    @property
    def digest(self) -> str:
        """Content hash of the sorted line list; equal for identical incidence."""
        if self._digest is None:
            rows = sorted(map(tuple, self.lines.tolist()))
            h = hashlib.sha1(f"{self.q}:{rows}".encode()).hexdigest()[:16]
            self._digest = "plane:" + h
        return self._digest

    @property
    def ids(self) -> set[str]:
        return {self.name, self.digest}

    def point(self, index: int) -> PlanePoint:
        c = None if self.coords is None else tuple(int(x) for x in self.coords[index])
        return PlanePoint(index, c)

    def incident(self, point: int, line: int) -> bool:
        row = self.lines[line]
        k = np.searchsorted(row, point)
        return bool(k < len(row) and row[k] == point)


@dataclass(eq=False)
class ProjectiveSpace:
    N: int
    field: FieldSpec
    coords: np.ndarray

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n_points(self) -> int:
        return len(self.coords)

    @property
    def name(self) -> str:
        return f"PG({self.N},{self.q})"

    @property
    def ids(self) -> set[str]:
        return {self.name}


def theta(N: int, q: int) -> int:
    """Number of points of PG(N, q)."""
    return (q ** (N + 1) - 1) // (q - 1)


# -- coordinates ------------------------------------------------------------

def enumerate_points(fld: FieldSpec, N: int) -> np.ndarray:
    """All canonical points of PG(N, q) in index order, shape (theta, N+1)."""
    q = fld.q
    blocks = []
    for lead in range(N, -1, -1):
        free = N - lead
        tails = np.arange(q ** free, dtype=np.int64)
        block = np.zeros((q ** free, N + 1), dtype=np.int64)
        block[:, lead] = 1
        for i in range(free):
            # big-endian digits so the block is lexicographically sorted
            block[:, N - i] = tails // q ** i % q
        blocks.append(block)
    return np.vstack(blocks)


def canonicalize(fld: FieldSpec, vecs) -> np.ndarray:
    """Scale each nonzero row so that its first nonzero entry is 1."""
    vecs = np.asarray(vecs, dtype=np.int64)
    nz = vecs != 0
    if not nz.any(axis=-1).all():
        raise ValueError("zero vector has no projective point")
    lead = np.argmax(nz, axis=-1)
    lead_val = np.take_along_axis(vecs, lead[..., None], axis=-1)
    return fld.mul_arr(vecs, fld.inv_arr(lead_val))


def index_of(fld: FieldSpec, vecs) -> np.ndarray:
    """Point indices of (not necessarily canonical) nonzero vectors."""
    canon = canonicalize(fld, vecs)
    q = fld.q
    N = canon.shape[-1] - 1
    lead = np.argmax(canon != 0, axis=-1)
    weights = q ** np.arange(N, -1, -1, dtype=np.int64)
    pos = np.arange(N + 1)
    tail = np.where(pos > lead[..., None], canon * weights, 0).sum(axis=-1)
    offset = (q ** (N - lead) - 1) // (q - 1)
    return offset + tail


# -- PG(2, q) ---------------------------------------------------------------

def _point_lines(lines: np.ndarray, n_points: int) -> np.ndarray:
    k = lines.shape[1]
    flat = lines.ravel()
    order = np.argsort(flat, kind="stable")
    line_ids = (np.arange(flat.size) // k)[order]
    return line_ids.reshape(n_points, k)


def build_pg2(fld: FieldSpec, max_incidences: int = MAX_INCIDENCES) -> IncidencePlane:
    q = fld.q
    P = q * q + q + 1
    if P * (q + 1) > max_incidences:
        raise FieldTooLarge(f"PG(2,{q}) has {P * (q + 1)} incidences (cap {max_incidences})")
    coords = enumerate_points(fld, 2)
    forms = coords  # the dual plane uses the same canonical enumeration
    # kernel basis (b0, b1) of each form u: u.x = 0
    b0 = np.zeros_like(forms)
    b1 = np.zeros_like(forms)
    lead = np.argmax(forms != 0, axis=1)
    u1, u2 = forms[:, 1], forms[:, 2]
    s0 = lead == 0   # u = (1, a, b): x0 = -a x1 - b x2
    b0[s0, 0], b0[s0, 1] = fld.neg_arr(u1[s0]), 1
    b1[s0, 0], b1[s0, 2] = fld.neg_arr(u2[s0]), 1
    s1 = lead == 1   # u = (0, 1, a): x1 = -a x2
    b0[s1, 0] = 1
    b1[s1, 1], b1[s1, 2] = fld.neg_arr(u2[s1]), 1
    s2 = lead == 2   # u = (0, 0, 1): x2 = 0
    b0[s2, 0] = 1
    b1[s2, 1] = 1

    t = np.arange(q, dtype=np.int64)[None, :, None]
    affine = fld.add_arr(b0[:, None, :], fld.mul_arr(t, b1[:, None, :]))
    pts = np.concatenate([affine, b1[:, None, :]], axis=1)
    lines = np.sort(index_of(fld, pts), axis=1)
    return IncidencePlane(q=q, lines=lines, point_lines=_point_lines(lines, P),
                          source="generated-PG2", name=f"PG(2,{q})",
                          field=fld, coords=coords)


def line_through(plane: IncidencePlane, P: int, Q: int) -> int:
    if P == Q:
        raise SamePoint(f"point {P} given twice")
    common = np.intersect1d(plane.point_lines[P], plane.point_lines[Q])
    return int(common[0])


# -- plane files ------------------------------------------------------------

def validate_plane(q: int, lines: np.ndarray, n_points: int) -> None:
    """Raise AxiomViolation for the first failed projective plane axiom."""
    P = q * q + q + 1
    if n_points != P or len(lines) != P:
        raise AxiomViolation("counts", (),
                             f"expected {P} points and lines, got {n_points} and {len(lines)}")
    for i, row in enumerate(lines):
        if len(set(row)) != q + 1:
            raise AxiomViolation("line size", (i,), f"line {i} has {len(set(row))} points")
    arr = np.array(lines, dtype=np.int64)
    deg = np.bincount(arr.ravel(), minlength=P)
    bad = np.flatnonzero(deg != q + 1)
    if bad.size:
        raise AxiomViolation("point degree", (int(bad[0]),),
                             f"point {bad[0]} is on {deg[bad[0]]} lines")
    pl = _point_lines(arr, P)
    # with the counts above, "at most one common line" forces "exactly one"
    chunk = max(1, 2 ** 22 // (q + 1) ** 2)
    for start in range(0, P, chunk):
        pts = np.arange(start, min(P, start + chunk))
        seen = np.sort(arr[pl[pts]].reshape(len(pts), -1), axis=1)
        dup = (seen[:, 1:] == seen[:, :-1]) & (seen[:, 1:] != pts[:, None])
        if dup.any():
            r, c = np.argwhere(dup)[0]
            pt, other = int(pts[r]), int(seen[r, c])
            shared = [int(l) for l in pl[pt] if other in arr[l]]
            raise AxiomViolation("unique line", (pt, other, *shared),
                                 f"points {pt} and {other} share lines {shared}")


def load_plane(stream: TextIO | str) -> IncidencePlane:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    header = None
    name = None
    rows: list[list[int]] = []
    for lineno, raw in enumerate(stream, start=1):
        text, _, comment = raw.partition("#")
        comment = comment.strip()
        if not rows and name is None and comment.startswith("name "):
            name = comment[5:].strip()
        text = text.strip()
        if not text:
            continue
        toks = text.split()
        if header is None:
            if len(toks) != 6 or toks[0] != "q" or toks[2] != "points" or toks[4] != "lines":
                raise ParseError(lineno, "expected 'q <q> points <P> lines <L>'")
            try:
                header = tuple(int(toks[i]) for i in (1, 3, 5))
            except ValueError:
                raise ParseError(lineno, "non-integer header field") from None
            continue
        try:
            row = [int(t) for t in toks]
        except ValueError:
            raise ParseError(lineno, "non-integer point index") from None
        if any(not 0 <= x < header[1] for x in row):
            raise ParseError(lineno, f"point index outside [0, {header[1]})")
        rows.append(sorted(row))
    if header is None:
        raise ParseError(0, "empty plane file")
    q, n_points, n_lines = header
    if len(rows) != n_lines:
        raise ParseError(lineno, f"header announces {n_lines} lines, found {len(rows)}")
    validate_plane(q, rows, n_points)
    lines = np.array(rows, dtype=np.int64)
    plane = IncidencePlane(q=q, lines=lines, point_lines=_point_lines(lines, n_points),
                           source="ingested", name="")
    plane.name = name or plane.digest
    return plane


def dump_plane(plane: IncidencePlane, stream: TextIO | None = None) -> str:
    rows = sorted(map(tuple, plane.lines.tolist()))
    out = [f"q {plane.q} points {plane.n_points} lines {plane.n_lines}",
           f"# name {plane.name}"]
    out += [" ".join(map(str, r)) for r in rows]
    text = "\n".join(out) + "\n"
    if stream is not None:
        stream.write(text)
    return text


def plane_from_lines(q: int, lines: Iterable[Iterable[int]], name: str = "") -> IncidencePlane:
    """Validate and wrap an explicit line list (e.g. the Fano triples)."""
    rows = [sorted(int(x) for x in l) for l in lines]
    P = q * q + q + 1
    validate_plane(q, rows, P)
    arr = np.array(rows, dtype=np.int64)
    plane = IncidencePlane(q=q, lines=arr, point_lines=_point_lines(arr, P),
                           source="ingested", name="")
    plane.name = name or plane.digest
    return plane


# -- PG(N, q) ---------------------------------------------------------------

def build_space(fld: FieldSpec, N: int, max_points: int = MAX_SPACE_POINTS) -> ProjectiveSpace:
    if N < 2:
        raise ValueError("dimension must be >= 2")
    if theta(N, fld.q) > max_points:
        raise SpaceTooLarge(f"PG({N},{fld.q}) has {theta(N, fld.q)} points (cap {max_points})")
    return ProjectiveSpace(N=N, field=fld, coords=enumerate_points(fld, N))


def line_points(space: ProjectiveSpace, A: int, B: int) -> list[int]:
    """The q+1 points on the line spanned by points A and B, ascending."""
    if A == B:
        raise SamePoint(f"point {A} given twice")
    fld = space.field
    a, b = space.coords[A], space.coords[B]
    t = np.arange(fld.q, dtype=np.int64)[:, None]
    vecs = np.vstack([fld.add_arr(a[None, :], fld.mul_arr(t, b[None, :])), b[None, :]])
    return sorted(int(i) for i in index_of(fld, vecs))
