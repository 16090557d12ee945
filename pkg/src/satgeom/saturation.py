"""Saturation verifiers and secant-multiplicity profiles.

For a point set S and a point Q outside it, the coverage multiplicity is

    m(Q) = sum over lines l through Q of C(|l & S|, 2),

so S is saturating when every outside point has m(Q) >= 1, and
(1, mu)-saturating when every outside point has m(Q) >= mu.  Points of S
need no coverage.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .errors import GeometryMismatch, ParseError
from .geometry import IncidencePlane, ProjectiveSpace, line_points


@dataclass(frozen=True)
class PointSet:
    geometry: str | None
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(int(i) for i in self.indices))
        if len(set(idx)) != len(idx):
            raise ValueError("point set contains duplicates")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, geometry, indices: Iterable[int]) -> "PointSet":
        gid = geometry if isinstance(geometry, str) or geometry is None else geometry.name
        return cls(gid, tuple(indices))

    @property
    def k(self) -> int:
        return len(self.indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def union(self, other: Iterable[int]) -> "PointSet":
        return PointSet(self.geometry, tuple(set(self.indices) | set(other)))


@dataclass
class CoverageProfile:
    multiplicity: np.ndarray
    in_set: np.ndarray

    def outside(self) -> np.ndarray:
        return np.flatnonzero(~self.in_set)

    def min_outside(self) -> int | None:
        out = self.multiplicity[~self.in_set]
        return int(out.min()) if out.size else None


@dataclass(frozen=True)
class SaturationCheck:
    """Verifier outcome; truthy iff the set is (1, mu)-saturating."""

    ok: bool
    mu: int
    witness: int | None = None
    multiplicity: int | None = None

    @property
    def deficit(self) -> int:
        return 0 if self.ok else self.mu - self.multiplicity

    def __bool__(self):
        return self.ok


def _as_pointset(S, geometry) -> PointSet:
    if not isinstance(S, PointSet):
        return PointSet(None, tuple(S))
    if S.geometry is not None and S.geometry not in geometry.ids:
        raise GeometryMismatch(f"set belongs to {S.geometry!r}, not {geometry.name!r}")
    return S


def _mask(S: PointSet, n: int) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    idx = np.asarray(S.indices, dtype=np.int64)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise GeometryMismatch(f"point index outside [0, {n})")
    mask[idx] = True
    return mask


def coverage_profile(plane: IncidencePlane, S) -> CoverageProfile:
    S = _as_pointset(S, plane)
    in_set = _mask(S, plane.n_points)
    per_line = in_set[plane.lines].sum(axis=1)
    contrib = per_line * (per_line - 1) // 2
    mult = contrib[plane.point_lines].sum(axis=1)
    return CoverageProfile(mult, in_set)


def _check(profile: CoverageProfile, mu: int) -> SaturationCheck:
    short = np.flatnonzero(~profile.in_set & (profile.multiplicity < mu))
    if short.size == 0:
        return SaturationCheck(True, mu)
    w = int(short[0])
    return SaturationCheck(False, mu, w, int(profile.multiplicity[w]))


def is_mu_saturating(plane: IncidencePlane, S, mu: int) -> SaturationCheck:
    if mu < 1:
        raise ValueError("mu must be >= 1")
    return _check(coverage_profile(plane, S), mu)


def is_saturating(plane: IncidencePlane, S) -> SaturationCheck:
    return is_mu_saturating(plane, S, 1)


def space_coverage(space: ProjectiveSpace, S) -> CoverageProfile:
    """Coverage multiplicities in PG(N, q), one line per spanned pair of S.

    A line holding r points of S is visited once and contributes C(r, 2),
    however many pairs of S span it.
    """
    S = _as_pointset(S, space)
    in_set = _mask(S, space.n_points)
    mult = np.zeros(space.n_points, dtype=np.int64)
    pts = list(S.indices)
    done: set[tuple[int, int]] = set()
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if (a, b) in done:
                continue
            line = np.asarray(line_points(space, a, b))
            members = [int(x) for x in line[in_set[line]]]
            r = len(members)
            for j, x in enumerate(members):
                for y in members[j + 1:]:
                    done.add((x, y))
            mult[line] += r * (r - 1) // 2
    return CoverageProfile(mult, in_set)


def is_saturating_space(space: ProjectiveSpace, S, mu: int = 1) -> SaturationCheck:
    if mu < 1:
        raise ValueError("mu must be >= 1")
    return _check(space_coverage(space, S), mu)


# -- point set files --------------------------------------------------------

def dump_pointset(S: PointSet, stream: TextIO | None = None) -> str:
    text = f"geometry {S.geometry or '*'}\n" + " ".join(map(str, S.indices)) + "\n"
    if stream is not None:
        stream.write(text)
    return text


def load_pointset(stream: TextIO | str) -> PointSet:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    geometry = None
    indices: list[int] | None = None
    for lineno, raw in enumerate(stream, start=1):
        text = raw.partition("#")[0].strip()
        if not text:
            continue
        if geometry is None:
            toks = text.split(maxsplit=1)
            if toks[0] != "geometry" or len(toks) != 2:
                raise ParseError(lineno, "expected 'geometry <id>'")
            geometry = toks[1].strip()
            continue
        if indices is not None:
            raise ParseError(lineno, "unexpected extra line")
        try:
            indices = [int(t) for t in text.split()]
        except ValueError:
            raise ParseError(lineno, "non-integer point index") from None
    if geometry is None:
        raise ParseError(0, "empty point set file")
    return PointSet(None if geometry == "*" else geometry, tuple(indices or ()))
