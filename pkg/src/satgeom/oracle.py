"""Brute-force ground truth by exhaustive enumeration.

Nothing here uses the counting formulas in :mod:`satgeom.bounds`; the
enumerations only read the plane's incidence, so they can be used to check
those formulas.  Subsets are visited in lexicographic order in numpy batches.
"""
from __future__ import annotations

import itertools
import math
import os
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded
from .geometry import IncidencePlane
from .saturation import PointSet, is_mu_saturating

BATCH = 1 << 15


@dataclass(frozen=True)
class EnumerationBudget:
    max_subsets: int = 10 ** 7
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_subsets <= 0 or (self.max_seconds is not None and self.max_seconds <= 0):
            raise ValueError("budget limits must be positive")

    @classmethod
    def default(cls) -> "EnumerationBudget":
        """Default caps, with ``SATGEOM_BUDGET`` overriding ``max_subsets``."""
        env = os.environ.get("SATGEOM_BUDGET")
        return cls(max_subsets=int(env)) if env else cls()


class _Meter:
    def __init__(self, budget: EnumerationBudget | None):
        self.budget = budget or EnumerationBudget.default()
        self.start = time.monotonic()
        self.used = 0

    def reserve(self, n: int) -> None:
        if self.used + n > self.budget.max_subsets:
            raise BudgetExceeded(f"{self.used + n} subsets exceed cap {self.budget.max_subsets}")
        self.used += n

    def tick(self) -> None:
        limit = self.budget.max_seconds
        if limit is not None and time.monotonic() - self.start > limit:
            raise BudgetExceeded(f"enumeration ran past {limit} s")


def _combinations(n: int, k: int, meter: _Meter):
    """Yield (B, k) arrays of all k-subsets of range(n) in lexicographic order."""
    if k == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    it = itertools.combinations(range(n), k)
    dt = np.dtype((np.int64, k))
    while True:
        meter.tick()
        chunk = np.fromiter(itertools.islice(it, BATCH), dtype=dt)
        if not len(chunk):
            return
        yield chunk.reshape(-1, k)


def _labels_through(plane: IncidencePlane, A: int) -> np.ndarray:
    """For every point, which of the q+1 lines through A carries it (-1 for A)."""
    label = np.full(plane.n_points, -1, dtype=np.int64)
    for j, line in enumerate(plane.point_lines[A]):
        label[plane.lines[line]] = j
    label[A] = -1
    return label


def _per_line_counts(labels: np.ndarray, n_lines: int) -> np.ndarray:
    return (labels[:, :, None] == np.arange(n_lines)).sum(axis=1)


def brute_pi(plane: IncidencePlane, A: int, w: int,
             budget: EnumerationBudget | None = None) -> Fraction:
    """Share of all (w+1)-subsets that leave point A uncovered."""
    P, k = plane.n_points, w + 1
    meter = _Meter(budget)
    meter.reserve(math.comb(P, k))
    label = _labels_through(plane, A)
    uncovered = 0
    for combos in _combinations(P, k, meter):
        labs = label[combos]
        avoid = (labs >= 0).all(axis=1)
        counts = _per_line_counts(labs, plane.q + 1)
        uncovered += int((avoid & (counts <= 1).all(axis=1)).sum())
    return Fraction(uncovered, math.comb(P, k))


def brute_T(plane: IncidencePlane, A: int, w: int,
            budget: EnumerationBudget | None = None) -> dict[int, int]:
    """Histogram of the secant multiplicity at A over all A-avoiding (w+1)-subsets."""
    others = np.array([x for x in range(plane.n_points) if x != A], dtype=np.int64)
    k = w + 1
    meter = _Meter(budget)
    meter.reserve(math.comb(len(others), k))
    label = _labels_through(plane, A)[others]
    hist: Counter = Counter()
    for combos in _combinations(len(others), k, meter):
        counts = _per_line_counts(label[combos], plane.q + 1)
        m = (counts * (counts - 1) // 2).sum(axis=1)
        vals, freq = np.unique(m, return_counts=True)
        hist.update(dict(zip(vals.tolist(), freq.tolist())))
    return dict(sorted(hist.items()))


@dataclass(frozen=True)
class MinSaturating:
    size: int
    witness: PointSet
    subsets_checked: int


def brute_min_saturating(plane: IncidencePlane, mu: int = 1,
                         budget: EnumerationBudget | None = None) -> MinSaturating:
    """Smallest (1, mu)-saturating set, found by increasing size then lex order."""
    if plane.q > 5:
        raise BudgetExceeded("exhaustive minimum search is capped at order 5")
    P = plane.n_points
    inc = np.zeros((P, plane.n_lines), dtype=np.int32)
    for j, line in enumerate(plane.lines):
        inc[line, j] = 1
    meter = _Meter(budget)
    for k in range(1, P + 1):
        meter.reserve(math.comb(P, k))
        for combos in _combinations(P, k, meter):
            mask = np.zeros((len(combos), P), dtype=np.int32)
            np.put_along_axis(mask, combos, 1, axis=1)
            per_line = mask @ inc
            m = (per_line * (per_line - 1) // 2) @ inc.T
            good = ((m >= mu) | (mask == 1)).all(axis=1)
            hit = np.flatnonzero(good)
            if hit.size:
                S = PointSet(plane.name, tuple(combos[hit[0]].tolist()))
                assert is_mu_saturating(plane, S, mu)
                return MinSaturating(k, S, meter.used)
    raise AssertionError("the full point set is always saturating")


def brute_covering_radius(H, budget: EnumerationBudget | None = None) -> int:
    """Covering radius of the code with parity-check matrix H, capped at 3.

    A syndrome is at distance t when it is a combination of t columns with
    nonzero coefficients; anything not reachable with two columns reports 3.
    """
    fld, mat = H.field, np.asarray(H.matrix, dtype=np.int64)
    q = fld.q
    r, n = mat.shape
    meter = _Meter(budget)
    meter.reserve(q ** r)
    weights = q ** np.arange(r, dtype=np.int64)
    nonzero = np.arange(1, q, dtype=np.int64)
    # multiples[a-1, j] = a * column j
    multiples = fld.mul_arr(nonzero[:, None, None], mat.T[None, :, :])
    dist = np.full(q ** r, 3, dtype=np.int64)
    dist[0] = 0
    one = (multiples.reshape(-1, r) @ weights)
    dist[one] = np.minimum(dist[one], 1)
    for i, j in itertools.combinations(range(n), 2):
        meter.tick()
        sums = fld.add_arr(multiples[:, i, None, :], multiples[None, :, j, :])
        codes = sums.reshape(-1, r) @ weights
        dist[codes] = np.minimum(dist[codes], 2)
    return int(dist.max())
