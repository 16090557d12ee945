"""Las Vegas constructions of saturating and (1, mu)-saturating sets.

Every construction draws a uniform random subset of a size fixed by a
ceiling formula, runs the deterministic verifier, and retries with a fresh
per-trial generator on failure.  Trial ``t`` of a run seeded with ``seed``
always uses ``numpy.random.SeedSequence(seed, spawn_key=(stage, t))``, so
results are reproducible and independent of how trials are scheduled.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import bounds
from .errors import (EmptyExperiment, KTooLarge, PreconditionFailed, QBelowThreshold,
                     RangeViolation, RetriesExhausted, UnsupportedMu)
from .geometry import IncidencePlane
from .saturation import PointSet, is_mu_saturating


@dataclass(frozen=True)
class ConstructorParams:
    c: float = 1.0
    d: float = 1.2
    mu: int = 1
    seed: int = 0
    max_retries: int = 50
    enforce_range: bool = False

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("c must be >= 1")
        if self.d <= 1:
            raise ValueError("d must be > 1")
        if self.mu < 1:
            raise ValueError("mu must be >= 1")
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")


@dataclass
class ConstructionResult:
    set: PointSet
    w: int
    trials_used: int
    size_bound: float
    verified: bool
    theorem_range_ok: bool
    D_sequence: list[float] = field(default_factory=list)
    stages: list["ConstructionResult"] = field(default_factory=list, repr=False)

    @property
    def size(self) -> int:
        return len(self.set)


def trial_rng(seed: int, trial: int, stage: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(stage, trial))
    return np.random.Generator(np.random.PCG64(ss))


def sample_subset(n: int, k: int, rng: np.random.Generator, population=None) -> np.ndarray:
    """Uniform k-subset of ``range(n)`` (or of ``population``) by partial Fisher-Yates."""
    pool = np.arange(n, dtype=np.int64) if population is None \
        else np.array(population, dtype=np.int64)
    n = len(pool)
    if not 0 <= k <= n:
        raise KTooLarge(f"cannot draw {k} of {n}")
    for i in range(k):
        j = int(rng.integers(i, n))
        pool[i], pool[j] = pool[j], pool[i]
    return np.sort(pool[:k])


def _range_check(ok: bool, enforce: bool, message: str) -> None:
    if ok:
        return
    if enforce:
        raise RangeViolation(message)
    warnings.warn(message, stacklevel=3)


def _las_vegas(plane, k, mu, params, stage, failure_bound, base=(), population=None):
    base = np.asarray(sorted(base), dtype=np.int64)
    for t in range(params.max_retries):
        drawn = sample_subset(plane.n_points, k, trial_rng(params.seed, t, stage), population)
        cand = PointSet(plane.name, tuple(np.concatenate([base, drawn]).tolist()))
        if is_mu_saturating(plane, cand, mu):
            return cand, t + 1
    raise RetriesExhausted(params.max_retries, failure_bound,
                           stage=stage if stage else None)


def construct_saturating(plane: IncidencePlane, params: ConstructorParams,
                         stage: int = 0) -> ConstructionResult:
    q = plane.q
    w = bounds.sample_w(q, params.c)
    ok = bounds.in_range(q, w)
    _range_check(ok, params.enforce_range,
                 f"w = {w} is not below (q^2-1)/(q+2) = {float(bounds.range_limit(q)):.4g}")
    if w + 1 > plane.n_points:
        raise KTooLarge(f"w+1 = {w + 1} exceeds the {plane.n_points} points of the plane")
    S, used = _las_vegas(plane, w + 1, 1, params, stage, bounds.failure_bound(q, params.c))
    return ConstructionResult(S, w, used, bounds.size_bound(q, params.c), True, ok)


def extend_mu(plane: IncidencePlane, S_prev, D: float, params: ConstructorParams,
              verify_prev: bool = True, stage: int = 0) -> ConstructionResult:
    """Add a random saturating-sized set disjoint from ``S_prev``.

    ``S_prev`` must be (1, mu-1)-saturating with at most
    2 D sqrt((q+1) ln(q+1)) + 2 points; the union is accepted once it is
    (1, mu)-saturating, mu = ``params.mu``.
    """
    mu = params.mu
    prev = S_prev if isinstance(S_prev, PointSet) else PointSet(plane.name, tuple(S_prev))
    if mu == 1 and len(prev) == 0:
        return construct_saturating(plane, params, stage)
    if mu < 2:
        raise PreconditionFailed("extension needs mu >= 2")
    q = plane.q
    if len(prev) > bounds.size_bound(q, D):
        raise PreconditionFailed(f"|S_prev| = {len(prev)} exceeds its D-bound "
                                 f"{bounds.size_bound(q, D):.4f} (D = {D})")
    if verify_prev and not is_mu_saturating(plane, prev, mu - 1):
        raise PreconditionFailed(f"S_prev is not (1,{mu - 1})-saturating")
    dl = bounds.delta(q)
    d = 1 + (D + dl) / q
    w = bounds.sample_w(q, d)
    ok = bounds.in_range(q, w)
    _range_check(ok, params.enforce_range,
                 f"w = {w} is not below (q^2-1)/(q+2) = {float(bounds.range_limit(q)):.4g}")
    outside = np.setdiff1d(np.arange(plane.n_points), np.asarray(prev.indices, dtype=np.int64))
    if w + 1 > len(outside):
        raise KTooLarge(f"w+1 = {w + 1} exceeds the {len(outside)} points outside S_prev")
    fail = (q + 1) ** 2 * bounds.lambda_upper(q, w, len(prev)) if ok else 1.0
    S, used = _las_vegas(plane, w + 1, mu, params, stage, min(fail, 1.0),
                         base=prev.indices, population=outside)
    bound = 2 * (D + 1 + (D + dl) / q + dl) * bounds._sqrt_term(q) + 2
    return ConstructionResult(S, w, used, bound, True, ok)


def construct_mu_iterative(plane: IncidencePlane, mu: int,
                           params: ConstructorParams) -> ConstructionResult:
    """Saturating set followed by mu-1 disjoint extensions."""
    if mu < 1:
        raise ValueError("mu must be >= 1")
    q = plane.q
    Ds = bounds.D_sequence(q, mu)
    first = construct_saturating(plane, replace(params, c=1.0, mu=1), stage=1)
    stages = [first]
    current = first.set
    for i in range(2, mu + 1):
        res = extend_mu(plane, current, Ds[i - 2], replace(params, mu=i),
                        verify_prev=False, stage=i)
        stages.append(res)
        current = res.set
    last = stages[-1]
    return ConstructionResult(current, last.w, sum(s.trials_used for s in stages),
                              bounds.size_bound(q, Ds[-1]), True,
                              all(s.theorem_range_ok for s in stages),
                              D_sequence=Ds, stages=stages)


def construct_mu_direct(plane: IncidencePlane, mu: int,
                        params: ConstructorParams) -> ConstructionResult:
    """A single random draw verified for (1, mu)-saturation, mu in {2, 3, 4}."""
    if mu not in bounds.DIRECT_REGIMES:
        raise UnsupportedMu(f"direct construction covers mu = 2, 3, 4, not {mu}")
    d, q_min = bounds.DIRECT_REGIMES[mu]
    q = plane.q
    if q < q_min:
        raise QBelowThreshold(f"mu = {mu} needs q >= {q_min}, got {q}")
    w = bounds.sample_w(q, d)
    ok = 2 * w < q + 1
    _range_check(ok, params.enforce_range, f"w = {w} is not below (q+1)/2 = {(q + 1) / 2}")
    fail = min(1.0, bounds.pi_mu_closed(q, d, mu))
    S, used = _las_vegas(plane, w + 1, mu, params, 0, fail)
    return ConstructionResult(S, w, used, bounds.size_bound(q, d), True, ok)


# -- Monte Carlo ------------------------------------------------------------

@dataclass
class MonteCarloResult:
    successes: int
    trials: int
    empirical_rate: float
    theorem2_bound: float
    w: int
    seed: int
    first_success: int | None

    @property
    def sigma(self) -> float:
        p = self.theorem2_bound
        return math.sqrt(p * (1 - p) / self.trials)


def _mc_chunk(args):
    plane, k, seed, lo, hi = args
    hits = []
    for t in range(lo, hi):
        S = sample_subset(plane.n_points, k, trial_rng(seed, t))
        if is_mu_saturating(plane, S, 1):
            hits.append(t)
    return hits


def monte_carlo(plane: IncidencePlane, c: float, trials: int,
                params: ConstructorParams | None = None, jobs: int = 1) -> MonteCarloResult:
    """Fraction of random sets of size w+1 that are saturating."""
    params = params or ConstructorParams(c=c)
    if trials <= 0:
        raise EmptyExperiment("trials must be positive")
    q = plane.q
    w = bounds.sample_w(q, c)
    if not w + 1 < bounds.range_limit(q):
        raise RangeViolation(f"k = w+1 = {w + 1} is not below (q^2-1)/(q+2)")
    jobs = max(1, jobs)
    step = -(-trials // jobs)
    chunks = [(plane, w + 1, params.seed, lo, min(trials, lo + step))
              for lo in range(0, trials, step)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_mc_chunk, chunks))
    else:
        parts = [_mc_chunk(ch) for ch in chunks]
    hits = [t for part in parts for t in part]
    return MonteCarloResult(len(hits), trials, len(hits) / trials,
                            bounds.theorem2_bound(q, c), w, params.seed,
                            min(hits) if hits else None)
