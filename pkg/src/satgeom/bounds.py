"""Probabilities, subset counts and size bounds for random saturating sets.

Two backends are exposed where exact arithmetic makes sense: ``Fraction``
results built from Python integers (``pi_exact``, ``T_count``,
``pi_mu_exact``, ``R_wq``) and float evaluations (``pi_float``,
``pi_mu_float``) for sweeps over larger q.  Closed-form threshold
expressions are evaluated in double precision and re-evaluated with 50-digit
mpmath arithmetic whenever they land within 1% of the decision boundary.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial

import mpmath

from .errors import ConstraintViolated, InvalidRange, NoApplicableRow, NotFound, UnsupportedMu
from .gf import prime_power

HIGH_DPS = 50

# (mu, d, minimal q) for the direct constructions of (1, mu)-saturating sets
DIRECT_REGIMES = {2: (1.2, 97), 3: (1.3, 181), 4: (1.4, 125)}


@dataclass
class BoundValue:
    approx: float
    exact: Fraction | None = None
    valid: bool = True
    violations: tuple[str, ...] = ()
    note: str = ""

    def __float__(self):
        return self.approx


def binom(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def plane_size(q: int) -> int:
    return q * q + q + 1


def range_limit(q: int) -> Fraction:
    """Upper limit (q^2 - 1)/(q + 2) on w for the exponential estimate."""
    return Fraction(q * q - 1, q + 2)


def in_range(q: int, w: int) -> bool:
    return w < range_limit(q)


def _sqrt_term(q):
    """sqrt((q+1) ln(q+1)), the scale shared by every size bound."""
    return math.sqrt((q + 1) * math.log(q + 1))


def sample_w(q: int, scale) -> int:
    """ceil(scale * sqrt((2q+2) ln((q+1)^2))) evaluated with 50 digits."""
    with mpmath.workdps(HIGH_DPS):
        s = mpmath.mpf(str(scale)) if isinstance(scale, float) else mpmath.mpf(scale)
        val = s * mpmath.sqrt((2 * q + 2) * mpmath.log(mpmath.mpf(q + 1) ** 2))
        return int(mpmath.ceil(val))


def w_hat(q: int, d: float) -> float:
    return d * math.sqrt((2 * q + 2) * math.log((q + 1) ** 2))


# -- probability that a fixed point is left uncovered ------------------------

def pi_exact(q: int, w: int) -> Fraction:
    """Exact probability that a random (w+1)-subset leaves a fixed point uncovered."""
    P = plane_size(q)
    if w < 0 or w + 1 > P:
        raise InvalidRange(f"need 0 <= w+1 <= {P}")
    return Fraction(q ** (w + 1) * binom(q + 1, w + 1), binom(P, w + 1))


def pi_float(q: int, w: int) -> float:
    """Same quantity as :func:`pi_exact` via the telescoped product, in floats."""
    P = plane_size(q)
    if w < 0 or w + 1 > P:
        raise InvalidRange(f"need 0 <= w+1 <= {P}")
    if w + 1 > q + 1:
        return 0.0
    s = 0.0
    for i in range(w + 1):
        s += math.log1p(-(i * q - i + 1) / (P - i))
    return math.exp(s)


def pi_upper(q: int, w: int) -> BoundValue:
    return BoundValue(math.exp(-w * w / (2 * q + 2)), valid=in_range(q, w))


def theorem1_bound(q: int) -> float:
    return 2 * _sqrt_term(q) + 2


def size_bound(q: int, D: float) -> float:
    """2 D sqrt((q+1) ln(q+1)) + 2."""
    return 2 * D * _sqrt_term(q) + 2


def theorem2_bound(q: int, c: float) -> float:
    """Lower bound on the probability that a random set is saturating."""
    return 1.0 - (q + 1) ** (-(2 * c * c - 2))


def failure_bound(q: int, c: float) -> float:
    return (q + 1) ** (2 - 2 * c * c)


def delta(q: int) -> float:
    return 1.0 / _sqrt_term(q)


def lambda_upper(q: int, w: int, k: int) -> float:
    """Estimate for a point left uncovered by w+1 points avoiding k fixed ones."""
    if not in_range(q, w):
        raise InvalidRange(f"w = {w} not below (q^2-1)/(q+2) = {float(range_limit(q)):.4g}")
    return math.exp(-w * w / (2 * q + 2) + k * (w + 1) / (2 * q * (q + 1)))


# -- exact multiplicity counts ----------------------------------------------

def T_count(q: int, w: int, i: int) -> int:
    """Number of (w+1)-subsets avoiding a fixed point A that cover A exactly i times."""
    if i == 0:
        return q ** (w + 1) * binom(q + 1, w + 1)

    def term(coef, free_lines, singles):
        # singles points on distinct remaining lines, one of q choices each
        b = binom(free_lines, singles)
        return coef * q ** singles * b if b else 0

    c2 = binom(q, 2)
    if i == 1:
        return term((q + 1) * c2, q, w - 1)
    if i == 2:
        return term(binom(q + 1, 2) * c2 ** 2, q - 1, w - 3)
    if i == 3:
        return (term((q + 1) * binom(q, 3), q, w - 2)
                + term(binom(q + 1, 3) * c2 ** 3, q - 2, w - 5))
    raise UnsupportedMu(f"no closed form for T_{i}")


def R_wq(q: int, w: int) -> Fraction:
    return Fraction(T_count(q, w, 0), binom(plane_size(q), w + 1))


def pi_mu_exact(q: int, w: int, mu: int) -> Fraction:
    """Probability that a fixed point is covered fewer than mu times."""
    if not 1 <= mu <= 4:
        raise UnsupportedMu(f"mu = {mu} not in 1..4")
    P = plane_size(q)
    if w < 0 or w + 1 > P:
        raise InvalidRange(f"need 0 <= w+1 <= {P}")
    return Fraction(sum(T_count(q, w, i) for i in range(mu)), binom(P, w + 1))


def pi_mu_float(q: int, w: int, mu: int) -> float:
    if not 1 <= mu <= 4:
        raise UnsupportedMu(f"mu = {mu} not in 1..4")
    t0 = T_count(q, w, 0)
    if t0 == 0:
        return float(pi_mu_exact(q, w, mu))
    ratio = sum(float(Fraction(T_count(q, w, i), t0)) for i in range(mu))
    return pi_float(q, w) * ratio


def pi_mu_closed(q, d, mu: int, dps: int | None = None):
    """(q+1)^2 times the closed-form upper estimate of pi_mu.

    With ``dps`` set the expression is evaluated in mpmath at that many
    digits (``q`` may then be any real); otherwise in double precision.
    """
    if mu not in (2, 3, 4):
        raise UnsupportedMu(f"mu = {mu} not in 2..4")
    if dps is None:
        log, sqrt = math.log, math.sqrt
        q1, d = q + 1, float(d)
        return _closed(q1, d, mu, log, sqrt)
    with mpmath.workdps(dps):
        q1 = mpmath.mpf(q) + 1
        dm = mpmath.mpf(str(d)) if isinstance(d, float) else mpmath.mpf(d)
        return _closed(q1, dm, mu, mpmath.log, mpmath.sqrt)


def _closed(q1, d, mu, log, sqrt):
    L = log(q1)
    denom = q1 ** (2 * d * d - 2)
    if mu == 2:
        return (2 + 8 * d * d * L) / denom
    val = (1 + 8 * d * d * L + 16 * d ** 4 * L * L) / denom
    if mu == 4:
        wh = d * sqrt(2 * q1 * log(q1 * q1))
        val += q1 ** (2 - 2 * d * d) * (3 * wh ** 3 / q1 ** 2 + wh ** 6 / (6 * q1 ** 3))
    return val


def auxiliary_inequalities(q: int, d: float) -> dict[str, bool]:
    """Side conditions used when passing from exact w to the real-valued w-hat."""
    w = sample_w(q, d)
    wh = w_hat(q, d)
    return {
        "q+1-2w>0": q + 1 - 2 * w > 0,
        "w_hat<=w<w_hat+1": wh <= w < wh + 1,
        "w^2+w<2w_hat^2": w * w + w < 2 * wh * wh,
        "(w-2)(w-1)w(w+1)<2w_hat^4": (w - 2) * (w - 1) * w * (w + 1) < 2 * wh ** 4,
        "(w-1)w(w+1)<3w_hat^3": (w - 1) * w * (w + 1) < 3 * wh ** 3,
        "(w-4)..(w+1)<w_hat^6": math.prod(range(w - 4, w + 2)) < wh ** 6,
    }


# -- threshold scans --------------------------------------------------------

@dataclass
class ThresholdResult:
    mu: int
    d: float
    q_max: int
    q_star: int                  # minimal prime power from which the bound holds
    q_int: int                   # same over all integers
    q_real: float                # real-valued crossing just below q_int
    last_failure: int | None     # largest failing prime power below q_star
    values: dict[int, float] = field(default_factory=dict, repr=False)


def _below_one(q, d, mu) -> tuple[float, bool]:
    v = pi_mu_closed(q, d, mu)
    if abs(v - 1) < 0.01:
        hv = pi_mu_closed(q, d, mu, dps=HIGH_DPS)
        return float(hv), bool(hv < 1)
    return v, v < 1


def _map(fn, items, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def threshold_scan(mu: int, d: float, q_max: int, jobs: int = 1) -> ThresholdResult:
    if mu not in (2, 3, 4):
        raise UnsupportedMu(f"mu = {mu} not in 2..4")
    qs = list(range(2, q_max + 1))
    results = dict(zip(qs, _map(partial(_below_one, d=d, mu=mu), qs, jobs)))
    if not results[q_max][1]:
        raise NotFound(f"bound still >= 1 at q_max = {q_max}")

    def first_good_tail(candidates):
        start, last_bad = candidates[0], None
        for q in candidates:
            if not results[q][1]:
                last_bad = q
        if last_bad is not None:
            start = next(q for q in candidates if q > last_bad)
        return start, last_bad

    pps = [q for q in qs if prime_power(q) is not None]
    q_star, last_failure = first_good_tail(pps)
    q_int, _ = first_good_tail(qs)
    q_real = float(q_int)
    if q_int > 2:
        with mpmath.workdps(HIGH_DPS):
            f = lambda x: pi_mu_closed(x, d, mu, dps=HIGH_DPS) - 1
            q_real = float(mpmath.findroot(f, (q_int - 1, q_int), solver="bisect"))
    return ThresholdResult(mu, d, q_max, q_star, q_int, q_real, last_failure,
                           {q: v for q, (v, _) in results.items()})


# -- multiplicity constants -------------------------------------------------

def D_sequence(q: int, mu: int) -> list[float]:
    """D_1 = 1, D_i = D_{i-1} + 1 + (D_{i-1} + delta)/q + delta."""
    if mu < 1:
        raise ValueError("mu must be >= 1")
    dl = delta(q)
    seq = [1.0]
    for _ in range(mu - 1):
        prev = seq[-1]
        seq.append(prev + 1 + (prev + dl) / q + dl)
    return seq


def twice_minus_one_limit(q: int) -> float:
    """Largest mu for which D_mu <= 2 mu - 1 is guaranteed."""
    dl = delta(q)
    return ((1 - dl) * q - dl + 1) / 2 + 1


def D_closed(q: int, mu: int) -> tuple[float, str]:
    """Smallest applicable tabulated constant D_mu and the row that supplied it."""
    if mu < 1:
        raise ValueError("mu must be >= 1")
    if mu == 1:
        return 1.0, "mu=1"
    rows = []
    if mu in DIRECT_REGIMES:
        dval, qmin = DIRECT_REGIMES[mu]
        if q >= qmin:
            rows.append((2 * dval, f"mu={mu},q>={qmin}"))
    if q >= 4 and mu <= math.sqrt(q):
        rows.append((mu + 1.0, "mu<=sqrt(q)"))
    if q >= 3 and mu <= twice_minus_one_limit(q):
        rows.append((2.0 * mu - 1, "mu<=((1-delta)q-delta+1)/2+1"))
    if not rows:
        raise NoApplicableRow(f"no tabulated D_mu for mu={mu}, q={q}")
    return min(rows)


def mu_size_bound(q: int, mu: int) -> float:
    return size_bound(q, D_closed(q, mu)[0])


# -- projective spaces ------------------------------------------------------

def space_bounds(N: int, q: int, mu: int = 1, strict: bool = True) -> BoundValue:
    """Upper bound on the smallest (1, mu)-saturating set in PG(N, q)."""
    viol = []
    if mu == 1:
        n_q = theorem1_bound(q)
        if N % 2 or N < 6:
            viol.append("N=2t-2>=6")
        elif N in (8, 12):
            viol.append("N!=8,12")
        if q < 79:
            viol.append("q>=79")
        if q + 1 < 2 * n_q:
            viol.append("q+1>=2n_q")
        value = n_q * q ** ((N - 2) / 2) + 2 * q ** ((N - 4) / 2)
    else:
        if N % 2 or N < 4:
            viol.append("N>=4 even")
        try:
            n_qmu = mu_size_bound(q, mu)
        except NoApplicableRow:
            viol.append("D_mu row")
            n_qmu = math.nan
        h = q ** ((N - 2) / 2)
        if not h + 1 - mu >= n_qmu:
            viol.append("q^((N-2)/2)+1-mu>=n_q,mu")
        value = h * n_qmu + max(3, mu) * (h - 1) / (q - 1)
    if viol and strict:
        raise ConstraintViolated(viol)
    return BoundValue(value, valid=not viol, violations=tuple(viol))


def comparison_bounds(q: int, mu: int = 1) -> dict:
    """Earlier bounds alongside ours, with improvement flags."""
    sq = math.sqrt(q * math.log(q))
    out = {
        "prior_5": 5 * sq,
        "prior_3sqrt2": 3 * math.sqrt(2) * sq,
        "prior_66": 66 * math.sqrt(mu) * sq,
        "prior_66_applicable": mu < 121 * q * math.log(q),
    }
    try:
        D, row = D_closed(q, mu)
    except NoApplicableRow:
        D, row = None, None
    out["D_mu"], out["row"] = D, row
    out["ours"] = None if D is None else size_bound(q, D)
    if mu == 1:
        out["improves"] = out["ours"] < out["prior_3sqrt2"]
    else:
        out["improves"] = D is not None and out["prior_66_applicable"] and D < 33 * math.sqrt(mu)
    return out
