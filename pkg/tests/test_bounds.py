import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from satgeom.bounds import (D_closed, D_sequence, R_wq, T_count, auxiliary_inequalities,
                            comparison_bounds, delta, lambda_upper, pi_exact, pi_float,
                            pi_mu_closed, pi_mu_exact, pi_mu_float, pi_upper, sample_w,
                            space_bounds, theorem1_bound, theorem2_bound, threshold_scan)
from satgeom.errors import (ConstraintViolated, InvalidRange, NoApplicableRow, NotFound,
                            UnsupportedMu)

mp = mpmath.mp
mp.dps = 50


# independent 50-digit references ------------------------------------------

def ref_root(q):
    return mpmath.sqrt((q + 1) * mpmath.log(q + 1))


def ref_closed(q, d, mu):
    q1, d = mpmath.mpf(q + 1), mpmath.mpf(d)
    L = mpmath.log(q1)
    if mu == 2:
        return (2 + 8 * d ** 2 * L) / q1 ** (2 * d ** 2 - 2)
    v = (1 + 8 * d ** 2 * L + 16 * d ** 4 * L ** 2) / q1 ** (2 * d ** 2 - 2)
    if mu == 4:
        wh = d * mpmath.sqrt((2 * q + 2) * mpmath.log(q1 ** 2))
        v += q1 ** 2 * q1 ** (-2 * d ** 2) * (3 * wh ** 3 / q1 ** 2 + wh ** 6 / (6 * q1 ** 3))
    return v


def ref_pi(q, w):
    P = q * q + q + 1
    return mpmath.mpf(q) ** (w + 1) * mpmath.binomial(q + 1, w + 1) / mpmath.binomial(P, w + 1)


# probabilities --------------------------------------------------------------

def test_pi_examples():
    assert pi_exact(2, 1) == Fraction(4, 7)
    assert pi_exact(2, 2) == Fraction(8, 35)
    assert pi_exact(3, 4) == 0 and pi_exact(5, 9) == 0
    with pytest.raises(InvalidRange):
        pi_exact(2, 7)


def test_pi_upper():
    assert pi_exact(7, 3) < pi_upper(7, 3).approx and pi_upper(7, 3).valid
    assert not pi_upper(2, 2).valid
    assert pi_upper(5, 0).approx == 1.0 >= pi_exact(5, 0)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13])
def test_pi_below_exponential(q):
    w = 1
    while Fraction(w) < Fraction(q * q - 1, q + 2):
        assert pi_exact(q, w) < Fraction(mpmath.nstr(mpmath.exp(-mpmath.mpf(w) ** 2 / (2 * q + 2)), 40))
        w += 1


@pytest.mark.parametrize("q,w", [(2, 1), (3, 3), (7, 5), (16, 9), (31, 20), (64, 33), (101, 50)])
def test_exact_float_agree(q, w):
    ex = pi_exact(q, w)
    assert pi_float(q, w) == pytest.approx(float(ex), rel=1e-12)
    assert float(ref_pi(q, w)) == pytest.approx(float(ex), rel=1e-12)
    for mu in (1, 2, 3, 4):
        assert pi_mu_float(q, w, mu) == pytest.approx(float(pi_mu_exact(q, w, mu)), rel=1e-12)


def test_scalar_bounds():
    assert theorem1_bound(8) == pytest.approx(float(2 * ref_root(8) + 2), rel=1e-14)
    assert abs(theorem1_bound(8) - 10.8938) < 1e-4
    assert sample_w(8, 1) + 1 == 10 <= theorem1_bound(8)
    assert theorem2_bound(50, 1) == 0.0
    assert theorem2_bound(64, 1.2) == pytest.approx(1 - 65 ** -0.88, rel=1e-12)
    assert delta(3) == pytest.approx(float(1 / mpmath.sqrt(4 * mpmath.log(4))), rel=1e-14)
    assert abs(delta(3) - 0.4247) < 1e-4


def test_lambda():
    for q, w in [(49, 20), (64, 30), (9, 5)]:
        assert lambda_upper(q, w, 0) == pytest.approx(pi_upper(q, w).approx, rel=1e-15)
        assert lambda_upper(q, w, 5) > pi_upper(q, w).approx
    assert 0 < lambda_upper(49, 20, 30) < 1
    with pytest.raises(InvalidRange):
        lambda_upper(4, 4, 0)


# counts -------------------------------------------------------------------

def test_T_examples():
    assert [T_count(2, 2, i) for i in range(4)] == [8, 12, 0, 0]
    assert T_count(2, 2, 0) + T_count(2, 2, 1) == math.comb(6, 3)
    for q in (3, 5, 8):
        assert [T_count(q, 0, i) for i in (1, 2, 3)] == [0, 0, 0]
        assert T_count(q, 0, 0) == q * q + q
    with pytest.raises(UnsupportedMu):
        T_count(3, 2, 4)


def test_pi_mu():
    assert pi_mu_exact(2, 2, 2) == Fraction(20, 35) == Fraction(4, 7)
    with pytest.raises(UnsupportedMu):
        pi_mu_exact(5, 2, 5)


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11]), st.integers(0, 14))
@settings(max_examples=80, deadline=None)
def test_pi_mu_identities(q, w):
    if w + 1 > q * q + q + 1:
        return
    assert pi_mu_exact(q, w, 1) == pi_exact(q, w)
    vals = [pi_mu_exact(q, w, mu) for mu in (1, 2, 3, 4)]
    assert vals == sorted(vals)
    t0 = T_count(q, w, 0)
    if t0:
        for mu in (1, 2, 3, 4):
            s = sum(T_count(q, w, i) for i in range(mu))
            assert R_wq(q, w) * Fraction(s, t0) == pi_mu_exact(q, w, mu)
    # the first four classes never exceed all A-avoiding subsets
    assert sum(T_count(q, w, i) for i in range(4)) <= math.comb(q * q + q, w + 1)


# closed forms and thresholds ------------------------------------------------

@pytest.mark.parametrize("q,d,mu,side", [(97, 1.2, 2, "<"), (89, 1.2, 2, ">="),
                                         (181, 1.3, 3, "<"), (179, 1.3, 3, ">="),
                                         (125, 1.4, 4, "<"), (121, 1.4, 4, ">=")])
def test_closed_against_reference(q, d, mu, side):
    ref = ref_closed(q, mpmath.mpf(str(d)), mu)
    assert pi_mu_closed(q, d, mu) == pytest.approx(float(ref), rel=1e-11)
    assert mpmath.almosteq(pi_mu_closed(q, d, mu, dps=50), ref, rel_eps=mpmath.mpf(10) ** -45)
    assert (ref < 1) == (side == "<")


def test_q89_value():
    assert abs(pi_mu_closed(89, 1.2, 2) - 1.03) < 0.01


@pytest.mark.parametrize("mu,d", [(2, 1.2), (3, 1.3), (4, 1.4)])
def test_closed_decreasing_beyond_threshold(mu, d):
    qs = list(range(90, 600, 7))
    vals = [pi_mu_closed(q, d, mu) for q in qs]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("mu,d,q_star,fail,q_int", [(2, 1.2, 97, 89, 93), (3, 1.3, 181, 179, 181),
                                                    (4, 1.4, 125, 121, 124)])
def test_threshold_scan(mu, d, q_star, fail, q_int):
    r = threshold_scan(mu, d, 512)
    assert (r.q_star, r.last_failure, r.q_int) == (q_star, fail, q_int)
    assert q_int - 1 < r.q_real < q_int
    assert float(ref_closed(mpmath.mpf(r.q_real), mpmath.mpf(str(d)), mu)) == pytest.approx(1, abs=1e-9)


def test_threshold_errors():
    with pytest.raises(NotFound):
        threshold_scan(2, 1.2, 60)
    with pytest.raises(UnsupportedMu):
        threshold_scan(5, 1.2, 200)


def test_threshold_job_independent():
    a = threshold_scan(2, 1.2, 300, jobs=1)
    b = threshold_scan(2, 1.2, 300, jobs=2)
    assert (a.q_star, a.q_int, a.values) == (b.q_star, b.q_int, b.values)


def test_auxiliary_inequalities_report_regime():
    aux = auxiliary_inequalities(97, 1.2)
    # the w-hat bracketing always holds; q+1-2w>0 fails at this threshold
    assert aux["w_hat<=w<w_hat+1"] and not aux["q+1-2w>0"]


# D constants ---------------------------------------------------------------

def test_D_sequence():
    assert D_sequence(7, 1) == [1.0]
    dl = float(1 / ref_root(9))
    assert abs(dl - 0.2084) < 1e-4
    D2 = 2 + (1 + dl) / 9 + dl
    assert D_sequence(9, 2)[1] == pytest.approx(D2, rel=1e-13)
    assert abs(D2 - 2.343) < 1e-3 and D2 <= 3


@pytest.mark.parametrize("q", [16, 25, 64, 256, 1024])
def test_D_mu_plus_one(q):
    top = math.isqrt(q)
    for mu, D in enumerate(D_sequence(q, top), start=1):
        assert D <= mu + 1 + 1e-9


@pytest.mark.parametrize("q", [3, 4, 16, 64])
def test_D_twice_minus_one(q):
    dl = float(1 / ref_root(q))
    limit = ((1 - dl) * q - dl + 1) / 2 + 1
    seq = D_sequence(q, int(limit))
    for mu, D in enumerate(seq, start=1):
        assert D <= 2 * mu - 1 + 1e-9


def test_D_closed_rows():
    assert D_closed(97, 2) == (2.4, "mu=2,q>=97")
    assert D_closed(181, 3)[0] == 2.6 and D_closed(125, 4)[0] == 2.8
    assert D_closed(16, 3) == (4.0, "mu<=sqrt(q)")
    assert D_closed(3, 2) == (3.0, "mu<=((1-delta)q-delta+1)/2+1")
    assert D_closed(50, 1) == (1.0, "mu=1")
    with pytest.raises(NoApplicableRow):
        D_closed(2, 2)


# spaces and comparisons ------------------------------------------------------

def test_space_bounds():
    with pytest.raises(ConstraintViolated) as e:
        space_bounds(8, 81)
    assert "N!=8,12" in e.value.which
    v = space_bounds(6, 81)
    expect = (2 * ref_root(81) + 2) * 81 ** 2 + 2 * 81
    assert v.valid and v.approx == pytest.approx(float(expect), rel=1e-12)
    # mu=2, N=4, q=97 evaluates to 97 n_{97,2} + 3; its own size side condition is not met
    v2 = space_bounds(4, 97, mu=2, strict=False)
    assert v2.approx == pytest.approx(float(97 * (2 * mpmath.mpf("2.4") * ref_root(97) + 2) + 3),
                                      rel=1e-12)
    assert not v2.valid and v2.violations == ("q^((N-2)/2)+1-mu>=n_q,mu",)
    with pytest.raises(ConstraintViolated):
        space_bounds(4, 97, mu=2)
    assert space_bounds(6, 97, mu=2).valid


def test_comparison_bounds():
    c = comparison_bounds(97)
    assert theorem1_bound(97) < 3 * math.sqrt(2) * math.sqrt(97 * math.log(97)) == c["prior_3sqrt2"]
    assert c["improves"]
    c2 = comparison_bounds(97, 2)
    assert c2["D_mu"] == 2.4 < 33 * math.sqrt(2) and c2["improves"]
    big = comparison_bounds(3, 10 ** 6)
    assert not big["prior_66_applicable"] and not big["improves"]
