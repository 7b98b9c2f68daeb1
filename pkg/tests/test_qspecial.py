import math
from fractions import Fraction

import pytest

from qlidstone.qcore import QContext, q_pochhammer_inf
from qlidstone.fps import eq_exponential_series
from qlidstone.symlaurent import eval_at
from qlidstone.qspecial import (
    _eta_series_sign_exact,
    _eta_series_value,
    basic_trig,
    eq_eval,
    hayman_zero_estimate,
    jackson_bessel_j2,
    jackson_bessel_zeros,
    positive_zeros,
    refine_zero_exact,
    smallest_positive_zero,
    sq_lower_bound,
)


@pytest.fixture(scope="module")
def ctx():
    return QContext(Fraction(1, 2))


def test_eq_eval_trivials(ctx):
    assert eq_eval(ctx, 0.37, 0.0) == 1.0
    assert eq_eval(ctx, 0.0, 0.3) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        eq_eval(ctx, 0.2, 1.0)


def test_eq_eval_eta_product_form(ctx):
    w = 0.3
    q = float(ctx.q)
    lhs = eq_eval(ctx, float(ctx.eta), w)
    num, _ = q_pochhammer_inf(-w, math.sqrt(q))
    den, _ = q_pochhammer_inf(q * w * w, q * q)
    assert lhs == pytest.approx(num / den, rel=1e-10)
    num2, _ = q_pochhammer_inf(-w, q)
    den2, _ = q_pochhammer_inf(math.sqrt(q) * w, q)
    assert lhs == pytest.approx(num2 / den2, rel=1e-10)


def test_eq_eval_matches_exact_partial_sum(ctx):
    # float series vs the rational series evaluated exactly and rounded
    w = Fraction(1, 5)
    x = Fraction(2, 5)
    e = eq_exponential_series(ctx, 21)
    exact = sum((eval_at(ctx, e[n], x) * w ** n for n in range(21)), Fraction(0))
    assert eq_eval(ctx, 0.4, 0.2) == pytest.approx(float(exact), abs=1e-13)


def test_basic_trig_at_zero_argument(ctx):
    assert basic_trig(ctx, 0.7, 0.0, "S") == 0.0
    assert basic_trig(ctx, 0.7, 0.0, "C") == 1.0


def test_trig_splits_complex_exponential(ctx):
    for x in (-0.9, 0.1, 0.8):
        w = 0.4
        z = eq_eval(ctx, x, complex(0, w))
        assert z.real == pytest.approx(basic_trig(ctx, x, w, "C"), abs=1e-12)
        assert z.imag == pytest.approx(basic_trig(ctx, x, w, "S"), abs=1e-12)


def test_eta_series_positive_below_bound():
    q = 0.25
    bound = math.sqrt(sq_lower_bound(q))
    for frac in (0.3, 0.7, 0.99):
        assert _eta_series_value("Sq_eta", q, frac * bound) > 0


def test_jackson_bessel_trivial():
    assert jackson_bessel_j2(0.5, 0.0, 0.25) == 0.0


def test_jackson_bessel_vs_eta_sine():
    # the sine at the eta node is a q-Bessel function in disguise:
    # S(eta; w) (-qw^2; q^2)_inf (q^(1/2); q)_inf / (q; q)_inf = w^(1/2) J_{1/2}(2w; q)
    q, w = 0.25, 0.2
    pref, _ = q_pochhammer_inf(-q * w * w, q * q)
    sine = _eta_series_value("Sq_eta", q, w) / pref  # S at the eta node
    poch_half, _ = q_pochhammer_inf(math.sqrt(q), q)
    poch_q, _ = q_pochhammer_inf(q, q)
    lhs = sine * pref * poch_half / poch_q
    rhs = math.sqrt(w) * jackson_bessel_j2(0.5, 2 * w, q)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_hayman_estimate():
    q = 0.25
    assert hayman_zero_estimate(1, 0.5, q) == pytest.approx(2 * 4 * q ** 0.25)
    assert hayman_zero_estimate(4, 0.5, q) / hayman_zero_estimate(3, 0.5, q) == pytest.approx(1 / q)
    with pytest.raises(ValueError):
        hayman_zero_estimate(0, 0.5, q)


def test_hayman_estimate_brackets_true_zero():
    q = 0.25
    zeros = jackson_bessel_zeros(0.5, q, 4)
    for m in (3, 4):
        est = hayman_zero_estimate(m, 0.5, q)
        assert 0.5 * est < zeros[m - 1] < 1.5 * est


def test_smallest_zero_sq(ctx):
    q = 0.25
    rep = smallest_positive_zero("Sq_eta", q)
    assert rep.value ** 2 >= sq_lower_bound(q) * (1 - 1e-12)
    assert rep.value >= 2.291
    assert rep.bound_check
    assert rep.residual < 1e-12
    assert rep.bracket[0] < rep.value < rep.bracket[1]
    assert rep.bracket[1] - rep.bracket[0] < 1e-12 * rep.value


def test_smallest_zero_cq_below_sq():
    q = 0.25
    ws = smallest_positive_zero("Sq_eta", q).value
    wc = smallest_positive_zero("Cq_eta", q).value
    assert 0 < wc < ws


def test_bessel_zero_interlacing():
    q = 0.25
    zs = jackson_bessel_zeros(0.5, q, 3)
    zc = jackson_bessel_zeros(-0.5, q, 3)
    assert zc[0] < zs[0] < zc[1] < zs[1] < zc[2] < zs[2]


def test_eta_zeros_match_bessel_zeros():
    # w-zeros of the eta-node sine are half the J_{1/2} z-zeros
    q = 0.25
    ws = positive_zeros("Sq_eta", q, 2)
    zs = jackson_bessel_zeros(0.5, q, 2)
    for w, z in zip(ws, zs):
        assert w == pytest.approx(z / 2, rel=1e-10)


def test_consecutive_zero_ratio_approaches_inverse_q():
    q = 0.25
    zs = jackson_bessel_zeros(0.5, q, 3)
    assert abs(zs[2] / zs[1] - 1 / q) <= 0.05 / q


def test_sinq_zero():
    rep = smallest_positive_zero("Sinq", 0.25)
    assert rep.value > 0
    assert rep.residual < 1e-12 * max(1.0, rep.value)


def test_refine_zero_exact_agrees_with_float(ctx):
    w = refine_zero_exact(ctx, "Sq_eta", steps=40)
    rep = smallest_positive_zero("Sq_eta", float(ctx.q))
    assert abs(float(w) - rep.value) < 1e-11 * rep.value
    # the exact sign flips across the refined value
    eps = Fraction(1, 10 ** 15)
    assert _eta_series_sign_exact(ctx, "Sq_eta", w - eps) > 0
    assert _eta_series_sign_exact(ctx, "Sq_eta", w + eps) < 0
