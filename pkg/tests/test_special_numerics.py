"""Ladders, rational approximation, erfc and the Meijer-G evaluator."""

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from dgg_fso import (
    EvaluationError,
    MeijerGSpec,
    SpecError,
    delta_seq,
    erfc,
    meijer_g,
    meijer_g_fast,
    rationalize,
)
from dgg_fso.special_numerics import ExactArg, smallest_rational_within

from conftest import erfc_series


# ---------------------------------------------------------------------------
# delta_seq
# ---------------------------------------------------------------------------

def test_delta_seq_identity_order_one():
    assert delta_seq(1, 0.7) == [Fraction(7, 10)]


def test_delta_seq_direct_expansion():
    assert delta_seq(2, 1) == [Fraction(1, 2), Fraction(1)]


def test_delta_seq_exact_arithmetic():
    # direct arithmetic: (0.55 + k)/3
    got = delta_seq(3, 0.55)
    assert got == [Fraction(11, 60), Fraction(31, 60), Fraction(17, 20)]
    assert math.isclose(float(got[0]), 0.18333333333, rel_tol=1e-9)
    assert math.isclose(float(got[2]), 0.85, rel_tol=1e-12)


@pytest.mark.parametrize("j,x", [(1, 2.0), (4, 0.5), (7, 1.8), (28, 2.35)])
def test_delta_seq_spacing_and_head(j, x):
    seq = delta_seq(j, x)
    assert len(seq) == j
    assert seq[0] == Fraction(str(x)) / j
    steps = {seq[k + 1] - seq[k] for k in range(j - 1)}
    assert steps <= {Fraction(1, j)}


def test_delta_seq_rejects_zero_order():
    with pytest.raises(SpecError, match="invalid order"):
        delta_seq(0, 1.0)


# ---------------------------------------------------------------------------
# rationalize
# ---------------------------------------------------------------------------

def test_rationalize_exact_integer():
    r = rationalize(2.0, max_den=10, rel_tol=1e-3)
    assert (r.num, r.den) == (2, 1)
    assert r.rel_error == 0.0


def test_rationalize_published_ratio_channel_a():
    r = rationalize(2.1690 / 0.8530, max_den=11, rel_tol=5e-3)
    assert (r.num, r.den) == (28, 11)
    assert math.isclose(r.rel_error, 1.05e-3, rel_tol=0.05)


def test_rationalize_matches_exhaustive_search():
    x = 0.7638
    best, best_err = None, math.inf
    for d in range(1, 26):
        n = round(x * d)
        if n < 1:
            continue
        err = abs(n / d - x)
        if err < best_err - 1e-15:
            best, best_err = Fraction(n, d), err
    r = rationalize(x, max_den=25, rel_tol=5e-3)
    assert Fraction(r.num, r.den) == best


def test_rationalize_idempotent_on_rationals():
    for frac in [Fraction(3, 4), Fraction(17, 7), Fraction(5, 1)]:
        r = rationalize(float(frac), max_den=25, rel_tol=1e-6)
        assert Fraction(r.num, r.den) == frac


def test_rationalize_reports_failure():
    with pytest.raises(SpecError, match="rationalization failed"):
        rationalize(math.pi, max_den=2, rel_tol=1e-6)


def test_smallest_rational_prefers_low_denominator():
    # 0.853 has the better approximation 17/20 below den 25, but 6/7 is the
    # smallest-denominator fraction within 5e-3 relative error
    assert smallest_rational_within(0.8530, 5e-3) == Fraction(6, 7)


# ---------------------------------------------------------------------------
# erfc
# ---------------------------------------------------------------------------

def test_erfc_origin():
    assert erfc(0.0) == 1.0


def test_erfc_at_one_vs_series_oracle():
    oracle = erfc_series(1.0)
    assert math.isclose(oracle, 0.15729920705028513, rel_tol=1e-12)
    assert math.isclose(erfc(1.0), oracle, rel_tol=1e-12)


def test_erfc_reflection():
    for x in [0.3, 1.7, 4.0]:
        assert math.isclose(erfc(-x), 2.0 - erfc(x), rel_tol=1e-14)


def test_erfc_monotone():
    xs = np.linspace(-4, 8, 200)
    ys = [erfc(float(x)) for x in xs]
    assert all(a > b for a, b in zip(ys, ys[1:]))
    assert all(0.0 < y < 2.0 for y in ys)


# ---------------------------------------------------------------------------
# meijer_g
# ---------------------------------------------------------------------------

def erfc_spec(x):
    return MeijerGSpec.create([], [1], [0, Fraction(1, 2)], [], x)


def test_meijer_g_erfc_value():
    # sqrt(pi) * erfc(1)
    got = meijer_g(erfc_spec(1.0))
    assert math.isclose(got, math.sqrt(math.pi) * 0.15729920705028513, rel_tol=1e-10)


def test_meijer_g_origin_limit_consistent_with_erfc():
    got = meijer_g(erfc_spec(1e-28))
    assert math.isclose(got, math.sqrt(math.pi), rel_tol=1e-10)


def test_meijer_g_erfc_identity_log_grid():
    # |erfc(sqrt(x)) - G/sqrt(pi)| <= 1e-10 across [1e-3, 10]
    for x in np.logspace(-3, 1, 9):
        lhs = erfc(math.sqrt(x))
        rhs = meijer_g(erfc_spec(float(x)), rel_tol=1e-11) / math.sqrt(math.pi)
        assert abs(lhs - rhs) <= 1e-10, x


def test_meijer_g_bessel_reduction():
    # G^{2,0}_{0,2}[x | 1, 1] = 2 x K_0(2 sqrt(x)) at x = 1
    spec = MeijerGSpec.create([], [], [1, 1], [], 1.0)
    expected = 2.0 * float(mp.besselk(0, 2))
    assert math.isclose(meijer_g(spec), expected, rel_tol=1e-10)
    assert math.isclose(meijer_g_fast(spec), expected, rel_tol=1e-9)


def test_meijer_g_deterministic():
    spec = MeijerGSpec.create([], [], [Fraction(1, 2), Fraction(3, 2)], [], 0.25)
    assert meijer_g(spec) == meijer_g(spec)


def test_meijer_g_agrees_with_mpmath_reference():
    # moderate-order ladder case cross-checked against an independent
    # implementation of the same function
    b = delta_seq(5, 0.8) + delta_seq(3, 1.6)
    for x in [1e-4, 0.03, 0.9]:
        spec = MeijerGSpec.create([], [], b, [], x)
        ours = meijer_g(spec)
        with mp.workdps(40):
            ref = float(mp.meijerg([[], []], [b, []], x))
        assert math.isclose(ours, ref, rel_tol=1e-8), x


def test_meijer_g_fast_matches_escalated_path():
    b = delta_seq(11, 0.55) + delta_seq(28, 2.35)
    for x in [1e-6, 1e-2, 1.0]:
        spec = MeijerGSpec.create([], [], b, [], x)
        assert math.isclose(meijer_g_fast(spec), meijer_g(spec), rel_tol=1e-7)


def test_meijer_g_rejects_bad_argument():
    with pytest.raises(SpecError, match="argument"):
        MeijerGSpec.create([], [], [1, 1], [], 0.0)
    with pytest.raises(SpecError, match="argument"):
        MeijerGSpec.create([], [], [1, 1], [], -2.0)


def test_meijer_g_rejects_empty_spec():
    with pytest.raises(SpecError, match="malformed"):
        MeijerGSpec.create([], [], [], [], 1.0)


def test_meijer_g_rejects_bad_tolerance():
    spec = MeijerGSpec.create([], [], [1, 1], [], 1.0)
    with pytest.raises(SpecError, match="rel_tol"):
        meijer_g(spec, rel_tol=1e-3)
    with pytest.raises(SpecError, match="rel_tol"):
        meijer_g(spec, rel_tol=0.0)


def test_meijer_g_rejects_divergent_contour():
    # more denominator than numerator gammas: no convergent contour
    spec = MeijerGSpec.create([], [0.5, 0.7, 0.9], [1], [], 1.0)
    with pytest.raises((SpecError, EvaluationError)):
        meijer_g(spec)


def test_exact_arg_round_trip():
    arg = ExactArg(Fraction(3, 7), Fraction(-41, 2))
    with mp.workdps(40):
        direct = mp.mpf(3) / 7 * mp.mpf(10) ** (mp.mpf(-41) / 2)
        assert mp.almosteq(arg.to_mpf(), direct)
    assert math.isclose(arg.log(), math.log(3 / 7) - 41 / 2 * math.log(10), rel_tol=1e-13)
