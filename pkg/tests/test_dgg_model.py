"""Parameter relations, pdf/cdf, sampling and special cases."""

import math

import mpmath as mp
import numpy as np
import pytest
from scipy import integrate, interpolate, stats

from dgg_fso import (
    PRESETS,
    SpecError,
    cdf,
    get_preset,
    make_channel,
    make_special_case,
    omega_from_shape,
    pdf,
    sample,
    scintillation_variance,
)

from conftest import gamma_gamma_pdf, product_pdf_quadrature


PUBLISHED = {
    # name: (m1, gamma1, m2, gamma2, omega1, omega2)
    "a": (0.55, 2.1690, 2.35, 0.8530, 1.5793, 0.9671),
    "b": (0.5, 1.8621, 1.8, 0.7638, 1.5074, 0.9280),
    "c": (2.65, 0.9135, 0.85, 1.4385, 0.9836, 1.1745),
    "d": (3.2, 0.4205, 2.8, 0.6643, 0.8336, 0.9224),
}


# ---------------------------------------------------------------------------
# omega_from_shape / scintillation_variance
# ---------------------------------------------------------------------------

def test_omega_gamma_one_collapse():
    for m in [0.5, 1.0, 2.35, 7.0]:
        assert math.isclose(omega_from_shape(m, 1.0), 1.0, rel_tol=1e-12)


@pytest.mark.parametrize("name", sorted(PUBLISHED))
def test_omega_reproduces_published_values(name):
    m1, g1, m2, g2, w1, w2 = PUBLISHED[name]
    assert math.isclose(omega_from_shape(m1, g1), w1, rel_tol=1e-3)
    assert math.isclose(omega_from_shape(m2, g2), w2, rel_tol=1e-3)


def test_omega_rejects_bad_shapes():
    with pytest.raises(SpecError, match="invalid shape"):
        omega_from_shape(0.4, 1.0)
    with pytest.raises(SpecError, match="invalid shape"):
        omega_from_shape(1.0, -1.0)


def test_scintillation_exponential_factor():
    assert math.isclose(scintillation_variance(1.0, 1.0), 1.0, rel_tol=1e-12)


def test_scintillation_half_integer_closed_form():
    # Gamma(2.5)Gamma(0.5)/Gamma(1.5)^2 = 3, variance 2
    assert math.isclose(scintillation_variance(0.5, 1.0), 2.0, rel_tol=1e-12)


def test_scintillation_high_precision_oracle():
    with mp.workdps(50):
        m, g = mp.mpf("0.55"), mp.mpf("2.1690")
        expect = float(mp.gamma(m + 2 / g) * mp.gamma(m) / mp.gamma(m + 1 / g) ** 2 - 1)
    assert math.isclose(scintillation_variance(0.55, 2.1690), expect, rel_tol=1e-12)


# ---------------------------------------------------------------------------
# pdf / cdf
# ---------------------------------------------------------------------------

def test_pdf_gamma_gamma_reduction_bessel():
    ch = make_special_case("gamma_gamma", m1=1.0, m2=1.0)
    # product of two unit exponentials: 2 K_0(2 sqrt(I))
    expect = 2.0 * float(mp.besselk(0, 2))
    assert math.isclose(pdf(ch, 1.0), expect, rel_tol=1e-10)


def test_pdf_gamma_gamma_family_matches_bessel_form():
    ch = make_special_case("gamma_gamma", m1=2.0, m2=4.5)
    for x in np.logspace(-2, 1, 12):
        assert math.isclose(pdf(ch, float(x)), float(gamma_gamma_pdf(x, 2.0, 4.5)),
                            rel_tol=1e-8), x


def test_pdf_channel_b_vs_product_quadrature_oracle():
    ch = get_preset("b")
    got = pdf(ch, 1.0)
    oracle = product_pdf_quadrature(1.0, ch)
    # the closed form carries the rationalized exponent ratio; its residual
    # bounds the disagreement with the exact-parameter oracle
    assert math.isclose(got, oracle, rel_tol=5 * ch.ratio.rel_error + 1e-6)


def test_pdf_normalization_channel_a():
    ch = get_preset("a")
    val, err = integrate.quad(lambda x: pdf(ch, x), 1e-9, 60.0, limit=300)
    assert abs(val - 1.0) <= 1e-6


def test_pdf_support_violation():
    ch = get_preset("a")
    with pytest.raises(SpecError, match="support violation"):
        pdf(ch, 0.0)
    with pytest.raises(SpecError, match="support violation"):
        cdf(ch, -1.0)


def test_cdf_limits_and_monotonicity():
    ch = get_preset("c")
    assert cdf(ch, 1e-8) < 1e-5
    assert cdf(ch, 200.0) > 1.0 - 1e-6
    xs = np.logspace(-2, 1.2, 25)
    vals = [cdf(ch, float(x)) for x in xs]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_cdf_matches_integral_of_pdf_channel_a():
    ch = get_preset("a")
    val, _ = integrate.quad(lambda x: pdf(ch, x), 1e-12, 1.0, limit=300)
    assert math.isclose(cdf(ch, 1.0), val, rel_tol=1e-6)


def test_cdf_derivative_matches_pdf():
    ch = get_preset("d")
    for x in np.logspace(-1.5, 0.8, 8):
        h = float(x) * 1e-5
        deriv = (cdf(ch, float(x) + h) - cdf(ch, float(x) - h)) / (2 * h)
        assert math.isclose(deriv, pdf(ch, float(x)), rel_tol=1e-4), x


def test_unit_mean_from_derived_omegas():
    ch = make_channel(m1=0.62, gamma1=1.3, m2=2.1, gamma2=0.9)
    val, _ = integrate.quad(lambda x: x * pdf(ch, x), 1e-9, 120.0, limit=400)
    assert math.isclose(val, 1.0, rel_tol=1e-5)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def test_sample_deterministic_and_positive():
    ch = get_preset("b")
    a = sample(ch, seed=5, n=1000)
    b = sample(ch, seed=5, n=1000)
    assert np.array_equal(a, b)
    assert (a > 0).all()


def test_sample_unit_mean():
    ch = get_preset("a")
    x = sample(ch, seed=11, n=1_000_000)
    se = x.std() / math.sqrt(x.size)
    assert abs(x.mean() - 1.0) <= 3 * se


def test_sample_scintillation_index():
    ch = get_preset("c")
    x = sample(ch, seed=13, n=1_000_000)
    si = x.var() / x.mean() ** 2
    expect = ch.scintillation_index()
    # delta-method standard error of the empirical scintillation index
    boot = np.array_split(x, 50)
    sis = np.array([b.var() / b.mean() ** 2 for b in boot])
    se = sis.std() / math.sqrt(len(boot))
    assert abs(si - expect) <= 3.5 * se


@pytest.mark.parametrize("name", ["a", "b", "c", "d"])
def test_sampler_matches_cdf_ks(name):
    ch = get_preset(name)
    n = 100_000
    x = np.sort(sample(ch, seed=29, n=n))
    # analytic cdf on a quantile-spread grid, monotone-interpolated
    grid = np.unique(np.concatenate([
        x[:: max(1, n // 400)], [x[0] * 0.99, x[-1] * 1.01]
    ]))
    f = np.array([cdf(ch, float(g)) for g in grid])
    interp = interpolate.PchipInterpolator(grid, f, extrapolate=True)
    res = stats.ks_1samp(x, lambda v: np.clip(interp(v), 0.0, 1.0))
    crit_1pct = 1.628 / math.sqrt(n)
    assert res.statistic < crit_1pct, (name, res.statistic, crit_1pct)


# ---------------------------------------------------------------------------
# special cases and presets
# ---------------------------------------------------------------------------

def test_special_case_gamma_gamma_fixes_exponents():
    ch = make_special_case("gamma_gamma", m1=2.0, m2=2.0)
    assert ch.large_scale.gamma == 1.0 and ch.small_scale.gamma == 1.0
    assert ch.large_scale.omega == 1.0 and ch.small_scale.omega == 1.0
    assert (ch.p, ch.q) == (1, 1)


def test_special_case_double_weibull_product_of_exponentials():
    ch = make_special_case("double_weibull", gamma1=1.0, gamma2=1.0,
                           omega1=1.0, omega2=1.0)
    assert ch.large_scale.m == 1.0 and ch.small_scale.m == 1.0
    assert math.isclose(pdf(ch, 1.0), 2.0 * float(mp.besselk(0, 2)), rel_tol=1e-10)


def test_special_case_k_channel_matches_bessel_form():
    ch = make_special_case("k_channel", m1=1.5)
    for x in np.logspace(-2, 1, 10):
        assert math.isclose(pdf(ch, float(x)), float(gamma_gamma_pdf(x, 1.5, 1.0)),
                            rel_tol=1e-8), x


def test_special_case_over_specified():
    with pytest.raises(SpecError, match="over-specified"):
        make_special_case("gamma_gamma", m1=2.0, m2=2.0, gamma1=2.0)
    with pytest.raises(SpecError, match="over-specified"):
        make_special_case("k_channel", m1=1.5, m2=3.0)


def test_presets_published_pairs():
    assert (PRESETS["a"].p, PRESETS["a"].q) == (28, 11)
    assert (PRESETS["b"].p, PRESETS["b"].q) == (17, 7)
    assert (PRESETS["c"].p, PRESETS["c"].q) == (7, 11)
    assert (PRESETS["d"].p, PRESETS["d"].q) == (7, 11)


def test_preset_lookup_error_lists_names():
    with pytest.raises(SpecError, match="'a'.*'b'.*'c'.*'d'"):
        get_preset("z")
