"""Shared fixtures and independent oracles.

Oracles here deliberately avoid the package's Meijer-G machinery: they use
elementary quadrature, Bessel functions, gamma-function identities and raw
sampling, so a test failure localizes to one side of the comparison.
"""

import math

import numpy as np
import pytest
from scipy import integrate
from scipy.special import gammainc, kv

from dgg_fso import MCConfig, PRESETS, build_product_model


# ---------------------------------------------------------------------------
# elementary GG densities (direct formulas, no Meijer G)
# ---------------------------------------------------------------------------

def gg_pdf(u, m, gamma, omega):
    """Generalized Gamma density via its defining formula."""
    u = np.asarray(u, dtype=float)
    return (
        gamma * m ** m * u ** (gamma * m - 1.0)
        / (omega ** m * math.gamma(m))
        * np.exp(-m * u ** gamma / omega)
    )


def gg_cdf(u, m, gamma, omega):
    """GG distribution function through the regularized lower gamma."""
    u = np.asarray(u, dtype=float)
    return gammainc(m, m * u ** gamma / omega)


def product_pdf_quadrature(x, ch):
    """Density of the two-factor product by 1-D mixing quadrature."""
    f1 = ch.large_scale
    f2 = ch.small_scale

    def integrand(u):
        return float(gg_pdf(x / u, f1.m, f1.gamma, f1.omega)
                     * gg_pdf(u, f2.m, f2.gamma, f2.omega) / u)

    val, _ = integrate.quad(integrand, 0.0, np.inf, limit=400)
    return val


def product_cdf_quadrature(x, ch):
    """Distribution of the product by mixing the large-scale factor cdf."""
    f1 = ch.large_scale
    f2 = ch.small_scale

    def integrand(u):
        return float(gg_cdf(x / u, f1.m, f1.gamma, f1.omega)
                     * gg_pdf(u, f2.m, f2.gamma, f2.omega))

    val, _ = integrate.quad(integrand, 0.0, np.inf, limit=400)
    return val


def gamma_gamma_pdf(x, m1, m2):
    """Product of two unit-mean gamma variates: Bessel-K closed form."""
    x = np.asarray(x, dtype=float)
    s = m1 + m2
    return (
        2.0 * (m1 * m2) ** (s / 2.0) * x ** (s / 2.0 - 1.0)
        / (math.gamma(m1) * math.gamma(m2))
        * kv(m1 - m2, 2.0 * np.sqrt(m1 * m2 * x))
    )


def erfc_series(x, terms=400):
    """erfc independent of math.erfc: Taylor series near the origin,
    quadrature of the defining integral elsewhere."""
    if x < 0:
        return 2.0 - erfc_series(-x, terms)
    if x < 3.0:
        # erf(x) = 2/sqrt(pi) * sum (-1)^k x^(2k+1) / (k! (2k+1))
        total = 0.0
        term = x
        k = 0
        while abs(term) > 1e-20 and k < terms:
            total += term / (2 * k + 1)
            k += 1
            term = -term * x * x / k
        return 1.0 - 2.0 / math.sqrt(math.pi) * total
    val, _ = integrate.quad(lambda t: math.exp(-t * t), x, np.inf, limit=200)
    return 2.0 / math.sqrt(math.pi) * val


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def presets():
    return PRESETS


@pytest.fixture(scope="session")
def pm_cache():
    cache = {}

    def get(names):
        key = tuple(names)
        if key not in cache:
            cache[key] = build_product_model([PRESETS[n] for n in names])
        return cache[key]

    return get


@pytest.fixture()
def quick_mc():
    return MCConfig(seed=321, n_samples=200_000, batch_size=100_000)
