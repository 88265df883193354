"""BER analysis for IM/DD OOK links with equal gain combining.

Estimators
----------
mc_ber            semi-analytic Monte Carlo: averages the conditional error
                  probability (an erfc of the combined irradiance) over
                  fading draws.  Orders of magnitude less variance than
                  counting bit errors, so 1e-5 BERs are reachable at desk
                  scale.
mc_ber_bitlevel   full bit-level simulation with AWGN and a maximum-
                  likelihood threshold; cross-validates mc_ber.
ber_upper_bound   closed-form union bound built from the product-model
                  Meijer-G representation; exact for a single aperture.
asymptotic_ber    single-polynomial-term high-SNR approximation; its
                  exponent is the diversity order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath as mp
import numpy as np
from scipy.special import erfc as _erfc_vec, ndtri

from .dgg_model import DoubleGGChannel, _gg_draws
from .product_sum import ProductModel
from .special_numerics import (
    ExactArg,
    MeijerGSpec,
    SpecError,
    as_exact,
    delta_seq,
    meijer_g_mpf,
)

__all__ = [
    "AsymptoticTerms",
    "BERPoint",
    "BoundTerms",
    "MCConfig",
    "SNRConfig",
    "asymptotic_ber",
    "asymptotic_terms",
    "ber_upper_bound",
    "bound_terms",
    "conditional_ber",
    "diversity_order",
    "mc_ber",
    "mc_ber_bitlevel",
    "snr_at_ber",
]


@dataclass(frozen=True)
class SNRConfig:
    """Average electrical SNR; dB and linear views kept in lockstep."""

    gamma_bar_db: float
    gamma_bar: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.gamma_bar_db) or self.gamma_bar <= 0:
            raise SpecError(f"invalid SNR configuration {self}")
        if not math.isclose(self.gamma_bar, 10.0 ** (self.gamma_bar_db / 10.0),
                            rel_tol=1e-9):
            raise SpecError("gamma_bar and gamma_bar_db are inconsistent")

    @classmethod
    def from_db(cls, db: float) -> "SNRConfig":
        return cls(db, 10.0 ** (db / 10.0))

    @classmethod
    def from_linear(cls, gamma_bar: float) -> "SNRConfig":
        return cls(10.0 * math.log10(gamma_bar), gamma_bar)


@dataclass(frozen=True)
class MCConfig:
    """Seed, sample count, batching and confidence policy for MC runs."""

    seed: int = 1234
    n_samples: int = 1_000_000
    batch_size: int = 1_000_000
    confidence: float = 0.99

    def __post_init__(self) -> None:
        if not (self.n_samples >= self.batch_size >= 1):
            raise SpecError("need n_samples >= batch_size >= 1")
        if not (0.0 < self.confidence < 1.0):
            raise SpecError("confidence must be in (0, 1)")


@dataclass(frozen=True)
class BERPoint:
    snr_db: float
    ber: float
    ci_low: float = math.nan
    ci_high: float = math.nan
    estimator: str = "mc"
    n_samples: int = 0
    se: float = math.nan
    ci_degenerate: bool = False

    def __post_init__(self) -> None:
        if not (0.0 <= self.ber <= 0.5):
            raise SpecError(f"BER {self.ber} outside [0, 0.5]")
        if self.estimator == "mc" and not (self.ci_low <= self.ber <= self.ci_high):
            raise SpecError("confidence interval does not straddle the estimate")


@dataclass(frozen=True)
class BoundTerms:
    """Integer pair (s, q) and derived parameter lists of the closed form."""

    s: int
    q: int
    mu: Fraction
    k_q: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.q not in (1, 2):
            raise SpecError(f"q must be 1 or 2, got {self.q}")


@dataclass(frozen=True)
class AsymptoticTerms:
    c_k: Fraction
    c_j_list: tuple[Fraction, ...]
    diversity_order: float
    perturbed: bool = False


# ---------------------------------------------------------------------------
# conditional error probability and Monte Carlo estimators
# ---------------------------------------------------------------------------

def conditional_ber(gamma_bar: float, n_apertures: int, sum_i):
    """Error probability given the combined irradiance sum_i.

    0.5 * erfc(sqrt(gamma_bar) * sum_i / (2 N)); the 1/N keeps the total
    receive area equal to the single-aperture reference.  Accepts scalars
    or arrays.
    """
    if gamma_bar <= 0:
        raise SpecError("gamma_bar must be positive")
    arg = math.sqrt(gamma_bar) / (2.0 * n_apertures) * np.asarray(sum_i, dtype=float)
    out = 0.5 * _erfc_vec(arg)
    return float(out) if np.isscalar(sum_i) else out


def _combined_draws(rng: np.random.Generator,
                    channels: Sequence[DoubleGGChannel], n: int) -> np.ndarray:
    total = np.zeros(n)
    for ch in channels:
        total += _gg_draws(rng, ch.large_scale, n) * _gg_draws(rng, ch.small_scale, n)
    return total


def _mc_point(snr, cfg, batch_stat) -> BERPoint:
    n_total = cfg.n_samples
    n_batches = (n_total + cfg.batch_size - 1) // cfg.batch_size
    streams = np.random.SeedSequence(cfg.seed).spawn(n_batches)
    sums, sqsums = [], []
    done = 0
    for k in range(n_batches):
        size = min(cfg.batch_size, n_total - done)
        rng = np.random.Generator(np.random.PCG64(streams[k]))
        g = batch_stat(rng, size)
        sums.append(float(np.sum(g)))
        sqsums.append(float(np.sum(g * g)))
        done += size
    total = math.fsum(sums)
    total_sq = math.fsum(sqsums)
    mean = total / n_total
    var = max(total_sq / n_total - mean * mean, 0.0)
    se = math.sqrt(var / n_total)
    z = float(ndtri(0.5 + cfg.confidence / 2.0))
    lo, hi = mean - z * se, mean + z * se
    degenerate = lo <= 0.0 < mean
    return BERPoint(
        snr_db=snr.gamma_bar_db,
        ber=min(max(mean, 0.0), 0.5),
        ci_low=min(max(lo, 0.0), 0.5),
        ci_high=min(max(hi, 0.0), 0.5),
        estimator="mc",
        n_samples=n_total,
        se=se,
        ci_degenerate=degenerate,
    )


def mc_ber(channels: Sequence[DoubleGGChannel], snr: SNRConfig,
           cfg: MCConfig) -> BERPoint:
    """Semi-analytic Monte Carlo BER with a normal-theory confidence interval.

    Deterministic for a fixed seed: batches use spawned substreams combined
    with an order-independent reduction.
    """
    if not channels:
        raise SpecError("at least one channel is required")
    n_ap = len(channels)

    def stat(rng, size):
        s = _combined_draws(rng, channels, size)
        return conditional_ber(snr.gamma_bar, n_ap, s)

    return _mc_point(snr, cfg, stat)


def mc_ber_bitlevel(channels: Sequence[DoubleGGChannel], snr: SNRConfig,
                    cfg: MCConfig) -> BERPoint:
    """Bit-level OOK simulation with ML thresholding.

    The combined decision variable is x * (sum I / N) + noise with noise
    variance N0/2 (electrical SNR = 1/N0); conditioned on the fading state
    the ML rule reduces to the midpoint threshold.
    """
    if not channels:
        raise SpecError("at least one channel is required")
    n_ap = len(channels)
    sigma = math.sqrt(0.5 / snr.gamma_bar)

    def stat(rng, size):
        s = _combined_draws(rng, channels, size) / n_ap
        bits = rng.integers(0, 2, size=size)
        noise = rng.normal(0.0, sigma, size=size)
        r = bits * s + noise
        decided = (r > s / 2.0).astype(np.int64)
        return (decided != bits).astype(float)

    return _mc_point(snr, cfg, stat)


# ---------------------------------------------------------------------------
# closed-form union bound
# ---------------------------------------------------------------------------

def bound_terms(pm: ProductModel, n_apertures: int) -> BoundTerms:
    """Integerize alpha*N/2 as s/q and expand the bottom parameter list.

    alpha*N even gives q=1 and the ladder list unchanged; odd gives q=2 and
    the half-shift expansion {x/2, (x+1)/2}, which completes a Gauss
    duplication block for every ladder.
    """
    ratio = Fraction(pm.alpha * n_apertures, 2)
    s, q = ratio.numerator, ratio.denominator
    if q == 1:
        k_q = tuple(pm.j_params)
    else:
        k_q = tuple([x / 2 for x in pm.j_params] + [(x + 1) / 2 for x in pm.j_params])
    mu = sum((as_exact(f.m) for f in pm.factors), Fraction(0)) - n_apertures + 1
    return BoundTerms(s=s, q=q, mu=mu, k_q=k_q)


def _xi_mpf(pm: ProductModel) -> mp.mpf:
    k = pm.kernel
    v = mp.mpf(2 * mp.pi) ** (mp.mpf(len(k.m_exact) - pm.beta) / 2)
    for m, j in zip(k.m_exact, k.ladder_sizes):
        mm = mp.mpf(m.numerator) / m.denominator
        v *= mp.mpf(j) ** (mm - mp.mpf(1) / 2) / mp.gamma(mm)
    return v


def ber_upper_bound(pm: ProductModel, n_apertures: int, snr: SNRConfig) -> float:
    """Closed-form upper bound on the EGC average BER (exact for N=1)."""
    if n_apertures != pm.n_channels:
        raise SpecError(
            f"model was built from {pm.n_channels} channels, not {n_apertures}"
        )
    t = bound_terms(pm, n_apertures)
    s, q = t.s, t.q
    n = n_apertures
    a_top = delta_seq(s, 1) + delta_seq(s, Fraction(1, 2))
    b_bottom = delta_seq(s, 0)
    # argument (4 s N^2 / gamma_bar)^s / (omega q^beta N^(alpha N))^q,
    # carried as coeff * 10^(-s*dB/10) in exact arithmetic
    coeff = (Fraction(4 * s * n * n) ** s
             / (pm.kernel.omega_frac() * Fraction(q) ** pm.beta
                * Fraction(n) ** (pm.alpha * n)) ** q)
    exp10 = -as_exact(snr.gamma_bar_db) * s / 10
    spec = MeijerGSpec.create(a_top, [], t.k_q, b_bottom, ExactArg(coeff, exp10))
    g = meijer_g_mpf(spec)
    with mp.workdps(40):
        xi = _xi_mpf(pm)
        mu = mp.mpf(t.mu.numerator) / t.mu.denominator
        pref = (n * pm.alpha * xi * mp.mpf(q) ** mu
                / (2 * mp.sqrt(2) * s * mp.sqrt(2 * mp.pi) ** (s + (q - 1) * pm.beta)))
        value = float(pref * g)
    return min(max(value, 0.0), 0.5)


# ---------------------------------------------------------------------------
# asymptotics and diversity order
# ---------------------------------------------------------------------------

def asymptotic_terms(pm: ProductModel, n_apertures: int,
                     perturb: bool = False) -> AsymptoticTerms:
    """Split the ladder list into the dominant exponent and the rest.

    The minimum normalized exponent must be unique (i.n.i.d. branches);
    with perturb=True a tied minimum is broken by 1e-6 steps and a warning
    is emitted instead of an error.
    """
    j = list(pm.j_params)
    c_k = min(j)
    ties = [i for i, v in enumerate(j) if v == c_k]
    perturbed = False
    if len(ties) > 1:
        if not perturb:
            raise SpecError(
                "asymptotic expression undefined for repeated minimal exponents; "
                "pass perturb=True to break the tie numerically"
            )
        eps = Fraction(1, 10 ** 6)
        for rank, idx in enumerate(ties[1:], start=1):
            j[idx] = j[idx] + rank * eps
        perturbed = True
        warnings.warn(
            "tied minimal exponents perturbed by multiples of 1e-6; "
            "the asymptote is a numerical regularization",
            stacklevel=2,
        )
    rest = list(j)
    rest.remove(c_k)
    order = 0.5 * n_apertures * pm.alpha * float(c_k)
    return AsymptoticTerms(c_k=c_k, c_j_list=tuple(rest),
                           diversity_order=order, perturbed=perturbed)


def asymptotic_ber(pm: ProductModel, n_apertures: int, snr: SNRConfig,
                   perturb: bool = False) -> float:
    """High-SNR single-term approximation of the BER bound.

    A pure power law: log10(BER) falls with slope diversity_order/10 per dB.
    """
    if n_apertures != pm.n_channels:
        raise SpecError(
            f"model was built from {pm.n_channels} channels, not {n_apertures}"
        )
    t = asymptotic_terms(pm, n_apertures, perturb=perturb)
    n = n_apertures
    exponent = n * pm.alpha * t.c_k  # = N * min(m_l gamma_l), twice the order
    with mp.workdps(60):
        ck = mp.mpf(t.c_k.numerator) / t.c_k.denominator
        xi = _xi_mpf(pm)
        om = pm.kernel.omega_frac()
        om_mp = mp.mpf(om.numerator) / om.denominator
        expo = mp.mpf(exponent.numerator) / exponent.denominator
        val = mp.gamma((1 + expo) / 2) * xi / (2 * mp.sqrt(mp.pi) * ck
                                               * (om_mp * mp.mpf(n) ** (pm.alpha * n)) ** ck)
        for cj in t.c_j_list:
            val *= mp.gamma(mp.mpf(cj.numerator) / cj.denominator - ck)
        db = as_exact(snr.gamma_bar_db)
        gbar = mp.mpf(10) ** (mp.mpf(db.numerator) / db.denominator / 10)
        val *= (2 * n / mp.sqrt(gbar)) ** expo
        return float(val)


def diversity_order(channels: Sequence[DoubleGGChannel], n_apertures: int) -> float:
    """0.5 * N * min over the 2N factors of m * gamma (true exponents)."""
    if len(channels) != n_apertures:
        raise SpecError(f"expected {n_apertures} channels, got {len(channels)}")
    products = [
        f.m * f.gamma for ch in channels for f in ch.factors()
    ]
    return 0.5 * n_apertures * min(products)


# ---------------------------------------------------------------------------
# curve utilities
# ---------------------------------------------------------------------------

def snr_at_ber(ber_of_db, target: float, lo_db: float, hi_db: float,
               tol_db: float = 0.01, max_iter: int = 60) -> float:
    """SNR (dB) where a monotone-decreasing BER curve crosses `target`.

    Bisection on log10(BER); the bracket [lo_db, hi_db] must straddle the
    crossing.
    """
    def logber(db):
        return math.log10(max(ber_of_db(db), 1e-300))

    f_lo = logber(lo_db) - math.log10(target)
    f_hi = logber(hi_db) - math.log10(target)
    if f_lo < 0 or f_hi > 0:
        raise SpecError(
            f"bracket [{lo_db}, {hi_db}] dB does not straddle BER {target:g} "
            f"(log-offsets {f_lo:.3g}, {f_hi:.3g})"
        )
    while hi_db - lo_db > tol_db and max_iter > 0:
        mid = 0.5 * (lo_db + hi_db)
        if logber(mid) > math.log10(target):
            lo_db = mid
        else:
            hi_db = mid
        max_iter -= 1
    return 0.5 * (lo_db + hi_db)
