"""Double Generalized Gamma turbulence fading model.

Irradiance is modeled as the product of two independent Generalized Gamma
(GG) factors, one for large-scale and one for small-scale eddies.  This
module provides the parameter relations (unit-mean scale, scintillation
variance), the closed-form pdf/cdf, an exact two-factor sampler that is
independent of the special-function numerics, common special cases, and
the four named channel presets used throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .special_numerics import (
    ExactArg,
    MeijerGSpec,
    RationalExponent,
    SpecError,
    as_exact,
    delta_seq,
    meijer_g_fast,
    rationalize,
    smallest_rational_within,
)

__all__ = [
    "GGParams",
    "DoubleGGChannel",
    "PRESETS",
    "cdf",
    "get_preset",
    "make_channel",
    "make_special_case",
    "omega_from_shape",
    "pdf",
    "sample",
    "scintillation_variance",
]


def omega_from_shape(m: float, gamma: float) -> float:
    """Scale parameter giving a unit-mean GG factor for the given (m, gamma)."""
    _check_shape(m, gamma)
    return (math.gamma(m) / math.gamma(m + 1.0 / gamma)) ** gamma * m


def scintillation_variance(m: float, gamma: float) -> float:
    """Normalized irradiance-fluctuation variance of one GG factor."""
    _check_shape(m, gamma)
    return (
        math.gamma(m + 2.0 / gamma) * math.gamma(m)
        / math.gamma(m + 1.0 / gamma) ** 2
        - 1.0
    )


def _check_shape(m: float, gamma: float) -> None:
    if not (m >= 0.5) or not math.isfinite(m):
        raise SpecError(f"invalid shape parameters: m must be >= 0.5, got {m}")
    if not (gamma > 0) or not math.isfinite(gamma):
        raise SpecError(f"invalid shape parameters: gamma must be > 0, got {gamma}")


@dataclass(frozen=True)
class GGParams:
    """One Generalized Gamma factor: shaping m, exponent gamma, scale omega."""

    m: float
    gamma: float
    omega: float

    def __post_init__(self) -> None:
        _check_shape(self.m, self.gamma)
        if not (self.omega > 0) or not math.isfinite(self.omega):
            raise SpecError(f"invalid shape parameters: omega must be > 0, got {self.omega}")

    @classmethod
    def unit_mean(cls, m: float, gamma: float) -> "GGParams":
        return cls(m, gamma, omega_from_shape(m, gamma))

    def mean(self) -> float:
        return (self.omega / self.m) ** (1.0 / self.gamma) * (
            math.gamma(self.m + 1.0 / self.gamma) / math.gamma(self.m)
        )


@dataclass(frozen=True)
class DoubleGGChannel:
    """A turbulence channel: large-scale x small-scale GG factors.

    `ratio` is the rational pair (p, q) approximating gamma_large/gamma_small;
    the closed-form pdf/cdf are exact for the channel whose large-scale
    exponent equals gamma_small * p/q, so ratio.rel_error is the audit trail
    of that approximation.
    """

    large_scale: GGParams
    small_scale: GGParams
    ratio: RationalExponent
    name: str = ""

    @property
    def p(self) -> int:
        return self.ratio.num

    @property
    def q(self) -> int:
        return self.ratio.den

    def factors(self) -> tuple[GGParams, GGParams]:
        return (self.large_scale, self.small_scale)

    def scintillation_index(self) -> float:
        sx = scintillation_variance(self.large_scale.m, self.large_scale.gamma)
        sy = scintillation_variance(self.small_scale.m, self.small_scale.gamma)
        return (1.0 + sx) * (1.0 + sy) - 1.0

    def describe(self) -> dict:
        return {
            "name": self.name,
            "gamma1": self.large_scale.gamma,
            "gamma2": self.small_scale.gamma,
            "m1": self.large_scale.m,
            "m2": self.small_scale.m,
            "omega1": self.large_scale.omega,
            "omega2": self.small_scale.omega,
            "p": self.p,
            "q": self.q,
            "ratio_rel_error": self.ratio.rel_error,
        }


def make_channel(
    m1: float,
    gamma1: float,
    m2: float,
    gamma2: float,
    omega1: Optional[float] = None,
    omega2: Optional[float] = None,
    p: Optional[int] = None,
    q: Optional[int] = None,
    ratio_policy: str = "minimal",
    ratio_rel_tol: float = 7e-3,
    max_den: int = 25,
    name: str = "",
) -> DoubleGGChannel:
    """Build a channel; omegas default to unit-mean values.

    If (p, q) is given it is used verbatim (with the achieved relative error
    recorded).  Otherwise the exponent ratio gamma1/gamma2 is rationalized
    with the chosen policy: "minimal" takes the smallest denominator within
    ratio_rel_tol, "best" the closest fraction with denominator <= max_den.
    """
    w1 = omega_from_shape(m1, gamma1) if omega1 is None else omega1
    w2 = omega_from_shape(m2, gamma2) if omega2 is None else omega2
    target = gamma1 / gamma2
    if (p is None) != (q is None):
        raise SpecError("p and q must be given together")
    if p is not None:
        frac = Fraction(p, q)
        ratio = RationalExponent.from_fraction(frac, target)
    elif ratio_policy == "minimal":
        frac = smallest_rational_within(target, ratio_rel_tol)
        ratio = RationalExponent.from_fraction(frac, target)
    elif ratio_policy == "best":
        ratio = rationalize(target, max_den=max_den, rel_tol=ratio_rel_tol)
    else:
        raise SpecError(f"unknown ratio_policy {ratio_policy!r}")
    return DoubleGGChannel(
        GGParams(m1, gamma1, w1), GGParams(m2, gamma2, w2), ratio, name
    )


def make_special_case(kind: str, **params) -> DoubleGGChannel:
    """Named special cases of the two-factor model.

    gamma_gamma:    gamma_i = 1, omega_i = 1       (free: m1, m2)
    double_weibull: m_i = 1                        (free: gamma1, gamma2, omegas)
    k_channel:      gamma_i = 1, omega_i = 1, m2 = 1  (free: m1)
    """
    fixed: dict[str, float]
    if kind == "gamma_gamma":
        fixed = {"gamma1": 1.0, "gamma2": 1.0, "omega1": 1.0, "omega2": 1.0}
        free = {"m1", "m2"}
    elif kind == "double_weibull":
        fixed = {"m1": 1.0, "m2": 1.0}
        free = {"gamma1", "gamma2", "omega1", "omega2"}
    elif kind == "k_channel":
        fixed = {"gamma1": 1.0, "gamma2": 1.0, "omega1": 1.0, "omega2": 1.0, "m2": 1.0}
        free = {"m1"}
    else:
        raise SpecError(f"unknown special case {kind!r}")
    clash = set(params) & set(fixed)
    if clash:
        raise SpecError(f"over-specified special case: {sorted(clash)} are fixed by {kind}")
    unknown = set(params) - free - {"name"}
    if unknown:
        raise SpecError(f"unexpected parameters for {kind}: {sorted(unknown)}")
    merged = {**fixed, **params}
    merged.setdefault("name", kind)
    return make_channel(
        m1=merged["m1"],
        gamma1=merged["gamma1"],
        m2=merged["m2"],
        gamma2=merged["gamma2"],
        omega1=merged.get("omega1"),
        omega2=merged.get("omega2"),
        name=merged["name"],
    )


# ---------------------------------------------------------------------------
# product-of-GG kernel shared with the multi-channel product model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GGProductKernel:
    """Distribution of a product of GG factors in Meijer-G form.

    Each factor l contributes a ladder of j_l = alpha/gamma_l gamma-function
    parameters; alpha is the common exponent scale (real for a single
    channel, integer for rationalized multi-channel models).
    pdf(r)  = alpha * xi / r * G^{beta,0}_{0,beta}[ r^alpha / omega | ladders ]
    cdf(r)  = xi * G^{beta,1}_{1,beta+1}[ r^alpha / omega | 1; ladders, 0 ]
    """

    m_exact: tuple[Fraction, ...]
    omega_exact: tuple[Fraction, ...]
    ladder_sizes: tuple[int, ...]
    alpha: Union[float, Fraction]

    @property
    def beta(self) -> int:
        return sum(self.ladder_sizes)

    def j_params(self) -> list[Fraction]:
        out: list[Fraction] = []
        for m, j in zip(self.m_exact, self.ladder_sizes):
            out.extend(delta_seq(j, m))
        return out

    def xi(self) -> float:
        """Normalizing constant of the product density."""
        v = (2.0 * math.pi) ** ((len(self.m_exact) - self.beta) / 2.0)
        for m, j in zip(self.m_exact, self.ladder_sizes):
            v *= float(j) ** (float(m) - 0.5) / math.gamma(float(m))
        return v

    def omega_prod(self) -> float:
        """Scale of the product: prod (j_l * Omega_l / m_l)^(j_l)."""
        return float(self.omega_frac())

    def omega_frac(self) -> Fraction:
        w = Fraction(1)
        for m, om, j in zip(self.m_exact, self.omega_exact, self.ladder_sizes):
            w *= (j * om / m) ** j
        return w

    def argument(self, r: float, power: Union[float, Fraction, None] = None) -> ExactArg:
        """Exact argument r**power / omega (power defaults to alpha)."""
        if r <= 0:
            raise SpecError(f"support violation: r must be > 0, got {r}")
        power = self.alpha if power is None else power
        lg = as_exact(math.log10(r)) * as_exact(power)
        return ExactArg(1 / self.omega_frac(), lg)

    def pdf(self, r: float) -> float:
        if r <= 0:
            raise SpecError(f"support violation: irradiance must be > 0, got {r}")
        spec = MeijerGSpec.create([], [], self.j_params(), [], self.argument(r))
        g = meijer_g_fast(spec)
        return max(float(self.alpha) * self.xi() / r * g, 0.0)

    def cdf(self, r: float) -> float:
        if r <= 0:
            raise SpecError(f"support violation: irradiance must be > 0, got {r}")
        spec = MeijerGSpec.create(
            [Fraction(1)], [], self.j_params(), [Fraction(0)], self.argument(r)
        )
        g = meijer_g_fast(spec)
        return min(max(self.xi() * g, 0.0), 1.0)


def channel_kernel(ch: DoubleGGChannel) -> GGProductKernel:
    """Single-channel kernel: ladders (q, p), exponent scale gamma2 * p.

    Exact for the channel with gamma1 replaced by gamma2 * p/q; the residual
    is ch.ratio.rel_error.
    """
    alpha = as_exact(ch.small_scale.gamma) * ch.p
    return GGProductKernel(
        m_exact=(as_exact(ch.large_scale.m), as_exact(ch.small_scale.m)),
        omega_exact=(as_exact(ch.large_scale.omega), as_exact(ch.small_scale.omega)),
        ladder_sizes=(ch.q, ch.p),
        alpha=alpha,
    )


def pdf(ch: DoubleGGChannel, intensity: float) -> float:
    """Irradiance density at `intensity` (> 0)."""
    return channel_kernel(ch).pdf(intensity)


def cdf(ch: DoubleGGChannel, intensity: float) -> float:
    """Irradiance distribution function at `intensity` (> 0)."""
    return channel_kernel(ch).cdf(intensity)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def _gg_draws(rng: np.random.Generator, par: GGParams, n: int) -> np.ndarray:
    g = rng.gamma(shape=par.m, scale=par.omega / par.m, size=n)
    return g ** (1.0 / par.gamma)


def sample(ch: DoubleGGChannel, seed: int, n: int,
           rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """n i.i.d. irradiance draws (product of the two GG factors).

    Deterministic for a fixed seed; uses the exact exponents, so it serves
    as an oracle for the closed-form pdf/cdf.  Pass an explicit generator
    to continue a derived substream instead of seeding.
    """
    if n < 1:
        raise SpecError(f"sample count must be >= 1, got {n}")
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    return _gg_draws(rng, ch.large_scale, n) * _gg_draws(rng, ch.small_scale, n)


# ---------------------------------------------------------------------------
# named presets
# ---------------------------------------------------------------------------

def _preset(name, desc, g1, g2, m1, m2, w1, w2, p, q):
    ch = make_channel(m1=m1, gamma1=g1, m2=m2, gamma2=g2,
                      omega1=w1, omega2=w2, p=p, q=q, name=name)
    return replace(ch, name=name), desc


_PRESET_TABLE = {
    "a": _preset("a", "plane wave, moderate irradiance fluctuations",
                 2.1690, 0.8530, 0.55, 2.35, 1.5793, 0.9671, 28, 11),
    "b": _preset("b", "plane wave, strong irradiance fluctuations",
                 1.8621, 0.7638, 0.5, 1.8, 1.5074, 0.9280, 17, 7),
    "c": _preset("c", "spherical wave, moderate irradiance fluctuations",
                 0.9135, 1.4385, 2.65, 0.85, 0.9836, 1.1745, 7, 11),
    "d": _preset("d", "spherical wave, strong irradiance fluctuations",
                 0.4205, 0.6643, 3.2, 2.8, 0.8336, 0.9224, 7, 11),
}

PRESETS: dict[str, DoubleGGChannel] = {k: v[0] for k, v in _PRESET_TABLE.items()}
PRESET_DESCRIPTIONS: dict[str, str] = {k: v[1] for k, v in _PRESET_TABLE.items()}


def get_preset(name: str) -> DoubleGGChannel:
    try:
        return PRESETS[name]
    except KeyError:
        raise SpecError(
            f"unknown preset {name!r}; valid presets: {sorted(PRESETS)}"
        ) from None
