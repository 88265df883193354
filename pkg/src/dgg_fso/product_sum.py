"""Product of GG variates and the AM-GM upper bound for sums.

The product of the 2N factors of N channels has a closed-form Meijer-G
density once every factor exponent is rationalized so that a common scale
alpha with alpha/gamma_l a positive integer exists.  The arithmetic-mean /
geometric-mean inequality (sum >= N * product^(1/N), elementwise) then turns
the product cdf into an upper bound on the cdf of the sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dgg_model import DoubleGGChannel, GGParams, GGProductKernel, make_channel
from .special_numerics import (
    MeijerGSpec,
    RationalExponent,
    SpecError,
    as_exact,
    meijer_g_fast,
)

__all__ = [
    "ProductModel",
    "build_product_model",
    "product_cdf",
    "product_pdf",
    "sum_cdf_upper",
    "sum_pdf_upper",
]

DEFAULT_REL_TOL = 7e-3
DEFAULT_BETA_CAP = 200
DEFAULT_ALPHA_CAP = 5000


@dataclass(frozen=True)
class ProductModel:
    """Derived parameters of the product of 2N GG variates.

    The model is exact for the surrogate factors whose exponents are the
    rationalized values alpha/j_l; `rationalized` records each surrogate
    exponent and its relative distance from the true one.
    """

    factors: tuple[GGParams, ...]
    alpha: int
    beta: int
    xi: float
    omega_prod: float
    j_params: tuple[Fraction, ...]
    rationalized: tuple[RationalExponent, ...]
    kernel: GGProductKernel
    n_channels: int

    def ladder_sizes(self) -> tuple[int, ...]:
        return self.kernel.ladder_sizes

    def max_rel_error(self) -> float:
        return max(r.rel_error for r in self.rationalized)

    def surrogate_channels(self) -> list[DoubleGGChannel]:
        """Channels with the rationalized exponents (the distribution the
        closed forms are exact for)."""
        out = []
        for i in range(self.n_channels):
            f1, f2 = self.factors[2 * i], self.factors[2 * i + 1]
            r1, r2 = self.rationalized[2 * i], self.rationalized[2 * i + 1]
            out.append(make_channel(
                m1=f1.m, gamma1=float(r1.value), m2=f2.m, gamma2=float(r2.value),
                omega1=f1.omega, omega2=f2.omega,
                p=self.kernel.ladder_sizes[2 * i + 1],
                q=self.kernel.ladder_sizes[2 * i],
                name=f"surrogate_{i}",
            ))
        return out

    def describe(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "ladder_sizes": list(self.kernel.ladder_sizes),
            "rationalized": [
                {"num": r.num, "den": r.den, "target": r.target, "rel_error": r.rel_error}
                for r in self.rationalized
            ],
            "max_rel_error": self.max_rel_error(),
        }


def _lcm_many(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def build_product_model(
    channels: Sequence[DoubleGGChannel],
    max_den: int | None = None,
    rel_tol: float = DEFAULT_REL_TOL,
    beta_cap: int = DEFAULT_BETA_CAP,
    alpha_cap: int = DEFAULT_ALPHA_CAP,
) -> ProductModel:
    """Flatten N channels into 2N factors and rationalize their exponents.

    Scans upward for the smallest common scale alpha such that every
    j_l = round(alpha / gamma_l) reproduces gamma_l within rel_tol; alpha is
    then reduced to the lcm of the rationalized numerators (the minimal
    valid choice).  Minimizing alpha minimizes beta = sum j_l, which sets
    the Meijer-G order of everything downstream.  When max_den is given,
    rationalized exponents with reduced denominator above it are rejected.
    """
    if not channels:
        raise SpecError("at least one channel is required")
    factors: list[GGParams] = []
    for ch in channels:
        factors.extend(ch.factors())
    gammas = [f.gamma for f in factors]

    choice = None
    for alpha in range(1, alpha_cap + 1):
        ladders = []
        for g in gammas:
            j = max(1, round(alpha / g))
            if abs(alpha / j - g) > rel_tol * g:
                break
            if max_den is not None and Fraction(alpha, j).denominator > max_den:
                break
            ladders.append(j)
        else:
            choice = (alpha, ladders)
            break
    if choice is None:
        raise SpecError(
            f"rationalization failed: no common scale <= {alpha_cap} puts every "
            f"exponent within rel_tol {rel_tol}; loosen rel_tol or raise alpha_cap"
        )
    alpha, ladders = choice

    # reduce to the lcm of the rationalized numerators
    fracs = [Fraction(alpha, j) for j in ladders]
    alpha_min = _lcm_many([f.numerator for f in fracs])
    if alpha_min != alpha:
        ladders = [int(alpha_min * f.denominator // f.numerator) for f in fracs]
        alpha = alpha_min

    beta = sum(ladders)
    if beta > beta_cap:
        raise SpecError(
            f"model order too large: beta={beta} exceeds cap {beta_cap} "
            f"(alpha={alpha}, ladders={ladders}); raise beta_cap to proceed"
        )

    rationalized = tuple(
        RationalExponent.from_fraction(Fraction(alpha, j), g)
        for j, g in zip(ladders, gammas)
    )
    kernel = GGProductKernel(
        m_exact=tuple(as_exact(f.m) for f in factors),
        omega_exact=tuple(as_exact(f.omega) for f in factors),
        ladder_sizes=tuple(ladders),
        alpha=alpha,
    )
    return ProductModel(
        factors=tuple(factors),
        alpha=alpha,
        beta=beta,
        xi=kernel.xi(),
        omega_prod=kernel.omega_prod(),
        j_params=tuple(kernel.j_params()),
        rationalized=rationalized,
        kernel=kernel,
        n_channels=len(channels),
    )


def product_pdf(pm: ProductModel, r: float) -> float:
    """Density of the product of all 2N factors at r > 0."""
    return pm.kernel.pdf(r)


def product_cdf(pm: ProductModel, r: float) -> float:
    """Distribution function of the product at r > 0."""
    return pm.kernel.cdf(r)


def _check_sum_args(pm: ProductModel, n: int, r: float) -> None:
    if n != pm.n_channels:
        raise SpecError(
            f"model was built from {pm.n_channels} channels, not {n}"
        )
    if r <= 0:
        raise SpecError(f"support violation: sum value must be > 0, got {r}")


def sum_cdf_upper(pm: ProductModel, n: int, r: float) -> float:
    """Upper bound on the cdf of the sum of the N channel irradiances.

    The sum dominates N * (product)^(1/N), so its cdf is bounded by the
    product cdf evaluated at (r/N)^N, i.e. a G-argument (r/N)^(alpha N)/omega.
    """
    _check_sum_args(pm, n, r)
    k = pm.kernel
    arg = k.argument(r / n, power=Fraction(pm.alpha * n))
    spec = MeijerGSpec.create([Fraction(1)], [], k.j_params(), [Fraction(0)], arg)
    return min(max(k.xi() * meijer_g_fast(spec), 0.0), 1.0)


def sum_pdf_upper(pm: ProductModel, n: int, r: float) -> float:
    """Derivative of sum_cdf_upper in r; a proper density of N*(product)^(1/N)."""
    _check_sum_args(pm, n, r)
    k = pm.kernel
    arg = k.argument(r / n, power=Fraction(pm.alpha * n))
    spec = MeijerGSpec.create([], [], k.j_params(), [], arg)
    return max(n * pm.alpha * k.xi() / r * meijer_g_fast(spec), 0.0)
