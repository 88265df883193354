"""Arbitrary-precision special-function substrate.

Provides the Meijer G evaluator used by every closed-form expression in the
package, together with the small exact-arithmetic utilities that feed it:
parameter ladder expansion, rational approximation of real exponents, and a
complementary error function.

The G-function is evaluated by numerical Mellin-Barnes inversion along a
vertical contour.  Gamma factors whose parameters form a full arithmetic
ladder (x/L, (x+1)/L, ..., (x+L-1)/L) are first collapsed through the Gauss
multiplication theorem, so an integrand with hundreds of gamma parameters
reduces to a handful of log-gamma calls per quadrature node.  Working
precision starts at 50 decimal digits and doubles until two successive
evaluations agree to the requested tolerance (cap: 800 digits).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import mpmath as mp
import numpy as np
from scipy.special import loggamma as _cplx_loggamma

__all__ = [
    "EvaluationError",
    "ExactArg",
    "SpecError",
    "MeijerGSpec",
    "RationalExponent",
    "as_exact",
    "delta_seq",
    "erfc",
    "meijer_g",
    "meijer_g_fast",
    "meijer_g_mpf",
    "rationalize",
    "smallest_rational_within",
]

START_DPS = 50
MAX_DPS = 800

Number = Union[int, float, Fraction]


class SpecError(ValueError):
    """Malformed G-function spec or invalid operation parameters."""


class EvaluationError(ArithmeticError):
    """Precision escalation exhausted without convergence."""


def as_exact(x: Number) -> Fraction:
    """Reinterpret a number as an exact fraction.

    Floats are read through their shortest decimal repr, so a literal like
    0.55 becomes 11/20 rather than the binary double closest to it.  That is
    what makes high working precision meaningful for parameters given as
    decimal literals.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise SpecError(f"non-finite parameter {x!r}")
        return Fraction(str(x))
    raise SpecError(f"cannot interpret {x!r} as an exact number")


def _to_mpf(x: Fraction) -> mp.mpf:
    return mp.mpf(x.numerator) / x.denominator


# ---------------------------------------------------------------------------
# parameter ladders and rational approximation
# ---------------------------------------------------------------------------

def delta_seq(j: int, x: Number) -> list[Fraction]:
    """Arithmetic ladder [x/j, (x+1)/j, ..., (x+j-1)/j] as exact fractions."""
    if not isinstance(j, int) or j < 1:
        raise SpecError(f"invalid order: j must be a positive integer, got {j!r}")
    xf = as_exact(x)
    return [(xf + k) / j for k in range(j)]


@dataclass(frozen=True)
class RationalExponent:
    """A reduced fraction num/den approximating a positive real exponent."""

    num: int
    den: int
    target: float
    rel_error: float

    def __post_init__(self) -> None:
        if self.num < 1 or self.den < 1:
            raise SpecError("numerator and denominator must be positive")
        if math.gcd(self.num, self.den) != 1:
            raise SpecError("fraction must be in lowest terms")
        if self.rel_error < 0:
            raise SpecError("rel_error must be nonnegative")

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    @classmethod
    def from_fraction(cls, frac: Fraction, target: float) -> "RationalExponent":
        rel = abs(frac - Fraction(target)) / Fraction(target)
        return cls(frac.numerator, frac.denominator, float(target), float(rel))


def rationalize(x: float, max_den: int = 25, rel_tol: float = 5e-3) -> RationalExponent:
    """Best rational approximation of x with denominator <= max_den.

    Uses the continued-fraction best-approximation property
    (Fraction.limit_denominator); fails if the achieved relative error
    exceeds rel_tol.
    """
    if not (x > 0) or not math.isfinite(x):
        raise SpecError(f"target must be a positive finite real, got {x!r}")
    if max_den < 1:
        raise SpecError("max_den must be >= 1")
    best = Fraction(x).limit_denominator(max_den)
    if best <= 0:
        raise SpecError(
            f"rationalization failed; increase max_den or rel_tol "
            f"(best approximation of {x} with den <= {max_den} is {best})"
        )
    result = RationalExponent.from_fraction(best, x)
    if result.rel_error > rel_tol:
        raise SpecError(
            f"rationalization failed; increase max_den or rel_tol "
            f"(best {best} for {x} has rel_error {result.rel_error:.3g} > {rel_tol:.3g})"
        )
    return result


def smallest_rational_within(x: float, rel_tol: float, max_den: int = 10**6) -> Fraction:
    """Fraction with the smallest denominator within relative tolerance of x.

    Scans denominators upward, so the result is the minimal-complexity
    approximation rather than the most accurate one.
    """
    if not (x > 0) or not math.isfinite(x):
        raise SpecError(f"target must be a positive finite real, got {x!r}")
    for d in range(1, max_den + 1):
        n = round(x * d)
        if n < 1:
            continue
        if abs(n / d - x) <= rel_tol * x:
            return Fraction(n, d)
    raise SpecError(f"no fraction within rel_tol {rel_tol} of {x} with den <= {max_den}")


# ---------------------------------------------------------------------------
# complementary error function
# ---------------------------------------------------------------------------

def erfc(x: float) -> float:
    """Complementary error function, monotone decreasing, erfc(0) = 1."""
    if not math.isfinite(x):
        raise SpecError(f"erfc argument must be finite, got {x!r}")
    return math.erfc(x)


# ---------------------------------------------------------------------------
# Meijer G spec
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactArg:
    """Argument of the form coeff * 10**exp10 with exact rational parts.

    Covers arguments whose magnitude overflows double precision while
    keeping specs hashable and evaluations reproducible at any working
    precision.
    """

    coeff: Fraction
    exp10: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.coeff <= 0:
            raise SpecError("argument must be positive")

    def to_mpf(self) -> "mp.mpf":
        return _to_mpf(self.coeff) * mp.mpf(10) ** _to_mpf(self.exp10)

    def log(self) -> float:
        c = self.coeff
        return (math.log(c.numerator) - math.log(c.denominator)
                + float(self.exp10) * math.log(10))


ArgumentLike = Union[float, Fraction, ExactArg]


@dataclass(frozen=True)
class MeijerGSpec:
    """Parameter lists for G^{m,n}_{p,q}.

    a_top:    a_1..a_n      (numerator gammas Gamma(1 - a_i + t))
    a_bottom: a_{n+1}..a_p  (denominator gammas Gamma(a_i - t))
    b_top:    b_1..b_m      (numerator gammas Gamma(b_j - t))
    b_bottom: b_{m+1}..b_q  (denominator gammas Gamma(1 - b_j + t))

    The argument is a positive float, Fraction, or ExactArg (the latter for
    magnitudes outside double range).
    """

    a_top: tuple[Fraction, ...]
    a_bottom: tuple[Fraction, ...]
    b_top: tuple[Fraction, ...]
    b_bottom: tuple[Fraction, ...]
    argument: ArgumentLike

    @staticmethod
    def create(a_top: Sequence[Number], a_bottom: Sequence[Number],
               b_top: Sequence[Number], b_bottom: Sequence[Number],
               argument: ArgumentLike) -> "MeijerGSpec":
        spec = MeijerGSpec(
            tuple(as_exact(a) for a in a_top),
            tuple(as_exact(a) for a in a_bottom),
            tuple(as_exact(b) for b in b_top),
            tuple(as_exact(b) for b in b_bottom),
            argument,
        )
        spec.validate()
        return spec

    def validate(self) -> None:
        if not isinstance(self.argument, ExactArg):
            arg = float(self.argument)
            if not math.isfinite(arg) or arg <= 0:
                raise SpecError(f"argument must be finite and positive, got {arg!r}")
        if not (self.a_top or self.a_bottom or self.b_top or self.b_bottom):
            raise SpecError("malformed spec: no parameters at all")

    def order(self) -> tuple[int, int, int, int]:
        """(m, n, p, q)."""
        m = len(self.b_top)
        n = len(self.a_top)
        return m, n, n + len(self.a_bottom), m + len(self.b_bottom)

    def _key(self) -> tuple:
        return (self.a_top, self.a_bottom, self.b_top, self.b_bottom, self.argument)


# ---------------------------------------------------------------------------
# Gauss-multiplication block compression
# ---------------------------------------------------------------------------
#
# A block (x, L) stands for prod_{k=0}^{L-1} Gamma((x+k)/L + slope*t), which
# collapses to (2*pi)^((L-1)/2) * L^(1/2 - x - L*slope*t) ... wait, sign of the
# t-exponent depends on the slope; the assembly below keeps slopes explicit.

def _compress(params: Sequence[Fraction]) -> list[tuple[Fraction, int]]:
    """Group parameters into maximal full ladders (x, L): entries (x+k)/L.

    Any grouping is mathematically exact; ungrouped entries become (x, 1)
    singletons.  Greedy: repeatedly take the smallest remaining entry and try
    candidate steps 1/L inferred from gaps to nearby entries, largest L first.
    """
    cnt = Counter(Fraction(p) for p in params)
    blocks: list[tuple[Fraction, int]] = []
    while cnt:
        e = min(cnt)
        candidates: set[int] = set()
        for other in sorted(cnt):
            step = other - e
            if step > 0 and step.numerator == 1 and step.denominator >= 2:
                candidates.add(step.denominator)
        placed = False
        for L in sorted(candidates, reverse=True):
            run = [e + Fraction(k, L) for k in range(L)]
            if all(cnt.get(r, 0) >= 1 for r in run):
                for r in run:
                    cnt[r] -= 1
                    if cnt[r] == 0:
                        del cnt[r]
                blocks.append((e * L, L))
                placed = True
                break
        if not placed:
            cnt[e] -= 1
            if cnt[e] == 0:
                del cnt[e]
            blocks.append((e, 1))
    return blocks


@dataclass(frozen=True)
class _ContourPlan:
    """Precomputed contour data for one spec (argument excluded)."""

    # numerator Gamma(x - L t) blocks (from b_top)
    num_desc: tuple[tuple[Fraction, int], ...]
    # numerator Gamma(y + L t) blocks (from 1 - a_top)
    num_asc: tuple[tuple[Fraction, int], ...]
    # denominator Gamma(y + L t) blocks (from 1 - b_bottom)
    den_asc: tuple[tuple[Fraction, int], ...]
    # denominator Gamma(x - L t) blocks (from a_bottom)
    den_desc: tuple[tuple[Fraction, int], ...]
    sigma: Fraction          # contour abscissa
    decay: int               # exponential decay rate ~ exp(-pi/2 * decay * tau)
    ln_const: float          # (2 pi)-and-power constants from compression (double est.)
    ln_slope_base: float     # t-exponent base excluding ln(z) (double est.)


_PLAN_CACHE: dict = {}


def _plan(spec: MeijerGSpec) -> _ContourPlan:
    pkey = (spec.a_top, spec.a_bottom, spec.b_top, spec.b_bottom)
    cached = _PLAN_CACHE.get(pkey)
    if cached is not None:
        return cached
    plan = _plan_uncached(spec)
    _PLAN_CACHE[pkey] = plan
    return plan


def _plan_uncached(spec: MeijerGSpec) -> _ContourPlan:
    num_desc = tuple(_compress(spec.b_top))
    num_asc = tuple(_compress([1 - a for a in spec.a_top]))
    den_asc = tuple(_compress([1 - b for b in spec.b_bottom]))
    den_desc = tuple(_compress(spec.a_bottom))

    right = min((Fraction(x) / L for (x, L) in num_desc), default=None)
    left = max((-Fraction(y) / L for (y, L) in num_asc), default=None)

    if right is not None and left is not None:
        if left >= right:
            raise SpecError(
                "malformed spec: no pole-separating contour "
                f"(left poles reach {left}, right poles start at {right})"
            )
        sigma = (left + right) / 2
    elif right is not None:
        sigma = right - Fraction(1, 2)   # adjusted per-argument later
    elif left is not None:
        sigma = left + Fraction(1, 2)
    else:
        sigma = Fraction(0)

    decay = (
        sum(L for _, L in num_desc) + sum(L for _, L in num_asc)
        - sum(L for _, L in den_asc) - sum(L for _, L in den_desc)
    )
    if decay <= 0:
        raise SpecError(
            "malformed spec: contour integral does not converge "
            f"(net gamma slope {decay} <= 0)"
        )

    ln_const = 0.0
    ln_slope = 0.0
    ln2pi = math.log(2 * math.pi)
    for (x, L) in num_desc:
        ln_const += (L - 1) / 2 * ln2pi + (0.5 - float(x)) * math.log(L)
        ln_slope += L * math.log(L)
    for (y, L) in num_asc:
        ln_const += (L - 1) / 2 * ln2pi + (0.5 - float(y)) * math.log(L)
        ln_slope -= L * math.log(L)
    for (y, L) in den_asc:
        ln_const -= (L - 1) / 2 * ln2pi + (0.5 - float(y)) * math.log(L)
        ln_slope += L * math.log(L)
    for (x, L) in den_desc:
        ln_const -= (L - 1) / 2 * ln2pi + (0.5 - float(x)) * math.log(L)
        ln_slope -= L * math.log(L)

    return _ContourPlan(num_desc, num_asc, den_asc, den_desc,
                        sigma, decay, ln_const, ln_slope)


def _sigma_for(plan: _ContourPlan, ln_z: float) -> float:
    """Contour abscissa adapted to the argument magnitude."""
    has_left = bool(plan.num_asc)
    has_right = bool(plan.num_desc)
    if has_left and has_right:
        return float(plan.sigma)
    if has_right:
        right = min(float(x) / L for (x, L) in plan.num_desc)
        # keep close to the first right pole for small z; chase the saddle
        # u* ~ z^(1/decay) leftward for large z
        gap = 1.0 / max(4.0, abs(ln_z))
        sigma = right - gap
        zr = math.exp(ln_z / plan.decay) if ln_z / plan.decay < 700 else math.inf
        if zr > max(2.0, abs(right)):
            sigma = right - gap - zr
        return sigma
    return float(plan.sigma)


def _ln_argument(spec: MeijerGSpec) -> float:
    """log of the argument in double precision (for planning only)."""
    if isinstance(spec.argument, ExactArg):
        return spec.argument.log()
    if isinstance(spec.argument, Fraction):
        a = spec.argument
        return math.log(a.numerator) - math.log(a.denominator)
    return math.log(float(spec.argument))


# ---------------------------------------------------------------------------
# high-precision contour evaluation (mpmath)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _gl_rule(n: int, prec: int) -> tuple[tuple, tuple]:
    """Gauss-Legendre nodes/weights on [-1, 1] at binary precision prec.

    Float64 seeds refined by Newton iteration on the Legendre recurrence.
    """
    with mp.workprec(prec + 40):
        xs64, _ = np.polynomial.legendre.leggauss(n)
        newton_steps = 2 + int(math.ceil(math.log2(max(2.0, (prec + 40) / 45.0))))
        nodes, weights = [], []
        for x0 in xs64:
            x = mp.mpf(float(x0))
            for _ in range(newton_steps):
                p0, p1 = mp.mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                x = x - p1 / dp
            p0, p1 = mp.mpf(1), x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append(x)
            weights.append(w)
    return tuple(nodes), tuple(weights)


def _contour_eval_mpf(plan: _ContourPlan, spec: MeijerGSpec, dps: int,
                      digits_target: int, jitter: int) -> tuple[mp.mpf, float]:
    """One contour evaluation at fixed working precision.

    Working precision (dps) only needs to absorb arithmetic cancellation;
    the contour truncation length and panel density are sized to
    digits_target, the accuracy actually requested.  `jitter` nudges the
    discretization between escalation levels so that agreement across
    levels also vouches for the quadrature itself.

    Returns (value, cancellation_digits).
    """
    with mp.workdps(dps + 10):
        if isinstance(spec.argument, ExactArg):
            z = spec.argument.to_mpf()
        elif isinstance(spec.argument, Fraction):
            z = _to_mpf(spec.argument)
        else:
            z = mp.mpf(spec.argument)
        if not (z > 0) or mp.isinf(z) or mp.isnan(z):
            raise SpecError(f"argument must be finite and positive, got {z}")
        ln_z = mp.log(z)
        sigma = mp.mpf(_sigma_for(plan, float(ln_z)))

        ln_b = ln_z + plan.ln_slope_base  # t-coefficient inside exp()
        # oscillation frequency and decay along the contour
        freq = abs(float(ln_b)) + 5.0
        for (_, L) in plan.num_desc + plan.num_asc + plan.den_asc + plan.den_desc:
            freq += L * (math.log(L * (abs(float(sigma)) + 2.0)) + 1.0)
        decay_rate = (math.pi / 2) * plan.decay

        blocks_nd = [(_to_mpf(x), L) for (x, L) in plan.num_desc]
        blocks_na = [(_to_mpf(y), L) for (y, L) in plan.num_asc]
        blocks_da = [(_to_mpf(y), L) for (y, L) in plan.den_asc]
        blocks_dd = [(_to_mpf(x), L) for (x, L) in plan.den_desc]
        ln_c = mp.mpf(plan.ln_const)
        ln_b_mp = mp.mpf(ln_b)

        def integrand(tau: mp.mpf) -> mp.mpc:
            t = sigma + 1j * tau
            s = ln_c + t * ln_b_mp
            for (x, L) in blocks_nd:
                s += mp.loggamma(x - L * t)
            for (y, L) in blocks_na:
                s += mp.loggamma(y + L * t)
            for (y, L) in blocks_da:
                s -= mp.loggamma(y + L * t)
            for (x, L) in blocks_dd:
                s -= mp.loggamma(x - L * t)
            return mp.exp(s)

        n_gl = 18
        per_period = 2 + jitter
        width = (2 * math.pi / freq) / per_period
        T = (digits_target + 8) * math.log(10) / decay_rate

        nodes, weights = _gl_rule(n_gl, mp.mp.prec)
        total = mp.mpc(0)
        abs_total = mp.mpf(0)
        a = mp.mpf(0)
        w_mp = mp.mpf(width)
        n_panels = int(math.ceil(T / width))
        max_panels = 8 * n_panels + 256
        tail_eps = mp.mpf(10) ** (-(digits_target + 4))
        panel = 0
        while panel < n_panels:
            half = w_mp / 2
            mid = a + half
            seg = mp.mpc(0)
            seg_abs = mp.mpf(0)
            for xk, wk in zip(nodes, weights):
                v = integrand(mid + half * xk)
                seg += wk * v
                seg_abs += wk * abs(v)
            seg *= half
            seg_abs *= half
            total += seg
            abs_total += seg_abs
            a += w_mp
            panel += 1
            if panel >= n_panels and panel < max_panels:
                # extend until the last panel is negligible vs the result
                scale = abs(total)
                if scale == 0:
                    scale = abs_total
                if seg_abs > tail_eps * max(scale, abs_total * mp.mpf(10) ** (-dps)):
                    n_panels += 1
        value = mp.re(total) / mp.pi
        if abs(value) > 0 and abs_total > 0:
            cancel = float(mp.log10(abs_total / mp.pi / abs(value)))
        else:
            cancel = float(dps)
        return value, max(cancel, 0.0)


_MPF_CACHE: dict = {}


def meijer_g_mpf(spec: MeijerGSpec, rel_tol: float = 1e-8) -> mp.mpf:
    """G-function value with automatic precision escalation (mpmath result).

    Precision starts at 50 digits and doubles until two successive
    evaluations agree to rel_tol; levels that cannot beat the measured
    cancellation are skipped.  Raises EvaluationError at the 800-digit cap.
    """
    if not (0 < rel_tol <= 1e-4):
        raise SpecError(f"rel_tol must be in (0, 1e-4], got {rel_tol}")
    key = (spec._key(), rel_tol)
    if key in _MPF_CACHE:
        return _MPF_CACHE[key]
    plan = _plan(spec)
    digits_needed = int(math.ceil(-math.log10(rel_tol))) + 4

    levels = [START_DPS]
    while levels[-1] < MAX_DPS:
        levels.append(min(2 * levels[-1], MAX_DPS))

    prev = None
    estimates = []
    idx = 0
    jitter = 0
    while idx < len(levels):
        dps = levels[idx]
        value, cancel = _contour_eval_mpf(plan, spec, dps, digits_needed, jitter)
        estimates.append(value)
        if prev is not None:
            denom = max(abs(value), abs(prev))
            if denom == 0 or abs(value - prev) <= rel_tol * denom:
                _MPF_CACHE[key] = value
                return value
        prev = value
        idx += 1
        jitter += 1
        # skip levels that cannot clear the observed cancellation
        while idx < len(levels) - 1 and levels[idx] < cancel + digits_needed:
            idx += 1
    raise EvaluationError(
        f"evaluation failed: no convergence to rel_tol {rel_tol} at {MAX_DPS} digits; "
        f"last two estimates {mp.nstr(estimates[-2], 10)}, {mp.nstr(estimates[-1], 10)}"
    )


def meijer_g(spec: MeijerGSpec, rel_tol: float = 1e-8) -> float:
    """Meijer G evaluated to a relative tolerance, as a double."""
    return float(meijer_g_mpf(spec, rel_tol))


# ---------------------------------------------------------------------------
# vectorized double-precision fast path
# ---------------------------------------------------------------------------

def meijer_g_fast(spec: MeijerGSpec, max_cancel_digits: float = 9.0) -> float:
    """Double-precision contour evaluation with automatic fallback.

    Runs the same contour scheme with numpy-vectorized complex log-gamma.
    If oscillatory cancellation eats into the accuracy budget, or the
    argument is outside double range, falls back to the escalating
    evaluator.  Intended for dense pdf/cdf grids.
    """
    plan = _plan(spec)
    try:
        ln_z = _ln_argument(spec)
    except (OverflowError, ValueError):
        return float(meijer_g_mpf(spec))

    sigma = _sigma_for(plan, ln_z)
    ln_b = ln_z + plan.ln_slope_base
    freq = abs(ln_b) + 5.0
    for (_, L) in plan.num_desc + plan.num_asc + plan.den_asc + plan.den_desc:
        freq += L * (math.log(L * (abs(sigma) + 2.0)) + 1.0)
    decay_rate = (math.pi / 2) * plan.decay
    dps = 15
    width = (2 * math.pi / freq) / 3
    T = (dps + 8) * math.log(10) / decay_rate
    n_panels = max(int(math.ceil(T / width)), 1)
    n_gl = 16
    xs, ws = np.polynomial.legendre.leggauss(n_gl)

    edges = np.linspace(0.0, n_panels * width, n_panels + 1)
    mids = (edges[:-1] + edges[1:]) / 2
    halfw = width / 2
    taus = (mids[:, None] + halfw * xs[None, :]).ravel()
    wts = np.broadcast_to(ws[None, :] * halfw, (n_panels, n_gl)).ravel()

    t = sigma + 1j * taus
    s = np.full_like(t, plan.ln_const, dtype=np.complex128) + t * ln_b
    for (x, L) in plan.num_desc:
        s += _cplx_loggamma(float(x) - L * t)
    for (y, L) in plan.num_asc:
        s += _cplx_loggamma(float(y) + L * t)
    for (y, L) in plan.den_asc:
        s -= _cplx_loggamma(float(y) + L * t)
    for (x, L) in plan.den_desc:
        s -= _cplx_loggamma(float(x) - L * t)

    re_max = np.max(s.real)
    if not np.isfinite(re_max):
        return float(meijer_g_mpf(spec))
    vals = np.exp(s - re_max)
    acc = float(np.sum(wts * vals.real))
    acc_abs = float(np.sum(wts * np.abs(vals)))
    if acc == 0.0 and acc_abs == 0.0:
        return 0.0
    cancel = math.log10(acc_abs / abs(acc)) if acc != 0.0 else math.inf
    if cancel > max_cancel_digits:
        return float(meijer_g_mpf(spec))
    log_result = re_max + math.log(abs(acc)) - math.log(math.pi)
    if log_result < -700:
        return 0.0
    if log_result > 700:
        return float(meijer_g_mpf(spec))
    return math.copysign(math.exp(log_result), acc)
