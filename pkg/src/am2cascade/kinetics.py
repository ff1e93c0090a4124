"""Growth-rate laws and their inversions for the two-chemostat AM2 cascade.

The first species grows with a monotone (Monod) law, the second with a
growth-then-inhibition (Haldane) law

    mu1(S1) = m1*S1/(ks1 + S1),      mu2(S2) = m2*S2/(ks2 + S2 + S2^2/ki).

Everything downstream is organised around the break-even concentrations,
i.e. the substrate levels at which growth balances removal in reactor i
(removal rate D_i = D/r_i):

    lambda1^i(D, r)              unique solution of mu1(S) = D_i,
    lambda2^{i1} < lambda2^{i2}  the two solutions of mu2(S) = D_i.

When the removal rate exceeds the law's range the break-even does not
exist and is represented by the +inf sentinel (used in comparisons only,
never in arithmetic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

INF = math.inf

#: absolute tolerance of the generic bisection fallback (on S), and its
#: iteration cap; closed forms are used for Monod/Haldane so this only
#: matters for user-supplied laws.
BISECT_TOL = 1e-12
BISECT_MAXIT = 200


class DomainError(ValueError):
    """Input outside the physical domain (negative concentration etc.)."""


@dataclass(frozen=True)
class KineticParams:
    """Growth constants and pseudo-stoichiometric coefficients.

    m1   : max growth rate of species 1 (1/day)
    ks1  : half-saturation for S1 (g/L)
    m2   : Haldane scale for species 2 (1/day); note max(mu2) < m2
    ks2  : half-saturation for S2 (mmol/L)
    ki   : inhibition constant (mmol/L)
    k1,k2,k3 : yield coefficients (mmol/g)
    """

    m1: float
    ks1: float
    m2: float
    ks2: float
    ki: float
    k1: float
    k2: float
    k3: float

    def __post_init__(self):
        for name in ("m1", "ks1", "m2", "ks2", "ki", "k1", "k2", "k3"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"KineticParams.{name} must be strictly positive")

    @property
    def s2_peak(self) -> float:
        """Abscissa of the Haldane maximum, S2^m = sqrt(ks2*ki)."""
        return math.sqrt(self.ks2 * self.ki)

    @property
    def mu2_peak(self) -> float:
        """Peak value mu2(S2^m) = m2 / (1 + 2*sqrt(ks2/ki))."""
        return self.m2 / (1.0 + 2.0 * math.sqrt(self.ks2 / self.ki))


#: Built-in parameter presets. "bernard2001" is the classical AM2 fit, the
#: "-lowm1" variant halves m1 which makes the first-species washout
#: thresholds bite inside the standard operating window.
PRESETS = {
    "bernard2001": KineticParams(
        m1=0.6, ks1=7.1, m2=0.74, ks2=9.28, ki=256.0, k1=42.14, k2=116.5, k3=268.0
    ),
    "bernard2001-lowm1": KineticParams(
        m1=0.3, ks1=7.1, m2=0.74, ks2=9.28, ki=256.0, k1=42.14, k2=116.5, k3=268.0
    ),
}


def _check_nonneg(s, what):
    if np.any(np.asarray(s) < 0):
        raise DomainError(f"{what} must be nonnegative")


def mu1(s1, p: KineticParams):
    """Monod rate of species 1. Accepts scalars or arrays."""
    _check_nonneg(s1, "S1")
    return p.m1 * s1 / (p.ks1 + s1)


def mu1_prime(s1, p: KineticParams):
    """d(mu1)/dS1 = m1*ks1/(ks1+S1)^2 > 0."""
    _check_nonneg(s1, "S1")
    return p.m1 * p.ks1 / (p.ks1 + s1) ** 2


def mu2(s2, p: KineticParams):
    """Haldane rate of species 2. Accepts scalars or arrays."""
    _check_nonneg(s2, "S2")
    return p.m2 * s2 / (p.ks2 + s2 + s2 * s2 / p.ki)


def mu2_prime(s2, p: KineticParams):
    """d(mu2)/dS2; positive below S2^m, negative above."""
    _check_nonneg(s2, "S2")
    den = p.ks2 + s2 + s2 * s2 / p.ki
    return p.m2 * (p.ks2 - s2 * s2 / p.ki) / (den * den)


@dataclass(frozen=True)
class OperatingPoint:
    """The four control parameters: dilution, volume split, inlet levels.

    r is the volume fraction of reactor 1; reactor i sees the removal
    rate D_i = D/r_i with r1 = r, r2 = 1 - r.
    """

    d: float
    r: float
    s1in: float
    s2in: float

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("D must be nonnegative")
        if not 0.0 < self.r < 1.0:
            raise ValueError("r must lie strictly between 0 and 1")
        if self.s1in < 0 or self.s2in < 0:
            raise ValueError("inlet concentrations must be nonnegative")

    @property
    def r1(self) -> float:
        return self.r

    @property
    def r2(self) -> float:
        return 1.0 - self.r

    @property
    def d1(self) -> float:
        return self.d / self.r1

    @property
    def d2(self) -> float:
        return self.d / self.r2


@dataclass(frozen=True)
class GrowthLaw:
    """A one-argument rate law with its declared qualitative class.

    kind "monotone":  rate(0)=0, strictly increasing, sup = rate_sup.
    kind "unimodal":  rate(0)=0, increasing up to `peak`, decreasing after.

    Break-even inversions fall back to bracketing bisection, so any law
    passing :func:`validate_growth_law` can be used in place of the
    closed-form Monod/Haldane pair.
    """

    rate: Callable[[float], float]
    kind: str
    rate_sup: float | None = None  # monotone: limit at +inf
    peak: float | None = None  # unimodal: argmax abscissa
    rate_prime: Callable[[float], float] | None = None
    scale: float = 1.0  # typical concentration, seeds bracket growth

    def __post_init__(self):
        if self.kind not in ("monotone", "unimodal"):
            raise ValueError("kind must be 'monotone' or 'unimodal'")
        if self.kind == "monotone" and self.rate_sup is None:
            raise ValueError("monotone law needs rate_sup")
        if self.kind == "unimodal" and self.peak is None:
            raise ValueError("unimodal law needs peak")

    @classmethod
    def monod(cls, p: KineticParams) -> "GrowthLaw":
        return cls(
            rate=lambda s: mu1(s, p),
            kind="monotone",
            rate_sup=p.m1,
            rate_prime=lambda s: mu1_prime(s, p),
            scale=p.ks1,
        )

    @classmethod
    def haldane(cls, p: KineticParams) -> "GrowthLaw":
        return cls(
            rate=lambda s: mu2(s, p),
            kind="unimodal",
            peak=p.s2_peak,
            rate_prime=lambda s: mu2_prime(s, p),
            scale=p.s2_peak,
        )

    def prime(self, s: float, h: float = 1e-6) -> float:
        """Derivative; central difference (relative step) when no closed form."""
        if self.rate_prime is not None:
            return self.rate_prime(s)
        step = h * (1.0 + abs(s))
        lo = max(s - step, 0.0)
        return (self.rate(s + step) - self.rate(lo)) / (s + step - lo)


def validate_growth_law(law: GrowthLaw, s_max: float = 1e6, n: int = 1000) -> None:
    """Sampled shape check of the declared hypothesis class.

    Uses a log-spaced grid of n points up to s_max; it is a guard against
    mis-declared laws, not a proof.
    """
    if abs(law.rate(0.0)) > 1e-12:
        raise ValueError("growth law must vanish at 0")
    grid = np.logspace(-6, math.log10(s_max), n)
    vals = np.array([law.rate(float(s)) for s in grid])
    if law.kind == "monotone":
        if np.any(np.diff(vals) <= 0):
            raise ValueError("declared monotone law is not increasing on the grid")
        if vals[-1] > law.rate_sup + 1e-9:
            raise ValueError("declared monotone law exceeds rate_sup")
    else:
        before = grid < law.peak
        after = grid > law.peak
        if np.any(np.diff(vals[before]) <= 0):
            raise ValueError("declared unimodal law not increasing before peak")
        if np.any(np.diff(vals[after]) >= 0):
            raise ValueError("declared unimodal law not decreasing after peak")


def _bisect(f, a, b, fa, fb):
    """Bisection to |dx| < BISECT_TOL*(1+|x|); assumes fa*fb < 0."""
    for _ in range(BISECT_MAXIT):
        m = 0.5 * (a + b)
        if (b - a) < BISECT_TOL * (1.0 + abs(m)):
            return m
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa < 0) != (fm < 0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def break_even_monotone(law: GrowthLaw, rate: float) -> float:
    """Solve law.rate(S) = rate for a monotone law; +inf when rate >= sup."""
    if rate >= law.rate_sup:
        return INF
    if rate <= 0.0:
        return 0.0
    hi = law.scale
    while law.rate(hi) <= rate:
        hi *= 2.0
        if hi > 1e15:  # sup declared too low for the actual law
            return INF
    return _bisect(law.rate, 0.0, hi, -rate, law.rate(hi) - rate,)


def break_even_pair_unimodal(law: GrowthLaw, rate: float) -> tuple[float, float]:
    """Both solutions of law.rate(S) = rate for a unimodal law.

    Returns (lo, hi) with lo <= peak <= hi, the double root (peak, peak)
    exactly at the maximum, and (inf, inf) above it.
    """
    peak_rate = law.rate(law.peak)
    if rate > peak_rate:
        return (INF, INF)
    if rate == peak_rate:
        return (law.peak, law.peak)
    if rate <= 0.0:
        return (0.0, INF)
    f = lambda s: law.rate(s) - rate
    lo = _bisect(f, 0.0, law.peak, -rate, peak_rate - rate)
    hi_b = law.peak * 2.0
    while law.rate(hi_b) >= rate:
        hi_b *= 2.0
    hi = _bisect(f, law.peak, hi_b, peak_rate - rate, law.rate(hi_b) - rate)
    return (lo, hi)


def _stage_rate(d: float, r: float, stage: int) -> float:
    if stage not in (1, 2):
        raise ValueError("stage must be 1 or 2")
    ri = r if stage == 1 else 1.0 - r
    return d / ri


def lambda1(d: float, r: float, stage: int, p: KineticParams) -> float:
    """Break-even of species 1 in reactor `stage`; +inf when D >= r_i*m1.

    Closed form for Monod: lambda1 = ks1*D_i/(m1 - D_i).
    """
    if d < 0:
        raise DomainError("D must be nonnegative")
    di = _stage_rate(d, r, stage)
    if di >= p.m1:
        return INF
    return p.ks1 * di / (p.m1 - di)


def lambda1_law(d: float, r: float, stage: int, law: GrowthLaw) -> float:
    """Generic-law variant of :func:`lambda1` (bracketing bisection)."""
    return break_even_monotone(law, _stage_rate(d, r, stage))


def lambda2_pair(d: float, r: float, stage: int, p: KineticParams) -> tuple[float, float]:
    """Both break-evens of species 2 in reactor `stage`.

    Roots of D_i*S^2/ki + (D_i - m2)*S + D_i*ks2 = 0; the double root
    S2^m appears exactly at D = D_i^m = r_i*mu2(S2^m), and (inf, inf) is
    returned above that.
    """
    if d < 0:
        raise DomainError("D must be nonnegative")
    di = _stage_rate(d, r, stage)
    if di > p.mu2_peak:
        return (INF, INF)
    if di == p.mu2_peak:
        return (p.s2_peak, p.s2_peak)
    if di == 0.0:
        return (0.0, INF)
    a = di / p.ki
    b = di - p.m2  # negative since di < mu2_peak < m2
    c = di * p.ks2
    disc = max(b * b - 4.0 * a * c, 0.0)
    root = (-b + math.sqrt(disc))  # = |b| + sqrt(disc), no cancellation
    return (2.0 * c / root, root / (2.0 * a))


def lambda2_pair_law(d: float, r: float, stage: int, law: GrowthLaw) -> tuple[float, float]:
    """Generic-law variant of :func:`lambda2_pair`."""
    return break_even_pair_unimodal(law, _stage_rate(d, r, stage))


@dataclass(frozen=True)
class CriticalRates:
    """Critical dilution rates and inlet thresholds at one operating point.

    d1m, d2m     : r_i * mu2(S2^m), the Haldane-cap rates per reactor
    d1star, d2star : r_i * mu2(S2in), where S2in itself is a break-even
    s2in_stars   : (S21*, S22*, S23*, S24*) = (l2^11, l2^21, l2^12, l2^22),
                   the inlet levels at which S2in crosses a break-even at
                   fixed D; +inf where the stage's pair does not exist.
    """

    s2m: float
    mu2max: float
    d1m: float
    d2m: float
    d1star: float
    d2star: float
    s2in_stars: tuple[float, float, float, float]


def critical_rates(op: OperatingPoint, p: KineticParams) -> CriticalRates:
    mu2_in = mu2(op.s2in, p)
    l2_11, l2_12 = lambda2_pair(op.d, op.r, 1, p)
    l2_21, l2_22 = lambda2_pair(op.d, op.r, 2, p)
    return CriticalRates(
        s2m=p.s2_peak,
        mu2max=p.mu2_peak,
        d1m=op.r1 * p.mu2_peak,
        d2m=op.r2 * p.mu2_peak,
        d1star=op.r1 * mu2_in,
        d2star=op.r2 * mu2_in,
        s2in_stars=(l2_11, l2_21, l2_12, l2_22),
    )
