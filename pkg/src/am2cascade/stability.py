"""Local stability classification of the cascade steady states.

The reduced 4-D Jacobian is lower block triangular,

        [ J1  0  ]        J1 = [[a11, 0], [a21, a22]]
    J = [ J2  J3 ],       J3 = [[a33, 0], [a43, a44]],  J2 = diag-ish(D2)

so its eigenvalues are exactly the four diagonal entries a11, a22, a33,
a44. Each steady state is classified twice: analytically, by the
closed existence/stability conditions (which are sign conditions on the
a_ii expressed through break-even concentrations), and numerically, by
the signs of the evaluated a_ii. The two verdicts must agree away from
the boundary curves; the cross-check reports any discrepancy.

The full 8-D model adds the conservation directions, whose eigenvalues
are -D1 (twice) and -D2 (twice); `cascade_spectrum` checks that
numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kinetics import (
    INF,
    KineticParams,
    OperatingPoint,
    lambda1,
    lambda2_pair,
    mu1,
    mu1_prime,
    mu2,
    mu2_prime,
)
from .equilibria import SteadyState, label_tag

#: numeric margin (rate units) below which an eigenvalue counts as zero
NUMERIC_MARGIN = 1e-8
#: analytic boundary tolerance for near-equalities in the conditions
BOUNDARY_TOL = 1e-10

STABLE = "stable"
UNSTABLE = "unstable"
BOUNDARY = "boundary"
MARGINAL = "marginal"

#: labels that are unstable whenever they exist (a species-2 slot sits on
#: the decreasing Haldane branch, forcing a positive eigenvalue)
ALWAYS_UNSTABLE = frozenset(
    {"E00^02", "E00^12", "E10^12", "E02^01", "E02^11", "E12^11"}
)


@dataclass(frozen=True)
class JacobianBlocks:
    """Entries of the lower-block-triangular reduced Jacobian."""

    a11: float
    a21: float
    a22: float
    a31: float
    a33: float
    a42: float
    a43: float
    a44: float

    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.a11, 0.0, 0.0, 0.0],
                [self.a21, self.a22, 0.0, 0.0],
                [self.a31, 0.0, self.a33, 0.0],
                [0.0, self.a42, self.a43, self.a44],
            ]
        )

    @property
    def diagonal(self) -> tuple[float, float, float, float]:
        return (self.a11, self.a22, self.a33, self.a44)


def jacobian_at(ss: SteadyState, op: OperatingPoint, p: KineticParams) -> JacobianBlocks:
    """Reduced Jacobian at an existing steady state (analytic entries)."""
    if not ss.exists or ss.reduced is None:
        raise ValueError("jacobian_at requires an existing state")
    x11, x21, x12, x22 = ss.reduced
    s1_1 = op.s1in - p.k1 * x11
    s2_1 = op.s2in + p.k2 * x11 - p.k3 * x21
    s1_2 = op.s1in - p.k1 * x12
    s2_2 = op.s2in + p.k2 * x12 - p.k3 * x22
    return JacobianBlocks(
        a11=mu1(s1_1, p) - op.d1 - p.k1 * mu1_prime(s1_1, p) * x11,
        a21=p.k2 * mu2_prime(s2_1, p) * x21,
        a22=mu2(s2_1, p) - op.d1 - p.k3 * mu2_prime(s2_1, p) * x21,
        a31=op.d2,
        a33=mu1(s1_2, p) - op.d2 - p.k1 * mu1_prime(s1_2, p) * x12,
        a42=op.d2,
        a43=p.k2 * mu2_prime(s2_2, p) * x22,
        a44=mu2(s2_2, p) - op.d2 - p.k3 * mu2_prime(s2_2, p) * x22,
    )


@dataclass(frozen=True)
class AnalyticVerdict:
    status: str  # stable | unstable | boundary
    clause: str  # identifier of the table row clause that decided
    margins: dict

    def to_record(self):
        return {"status": self.status, "clause": self.clause}


@dataclass(frozen=True)
class NumericVerdict:
    status: str  # stable | unstable | marginal
    entries: tuple[float, float, float, float]
    margin: float

    def to_record(self):
        return {"status": self.status, "entries": list(self.entries)}


@dataclass(frozen=True)
class StabilityVerdict:
    analytic: AnalyticVerdict
    numeric: NumericVerdict
    agree: bool

    def to_record(self):
        return {
            "analytic": self.analytic.to_record(),
            "numeric": self.numeric.to_record(),
            "agree": self.agree,
        }


class _Conditions:
    """Accumulates the subconditions of one stability-table row.

    Each subcondition carries a signed margin (positive = satisfied
    strictly); the verdict is boundary when the decisive margin is
    within BOUNDARY_TOL of zero.
    """

    def __init__(self):
        self.margins: dict[str, float] = {}

    def below(self, name, value, threshold, scale=1.0):
        """value < threshold; +inf threshold is trivially satisfied."""
        if math.isinf(threshold):
            self.margins[name] = INF
            return
        self.margins[name] = (threshold - value) / (1.0 + abs(scale))

    def outside(self, name, value, lo, hi, scale=1.0):
        """value outside [lo, hi]; an undefined pair is an empty interval."""
        if math.isinf(lo) or math.isinf(hi):
            self.margins[name] = INF
            return
        self.margins[name] = max(lo - value, value - hi) / (1.0 + abs(scale))

    def positive(self, name, value, scale=1.0):
        self.margins[name] = value / (1.0 + abs(scale))

    def verdict(self) -> AnalyticVerdict:
        worst = min(self.margins.values())
        if abs(worst) < BOUNDARY_TOL:
            clause = min(self.margins, key=lambda k: abs(self.margins[k]))
            return AnalyticVerdict(BOUNDARY, clause, dict(self.margins))
        if worst > 0:
            return AnalyticVerdict(STABLE, "all-conditions-hold", dict(self.margins))
        clause = min(self.margins, key=lambda k: self.margins[k])
        return AnalyticVerdict(UNSTABLE, clause, dict(self.margins))


def classify_analytic(
    ss: SteadyState, op: OperatingPoint, p: KineticParams
) -> AnalyticVerdict:
    """Apply the stability-table row for the state's label.

    Interval conditions are evaluated with the break-even sentinels
    (an infinite pair is an empty interval, so the condition holds).
    """
    if not ss.exists:
        raise ValueError("classify_analytic requires an existing state")
    label = ss.label
    if label in ALWAYS_UNSTABLE:
        return AnalyticVerdict(UNSTABLE, "always-unstable-when-exists", {})

    l1_1 = lambda1(op.d, op.r, 1, p)
    l1_2 = lambda1(op.d, op.r, 2, p)
    l2_11, l2_12 = lambda2_pair(op.d, op.r, 1, p)
    l2_21, l2_22 = lambda2_pair(op.d, op.r, 2, p)
    c = _Conditions()
    x11, x21, x12, x22 = ss.reduced
    sc, sc2 = op.s1in, op.s2in

    if label == "E00^00":
        c.below("S1in<lambda1^1", op.s1in, l1_1, sc)
        c.below("S1in<lambda1^2", op.s1in, l1_2, sc)
        c.outside("S2in-outside-stage1", op.s2in, l2_11, l2_12, sc2)
        c.outside("S2in-outside-stage2", op.s2in, l2_21, l2_22, sc2)
    elif label == "E00^01":
        c.below("S1in<lambda1^1", op.s1in, l1_1, sc)
        c.below("S1in<lambda1^2", op.s1in, l1_2, sc)
        c.outside("S2in-outside-stage1", op.s2in, l2_11, l2_12, sc2)
    elif label == "E00^10":
        w2 = op.s2in + (p.k2 / p.k1) * (op.s1in - l1_2)
        c.below("S1in<lambda1^1", op.s1in, l1_1, sc)
        c.outside("S2in-outside-stage1", op.s2in, l2_11, l2_12, sc2)
        c.outside("S2in+k2X1^2-outside-stage2", w2, l2_21, l2_22, sc2)
    elif label == "E00^11":
        c.below("S1in<lambda1^1", op.s1in, l1_1, sc)
        c.outside("S2in-outside-stage1", op.s2in, l2_11, l2_12, sc2)
    elif label == "E10^10":
        w1 = op.s2in + (p.k2 / p.k1) * (op.s1in - l1_1)
        v = op.s2in + p.k2 * x12
        c.outside("S2in+k2X1^1-outside-stage1", w1, l2_11, l2_12, sc2)
        # phi1 < 0 or phi2 > 0, i.e. S2in + k2*X1^{2*} outside stage-2 pair
        c.outside("phi1<0-or-phi2>0", v, l2_21, l2_22, sc2)
    elif label == "E10^11":
        w1 = op.s2in + (p.k2 / p.k1) * (op.s1in - l1_1)
        c.outside("S2in+k2X1^1-outside-stage1", w1, l2_11, l2_12, sc2)
    elif label == "E01^01":
        c.below("S1in<lambda1^1", op.s1in, l1_1, sc)
        c.below("S1in<lambda1^2", op.s1in, l1_2, sc)
    elif label in ("E01^11", "E11^11"):
        if label == "E01^11":
            c.below("S1in<lambda1^1", op.s1in, l1_1, sc)
        # g2'(X2^{2*}) > f3'(X2^{2*}) with the state's own upstream parts
        g2p = op.d2 * x21 / (x22 * x22)
        f3p = -p.k3 * mu2_prime(op.s2in + p.k2 * x12 - p.k3 * x22, p)
        c.positive("g2'>f3'", g2p - f3p)
    else:  # pragma: no cover - the label set is closed
        raise ValueError(f"unknown label {label!r}")
    return c.verdict()


def classify_numeric(
    ss: SteadyState, op: OperatingPoint, p: KineticParams, margin: float = NUMERIC_MARGIN
) -> NumericVerdict:
    """Sign check of the four reduced eigenvalues a_ii."""
    jac = jacobian_at(ss, op, p)
    entries = jac.diagonal
    worst = max(entries)
    if worst < -margin:
        status = STABLE
    elif worst > margin:
        status = UNSTABLE
    else:
        status = MARGINAL
    return NumericVerdict(status, entries, worst)


def classify(ss: SteadyState, op: OperatingPoint, p: KineticParams) -> StabilityVerdict:
    a = classify_analytic(ss, op, p)
    n = classify_numeric(ss, op, p)
    agree = (a.status, n.status) in ((STABLE, STABLE), (UNSTABLE, UNSTABLE))
    return StabilityVerdict(a, n, agree)


def classify_all(
    states: list[SteadyState], op: OperatingPoint, p: KineticParams
) -> list[SteadyState]:
    """Fill the stability slot of every existing state, in place."""
    for ss in states:
        if ss.exists:
            ss.stability = classify(ss, op, p)
    return states


@dataclass(frozen=True)
class CrosscheckItem:
    label: str
    branch: int
    analytic: str
    numeric: str
    agree: bool
    boundary_distance: float  # min |a_ii|, distance to a sign change


@dataclass(frozen=True)
class CrosscheckReport:
    items: tuple
    disagreements: tuple  # items that disagree away from boundaries

    @property
    def ok(self) -> bool:
        return not self.disagreements


def crosscheck(
    states: list[SteadyState], op: OperatingPoint, p: KineticParams
) -> CrosscheckReport:
    """Compare analytic and numeric verdicts for every existing state.

    A disagreement is only reported when both verdicts are conclusive
    (neither boundary nor marginal); those near-boundary items carry
    their distance diagnostics instead.
    """
    items = []
    bad = []
    for ss in states:
        if not ss.exists:
            continue
        v = classify(ss, op, p)
        dist = min(abs(e) for e in v.numeric.entries)
        item = CrosscheckItem(
            ss.label, ss.branch, v.analytic.status, v.numeric.status, v.agree, dist
        )
        items.append(item)
        conclusive = v.analytic.status != BOUNDARY and v.numeric.status != MARGINAL
        if conclusive and not v.agree:
            bad.append(item)
    return CrosscheckReport(tuple(items), tuple(bad))


def full_jacobian(x8, op: OperatingPoint, p: KineticParams) -> np.ndarray:
    """Analytic 8x8 Jacobian of the full two-reactor model."""
    s1_1, x1_1, s2_1, x2_1, s1_2, x1_2, s2_2, x2_2 = x8
    d1, d2 = op.d1, op.d2
    m1v, m1p = mu1(s1_1, p), mu1_prime(s1_1, p)
    m2v, m2p = mu2(s2_1, p), mu2_prime(s2_1, p)
    n1v, n1p = mu1(s1_2, p), mu1_prime(s1_2, p)
    n2v, n2p = mu2(s2_2, p), mu2_prime(s2_2, p)
    J = np.zeros((8, 8))
    # reactor 1
    J[0, 0] = -d1 - p.k1 * m1p * x1_1
    J[0, 1] = -p.k1 * m1v
    J[1, 0] = m1p * x1_1
    J[1, 1] = m1v - d1
    J[2, 0] = p.k2 * m1p * x1_1
    J[2, 1] = p.k2 * m1v
    J[2, 2] = -d1 - p.k3 * m2p * x2_1
    J[2, 3] = -p.k3 * m2v
    J[3, 2] = m2p * x2_1
    J[3, 3] = m2v - d1
    # reactor 2 (fed by reactor 1)
    J[4, 0] = d2
    J[4, 4] = -d2 - p.k1 * n1p * x1_2
    J[4, 5] = -p.k1 * n1v
    J[5, 1] = d2
    J[5, 4] = n1p * x1_2
    J[5, 5] = n1v - d2
    J[6, 2] = d2
    J[6, 4] = p.k2 * n1p * x1_2
    J[6, 5] = p.k2 * n1v
    J[6, 6] = -d2 - p.k3 * n2p * x2_2
    J[6, 7] = -p.k3 * n2v
    J[7, 3] = d2
    J[7, 6] = n2p * x2_2
    J[7, 7] = n2v - d2
    return J


def cascade_spectrum(
    ss: SteadyState, op: OperatingPoint, p: KineticParams
) -> tuple[np.ndarray, np.ndarray]:
    """(full 8-D spectrum, expected spectrum) at a reconstructed state.

    The expectation is the four reduced eigenvalues plus -D1, -D1, -D2,
    -D2 from the conservation directions; both are returned sorted.
    """
    jac8 = full_jacobian(ss.full, op, p)
    eig8 = np.sort_complex(np.linalg.eigvals(jac8))
    reduced = jacobian_at(ss, op, p).diagonal
    expected = np.sort_complex(
        np.array(list(reduced) + [-op.d1, -op.d1, -op.d2, -op.d2], dtype=complex)
    )
    return eig8, expected
