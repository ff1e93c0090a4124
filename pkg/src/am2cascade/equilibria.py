"""Steady-state enumeration for the reduced 4-D cascade model.

The reduced state is x = (X1^1, X2^1, X1^2, X2^2), the biomasses in the
two reactors. Each steady state is labelled E_{ij}^{kl} where the
subscript tells which species survive in reactor 1 and the exponent which
survive in reactor 2; i (or k) refers to species 1, j (or l) to species 2,
and the values 1/2 on a species-2 slot select the lower/upper branch of
the Haldane break-even pair.

Reactor-1 components come from closed forms in the break-even values.
Reactor-2 components need three scalar fixed-point equations built from

    g1(x) = D2*(x - X1^{1*})/x        g2(x) = D2*(x - X2^{1*})/x
    f1(x) = mu1(S1in - k1*x)
    f2(x) = mu2(S2in - k3*x)
    f3(x) = mu2(S2in + k2*X1^{2*} - k3*x)

namely f1=g1 (unique root), f2=g2 and f3=g2 (odd number of roots,
generically). Roots are located by a uniform sign scan over the
bracketing interval guaranteed by the theory, then bisection.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

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

#: default panel count of the uniform sign scan; governs multiplicity
#: detection only (brackets at the interval ends are guaranteed).
SCAN_PANELS = 2048
#: relative bisection target per bracketed root
ROOT_XTOL = 1e-12
#: |f-g| below this at a sign-preserving minimum is reported as a tangency
TANGENCY_TOL = 1e-10

#: the fifteen labels in the canonical (region-table) column order
LABELS = (
    "E00^00", "E00^01", "E00^02", "E00^10", "E00^11", "E00^12",
    "E10^10", "E10^11", "E10^12",
    "E01^01", "E02^01", "E01^11", "E02^11", "E11^11", "E12^11",
)


def label_tag(label: str) -> tuple[int, int, int, int]:
    """(i, j, k, l) of 'Eij^kl'."""
    return (int(label[1]), int(label[2]), int(label[4]), int(label[5]))


class InfeasibleError(ValueError):
    """A solver was invoked outside its lemma-guaranteed interval."""


class ConsistencyError(RuntimeError):
    """An existing state reconstructed to a negative concentration."""


@dataclass
class AuxFunctions:
    """The five scalar evaluators bound to one operating point.

    x11, x21 are the upstream (reactor 1) biomass components feeding g1/g2
    and x12 the reactor-1->2 species-1 feed entering f3. Domain endpoints:
    f1 lives on [0, S1in/k1], f2 on [0, S2in/k3] and f3 on [0, d_end]
    with d_end = (S2in + k2*x12)/k3.
    """

    op: OperatingPoint
    p: KineticParams
    x11: float = 0.0
    x21: float = 0.0
    x12: float = 0.0

    def __post_init__(self):
        k = self.p
        self.s1_top = self.op.s1in / k.k1
        self.s2_top = self.op.s2in / k.k3
        self.d_end = (self.op.s2in + k.k2 * self.x12) / k.k3
        self.x1m = (self.op.s2in - k.s2_peak) / k.k3
        self.x2m = (self.op.s2in + k.k2 * self.x12 - k.s2_peak) / k.k3

    # the evaluators accept arrays (used by the sign scan); the interval
    # endpoints map to substrate 0 only up to round-off, hence the clamp

    def f1(self, x):
        return mu1(np.maximum(self.op.s1in - self.p.k1 * x, 0.0), self.p)

    def f2(self, x):
        return mu2(np.maximum(self.op.s2in - self.p.k3 * x, 0.0), self.p)

    def f3(self, x):
        return mu2(
            np.maximum(self.op.s2in + self.p.k2 * self.x12 - self.p.k3 * x, 0.0), self.p
        )

    def g1(self, x):
        # at x=0 the hyperbola extends continuously to D2 when the
        # upstream biomass vanishes, and diverges to -inf otherwise
        x = np.asarray(x, dtype=float)
        out = np.where(x > 0.0, self.op.d2 * (x - self.x11) / np.where(x > 0, x, 1.0),
                       self.op.d2 if self.x11 == 0.0 else -INF)
        return out if out.ndim else float(out)

    def g2(self, x):
        x = np.asarray(x, dtype=float)
        out = np.where(x > 0.0, self.op.d2 * (x - self.x21) / np.where(x > 0, x, 1.0),
                       self.op.d2 if self.x21 == 0.0 else -INF)
        return out if out.ndim else float(out)

    def f1_prime(self, x):
        return -self.p.k1 * mu1_prime(self.op.s1in - self.p.k1 * x, self.p)

    def f2_prime(self, x):
        return -self.p.k3 * mu2_prime(self.op.s2in - self.p.k3 * x, self.p)

    def f3_prime(self, x):
        return -self.p.k3 * mu2_prime(
            self.op.s2in + self.p.k2 * self.x12 - self.p.k3 * x, self.p
        )

    def g1_prime(self, x):
        return self.op.d2 * self.x11 / (x * x)

    def g2_prime(self, x):
        return self.op.d2 * self.x21 / (x * x)


@dataclass(frozen=True)
class BranchRoot:
    x: float
    tangency: bool = False


def _scan_roots(fun, a: float, b: float, panels: int) -> list[BranchRoot]:
    """All roots of `fun` on (a, b): uniform sign scan, then bisection.

    Sign-preserving near-zero minima (|f| < TANGENCY_TOL) are emitted as
    tangency branches rather than silently resolved.
    """
    xs = np.linspace(a, b, panels + 1)
    fs = np.asarray(fun(xs), dtype=float)
    roots: list[BranchRoot] = []
    for i in range(panels):
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0:
            if i == 0 or fs[i - 1] != 0.0:
                roots.append(BranchRoot(float(xs[i])))
            continue
        if fa * fb < 0.0:
            lo, hi, flo = xs[i], xs[i + 1], fa
            while (hi - lo) > ROOT_XTOL * (1.0 + abs(hi)):
                mid = 0.5 * (lo + hi)
                fm = float(fun(mid))
                if fm == 0.0:
                    lo = hi = mid
                    break
                if (flo < 0) != (fm < 0):
                    hi = mid
                else:
                    lo, flo = mid, fm
            roots.append(BranchRoot(0.5 * (lo + hi)))
    if fs[-1] == 0.0:
        roots.append(BranchRoot(float(xs[-1])))
    # tangency sweep: interior local minima of |f| without sign change
    absf = np.abs(fs)
    for i in range(1, panels):
        if absf[i] < TANGENCY_TOL and absf[i] <= absf[i - 1] and absf[i] <= absf[i + 1]:
            x = float(xs[i])
            if fs[i] != 0.0 and all(abs(r.x - x) > (b - a) / panels for r in roots):
                roots.append(BranchRoot(x, tangency=True))
    roots.sort(key=lambda r: r.x)
    return roots


def solve_f1_g1(aux: AuxFunctions, panels: int = SCAN_PANELS) -> float:
    """Unique root of f1 = g1 in (X1^{1*}, S1in/k1)."""
    if not aux.x11 < aux.s1_top:
        raise InfeasibleError("f1=g1 requires X1^{1*} < S1in/k1")
    fun = lambda x: aux.f1(x) - aux.g1(x)
    roots = [r for r in _scan_roots(fun, aux.x11, aux.s1_top, panels) if not r.tangency]
    if len(roots) != 1:
        # f1 decreasing, g1 increasing: a unique transversal crossing;
        # anything else is a numerical artefact worth surfacing
        raise InfeasibleError(f"f1=g1 produced {len(roots)} roots")
    return roots[0].x


def solve_f2_g2(aux: AuxFunctions, panels: int = SCAN_PANELS) -> list[BranchRoot]:
    """All roots of f2 = g2 in (X2^{1*}, S2in/k3), ascending."""
    if not aux.x21 < aux.s2_top:
        raise InfeasibleError("f2=g2 requires X2^{1*} < S2in/k3")
    fun = lambda x: aux.f2(x) - aux.g2(x)
    return _scan_roots(fun, aux.x21, aux.s2_top, panels)


def solve_f3_g2(aux: AuxFunctions, panels: int = SCAN_PANELS) -> list[BranchRoot]:
    """All roots of f3 = g2 in (X2^{1*}, d_end), ascending."""
    if not aux.x21 < aux.d_end:
        raise InfeasibleError("f3=g2 requires X2^{1*} < (S2in + k2*X1^{2*})/k3")
    fun = lambda x: aux.f3(x) - aux.g2(x)
    return _scan_roots(fun, aux.x21, aux.d_end, panels)


@dataclass(frozen=True)
class AuxValues:
    """Mixed break-even combinations of Table-style auxiliary functions.

    F_{ij} = lambda1^i + (k1/k2)(lambda2^{ij} - S2in)
    phi_j  = S2in + k2*X1^{2*} - lambda2^{2j}

    A field is None ("undefined") whenever an ingredient break-even is
    infinite, per the definition domains; x12_star is the f1=g1 root that
    feeds phi (None when S1in <= lambda1^1).
    """

    f11: float | None
    f12: float | None
    f21: float | None
    f22: float | None
    phi1: float | None
    phi2: float | None
    x12_star: float | None


def aux_values(op: OperatingPoint, p: KineticParams, panels: int = SCAN_PANELS) -> AuxValues:
    l1_1 = lambda1(op.d, op.r, 1, p)
    l1_2 = lambda1(op.d, op.r, 2, p)
    l2_11, l2_12 = lambda2_pair(op.d, op.r, 1, p)
    l2_21, l2_22 = lambda2_pair(op.d, op.r, 2, p)
    kk = p.k1 / p.k2

    def f(l1, l2):
        if math.isinf(l1) or math.isinf(l2):
            return None
        return l1 + kk * (l2 - op.s2in)

    x12_star = None
    if not math.isinf(l1_1) and op.s1in > l1_1:
        aux = AuxFunctions(op, p, x11=(op.s1in - l1_1) / p.k1)
        x12_star = solve_f1_g1(aux, panels)

    def phi(l2_2j):
        if x12_star is None or math.isinf(l2_2j):
            return None
        return op.s2in + p.k2 * x12_star - l2_2j

    return AuxValues(
        f11=f(l1_1, l2_11),
        f12=f(l1_1, l2_12),
        f21=f(l1_2, l2_21),
        f22=f(l1_2, l2_22),
        phi1=phi(l2_21),
        phi2=phi(l2_22),
        x12_star=x12_star,
    )


@dataclass
class SteadyState:
    """One candidate equilibrium of the reduced system.

    branch indexes multiple roots of the defining scalar equation
    (ascending in X2^2, 1-based); reduced/full are None when the
    existence condition fails. The stability slot is filled by the
    stability module.
    """

    label: str
    branch: int
    exists: bool
    reason: str
    reduced: tuple[float, float, float, float] | None = None
    full: tuple[float, ...] | None = None
    tangency: bool = False
    stability: object | None = None

    @property
    def tag(self) -> tuple[int, int, int, int]:
        return label_tag(self.label)

    def to_record(self) -> dict:
        rec = {
            "label": self.label,
            "branch": self.branch,
            "exists": self.exists,
            "reason": self.reason,
            "reduced": list(self.reduced) if self.reduced else None,
            "full": list(self.full) if self.full else None,
        }
        if self.tangency:
            rec["tangency"] = True
        if self.stability is not None:
            rec["stability"] = self.stability.to_record()
        return rec


def reconstruct_full_state(
    ss: SteadyState, op: OperatingPoint, p: KineticParams
) -> tuple[float, ...]:
    """Lift a reduced 4-vector to the 8-D state via the conservation laws.

    S1^i = S1in - k1*X1^i and S2^i = S2in - k3*X2^i + k2*X1^i; a negative
    reconstructed concentration indicates an existence-condition bug.
    """
    if not ss.exists or ss.reduced is None:
        raise ValueError("cannot reconstruct a non-existing state")
    x11, x21, x12, x22 = ss.reduced
    full = []
    for x1, x2 in ((x11, x21), (x12, x22)):
        s1 = op.s1in - p.k1 * x1
        s2 = op.s2in - p.k3 * x2 + p.k2 * x1
        for v in (s1, x1, s2, x2):
            if v < -1e-9 * (1.0 + abs(op.s1in) + abs(op.s2in)):
                raise ConsistencyError(
                    f"{ss.label} branch {ss.branch}: negative component {v!r}"
                )
        full.extend((max(s1, 0.0), x1, max(s2, 0.0), x2))
    return tuple(full)


def in_reduced_domain(x, op: OperatingPoint, p: KineticParams, tol: float = 1e-9) -> bool:
    """Membership in the physical set M (all reconstructed levels >= 0)."""
    x11, x21, x12, x22 = x
    scale = 1.0 + op.s1in + op.s2in
    ok = True
    for x1, x2 in ((x11, x21), (x12, x22)):
        ok &= -tol * scale <= x1 * p.k1 <= op.s1in + tol * scale
        ok &= x2 * p.k3 <= op.s2in + p.k2 * x1 + tol * scale
        ok &= x2 >= -tol * scale
    return bool(ok)


def _cond(ok: bool, text: str) -> tuple[bool, str]:
    return ok, ("" if ok else "fails: ") + text


def enumerate_steady_states(
    op: OperatingPoint, p: KineticParams, panels: int = SCAN_PANELS
) -> list[SteadyState]:
    """Every candidate from the nine families, existence-checked.

    Families with a species-2 slot expand over the two Haldane branches
    (i = 1, 2); families defined through f2=g2 or f3=g2 additionally
    expand one state per root of that equation. Existence conditions are
    the strict inequalities of the existence table; boundary equalities
    count as non-existence.
    """
    l1_1 = lambda1(op.d, op.r, 1, p)
    l1_2 = lambda1(op.d, op.r, 2, p)
    l2_1 = lambda2_pair(op.d, op.r, 1, p)  # (l2^11, l2^12)
    l2_2 = lambda2_pair(op.d, op.r, 2, p)  # (l2^21, l2^22)
    av = aux_values(op, p, panels)
    f1i = (av.f11, av.f12)
    f2i = (av.f21, av.f22)
    phii = (av.phi1, av.phi2)
    out: list[SteadyState] = []

    def add(label, exists, reason, reduced=None, branch=1, tangency=False):
        ss = SteadyState(label, branch, exists, reason, reduced, tangency=tangency)
        if exists:
            ss.full = reconstruct_full_state(ss, op, p)
        out.append(ss)

    def expand(label, exists, reason, make_aux, x12_of_root):
        """Add one state per root of f3=g2 (or mark non-existing once)."""
        if not exists:
            add(label, False, reason)
            return
        aux = make_aux()
        roots = solve_f3_g2(aux, panels)
        for n, root in enumerate(roots, start=1):
            add(label, True, reason,
                (aux.x11, aux.x21, x12_of_root, root.x),
                branch=n, tangency=root.tangency)

    # E00^00 - full washout, always present
    add("E00^00", True, "always exists", (0.0, 0.0, 0.0, 0.0))

    # E00^0i - species 2 alone in reactor 2
    for i in (1, 2):
        ok, why = _cond(op.s2in > l2_2[i - 1], f"S2in > lambda2^2{i}")
        add(f"E00^0{i}", ok, why,
            (0.0, 0.0, 0.0, (op.s2in - l2_2[i - 1]) / p.k3) if ok else None)

    # E00^10 - species 1 alone in reactor 2
    ok, why = _cond(op.s1in > l1_2, "S1in > lambda1^2")
    add("E00^10", ok, why, (0.0, 0.0, (op.s1in - l1_2) / p.k1, 0.0) if ok else None)

    # E00^1i - both species in reactor 2 only
    for i in (1, 2):
        fv = f2i[i - 1]
        ok = op.s1in > l1_2 and fv is not None and op.s1in > fv
        _, why = _cond(ok, f"S1in > max(lambda1^2, F2{i})")
        add(f"E00^1{i}", ok, why,
            (0.0, 0.0, (op.s1in - l1_2) / p.k1,
             p.k2 * (op.s1in - fv) / (p.k1 * p.k3)) if ok else None)

    # E10^10 - species 1 in both reactors
    ok, why = _cond(op.s1in > l1_1, "S1in > lambda1^1")
    if ok:
        add("E10^10", True, why,
            ((op.s1in - l1_1) / p.k1, 0.0, av.x12_star, 0.0))
    else:
        add("E10^10", False, why)

    # E10^1i - species 2 excluded from reactor 1 only
    for i in (1, 2):
        pv = phii[i - 1]
        ok = op.s1in > l1_1 and pv is not None and pv > 0.0
        _, why = _cond(ok, f"S1in > lambda1^1 and phi{i} > 0")
        add(f"E10^1{i}", ok, why,
            ((op.s1in - l1_1) / p.k1, 0.0, av.x12_star, pv / p.k3) if ok else None)

    # E0i^01 - species 2 alone in both reactors (f2 = g2 roots)
    for i in (1, 2):
        ok, why = _cond(op.s2in > l2_1[i - 1], f"S2in > lambda2^1{i}")
        if not ok:
            add(f"E0{i}^01", False, why)
            continue
        x21 = (op.s2in - l2_1[i - 1]) / p.k3
        aux = AuxFunctions(op, p, x21=x21)
        for n, root in enumerate(solve_f2_g2(aux, panels), start=1):
            add(f"E0{i}^01", True, why, (0.0, x21, 0.0, root.x),
                branch=n, tangency=root.tangency)

    # E0i^11 - species 1 washes out of reactor 1 only (f3 = g2 roots)
    for i in (1, 2):
        ok = op.s1in > l1_2 and op.s2in > l2_1[i - 1]
        _, why = _cond(ok, f"S1in > lambda1^2 and S2in > lambda2^1{i}")
        x12 = (op.s1in - l1_2) / p.k1
        expand(f"E0{i}^11", ok, why,
               lambda x12=x12, i=i: AuxFunctions(
                   op, p, x21=(op.s2in - l2_1[i - 1]) / p.k3, x12=x12),
               x12)

    # E1i^11 - full coexistence (f1 = g1 then f3 = g2)
    for i in (1, 2):
        fv = f1i[i - 1]
        ok = op.s1in > l1_1 and fv is not None and op.s1in > fv
        _, why = _cond(ok, f"S1in > max(lambda1^1, F1{i})")
        expand(f"E1{i}^11", ok, why,
               lambda fv=fv: AuxFunctions(
                   op, p,
                   x11=(op.s1in - l1_1) / p.k1,
                   x21=p.k2 * (op.s1in - fv) / (p.k1 * p.k3),
                   x12=av.x12_star),
               av.x12_star)

    return out


def serialize_steady_states(states: list[SteadyState]) -> str:
    """JSON text, one object per candidate (stable key order)."""
    return json.dumps([s.to_record() for s in states], indent=1, sort_keys=True)
