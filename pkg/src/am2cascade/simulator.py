"""Time integration of the full 8-D model and the reduced 4-D model.

The full state is (S1^1, X1^1, S2^1, X2^1, S1^2, X1^2, S2^2, X2^2). The
combinations Z1^i = S1^i + k1*X1^i and Z2^i = S2^i + k3*X2^i - k2*X1^i
obey linear dynamics and relax to the inlet levels, which both reduces
the model to the four biomasses and provides a sharp integration
diagnostic: |Z1^1(t) - S1in| must decay exactly like exp(-D1*t).

Integration uses an embedded explicit 4(5) Runge-Kutta pair driven step
by step, with a nonnegativity projection for round-off undershoot and a
convergence detector that requires the rhs to stay tiny over many
consecutive accepted steps before matching the endpoint against the
enumerated steady states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import RK45

from .kinetics import KineticParams, OperatingPoint
from .equilibria import SteadyState, enumerate_steady_states, in_reduced_domain
from .stability import classify_all

#: ||rhs||_inf threshold and the number of consecutive accepted steps it
#: must hold before a trajectory is declared converged
CONV_RHS_TOL = 1e-8
CONV_STREAK = 50
#: relative radius for matching a terminal state to a steady state
MATCH_RTOL = 1e-4
#: round-off undershoot below this magnitude is projected back to zero
UNDERSHOOT = -1e-12
#: default step cap, in units of the slowest dilution time scale; keeps
#: the accepted-step cadence fine enough that the sustained-convergence
#: window means real elapsed time (steps would otherwise grow without
#: bound near an attractor and outrun the detector)
MAX_STEP_TIMESCALES = 20.0

DEFAULT_TMAX = 1e4
#: default per-step relative error target; the convergence detector
#: needs the integration noise floor (about |J|*rtol*|y|) to sit below
#: CONV_RHS_TOL, which a loose tolerance would never reach
DEFAULT_TOL = 1e-9


class StiffnessError(RuntimeError):
    """Step size underflow; lower tol or shrink the step floor."""


def rhs_full(x, op: OperatingPoint, p: KineticParams) -> np.ndarray:
    """Right-hand side of the eight balance equations."""
    s1_1, x1_1, s2_1, x2_1, s1_2, x1_2, s2_2, x2_2 = x
    d1, d2 = op.d1, op.d2
    m1_1 = p.m1 * s1_1 / (p.ks1 + s1_1)
    m2_1 = p.m2 * s2_1 / (p.ks2 + s2_1 + s2_1 * s2_1 / p.ki)
    m1_2 = p.m1 * s1_2 / (p.ks1 + s1_2)
    m2_2 = p.m2 * s2_2 / (p.ks2 + s2_2 + s2_2 * s2_2 / p.ki)
    return np.array(
        [
            d1 * (op.s1in - s1_1) - p.k1 * m1_1 * x1_1,
            (m1_1 - d1) * x1_1,
            d1 * (op.s2in - s2_1) + p.k2 * m1_1 * x1_1 - p.k3 * m2_1 * x2_1,
            (m2_1 - d1) * x2_1,
            d2 * (s1_1 - s1_2) - p.k1 * m1_2 * x1_2,
            d2 * (x1_1 - x1_2) + m1_2 * x1_2,
            d2 * (s2_1 - s2_2) + p.k2 * m1_2 * x1_2 - p.k3 * m2_2 * x2_2,
            d2 * (x2_1 - x2_2) + m2_2 * x2_2,
        ]
    )


def rhs_reduced(x, op: OperatingPoint, p: KineticParams) -> np.ndarray:
    """Right-hand side of the reduced biomass equations (on the set M).

    Substrate levels are clamped at zero, the biological extension that
    keeps excursions past the boundary of M (flagged by the integrator)
    decaying back instead of feeding the laws out of domain.
    """
    x1_1, x2_1, x1_2, x2_2 = x
    d1, d2 = op.d1, op.d2
    s1_1 = max(op.s1in - p.k1 * x1_1, 0.0)
    s2_1 = max(op.s2in + p.k2 * x1_1 - p.k3 * x2_1, 0.0)
    s1_2 = max(op.s1in - p.k1 * x1_2, 0.0)
    s2_2 = max(op.s2in + p.k2 * x1_2 - p.k3 * x2_2, 0.0)
    m1_1 = p.m1 * s1_1 / (p.ks1 + s1_1)
    m2_1 = p.m2 * s2_1 / (p.ks2 + s2_1 + s2_1 * s2_1 / p.ki)
    m1_2 = p.m1 * s1_2 / (p.ks1 + s1_2)
    m2_2 = p.m2 * s2_2 / (p.ks2 + s2_2 + s2_2 * s2_2 / p.ki)
    return np.array(
        [
            (m1_1 - d1) * x1_1,
            (m2_1 - d1) * x2_1,
            d2 * (x1_1 - x1_2) + m1_2 * x1_2,
            d2 * (x2_1 - x2_2) + m2_2 * x2_2,
        ]
    )


def conservation_values(x8, p: KineticParams):
    """(Z1^1, Z2^1, Z1^2, Z2^2) for one state or an (n, 8) array."""
    a = np.asarray(x8, dtype=float)
    s1_1, x1_1, s2_1, x2_1, s1_2, x1_2, s2_2, x2_2 = np.moveaxis(a, -1, 0)
    z1_1 = s1_1 + p.k1 * x1_1
    z2_1 = s2_1 + p.k3 * x2_1 - p.k2 * x1_1
    z1_2 = s1_2 + p.k1 * x1_2
    z2_2 = s2_2 + p.k3 * x2_2 - p.k2 * x1_2
    return np.stack([z1_1, z2_1, z1_2, z2_2], axis=-1)


def conservation_deviation(x8, op: OperatingPoint, p: KineticParams):
    """|Z - inlet| componentwise, the conservation diagnostic."""
    z = conservation_values(x8, p)
    target = np.array([op.s1in, op.s2in, op.s1in, op.s2in])
    return np.abs(z - target)


@dataclass
class Trajectory:
    """Accepted-step record of one integration run.

    event is one of "converged", "max-time"; matched holds the
    (label, branch) of the steady state reached, when identified.
    """

    t: np.ndarray
    y: np.ndarray
    steps: np.ndarray
    event: str
    matched: tuple[str, int] | None
    kind: str  # "full" | "reduced"
    op: OperatingPoint
    left_domain: bool = False

    def z_deviation(self, p: KineticParams) -> np.ndarray:
        if self.kind != "full":
            raise ValueError("conservation diagnostics need a full trajectory")
        return conservation_deviation(self.y, self.op, p)


def _match_state(y, states: list[SteadyState], kind: str) -> tuple[str, int] | None:
    best = None
    best_d = math.inf
    for ss in states:
        if not ss.exists:
            continue
        ref = np.asarray(ss.reduced if kind == "reduced" else ss.full)
        d = np.max(np.abs(y - ref)) / (1.0 + np.max(np.abs(ref)))
        if d < best_d:
            best_d, best = d, (ss.label, ss.branch)
    return best if best_d < MATCH_RTOL else None


def integrate(
    ic,
    op: OperatingPoint,
    p: KineticParams,
    tmax: float = DEFAULT_TMAX,
    tol: float = DEFAULT_TOL,
    states: list[SteadyState] | None = None,
    max_step: float = math.inf,
) -> Trajectory:
    """Integrate from `ic` until convergence or tmax.

    `ic` of length 8 selects the full model, length 4 the reduced one.
    tol is the per-step relative error target of the embedded pair.
    Hitting tmax is reported, not raised; step-size underflow raises
    StiffnessError.
    """
    ic = np.asarray(ic, dtype=float)
    if np.any(ic < 0):
        raise ValueError("initial condition must be nonnegative")
    if ic.shape == (8,):
        kind, fun = "full", lambda t, y: rhs_full(y, op, p)
    elif ic.shape == (4,):
        kind, fun = "reduced", lambda t, y: rhs_reduced(y, op, p)
    else:
        raise ValueError("initial condition must have 4 or 8 components")
    if tol <= 0:
        raise ValueError("tol must be positive")

    if states is None:
        states = enumerate_steady_states(op, p)
    if math.isinf(max_step):
        slowest = min(op.d1, op.d2)
        if slowest > 0:
            max_step = MAX_STEP_TIMESCALES / slowest

    ts = [0.0]
    ys = [ic.copy()]
    hs: list[float] = []
    left_domain = False

    if np.max(np.abs(fun(0.0, ic))) < CONV_RHS_TOL:
        # already at rest: "converged at t=0" fast path
        return Trajectory(
            np.array(ts), np.array(ys), np.array(hs), "converged",
            _match_state(ic, states, kind), kind, op,
        )

    solver = RK45(fun, 0.0, ic, t_bound=tmax, rtol=tol, atol=tol * 1e-3,
                  max_step=max_step)
    streak = 0
    event = "max-time"
    while solver.status == "running":
        msg = solver.step()
        if solver.status == "failed":
            raise StiffnessError(
                f"step-size underflow at t={solver.t:.6g} (h={solver.step_size!r});"
                " lower tol or shrink the step floor"
                + (f": {msg}" if msg else "")
            )
        y = solver.y
        undershoot = y < 0.0
        if np.any(undershoot):
            if np.any(y < UNDERSHOOT * (1.0 + np.max(np.abs(y)))):
                # more than round-off: surface it rather than hide it
                left_domain = True
            y = np.where(undershoot, 0.0, y)
            solver.y = y
        if kind == "reduced" and not in_reduced_domain(y, op, p, tol=1e-6):
            left_domain = True
        ts.append(solver.t)
        ys.append(y.copy())
        hs.append(solver.step_size if solver.step_size is not None else 0.0)
        if np.max(np.abs(fun(solver.t, y))) < CONV_RHS_TOL:
            streak += 1
            if streak >= CONV_STREAK:
                event = "converged"
                break
        else:
            streak = 0

    traj = Trajectory(
        np.array(ts), np.array(ys), np.array(hs), event,
        None, kind, op, left_domain,
    )
    if event == "converged":
        traj.matched = _match_state(traj.y[-1], states, kind)
    return traj


def sample_reduced_domain(rng: np.random.Generator, op: OperatingPoint, p: KineticParams):
    """One point uniform in M, by rejection from its bounding box."""
    x1_top = op.s1in / p.k1
    x2_top = (op.s2in + p.k2 * op.s1in / p.k1) / p.k3
    while True:
        x1_1, x1_2 = rng.uniform(0.0, x1_top, size=2)
        x2_1, x2_2 = rng.uniform(0.0, x2_top, size=2)
        if x2_1 <= (op.s2in + p.k2 * x1_1) / p.k3 and x2_2 <= (op.s2in + p.k2 * x1_2) / p.k3:
            return np.array([x1_1, x2_1, x1_2, x2_2])


@dataclass
class BasinReport:
    """Attractor frequencies over sampled initial conditions."""

    counts: dict  # "label#branch" -> count
    unmatched: int
    n: int
    seed: int
    op: OperatingPoint

    @property
    def attractors(self) -> set:
        return set(self.counts)

    def to_record(self) -> dict:
        return {
            "seed": self.seed,
            "n": self.n,
            "counts": dict(sorted(self.counts.items())),
            "unmatched": self.unmatched,
        }


def basin_sample(
    op: OperatingPoint,
    p: KineticParams,
    n: int,
    seed: int,
    tmax: float = DEFAULT_TMAX,
    tol: float = DEFAULT_TOL,
) -> BasinReport:
    """Monte-Carlo basin map: n trajectories from uniform ic in M.

    Per-trajectory RNG streams are spawned from the seed, so the result
    is independent of execution order.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    states = classify_all(enumerate_steady_states(op, p), op, p)
    streams = np.random.SeedSequence(seed).spawn(n)
    counts: dict[str, int] = {}
    unmatched = 0
    for child in streams:
        rng = np.random.default_rng(child)
        ic = sample_reduced_domain(rng, op, p)
        traj = integrate(ic, op, p, tmax=tmax, tol=tol, states=states)
        if traj.matched is None:
            unmatched += 1
            continue
        key = f"{traj.matched[0]}#{traj.matched[1]}"
        counts[key] = counts.get(key, 0) + 1
    return BasinReport(counts, unmatched, n, seed, op)
