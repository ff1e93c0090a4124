"""Operating diagrams: boundary curves and region signatures.

A point of a two-parameter plane is classified by its *signature*: for
each of the fifteen steady-state labels, whether some branch exists and
whether some existing branch is locally stable. Signatures are constant
between the gamma curves, so scanning a grid of cells and merging equal
neighbours reproduces the published diagrams.

Two classification routes exist on purpose:

* :func:`classify_point` runs the full enumeration + stability pipeline
  at one operating point (slow, branch-resolved, boundary-aware);
* :func:`signature_grid` evaluates closed forms of the same conditions
  vectorised over whole grids (fast, used by :func:`scan_plane`).

Tests drive both over random points and require bit-identical codes.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import ndimage

from .kinetics import KineticParams, OperatingPoint, mu1 as _mu1, mu2 as _mu2
from .equilibria import LABELS, enumerate_steady_states
from .stability import BOUNDARY, MARGINAL, STABLE, classify

PLANE_D_S1IN = "d-s1in"
PLANE_S2IN_S1IN = "s2in-s1in"

#: default scan resolution; resolves the thin slivers of the published
#: figures (documented per-figure in regions.py)
DEFAULT_GRID = 600
#: a connected region smaller than this triggers a local 2x refinement
MIN_REGION_CELLS = 4


@dataclass(frozen=True)
class PlaneSpec:
    """A two-parameter window with the remaining parameters fixed.

    kind "d-s1in": x = D, y = S1in, fixed r and S2in.
    kind "s2in-s1in": x = S2in, y = S1in, fixed D and r.
    Cells are sampled at their centres.
    """

    kind: str
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    nx: int = DEFAULT_GRID
    ny: int = DEFAULT_GRID
    r: float = 0.5
    s2in: float | None = None
    d: float | None = None

    def __post_init__(self):
        if self.kind not in (PLANE_D_S1IN, PLANE_S2IN_S1IN):
            raise ValueError(f"unknown plane kind {self.kind!r}")
        if not (self.x_range[1] > self.x_range[0] and self.y_range[1] > self.y_range[0]):
            raise ValueError("ranges must have positive length")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("resolution must be at least 2 per axis")
        if self.kind == PLANE_D_S1IN and self.s2in is None:
            raise ValueError("d-s1in plane needs fixed s2in")
        if self.kind == PLANE_S2IN_S1IN and self.d is None:
            raise ValueError("s2in-s1in plane needs fixed d")

    def x_cells(self) -> np.ndarray:
        dx = (self.x_range[1] - self.x_range[0]) / self.nx
        return self.x_range[0] + dx * (np.arange(self.nx) + 0.5)

    def y_cells(self) -> np.ndarray:
        dy = (self.y_range[1] - self.y_range[0]) / self.ny
        return self.y_range[0] + dy * (np.arange(self.ny) + 0.5)

    def point(self, x: float, y: float) -> OperatingPoint:
        if self.kind == PLANE_D_S1IN:
            return OperatingPoint(d=x, r=self.r, s1in=y, s2in=self.s2in)
        return OperatingPoint(d=self.d, r=self.r, s1in=y, s2in=x)


# ---------------------------------------------------------------------------
# signatures

ABSENT, EXISTS_UNSTABLE, EXISTS_STABLE = "-", "U", "S"


@dataclass(frozen=True)
class RegionSignature:
    """(exists, odd-branch-parity, any-branch-stable) per label.

    The 15-character code collapses each label to '-', 'U' or 'S'; that
    is the granularity of the published region tables. Branch parity is
    odd for every existing multi-root family away from tangencies, so it
    is carried for reporting but does not enter the code.
    """

    entries: tuple  # of (exists, parity_odd, stable)
    on_boundary: bool = False

    @property
    def code(self) -> str:
        return "".join(
            EXISTS_STABLE if st else (EXISTS_UNSTABLE if ex else ABSENT)
            for ex, _parity, st in self.entries
        )

    @property
    def sig_hash(self) -> str:
        return f"{zlib.crc32(self.code.encode()):08x}"

    def stable_labels(self) -> tuple[str, ...]:
        return tuple(l for l, (ex, _p, st) in zip(LABELS, self.entries) if st)

    def existing_labels(self) -> tuple[str, ...]:
        return tuple(l for l, (ex, _p, st) in zip(LABELS, self.entries) if ex)


def code_from_bits(bits: int) -> str:
    chars = []
    for i in range(15):
        ex = bits >> (2 * i) & 1
        st = bits >> (2 * i + 1) & 1
        chars.append(EXISTS_STABLE if st else (EXISTS_UNSTABLE if ex else ABSENT))
    return "".join(chars)


def classify_point(op: OperatingPoint, p: KineticParams) -> RegionSignature:
    """Branch-resolved signature at one operating point.

    Tagged on-boundary when any analytic verdict is Boundary, any
    numeric one Marginal, or any solver branch is a tangency.
    """
    states = enumerate_steady_states(op, p)
    on_boundary = False
    per_label: dict[str, list] = {l: [] for l in LABELS}
    for ss in states:
        per_label[ss.label].append(ss)
        if ss.tangency:
            on_boundary = True
    entries = []
    for label in LABELS:
        existing = [s for s in per_label[label] if s.exists]
        if not existing:
            entries.append((False, False, False))
            continue
        stable_any = False
        for ss in existing:
            v = classify(ss, op, p)
            ss.stability = v
            if v.analytic.status == BOUNDARY or v.numeric.status == MARGINAL:
                on_boundary = True
            if v.analytic.status == STABLE:
                stable_any = True
        entries.append((True, len(existing) % 2 == 1, stable_any))
    return RegionSignature(tuple(entries), on_boundary)


def _lambda2_pair_grid(di, p: KineticParams):
    """Vectorised Haldane break-even pair; (inf, inf) above the peak."""
    feasible = di <= p.mu2_peak
    a = di / p.ki
    b = di - p.m2
    c = di * p.ks2
    disc = np.maximum(b * b - 4.0 * a * c, 0.0)
    root = -b + np.sqrt(disc)
    pos = feasible & (di > 0)
    lo = np.where(pos, 2.0 * c / np.where(root != 0, root, 1.0), np.where(feasible, 0.0, np.inf))
    hi = np.where(pos, root / np.where(a != 0, 2.0 * a, 1.0), np.inf)
    return lo, hi


def _x12_root_grid(s1in, l11, d2, p: KineticParams):
    """Vectorised unique f1=g1 root (reactor-2 species-1 biomass).

    Clearing denominators turns f1 = g1 into the quadratic
    (m1 - D2)*k1*x^2 + (D2*(A + k1*b) - m1*S1in)*x - D2*A*b = 0 with
    A = ks1 + S1in and b = X1^{1*}; the bracketing root is the one with
    the +sqrt branch, evaluated in its cancellation-free form. NaN
    outside the domain S1in > lambda1^1.
    """
    mask = s1in > l11
    b_up = np.where(mask, (s1in - l11) / p.k1, np.nan)
    A = p.ks1 + s1in
    a2 = (p.m1 - d2) * p.k1
    a1 = d2 * (A + p.k1 * b_up) - p.m1 * s1in
    a0 = -d2 * A * b_up
    disc = np.maximum(a1 * a1 - 4.0 * a2 * a0, 0.0)
    sq = np.sqrt(disc)
    q = -0.5 * (a1 + np.where(a1 >= 0, 1.0, -1.0) * sq)
    root = np.where(
        a1 < 0,
        q / np.where(a2 != 0, a2, 1.0),
        a0 / np.where(q != 0, q, 1.0),
    )
    # D2 == m1 collapses the quadratic to a line
    linear = np.abs(a2) < 1e-13 * (1.0 + np.abs(a1))
    if np.any(linear):
        root = np.where(linear, -a0 / np.where(a1 != 0, a1, 1.0), root)
    return np.where(mask, root, np.nan)


def _mu2_grid(s, p: KineticParams):
    return p.m2 * s / (p.ks2 + s + s * s / p.ki)


def signature_bits_grid(d, r: float, s1in, s2in, p: KineticParams) -> np.ndarray:
    """Packed (exists, stable) bits for all 15 labels, vectorised.

    Bit 2i is existence and bit 2i+1 stability of LABELS[i]. The
    conditions are the same rows classify_point applies, written through
    direct growth-rate comparisons; IEEE inf/nan propagate harmlessly
    here because no inf-inf combination can arise (inlet levels are
    finite) and NaN comparisons are falsy like out-of-domain conditions.
    """
    d, s1in, s2in = np.broadcast_arrays(
        np.asarray(d, float), np.asarray(s1in, float), np.asarray(s2in, float)
    )
    r1, r2 = r, 1.0 - r
    with np.errstate(all="ignore"):
        d1 = d / r1
        d2 = d / r2
        l11 = np.where(d1 < p.m1, p.ks1 * d1 / np.where(d1 < p.m1, p.m1 - d1, 1.0), np.inf)
        l12 = np.where(d2 < p.m1, p.ks1 * d2 / np.where(d2 < p.m1, p.m1 - d2, 1.0), np.inf)
        l2_11, l2_12 = _lambda2_pair_grid(d1, p)
        l2_21, l2_22 = _lambda2_pair_grid(d2, p)
        kk = p.k1 / p.k2
        f11 = l11 + kk * (l2_11 - s2in)
        f12 = l11 + kk * (l2_12 - s2in)
        f21 = l12 + kk * (l2_21 - s2in)
        f22 = l12 + kk * (l2_22 - s2in)
        x12 = _x12_root_grid(s1in, l11, d2, p)
        v = s2in + p.k2 * x12
        phi1 = v - l2_21
        phi2 = v - l2_22

        mu1_s1 = p.m1 * s1in / (p.ks1 + s1in)
        mu2_s2 = _mu2_grid(s2in, p)
        mu2_w1 = _mu2_grid(s2in + (p.k2 / p.k1) * (s1in - l11), p)
        mu2_w2 = _mu2_grid(s2in + (p.k2 / p.k1) * (s1in - l12), p)
        mu2_v = _mu2_grid(v, p)

        above_l11 = s1in > l11
        above_l12 = s1in > l12
        true_grid = np.ones(d.shape, bool)

        ex = [
            true_grid,                              # E00^00
            s2in > l2_21,                           # E00^01
            s2in > l2_22,                           # E00^02
            above_l12,                              # E00^10
            above_l12 & (s1in > f21),               # E00^11
            above_l12 & (s1in > f22),               # E00^12
            above_l11,                              # E10^10
            above_l11 & (phi1 > 0),                 # E10^11
            above_l11 & (phi2 > 0),                 # E10^12
            s2in > l2_11,                           # E01^01
            s2in > l2_12,                           # E02^01
            above_l12 & (s2in > l2_11),             # E01^11
            above_l12 & (s2in > l2_12),             # E02^11
            above_l11 & (s1in > f11),               # E11^11
            above_l11 & (s1in > f12),               # E12^11
        ]
        washout1 = mu1_s1 < d1       # S1in < lambda1^1
        washout2 = mu1_s1 < d2       # S1in < lambda1^2
        out1 = mu2_s2 < d1           # S2in outside the stage-1 pair
        out2 = mu2_s2 < d2
        false_grid = np.zeros(d.shape, bool)
        st = [
            washout1 & washout2 & out1 & out2,      # E00^00
            washout1 & washout2 & out1,             # E00^01
            false_grid,                             # E00^02
            washout1 & out1 & (mu2_w2 < d2),        # E00^10
            washout1 & out1,                        # E00^11
            false_grid,                             # E00^12
            (mu2_w1 < d1) & (mu2_v < d2),           # E10^10
            mu2_w1 < d1,                            # E10^11
            false_grid,                             # E10^12
            washout1 & washout2,                    # E01^01
            false_grid,                             # E02^01
            washout1,                               # E01^11, first branch
            false_grid,                             # E02^11
            true_grid,                              # E11^11, first branch
            false_grid,                             # E12^11
        ]
    bits = np.zeros(d.shape, np.int64)
    for i in range(15):
        bits |= ex[i].astype(np.int64) << (2 * i)
        bits |= (ex[i] & st[i]).astype(np.int64) << (2 * i + 1)
    return bits


def signature_grid(plane: PlaneSpec, p: KineticParams, jobs: int = 1) -> np.ndarray:
    """Signature bits over the plane's cell centres, shape (ny, nx)."""
    xs = plane.x_cells()
    ys = plane.y_cells()
    if plane.kind == PLANE_D_S1IN:
        dv, s2v = xs[None, :], plane.s2in
    else:
        dv, s2v = plane.d, xs[None, :]

    def run(rows):
        return signature_bits_grid(dv, plane.r, ys[rows, None], s2v, p)

    if jobs <= 1:
        return signature_bits_grid(dv, plane.r, ys[:, None], s2v, p)
    chunks = np.array_split(np.arange(plane.ny), jobs * 4)
    out = np.empty((plane.ny, plane.nx), np.int64)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for rows, res in zip(chunks, pool.map(run, chunks)):
            out[rows] = res
    return out


def boundary_mask(sig: np.ndarray) -> np.ndarray:
    """Cells with a 4-neighbour of different signature."""
    b = np.zeros(sig.shape, bool)
    dx = sig[:, 1:] != sig[:, :-1]
    b[:, 1:] |= dx
    b[:, :-1] |= dx
    dy = sig[1:, :] != sig[:-1, :]
    b[1:, :] |= dy
    b[:-1, :] |= dy
    return b


@dataclass
class ExtractedRegion:
    region_id: int
    code: str
    n_cells: int
    seed_cell: tuple[int, int]  # (iy, ix) of a representative cell
    interior_cells: int
    accepted: bool = True
    j_label: str | None = None
    color: str | None = None


@dataclass
class ScanResult:
    plane: PlaneSpec
    p: KineticParams
    bits: np.ndarray            # (ny, nx) packed signature bits
    boundary: np.ndarray        # (ny, nx) bool
    codes: dict                 # bits value -> 15-char code
    regions: list
    distinct_codes: tuple       # codes present on non-boundary cells

    @property
    def distinct_count(self) -> int:
        return len(self.distinct_codes)

    def signature_at_cell(self, iy: int, ix: int) -> str:
        return self.codes[int(self.bits[iy, ix])]


def _refine_region(plane, p, cells, value, depth: int = 3) -> bool:
    """Re-sample a component's padded bbox at doubled resolution.

    The component is genuine when, at some refinement level, its
    signature owns interior cells (bbox-edge cells cannot vouch for
    interiority and are ignored); it is noise when it vanishes. Slivers
    still too thin to decide recurse, doubling again up to `depth`
    times, on the bbox of the surviving cells.
    """
    ys, xs = cells
    y0, y1 = int(ys.min()), int(ys.max()) + 1
    x0, x1 = int(xs.min()), int(xs.max()) + 1
    pad = 4
    y0, x0 = max(y0 - pad, 0), max(x0 - pad, 0)
    y1, x1 = min(y1 + pad, plane.ny), min(x1 + pad, plane.nx)
    dx = (plane.x_range[1] - plane.x_range[0]) / plane.nx
    dy = (plane.y_range[1] - plane.y_range[0]) / plane.ny
    sub = PlaneSpec(
        kind=plane.kind,
        x_range=(plane.x_range[0] + x0 * dx, plane.x_range[0] + x1 * dx),
        y_range=(plane.y_range[0] + y0 * dy, plane.y_range[0] + y1 * dy),
        nx=min(2 * (x1 - x0), 1200),
        ny=min(2 * (y1 - y0), 1200),
        r=plane.r,
        s2in=plane.s2in,
        d=plane.d,
    )
    bits = signature_grid(sub, p)
    hit = bits == value
    if not np.any(hit):
        return False
    inner = ~boundary_mask(bits)
    inner[0, :] = inner[-1, :] = False
    inner[:, 0] = inner[:, -1] = False
    if bool(np.any(inner & hit)) and int(hit.sum()) >= MIN_REGION_CELLS:
        return True
    if depth <= 0:
        return False
    return _refine_region(sub, p, np.nonzero(hit), value, depth - 1)


def scan_plane(plane: PlaneSpec, p: KineticParams, jobs: int = 1,
               refine: bool = True) -> ScanResult:
    """Classify the whole plane and extract its regions.

    Regions are 4-connected components of equal signature. Cells next to
    a signature change are boundary cells; a component made only of
    boundary cells (thin slivers, specks) is accepted only if the 2x
    local refinement confirms it persists with interior cells, which
    separates genuine sub-resolution regions from noise. The distinct
    signature count is over accepted regions.
    """
    bits = signature_grid(plane, p, jobs=jobs)
    bnd = boundary_mask(bits)
    values = np.unique(bits)
    codes = {int(v): code_from_bits(int(v)) for v in values}

    regions: list[ExtractedRegion] = []
    rid = 0
    for v in values:
        lab, nlab = ndimage.label(bits == v)
        for comp in range(1, nlab + 1):
            mask = lab == comp
            cells = np.nonzero(mask)
            n = cells[0].size
            inner = np.nonzero(mask & ~bnd)
            interior = inner[0].size
            # representative cell: interior if the component has one
            if interior:
                seed = (int(inner[0][0]), int(inner[1][0]))
            else:
                seed = (int(cells[0][0]), int(cells[1][0]))
            if interior and n >= MIN_REGION_CELLS:
                accepted = True
            elif refine:
                accepted = _refine_region(plane, p, cells, v)
            else:
                accepted = False
            regions.append(
                ExtractedRegion(
                    region_id=rid,
                    code=codes[int(v)],
                    n_cells=int(n),
                    seed_cell=seed,
                    interior_cells=int(interior),
                    accepted=accepted,
                )
            )
            rid += 1
    distinct = tuple(sorted({reg.code for reg in regions if reg.accepted}))
    return ScanResult(plane, p, bits, bnd, codes, regions, distinct)


# ---------------------------------------------------------------------------
# gamma curves

@dataclass
class GammaCurve:
    gid: int
    plane: PlaneSpec
    segments: list  # list of (n, 2) arrays in plane coordinates

    @property
    def empty(self) -> bool:
        return all(len(s) == 0 for s in self.segments)

    def points(self) -> np.ndarray:
        parts = [s for s in self.segments if len(s)]
        return np.vstack(parts) if parts else np.zeros((0, 2))


def _lambda1_scalar(di, p):
    return p.ks1 * di / (p.m1 - di) if di < p.m1 else math.inf


def _curve_of_d(plane, fn, d_hi, n):
    """Graph segment (D, fn(D)) over the plane's x-range up to d_hi."""
    lo = max(plane.x_range[0], 1e-12)
    hi = min(plane.x_range[1], d_hi * (1 - 1e-12))
    if hi <= lo:
        return []
    ds = np.linspace(lo, hi, n)
    ys = np.array([fn(float(x)) for x in ds])
    keep = np.isfinite(ys)
    return [np.column_stack([ds[keep], ys[keep]])] if np.any(keep) else []


def _vline(plane, x):
    if x is None or not math.isfinite(x):
        return []
    ys = np.linspace(plane.y_range[0], plane.y_range[1], 2)
    return [np.column_stack([np.full(2, x), ys])]


def _hline(plane, y):
    if y is None or not math.isfinite(y):
        return []
    xs = np.linspace(plane.x_range[0], plane.x_range[1], 2)
    return [np.column_stack([xs, np.full(2, y)])]


def _phi_of_d(dv, y, r, s2in, p, j):
    """Closed-form phi_j(D) at fixed S1in = y (nan where undefined)."""
    d1 = dv / r
    d2 = dv / (1.0 - r)
    if d1 >= p.m1:
        return math.nan
    l11 = p.ks1 * d1 / (p.m1 - d1)
    if y <= l11:
        return math.nan
    lo, hi = _lambda2_pair_grid(np.asarray(d2), p)
    l2 = float(lo if j == 1 else hi)
    if math.isinf(l2):
        return math.nan
    x12 = float(_x12_root_grid(np.asarray(y, float), np.asarray(l11), d2, p))
    return s2in + p.k2 * x12 - l2


def _phi_locus_d_plane(plane, p, j, n):
    """phi_j = 0 in the (D, S1in) plane: D-roots per sampled S1in.

    phi_j is steep in D (it tracks lambda2^{2j}), so the bracket is
    pushed to near machine width to meet the on-curve residual.
    """
    r = plane.r
    d_cap = min((1 - r) * p.mu2_peak, r * p.m1, plane.x_range[1])
    pts = []
    with np.errstate(all="ignore"):
        for y in np.linspace(plane.y_range[0], plane.y_range[1], n):
            if y <= 0:
                continue
            # S1in > lambda1^1(D) caps D at r*mu1(S1in)
            d_top = min(d_cap, r * float(_mu1(y, p)))
            if d_top <= 1e-9:
                continue
            ds = np.linspace(1e-6, d_top * (1 - 1e-9), 96)
            vals = [_phi_of_d(float(dv), float(y), r, plane.s2in, p, j) for dv in ds]
            for i in range(len(ds) - 1):
                a, b = vals[i], vals[i + 1]
                if not (np.isfinite(a) and np.isfinite(b)) or a * b > 0:
                    continue
                lo, hi, flo = float(ds[i]), float(ds[i + 1]), a
                while hi - lo > 1e-14:
                    mid = 0.5 * (lo + hi)
                    fm = _phi_of_d(mid, float(y), r, plane.s2in, p, j)
                    if not math.isfinite(fm):
                        hi = mid
                        continue
                    if (flo < 0) != (fm < 0):
                        hi = mid
                    else:
                        lo, flo = mid, fm
                pts.append((0.5 * (lo + hi), y))
    return [np.array(pts)] if pts else []


def _phi_locus_s2in_plane(plane, p, j, n):
    """phi_j = 0 in the (S2in, S1in) plane: explicit x(y) curve."""
    from .kinetics import lambda1, lambda2_pair

    d, r = plane.d, plane.r
    l11 = lambda1(d, r, 1, p)
    l2 = lambda2_pair(d, r, 2, p)[j - 1]
    if math.isinf(l11) or math.isinf(l2):
        return []
    ys = np.linspace(max(plane.y_range[0], l11 * (1 + 1e-9)), plane.y_range[1], n)
    ys = ys[ys > l11]
    if ys.size == 0:
        return []
    x12 = _x12_root_grid(ys, l11, d / (1 - r), p)
    xs = l2 - p.k2 * x12
    keep = np.isfinite(xs)
    return [np.column_stack([xs[keep], ys[keep]])] if np.any(keep) else []


def gamma_sample(gid: int, plane: PlaneSpec, p: KineticParams, n: int = 512) -> GammaCurve:
    """Sample curve gamma_i in the given plane.

    Verticals/horizontals come out as two-point segments; curves whose
    domain is empty under the fixed parameters come out empty.
    """
    if not 0 <= gid <= 15:
        raise ValueError(f"unknown gamma curve id {gid}")
    r = plane.r
    r1, r2 = r, 1.0 - r
    kk = p.k1 / p.k2
    if plane.kind == PLANE_D_S1IN:
        s2in = plane.s2in
        from .kinetics import lambda1, lambda2_pair

        if gid == 0:
            segs = _curve_of_d(plane, lambda dv: _lambda1_scalar(dv / r1, p), r1 * p.m1, n)
        elif gid == 1:
            segs = _curve_of_d(plane, lambda dv: _lambda1_scalar(dv / r2, p), r2 * p.m1, n)
        elif gid in (2, 3):
            i = gid - 2

            def f2j(dv):
                l2 = lambda2_pair(dv, r, 2, p)[i]
                l1 = _lambda1_scalar(dv / r2, p)
                return l1 + kk * (l2 - s2in) if math.isfinite(l1 + l2) else math.nan

            segs = _curve_of_d(plane, f2j, r2 * min(p.m1, p.mu2_peak), n)
        elif gid in (4, 5):
            i = gid - 4

            def f1j(dv):
                l2 = lambda2_pair(dv, r, 1, p)[i]
                l1 = _lambda1_scalar(dv / r1, p)
                return l1 + kk * (l2 - s2in) if math.isfinite(l1 + l2) else math.nan

            segs = _curve_of_d(plane, f1j, r1 * min(p.m1, p.mu2_peak), n)
        elif gid == 6:
            segs = _vline(plane, r1 * float(_mu2(s2in, p)))
        elif gid == 7:
            segs = _vline(plane, r2 * float(_mu2(s2in, p)))
        elif gid == 8:
            segs = _vline(plane, r1 * p.mu2_peak)
        elif gid == 9:
            segs = _vline(plane, r2 * p.mu2_peak)
        elif gid in (10, 11, 12, 13):
            # S2in = lambda2 branch at fixed S2in: the branch must reach it
            stage_r = r1 if gid in (10, 12) else r2
            want_low = gid in (10, 11)
            reachable = (s2in < p.s2_peak) if want_low else (s2in > p.s2_peak)
            segs = _vline(plane, stage_r * float(_mu2(s2in, p))) if reachable else []
        elif gid in (14, 15):
            segs = _phi_locus_d_plane(plane, p, gid - 13, max(n // 2, 64))
    else:
        from .kinetics import lambda1, lambda2_pair

        d = plane.d
        l11 = lambda1(d, r, 1, p)
        l12 = lambda1(d, r, 2, p)
        l2_1 = lambda2_pair(d, r, 1, p)
        l2_2 = lambda2_pair(d, r, 2, p)
        if gid == 0:
            segs = _hline(plane, None if math.isinf(l11) else l11)
        elif gid == 1:
            segs = _hline(plane, None if math.isinf(l12) else l12)
        elif gid in (2, 3, 4, 5):
            l1 = l12 if gid in (2, 3) else l11
            l2 = {2: l2_2[0], 3: l2_2[1], 4: l2_1[0], 5: l2_1[1]}[gid]
            if math.isinf(l1) or math.isinf(l2):
                segs = []
            else:
                xs = np.linspace(plane.x_range[0], plane.x_range[1], n)
                segs = [np.column_stack([xs, l1 + kk * (l2 - xs)])]
        elif gid == 6:
            segs = _vline(plane, None if math.isinf(l2_1[0]) else l2_1[0]) + _vline(
                plane, None if math.isinf(l2_1[1]) else l2_1[1]
            )
        elif gid == 7:
            segs = _vline(plane, None if math.isinf(l2_2[0]) else l2_2[0]) + _vline(
                plane, None if math.isinf(l2_2[1]) else l2_2[1]
            )
        elif gid in (8, 9):
            segs = []  # D is fixed: the condition D = D_i^m is measure zero
        elif gid in (10, 11, 12, 13):
            val = {10: l2_1[0], 11: l2_2[0], 12: l2_1[1], 13: l2_2[1]}[gid]
            segs = _vline(plane, None if math.isinf(val) else val)
        elif gid in (14, 15):
            segs = _phi_locus_s2in_plane(plane, p, gid - 13, n)
    return GammaCurve(gid, plane, segs)
