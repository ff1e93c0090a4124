"""Golden region data for the published operating diagrams.

REGION_ROWS holds, for each region J0..J69, the 15-column
existence/stability pattern over the labels in canonical order
('-' absent, 'U' unstable, 'S' stable) and the display color. FIGURES
holds the five published parameter planes with their window, fixed
parameters and the region ids they are known to contain.

The inequality definitions of the regions (conditions on S1in, S2in, D
against the break-even combinations) are encoded in the three condition
tables below and exposed through :func:`locate_region`. Two editorial
notes: the region-condition source prints one D-domain with "r2*m2"
(read here as r2*m1) and one chained inequality "S24* < S2in < S24*"
(read here as S22* < S2in < S24*); both are evident misprints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import SimpleNamespace

from .kinetics import INF, KineticParams, OperatingPoint, PRESETS, lambda1, lambda2_pair, mu2
from .equilibria import LABELS, aux_values
from .diagram import (
    PLANE_D_S1IN,
    PLANE_S2IN_S1IN,
    PlaneSpec,
    ScanResult,
)

#: J-id -> (15-char pattern over LABELS, color)
REGION_ROWS: dict[int, tuple[str, str]] = {
    0: ("S--------------", "cyan"),
    1: ("U--S-----------", "grey"),
    2: ("UUUSSU---------", "pink"),
    3: ("SSU------------", "plum"),
    4: ("US-------------", "yellow"),
    5: ("UU-US----------", "blue"),
    6: ("UU-UU-US-------", "tan"),
    7: ("UU-UU-SSU------", "white"),
    8: ("UU-SSU---------", "pink"),
    9: ("UU-UUUSSU------", "white"),
    10: ("UU-UUUSSUUUUUSU", "magenta"),
    11: ("UU-UU-SSUUUUUSU", "magenta"),
    12: ("UU-UU-US-UUUUSU", "wheat"),
    13: ("UU-US----UUSU--", "gold"),
    14: ("US-------SU----", "turquoise"),
    15: ("UU-------S-----", "sienna"),
    16: ("UU-UU----U-S---", "green"),
    17: ("UU-UU-UU-U-U-S-", "red"),
    18: ("UU-UU-US-U-U-SU", "wheat"),
    19: ("UU-UU-SSUU-U-SU", "magenta"),
    20: ("UU-UUUSSUU-U-SU", "magenta"),
    21: ("UU-UU-UUUU-U-S-", "red"),
    22: ("UU-UUUUUUU-U-S-", "red"),
    23: ("UU-UUU---U-S---", "green"),
    24: ("UU-SSU---UUSU--", "brown"),
    25: ("U--US----------", "blue"),
    26: ("U--SSU---------", "pink"),
    27: ("UU-UUUSSU----SU", "magenta"),
    28: ("UU-UU-SSU-U-USU", "magenta"),
    29: ("UU-UU-US-----SU", "wheat"),
    30: ("UU-UU-UU-----S-", "red"),
    31: ("UU-UU-SS-------", "white"),
    32: ("U-----S--------", "violet"),
    33: ("U-----S--UU--SU", "navy"),
    34: ("S--------SU----", "khaki"),
    35: ("U--------S-----", "sienna"),
    36: ("U-----U--U---S-", "red"),
    37: ("U--UUUU--U-U-S-", "red"),
    38: ("U-----S--U---SU", "navy"),
    39: ("U--UUUS--U-U-SU", "navy"),
    40: ("UUUUUUSSUU-U-SU", "magenta"),
    41: ("UUUUUUUUUU-U-S-", "red"),
    42: ("UUU---UUUU---S-", "red"),
    43: ("UUU------S-----", "sienna"),
    44: ("UU----UU-U---S-", "red"),
    45: ("UU----UUUU---S-", "red"),
    46: ("UU-UU-UU-U-U-S-", "red"),
    47: ("SSU------SU----", "black"),
    48: ("UUUUSU---UUSU--", "gold"),
    49: ("UUUUUUSSUUUUUSU", "magenta"),
    50: ("UU-UUUSSUUUUUSU", "magenta"),
    51: ("UU-UU-SSUUUUUSU", "magenta"),
    52: ("UU-UU-US-UUUUSU", "wheat"),
    53: ("UU-SSU---UUSU--", "coral"),
    54: ("UU-US----UUSU--", "gold"),
    55: ("US-------SU----", "turquoise"),
    56: ("UU-UU----U-S---", "green"),
    57: ("UU-UU-US-U-U-SU", "wheat"),
    58: ("UU-UU-SSUU-U-SU", "magenta"),
    59: ("UU-UUUSSUU-U-SU", "magenta"),
    60: ("UU-UU-SSU----SU", "magenta"),
    61: ("UU-UU-US-----SU", "wheat"),
    62: ("UU-UU-UU-----S-", "red"),
    63: ("UU-UU-US-------", "tan"),
    64: ("U--US----------", "blue"),
    65: ("U--UU-US-------", "tan"),
    66: ("U--UU-UU-----S-", "red"),
    67: ("U--UU-US-----SU", "wheat"),
    68: ("U--UU-SSU----SU", "magenta"),
    69: ("U--UUUSSU----SU", "magenta"),
}

#: Rows whose printed pattern contradicts the model's own existence and
#: stability conditions; the corrected pattern is what the equations
#: produce on the region's zone (verified against eigenvalue signs).
#:   J28: lies at D > D1* with S2in < S2^m, where S2in sits below the
#:        stage-1 break-even pair, so no E0i^01/E0i^11 state exists
#:        there; the print marks E02^01/E02^11 as existing.
#:   J31: E10^11 present forces phi1 > 0, and E10^12 absent forces
#:        phi2 <= 0, which together pin S2in + k2*X1^{2*} inside the
#:        stage-2 pair, so E10^10 cannot be stable as printed. Its
#:        corrected pattern coincides with J6.
#:   J37, J39: sit at D > D2^m where the stage-2 pair is undefined, so
#:        E00^11/E00^12 (printed as existing) cannot exist.
#:   J48: its zone has S2in > lambda2^{22} and S1in > lambda1^2, so the
#:        E00^10 stability argument S2in + (k2/k1)(S1in - lambda1^2)
#:        exceeds lambda2^{22} and the state is stable, not U as printed.
ROW_CORRECTIONS: dict[int, str] = {
    28: "UU-UU-SSU----SU",
    31: "UU-UU-US-------",
    37: "U--U--U--U-U-S-",
    39: "U--U--S--U-U-SU",
    48: "UUUSSU---UUSU--",
}


def region_row(jid: int, corrected: bool = True) -> str:
    if corrected and jid in ROW_CORRECTIONS:
        return ROW_CORRECTIONS[jid]
    return REGION_ROWS[jid][0]


def region_color(jid: int) -> str:
    return REGION_ROWS[jid][1]


@dataclass(frozen=True)
class FigurePreset:
    """One published operating-diagram plane."""

    name: str
    preset: str  # kinetic preset name
    kind: str
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    r: float
    s2in: float | None = None
    d: float | None = None
    region_ids: tuple[int, ...] = ()
    table: str = "do123"
    note: str = ""

    def plane(self, nx: int = 600, ny: int = 600) -> PlaneSpec:
        return PlaneSpec(
            kind=self.kind,
            x_range=self.x_range,
            y_range=self.y_range,
            nx=nx,
            ny=ny,
            r=self.r,
            s2in=self.s2in,
            d=self.d,
        )

    def params(self) -> KineticParams:
        return PRESETS[self.preset]

    @property
    def expected_count(self) -> int:
        return len(self.region_ids)


FIGURES: dict[str, FigurePreset] = {
    # (D, S1in) plane, r = 1/3, S2in = 150 > S2^m, m1 = 0.6
    "fig3": FigurePreset(
        name="fig3",
        preset="bernard2001",
        kind=PLANE_D_S1IN,
        x_range=(0.0, 0.6),
        y_range=(0.0, 300.0),
        r=1.0 / 3.0,
        s2in=150.0,
        region_ids=tuple(range(21)),
    ),
    # same plane with m1 = 0.3 (growth cap below mu2 levels); the window
    # is taller and stops past D2^m because the J19-J22 slivers live
    # above S1in = 300 and pinch to sub-cell width near D = r1*m1
    "fig4": FigurePreset(
        name="fig4",
        preset="bernard2001-lowm1",
        kind=PLANE_D_S1IN,
        x_range=(0.0, 0.42),
        y_range=(0.0, 520.0),
        r=1.0 / 3.0,
        s2in=150.0,
        region_ids=(0, 3, 4, 5, 8) + tuple(range(13, 25)),
    ),
    # S2in = 10 < S2^m
    "fig5": FigurePreset(
        name="fig5",
        preset="bernard2001",
        kind=PLANE_D_S1IN,
        x_range=(0.0, 0.6),
        y_range=(0.0, 300.0),
        r=1.0 / 3.0,
        s2in=10.0,
        region_ids=(0, 1) + tuple(range(4, 10)) + tuple(range(15, 21)) + tuple(range(25, 32)),
    ),
    # reactor-1 fraction above one half
    "fig6": FigurePreset(
        name="fig6",
        preset="bernard2001",
        kind=PLANE_D_S1IN,
        x_range=(0.0, 0.6),
        y_range=(0.0, 300.0),
        r=0.7,
        s2in=150.0,
        region_ids=(0, 15, 20, 21, 22) + tuple(range(32, 47)),
        table="do4",
    ),
    # (S2in, S1in) plane at fixed D and r
    "fig7": FigurePreset(
        name="fig7",
        preset="bernard2001",
        kind=PLANE_S2IN_S1IN,
        x_range=(0.0, 700.0),
        y_range=(0.0, 300.0),
        r=0.3,
        d=0.17,
        region_ids=(0, 1, 4, 5, 15, 27) + tuple(range(46, 70)),
        table="do5",
        note=(
            "as published; D = 0.17 exceeds D1^m = r*mu2(S2^m) ~ 0.1608 at "
            "r = 0.3, outside the stage-1 break-even domain, so the stage-1 "
            "splittings that generate most of these regions cannot occur"
        ),
    ),
    # same plane with D inside the stage-1 break-even domain; this is the
    # window on which all thirty region patterns are realisable
    "fig7-valid": FigurePreset(
        name="fig7-valid",
        preset="bernard2001",
        kind=PLANE_S2IN_S1IN,
        x_range=(0.0, 700.0),
        y_range=(0.0, 300.0),
        r=0.3,
        d=0.15,
        region_ids=(0, 1, 4, 5, 15, 27) + tuple(range(46, 70)),
        table="do5",
    ),
}


def _ctx(op: OperatingPoint, p: KineticParams) -> SimpleNamespace:
    """All quantities the region-condition rows compare against."""
    av = aux_values(op, p)

    def val(x):
        return INF if x is None else x

    return SimpleNamespace(
        d=op.d,
        s1in=op.s1in,
        s2in=op.s2in,
        l11=lambda1(op.d, op.r, 1, p),
        l12=lambda1(op.d, op.r, 2, p),
        l2_11=lambda2_pair(op.d, op.r, 1, p)[0],
        l2_12=lambda2_pair(op.d, op.r, 1, p)[1],
        l2_21=lambda2_pair(op.d, op.r, 2, p)[0],
        l2_22=lambda2_pair(op.d, op.r, 2, p)[1],
        f11=val(av.f11),
        f12=val(av.f12),
        f21=val(av.f21),
        f22=val(av.f22),
        phi2=av.phi2,
        r1m1=op.r1 * p.m1,
        r2m1=op.r2 * p.m1,
        d1m=op.r1 * p.mu2_peak,
        d2m=op.r2 * p.mu2_peak,
        d1s=op.r1 * mu2(op.s2in, p),
        d2s=op.r2 * mu2(op.s2in, p),
        s2m=p.s2_peak,
    )


def _phi2_neg(c):
    return c.phi2 is not None and c.phi2 < 0


def _phi2_pos(c):
    return c.phi2 is not None and c.phi2 > 0


def _in(x, lo, hi):
    return lo < x < hi


# Each row: (jid, predicate(ctx)). The D-interval and the S1in/phi
# conditions of the corresponding appendix row are both inside the
# predicate. Rows are grouped per figure family.

_DO123_ROWS = [
    # any S2in
    (6, lambda c: _in(c.s1in, c.l11, c.f22) and _phi2_neg(c)
        and _in(c.d, c.d1m, min(c.r1m1, c.d2m))),
    (7, lambda c: _in(c.s1in, c.l11, c.f22) and _phi2_pos(c)
        and _in(c.d, c.d1m, min(c.r1m1, c.d2m))),
    (8, lambda c: _in(c.s1in, c.f22, c.l11)
        and _in(c.d, c.d1m, min(c.r2m1, c.d2s, c.d2m))),
    (9, lambda c: c.s1in > max(c.l11, c.f22)
        and _in(c.d, c.d1m, min(c.r1m1, c.r2m1, c.d2m))),
    (15, lambda c: c.s1in < c.l12 and _in(c.d, 0.0, c.d1s)),
    (16, lambda c: _in(c.s1in, c.l12, c.l11)
        and _in(c.d, 0.0, min(c.r2m1, c.d1s))),
    (17, lambda c: _in(c.s1in, c.l11, min(c.f12, c.f22)) and _phi2_neg(c)
        and _in(c.d, 0.0, min(c.r1m1, c.d1s, c.d2m))),
    (18, lambda c: _in(c.s1in, c.f12, c.f22) and _phi2_neg(c)
        and _in(c.d, 0.0, min(c.r1m1, c.d1s, c.d1m, c.d2m))),
    (19, lambda c: _in(c.s1in, c.f12, c.f22) and _phi2_pos(c)
        and _in(c.d, 0.0, min(c.r1m1, c.d1s, c.d1m, c.d2m))),
    (20, lambda c: c.s1in > max(c.f12, c.f22)
        and _in(c.d, 0.0, min(c.r1m1, c.r2m1, c.d1s, c.d1m, c.d2m))),
    # S2in above the Haldane peak
    (0, lambda c: c.s2in > c.s2m and c.s1in < c.l12 and c.d > c.d2m),
    (1, lambda c: c.s2in > c.s2m and c.s1in >= c.l12 and c.d > c.d2m),
    (2, lambda c: c.s2in > c.s2m and c.s1in >= c.l12 and _in(c.d, c.d2s, c.d2m)),
    (3, lambda c: c.s2in > c.s2m and c.s1in < c.l12 and _in(c.d, c.d2s, c.d2m)),
    (4, lambda c: c.s2in > c.s2m and c.s1in < c.l12 and _in(c.d, c.d1m, c.d2s)),
    (5, lambda c: c.s2in > c.s2m and _in(c.s1in, c.l12, min(c.l11, c.f22))
        and _in(c.d, c.d1m, c.r1m1)),
    (10, lambda c: c.s2in > c.s2m and c.s1in > c.f22
        and _in(c.d, c.d1s, min(c.r2m1, c.d1m, c.d2m))),
    (11, lambda c: c.s2in > c.s2m and _in(c.s1in, c.l11, c.f22) and _phi2_pos(c)
        and _in(c.d, c.d1s, min(c.r1m1, c.d1m, c.d2m))),
    (12, lambda c: c.s2in > c.s2m and _in(c.s1in, c.l11, c.f22) and _phi2_neg(c)
        and _in(c.d, c.d1s, min(c.r1m1, c.d1m, c.d2m))),
    (13, lambda c: c.s2in > c.s2m and _in(c.s1in, c.l12, max(c.l11, c.f22))
        and _in(c.d, c.d1s, min(c.r2m1, c.d1m))),
    (14, lambda c: c.s2in > c.s2m and c.s1in < c.l12 and _in(c.d, c.d1s, c.d1m)),
    (21, lambda c: c.s2in > c.s2m and _in(c.s1in, max(c.l11, c.l12), min(c.f12, c.f22))
        and _phi2_pos(c) and _in(c.d, 0.0, min(c.r1m1, c.r2m1, c.d2m))),
    (22, lambda c: c.s2in > c.s2m and _in(c.s1in, max(c.l11, c.f22), c.f12)
        and _in(c.d, 0.0, min(c.r1m1, c.r2m1, c.d2m))),
    (23, lambda c: c.s2in > c.s2m and _in(c.s1in, c.f22, c.l11)
        and _in(c.d, 0.0, min(c.r2m1, c.d1s, c.d2m))),
    (24, lambda c: c.s2in > c.s2m and c.s1in > c.f22
        and _in(c.d, c.d1s, min(c.r2m1, c.d1m, c.d2m))),
    # S2in below the Haldane peak
    (0, lambda c: c.s2in < c.s2m and c.s1in < c.l12 and c.d > c.d2s),
    (1, lambda c: c.s2in < c.s2m
        and ((_in(c.s1in, c.l12, c.f21) and _in(c.d, c.d2s, c.d2m))
             or (c.s1in >= c.l12 and c.d > c.d2m))),
    (25, lambda c: c.s2in < c.s2m and _in(c.s1in, c.f21, c.f22)
        and _in(c.d, c.d2s, min(c.r2m1, c.d2m))),
    (26, lambda c: c.s2in < c.s2m and c.s1in > c.f22
        and _in(c.d, c.d2s, min(c.r2m1, c.d2m))),
    (27, lambda c: c.s2in < c.s2m and c.s1in > c.f22
        and _in(c.d, c.d1s, min(c.r2m1, c.d1m, c.d2m))),
    (28, lambda c: c.s2in < c.s2m and _in(c.s1in, c.f12, c.f22) and _phi2_pos(c)
        and _in(c.d, c.d1s, min(c.r1m1, c.d1m))),
    (29, lambda c: c.s2in < c.s2m and _in(c.s1in, c.f12, c.f22) and _phi2_neg(c)
        and _in(c.d, c.d1s, min(c.r1m1, c.d1m))),
    (30, lambda c: c.s2in < c.s2m and _in(c.s1in, c.f11, c.f12)
        and _in(c.d, c.d1s, min(c.r1m1, c.d1m))),
    (31, lambda c: c.s2in < c.s2m and _in(c.s1in, c.l11, c.f11)
        and _in(c.d, c.d1s, min(c.r1m1, c.d1m))),
    (5, lambda c: c.s2in < c.s2m and _in(c.s1in, c.l12, min(c.l11, c.f22))
        and _in(c.d, c.d1s, min(c.r2m1, c.d2s))),
    (4, lambda c: c.s2in < c.s2m and c.s1in < c.l12 and _in(c.d, c.d1s, c.d2s)),
]

_DO4_ROWS = [
    (0, lambda c: c.s1in < c.l11 and c.d > c.d1m),
    (32, lambda c: c.s1in >= c.l11 and _in(c.d, c.d1m, c.r1m1)),
    (33, lambda c: c.s1in >= c.l11 and _in(c.d, c.d1s, min(c.r1m1, c.d1m))),
    (34, lambda c: c.s1in < c.l11 and _in(c.d, c.d1s, c.d1m)),
    (35, lambda c: c.s1in < c.l11 and _in(c.d, c.d2m, c.d1s)),
    (36, lambda c: _in(c.s1in, c.l11, min(c.l12, c.f12)) and _in(c.d, c.d2m, c.r1m1)),
    (37, lambda c: _in(c.s1in, c.l12, c.f12) and _in(c.d, c.d2m, c.r2m1)),
    (38, lambda c: _in(c.s1in, c.f12, c.l12) and _in(c.d, 0.0, min(c.r1m1, c.d1s, c.d1m))),
    (39, lambda c: c.s1in > max(c.l12, c.f12)
        and _in(c.d, c.d2m, min(c.r1m1, c.r2m1, c.d1m))),
    (40, lambda c: c.s1in > c.f12 and _in(c.d, c.d2s, min(c.r1m1, c.d1m, c.d2m))),
    (41, lambda c: _in(c.s1in, c.l12, c.f12) and _in(c.d, c.d2s, min(c.r2m1, c.d2m))),
    (42, lambda c: _in(c.s1in, c.l11, c.l12) and _in(c.d, c.d2s, min(c.r1m1, c.d2m))),
    (43, lambda c: c.s1in < c.l11 and _in(c.d, c.d2s, c.d2m)),
    (15, lambda c: c.s1in < c.l11 and _in(c.d, 0.0, c.d2s)),
    (44, lambda c: _in(c.s1in, c.l11, c.l12) and _phi2_neg(c)
        and _in(c.d, 0.0, min(c.r1m1, c.d2s, c.d2m))),
    (45, lambda c: _in(c.s1in, c.l11, c.l12) and _phi2_pos(c)
        and _in(c.d, 0.0, min(c.r1m1, c.d2s, c.d2m))),
    (46, lambda c: c.l12 <= c.s1in < c.f22 and _phi2_neg(c)
        and _in(c.d, 0.0, min(c.r1m1, c.r2m1, c.d2m))),
    (21, lambda c: c.l12 <= c.s1in < c.f22 and _phi2_pos(c)
        and _in(c.d, 0.0, min(c.r1m1, c.r2m1, c.d2m))),
    (22, lambda c: _in(c.s1in, c.f22, c.f12) and _in(c.d, 0.0, min(c.r2m1, c.d2s, c.d2m))),
    (20, lambda c: c.s1in > c.f12 and _in(c.d, 0.0, min(c.r1m1, c.d2s, c.d1m))),
]

_DO5_ROWS = [
    # S2in below the stage-2 lower break-even
    (0, lambda c: c.s2in < c.l2_21 and c.s1in < c.l12),
    (1, lambda c: c.s2in < c.l2_21 and _in(c.s1in, c.l12, c.f21)),
    (64, lambda c: c.s2in < c.l2_21 and _in(c.s1in, c.f21, c.l11)),
    (65, lambda c: c.s2in < c.l2_21 and _in(c.s1in, c.l11, c.f11)),
    (66, lambda c: c.s2in < c.l2_21 and _in(c.s1in, c.f11, c.f12)),
    (67, lambda c: c.s2in < c.l2_21 and _in(c.s1in, c.f12, c.f22) and _phi2_neg(c)),
    (68, lambda c: c.s2in < c.l2_21 and _in(c.s1in, c.f12, c.f22) and _phi2_pos(c)),
    (69, lambda c: c.s2in < c.l2_21 and c.s1in > c.f22),
    # between the stage-2 lower and stage-1 lower break-evens
    (4, lambda c: _in(c.s2in, c.l2_21, c.l2_11) and c.s1in < c.l12),
    (5, lambda c: _in(c.s2in, c.l2_21, c.l2_11) and _in(c.s1in, c.l12, c.l11)),
    (63, lambda c: _in(c.s2in, c.l2_21, c.l2_11) and _in(c.s1in, c.l11, c.f11)),
    (62, lambda c: _in(c.s2in, c.l2_21, c.l2_11) and _in(c.s1in, c.f11, c.f12)),
    (61, lambda c: _in(c.s2in, c.l2_21, c.l2_11) and _in(c.s1in, c.f12, c.f22)
        and _phi2_neg(c)),
    (60, lambda c: _in(c.s2in, c.l2_21, c.l2_11) and _in(c.s1in, c.f12, c.f22)
        and _phi2_pos(c)),
    (27, lambda c: _in(c.s2in, c.l2_21, c.l2_11) and c.s1in > c.f22),
    # inside the stage-1 pair
    (15, lambda c: _in(c.s2in, c.l2_11, c.l2_12) and c.s1in < c.l12),
    (56, lambda c: _in(c.s2in, c.l2_11, c.l2_12) and _in(c.s1in, c.l12, c.l11)),
    (46, lambda c: _in(c.s2in, c.l2_11, c.l2_12) and _in(c.s1in, c.l11, c.f12)),
    (57, lambda c: _in(c.s2in, c.l2_11, c.l2_12) and _in(c.s1in, c.f12, c.f22)
        and _phi2_neg(c)),
    (58, lambda c: _in(c.s2in, c.l2_11, c.l2_12) and _in(c.s1in, c.f12, c.f22)
        and _phi2_pos(c)),
    (59, lambda c: _in(c.s2in, c.l2_11, c.l2_12) and c.s1in > c.f22),
    # between the stage-1 upper and stage-2 upper break-evens
    (50, lambda c: _in(c.s2in, c.l2_12, c.l2_22) and c.s1in > max(c.l11, c.f22)),
    (51, lambda c: _in(c.s2in, c.l2_12, c.l2_22) and _in(c.s1in, c.l11, c.f22)
        and _phi2_pos(c)),
    (52, lambda c: _in(c.s2in, c.l2_12, c.l2_22) and _in(c.s1in, c.l11, c.f22)
        and _phi2_neg(c)),
    (53, lambda c: _in(c.s2in, c.l2_12, c.l2_22) and _in(c.s1in, c.f22, c.l11)),
    (54, lambda c: _in(c.s2in, c.l2_12, c.l2_22) and _in(c.s1in, c.l12, min(c.l11, c.f22))),
    (55, lambda c: _in(c.s2in, c.l2_12, c.l2_22) and c.s1in < c.l12),
    # above the stage-2 upper break-even
    (47, lambda c: c.s2in > c.l2_22 and c.s1in < c.l12),
    (48, lambda c: c.s2in > c.l2_22 and _in(c.s1in, c.l12, c.l11)),
    (49, lambda c: c.s2in > c.l2_22 and c.s1in > c.l11),
]

_TABLES = {"do123": _DO123_ROWS, "do4": _DO4_ROWS, "do5": _DO5_ROWS}


def locate_region(op: OperatingPoint, p: KineticParams, table: str = "do123") -> list[int]:
    """J-ids whose inequality definition holds at the operating point."""
    c = _ctx(op, p)
    return [jid for jid, pred in _TABLES[table] if pred(c)]


@dataclass
class RegionCheckEntry:
    region_id: int
    code: str
    jid_by_signature: int | None
    jids_by_conditions: list[int]
    cell: tuple[float, float]
    ok: bool
    detail: str = ""


@dataclass
class RegionCheckReport:
    figure: str
    entries: list
    missing_jids: list
    unmatched_codes: list

    @property
    def ok(self) -> bool:
        return not self.missing_jids and not self.unmatched_codes and all(
            e.ok for e in self.entries
        )


def region_table_check(
    scan: ScanResult, figure: FigurePreset, corrected: bool = True
) -> RegionCheckReport:
    """Match every scanned region against the figure's golden rows.

    Each accepted region with interior cells is matched by its signature
    code against the rows of the figure's declared J-ids, and its
    representative cell is independently located through the inequality
    tables; disagreements and unmatched codes are listed.
    """
    row_of = {jid: region_row(jid, corrected) for jid in figure.region_ids}
    code_to_jid: dict[str, int] = {}
    for jid, row in row_of.items():
        code_to_jid.setdefault(row, jid)

    xs, ys = scan.plane.x_cells(), scan.plane.y_cells()
    entries = []
    seen_jids = set()
    unmatched = set()
    for reg in scan.regions:
        if not reg.accepted:
            continue
        iy, ix = reg.seed_cell  # interior cell whenever the component has one
        x, y = float(xs[ix]), float(ys[iy])
        op = scan.plane.point(x, y)
        jid_sig = code_to_jid.get(reg.code)
        jid_conds = locate_region(op, scan.p, figure.table)
        if jid_sig is None:
            unmatched.add(reg.code)
            entries.append(
                RegionCheckEntry(reg.region_id, reg.code, None, jid_conds, (x, y), False,
                                 "signature not among the figure's golden rows")
            )
            continue
        seen_jids.add(jid_sig)
        ok = jid_sig in jid_conds if jid_conds else True
        detail = "" if ok else (
            f"inequality tables place the point in {jid_conds}, signature says J{jid_sig}"
        )
        entries.append(
            RegionCheckEntry(reg.region_id, reg.code, jid_sig, jid_conds, (x, y), ok, detail)
        )
    missing = sorted(set(figure.region_ids) - seen_jids)
    return RegionCheckReport(figure.name, entries, missing, sorted(unmatched))


def match_signature(code: str, figure: FigurePreset, corrected: bool = True) -> int | None:
    """J-id of the figure whose golden row equals the code, if any."""
    for jid in figure.region_ids:
        if region_row(jid, corrected) == code:
            return jid
    return None
