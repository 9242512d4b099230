"""Quasi-static paths through the I-P phase diagram.

A path is a polyline of (I, P) samples. Every sample is labelled with its
phase; every segment whose end labels differ is searched for boundary
crossings, which are reported with their economic reading (boom, crisis,
recovery, recession, economic increasing, economic decreasing).
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import Phase, classify_phase
from .equilibrium import CurveKind
from .exceptions import ArgumentError, PhaseRangeError

__all__ = ["TransitionEvent", "SimulationReport", "detect_crossing", "simulate", "DIRECTIONS", "curve_between"]

DIRECTIONS = {
    (CurveKind.BOOM_CRISIS, Phase.INFLATION, Phase.INCOME): "economic boom (inflation to income)",
    (CurveKind.BOOM_CRISIS, Phase.INCOME, Phase.INFLATION): "crisis (income to inflation)",
    (CurveKind.RECOVERY_RECESSION, Phase.INFLATION, Phase.LIQUIDITY):
        "recovery (inflation to monetary policy of liquidity)",
    (CurveKind.RECOVERY_RECESSION, Phase.LIQUIDITY, Phase.INFLATION):
        "recession (monetary policy of liquidity to inflation)",
    (CurveKind.INCREASE_DECREASE, Phase.LIQUIDITY, Phase.INCOME):
        "economic increasing (monetary policy of liquidity to income)",
    (CurveKind.INCREASE_DECREASE, Phase.INCOME, Phase.LIQUIDITY):
        "economic decreasing (income to monetary policy of liquidity)",
}

# (phase above the curve, phase below the curve)
_SIDES = {
    CurveKind.BOOM_CRISIS: (Phase.INFLATION, Phase.INCOME),
    CurveKind.RECOVERY_RECESSION: (Phase.INFLATION, Phase.LIQUIDITY),
    CurveKind.INCREASE_DECREASE: (Phase.LIQUIDITY, Phase.INCOME),
}

_SCAN_POINTS = 65


def curve_between(a, b):
    """The boundary curve separating two of the three ordinary phases."""
    for kind, sides in _SIDES.items():
        if {a, b} == set(sides):
            return kind
    return None


@dataclass(frozen=True)
class TransitionEvent:
    curve: CurveKind
    direction: str
    I: float
    P: float
    segment_index: int
    from_phase: Phase
    to_phase: Phase

    @property
    def location(self):
        return (self.I, self.P)

    def to_dict(self):
        return {
            "curve": self.curve.value,
            "direction": self.direction,
            "I": self.I,
            "P": self.P,
            "segment_index": self.segment_index,
        }


@dataclass(frozen=True)
class SimulationReport:
    labels: tuple
    events: tuple
    second_law: object = None

    def label_names(self):
        return [lab.value for lab in self.labels]

    def to_dict(self):
        out = {
            "labels": self.label_names(),
            "events": [e.to_dict() for e in self.events],
        }
        if self.second_law is not None:
            out["second_law"] = self.second_law.value
        return out


def _event(curve, start, end, I, P, index):
    return TransitionEvent(curve, DIRECTIONS[(curve, start, end)], float(I), float(P), index, start, end)


def _near_triple(diagram, a, b):
    trip = np.array([diagram.triple.I_t, diagram.triple.P_t])
    d = b - a
    dd = float(d @ d)
    s = 0.0 if dd == 0 else float(np.clip((trip - a) @ d / dd, 0.0, 1.0))
    dist = float(np.linalg.norm(a + s * d - trip))
    return dist <= 1e-9 * max(1.0, *np.abs(trip))


def _curve_crossings(diagram, kind, a, b):
    """Parameters s in (0, 1) where the segment crosses ``kind``, with the sign change."""
    lo, hi = diagram.curve_domain(kind)
    dI = b[0] - a[0]
    if dI == 0.0:
        if not lo <= a[0] <= hi:
            return []
        s_lo, s_hi = 0.0, 1.0
    else:
        s1, s2 = (lo - a[0]) / dI, (hi - a[0]) / dI
        s_lo, s_hi = max(0.0, min(s1, s2)), min(1.0, max(s1, s2))
        if not s_lo < s_hi:
            return []

    def g(s):
        I = min(max(a[0] + s * dI, lo), hi)
        return a[1] + s * (b[1] - a[1]) - diagram.curve_price(kind, I)

    s_grid = np.linspace(s_lo, s_hi, _SCAN_POINTS)
    values = [g(s) for s in s_grid]
    found = []
    for (sa, ga), (sb, gb) in zip(zip(s_grid, values), zip(s_grid[1:], values[1:])):
        if ga * gb < 0:
            s = brentq(g, sa, sb, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
            found.append((s, ga > 0))
    return found


def detect_crossing(diagram, segment, segment_index=0):
    """Events on one segment ``((I1, P1), (I2, P2))``, ordered along the segment.

    Empty when both endpoints share a label. A segment passing within 1e-9
    of the triple point reports one event per boundary curve there.
    """
    a = np.array(segment[0], dtype=float)
    b = np.array(segment[1], dtype=float)
    start = classify_phase(a, diagram)
    end = classify_phase(b, diagram)
    if start == end:
        return []
    ordinary = {Phase.INFLATION, Phase.LIQUIDITY, Phase.INCOME}
    if start in ordinary and end in ordinary and _near_triple(diagram, a, b):
        I_t, P_t = diagram.triple.I_t, diagram.triple.P_t
        (third,) = ordinary - {start, end}
        return [
            _event(curve_between(start, end), start, end, I_t, P_t, segment_index),
            _event(curve_between(start, third), start, third, I_t, P_t, segment_index),
            _event(curve_between(third, end), third, end, I_t, P_t, segment_index),
        ]

    hits = []
    for kind in CurveKind:
        for s, from_above in _curve_crossings(diagram, kind, a, b):
            above, below = _SIDES[kind]
            src, dst = (above, below) if from_above else (below, above)
            I = a[0] + s * (b[0] - a[0])
            P = a[1] + s * (b[1] - a[1])
            hits.append((s, _event(kind, src, dst, I, P, segment_index)))
    hits.sort(key=lambda h: h[0])
    return [e for _, e in hits]


def simulate(diagram, path, volumes=None, dissipation=0.0):
    """Label every sample of an (I, P) polyline and collect its transitions.

    When ``volumes`` (Q per sample) is given, the report also carries the
    second-law verdict of the (I, Q) process.
    """
    path = np.asarray(path, dtype=float)
    if path.ndim != 2 or path.shape[1] != 2:
        raise ArgumentError(f"path must have shape (n, 2), got {path.shape}")
    if len(path) < 2:
        raise ArgumentError("path needs at least 2 samples")
    labels = []
    for k, point in enumerate(path):
        try:
            labels.append(classify_phase(point, diagram))
        except PhaseRangeError as err:
            raise PhaseRangeError(f"sample {k}: {err}", err.interval, k) from err
    events = []
    for k in range(len(path) - 1):
        if labels[k] != labels[k + 1]:
            events.extend(detect_crossing(diagram, (path[k], path[k + 1]), k))
    verdict = None
    if volumes is not None:
        from .potentials import QuasiStaticPath, second_law_check

        qs = QuasiStaticPath(path[:, 0], volumes, reversible=dissipation == 0, dissipation=dissipation)
        verdict = second_law_check(diagram.params, qs)
    return SimulationReport(tuple(labels), tuple(events), verdict)
