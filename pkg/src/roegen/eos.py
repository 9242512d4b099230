"""Price-level equations of state P(I, Q).

Two models are available: the Van der Waals surface

    P = R*I/(Q - b) - a/Q**2

and the ideal reference P = R*I/Q, which is its a -> 0, b -> 0 limit.
I plays the role of temperature, P of pressure and Q of volume.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import brentq

from .exceptions import ArgumentError, DomainError

__all__ = [
    "ModelKind",
    "EosParams",
    "price_level",
    "price_level_derivatives",
    "isotherm",
    "solve_volume",
    "volume_roots",
    "real_cubic_roots",
]

_EPS = np.finfo(float).eps

# Roots closer than this are reported once, with multiplicity.
ROOT_MERGE_TOL = 1e-9


class ModelKind(str, Enum):
    VAN_DER_WAALS = "VanDerWaals"
    IDEAL = "Ideal"


@dataclass(frozen=True)
class EosParams:
    """Parameters of the price-level and entropy models.

    Parameters
    ----------
    a : float
        Attraction coefficient.
    b : float
        Excluded-volume floor; every state needs Q > b.
    R : float
        Stability-price coupling constant.
    c : float
        Entropy degrees-of-freedom coefficient.
    kind : ModelKind
    """

    a: float = 3.0
    b: float = 1.0 / 3.0
    R: float = 8.0 / 3.0
    c: float = 1.5
    kind: ModelKind = ModelKind.VAN_DER_WAALS

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        for name in ("a", "b", "R", "c"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ArgumentError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.R <= 0:
            raise ArgumentError(f"R must be > 0, got {self.R}")
        if self.c <= 0:
            raise ArgumentError(f"c must be > 0, got {self.c}")
        if self.kind is ModelKind.VAN_DER_WAALS:
            if self.a <= 0 or self.b <= 0:
                raise ArgumentError(
                    f"VanDerWaals requires a > 0 and b > 0, got a={self.a}, b={self.b}"
                )
        elif self.a != 0 or self.b != 0:
            raise ArgumentError(
                f"Ideal model forces a = 0 and b = 0, got a={self.a}, b={self.b}"
            )

    @classmethod
    def reduced(cls, c=1.5):
        """Canonical reduced Van der Waals parameters, critical point at (1, 1, 1)."""
        return cls(a=3.0, b=1.0 / 3.0, R=8.0 / 3.0, c=c)

    @classmethod
    def ideal(cls, R=1.0, c=1.5):
        return cls(a=0.0, b=0.0, R=R, c=c, kind=ModelKind.IDEAL)

    @property
    def is_ideal(self):
        return self.kind is ModelKind.IDEAL

    def critical_estimate(self):
        """Closed-form (I_c, P_c, Q_c) of the Van der Waals model."""
        return (
            8.0 * self.a / (27.0 * self.R * self.b),
            self.a / (27.0 * self.b**2),
            3.0 * self.b,
        )


def _check_state(params, I, Q):
    I = np.asarray(I, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if np.any(~(I > 0)):
        raise DomainError(f"stability I must be > 0, got {I}")
    if np.any(~(Q > params.b)):
        raise DomainError(f"volume Q must exceed the floor b={params.b!r}, got {Q}")
    return I, Q


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def price_level(params, I, Q):
    """Price level P(I, Q). Accepts scalars or broadcastable arrays."""
    I, Q = _check_state(params, I, Q)
    if params.is_ideal:
        P = params.R * I / Q
    else:
        P = params.R * I / (Q - params.b) - params.a / Q**2
    return _scalar(P)


def price_level_derivatives(params, I, Q):
    """Return (dP/dQ, d2P/dQ2) at fixed I and dP/dI at fixed Q."""
    I, Q = _check_state(params, I, Q)
    R, a, b = params.R, params.a, params.b
    if params.is_ideal:
        dPdQ = -R * I / Q**2
        d2PdQ2 = 2.0 * R * I / Q**3
        dPdI = R / Q
    else:
        dPdQ = -R * I / (Q - b) ** 2 + 2.0 * a / Q**3
        d2PdQ2 = 2.0 * R * I / (Q - b) ** 3 - 6.0 * a / Q**4
        dPdI = R / (Q - b)
    return _scalar(dPdQ), _scalar(d2PdQ2), _scalar(dPdI)


def isotherm(params, I, Q_min, Q_max, n):
    """Sample the constant-I curve at ``n`` uniformly spaced volumes.

    Returns an ``(n, 2)`` array of ``(Q, P)`` rows with Q ascending.
    """
    if int(n) != n or n < 2:
        raise ArgumentError(f"sample count n must be an integer >= 2, got {n!r}")
    if not Q_min < Q_max:
        raise ArgumentError(f"need Q_min < Q_max, got [{Q_min}, {Q_max}]")
    if not Q_min > params.b:
        raise DomainError(f"Q_min must exceed the floor b={params.b!r}, got {Q_min}")
    Q = np.linspace(Q_min, Q_max, int(n))
    Q[-1] = Q_max
    return np.column_stack([Q, price_level(params, I, Q)])


def _polyval(coeffs, x):
    value = 0.0
    for c in coeffs:
        value = value * x + c
    return value


def _poly_scale(coeffs, x):
    """Magnitude of the largest term, the reference for 'numerically zero'."""
    n = len(coeffs) - 1
    return max(abs(c) * abs(x) ** (n - k) for k, c in enumerate(coeffs))


def _quadratic_roots(A, B, C):
    disc = B * B - 4.0 * A * C
    if disc < 0:
        if disc > -64 * _EPS * B * B:
            return [-B / (2.0 * A)]
        return []
    sq = np.sqrt(disc)
    q = -0.5 * (B + np.copysign(sq, B))
    if q == 0.0:
        return [0.0]
    return sorted({q / A, C / q})


def real_cubic_roots(coeffs, lo):
    """Real roots of a cubic strictly above ``lo``, with multiplicities.

    The cubic's turning points split ``(lo, inf)`` into monotone pieces; each
    sign change is bracketed and refined with Brent's method. A turning point
    where the cubic vanishes to rounding is reported as a repeated root, which
    keeps coalescing roots stable near the critical point.

    Returns a list of ``(root, multiplicity)`` sorted ascending.
    """
    c3, c2, c1, c0 = (float(c) for c in coeffs)
    if c3 <= 0:
        raise ArgumentError("leading cubic coefficient must be positive")
    coeffs = (c3, c2, c1, c0)
    upper = 1.0 + max(abs(c2), abs(c1), abs(c0)) / c3
    upper = max(upper, lo + 1.0) * 2.0

    turning_all = _quadratic_roots(3.0 * c3, 2.0 * c2, c1)
    # a single turning point means the derivative has a double root
    inflection = len(turning_all) == 1
    turning = [t for t in turning_all if t > lo]
    knots = [lo] + turning + [upper]
    values = []
    for x in knots:
        v = _polyval(coeffs, x)
        if x != lo and abs(v) <= 16 * _EPS * _poly_scale(coeffs, x):
            v = 0.0
        values.append(v)

    roots = []
    for x, v in zip(knots[1:-1], values[1:-1]):
        if v == 0.0:
            roots.append([float(x), 3 if inflection else 2])
    for (xa, va), (xb, vb) in zip(zip(knots, values), zip(knots[1:], values[1:])):
        if va * vb < 0:
            r = brentq(lambda x: _polyval(coeffs, x), xa, xb, xtol=1e-300, rtol=4 * _EPS, maxiter=500)
            roots.append([float(r), 1])
    roots.sort()

    merged = []
    for r, m in roots:
        if merged and abs(r - merged[-1][0]) <= ROOT_MERGE_TOL:
            prev = merged[-1]
            # turning-point roots are exact; keep them as the representative
            if m > prev[1]:
                prev[0] = r
            prev[1] = min(prev[1] + m, 3)
        else:
            merged.append([r, m])
    return [(r, m) for r, m in merged]


def _polish(params, I, P, Q):
    """Newton-polish a simple root of P(I, Q) = target on the rational form."""
    tol = 1e-12 * max(1.0, abs(P))
    best_q = Q
    best_r = abs(price_level(params, I, Q) - P)
    for _ in range(8):
        if best_r <= 0.25 * tol:
            break
        dPdQ = price_level_derivatives(params, I, best_q)[0]
        if dPdQ == 0.0:
            break
        q = best_q - (price_level(params, I, best_q) - P) / dPdQ
        if not q > params.b:
            break
        r = abs(price_level(params, I, q) - P)
        if r >= best_r:
            break
        best_q, best_r = q, r
    return best_q


def volume_roots(params, I, P):
    """Roots Q > b of P(I, Q) = P as ``(Q, multiplicity)`` pairs, ascending."""
    if not I > 0:
        raise DomainError(f"stability I must be > 0, got {I}")
    if not P > 0:
        raise DomainError(f"price level P must be > 0, got {P}")
    I, P = float(I), float(P)
    if params.is_ideal:
        return [(params.R * I / P, 1)]
    a, b, R = params.a, params.b, params.R
    # P*Q^2*(Q-b) = R*I*Q^2 - a*(Q-b)
    coeffs = (P, -(P * b + R * I), a, -a * b)
    out = []
    for q, m in real_cubic_roots(coeffs, b):
        if m == 1:
            q = _polish(params, I, P, q)
        out.append((q, m))
    return out


def solve_volume(params, I, P):
    """Distinct volumes Q > b with price_level(I, Q) == P, ascending.

    A repeated root (e.g. the triple root at the critical point) appears once;
    use :func:`volume_roots` to see multiplicities. An empty list means no
    physical root.
    """
    return [q for q, _ in volume_roots(params, I, P)]
