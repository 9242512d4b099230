"""Critical point, Maxwell construction, boundary curves and the phase diagram.

Phase analogs: inflation ~ solid, monetary policy as liquidity ~ liquid,
income ~ gas. The liquidity-income boundary (IncreaseDecrease) comes from
equal-area constructions on the Van der Waals isotherms and ends at the
critical point. The two inflation boundaries have no equation of state
behind them; they are integrated from the triple point with constant
latent parameters (see :class:`SolidModel`).
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property, lru_cache

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.interpolate import CubicSpline

from .eos import EosParams, price_level, price_level_derivatives, real_cubic_roots, solve_volume
from .exceptions import (
    ArgumentError,
    BuildError,
    ConvergenceError,
    DegeneratePointError,
    DomainError,
    NoCoexistenceError,
    RoegenError,
    SupercriticalError,
    UnsupportedModelError,
)
from .potentials import entropy, exchange_potential

__all__ = [
    "Tolerances",
    "Grid",
    "CriticalPoint",
    "CoexistencePoint",
    "TriplePoint",
    "CurveKind",
    "BoundaryCurve",
    "SolidModel",
    "PhaseDiagram",
    "find_critical",
    "maxwell_construction",
    "equal_area",
    "spinodal",
    "trace_increase_decrease",
    "clausius_clapeyron_slope",
    "trace_boom_crisis",
    "trace_recovery_recession",
    "find_triple_point",
    "build_diagram",
    "sublimation_price",
    "melting_price",
]

# Offset below I_c for the last traced Maxwell construction, relative to I_c.
CRITICAL_OFFSET = 1e-6


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances.

    root: relative residual bound for volume roots.
    area: bound on the equal-area residual of a Maxwell construction.
    ode: relative tolerance of the boundary-curve ODE integrator.
    boundary: relative distance under which a point counts as on a curve.
    """

    root: float = 1e-12
    area: float = 1e-8
    ode: float = 1e-10
    boundary: float = 1e-9
    stationarity: float = 1e-9
    meeting: float = 1e-8
    potential: float = 1e-6
    closed_form: float = 1e-8


@dataclass(frozen=True)
class Grid:
    n_increase_decrease: int = 128
    n_boom_crisis: int = 128
    n_recovery_recession: int = 128
    I_min: float = 0.3
    I_max: float = 1.2


@dataclass(frozen=True)
class CriticalPoint:
    I_c: float
    P_c: float
    Q_c: float


@dataclass(frozen=True)
class CoexistencePoint:
    I: float
    P_sat: float
    Q_low: float
    Q_high: float
    latent_q: float
    area_residual: float = 0.0


@dataclass(frozen=True)
class TriplePoint:
    I_t: float
    P_t: float


class CurveKind(str, Enum):
    BOOM_CRISIS = "BoomCrisis"
    RECOVERY_RECESSION = "RecoveryRecession"
    INCREASE_DECREASE = "IncreaseDecrease"

    @property
    def slug(self):
        return {
            CurveKind.BOOM_CRISIS: "boom-crisis",
            CurveKind.RECOVERY_RECESSION: "recovery-recession",
            CurveKind.INCREASE_DECREASE: "increase-decrease",
        }[self]


def _frozen_array(x):
    x = np.array(x, dtype=float)
    x.flags.writeable = False
    return x


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """Samples (I, P) of a coexistence curve, I ascending.

    The IncreaseDecrease curve also carries the coexisting volumes and the
    latent production at each sample.
    """

    kind: CurveKind
    I: np.ndarray
    P: np.ndarray
    Q_low: np.ndarray = None
    Q_high: np.ndarray = None
    latent_q: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "kind", CurveKind(self.kind))
        for name in ("I", "P", "Q_low", "Q_high", "latent_q"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _frozen_array(value))
        if self.I.shape != self.P.shape or self.I.ndim != 1:
            raise ArgumentError("curve I and P must be 1-D arrays of equal length")
        if np.any(np.diff(self.I) <= 0):
            raise ArgumentError(f"{self.kind.value} samples must have strictly ascending I")

    @property
    def endpoints(self):
        return float(self.I[0]), float(self.I[-1])

    def __len__(self):
        return len(self.I)

    def points(self):
        if self.Q_low is None:
            return []
        return [
            CoexistencePoint(float(i), float(p), float(ql), float(qh), float(lq))
            for i, p, ql, qh, lq in zip(self.I, self.P, self.Q_low, self.Q_high, self.latent_q)
        ]


@dataclass(frozen=True)
class SolidModel:
    """Configured inflation-phase anchor.

    I_t: stability of the triple point. L_melt and dQ_melt: latent production
    and volume jump of the inflation-liquidity transition. L_sub: latent
    production of the inflation-income transition.
    """

    I_t: float = 0.55
    L_melt: float = 0.5
    dQ_melt: float = 0.05
    L_sub: float = 2.0

    def __post_init__(self):
        for name in ("I_t", "L_melt", "dQ_melt", "L_sub"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ArgumentError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.I_t <= 0:
            raise ArgumentError(f"I_t must be > 0, got {self.I_t}")
        if self.dQ_melt <= 0:
            raise ArgumentError(f"dQ_melt must be > 0, got {self.dQ_melt}")
        if self.L_melt < 0 or self.L_sub < 0:
            raise ArgumentError("latent productions must be >= 0")


def _require_vdw(params, what):
    if params.is_ideal:
        raise UnsupportedModelError(f"the Ideal model has no {what}")


@lru_cache(maxsize=128)
def _critical_cached(params, tol, max_iter):
    a, b, R = params.a, params.b, params.R
    I = 8.0 * a / (27.0 * R * b) * (1 + 1e-3)
    Q = 3.0 * b * (1 + 1e-3)

    def residuals(I, Q):
        d1, d2, _ = price_level_derivatives(params, I, Q)
        return np.array([d1, d2])

    F = residuals(I, Q)
    for _ in range(max_iter):
        J = np.array(
            [
                [-R / (Q - b) ** 2, 2 * R * I / (Q - b) ** 3 - 6 * a / Q**4],
                [2 * R / (Q - b) ** 3, -6 * R * I / (Q - b) ** 4 + 24 * a / Q**5],
            ]
        )
        dI, dQ = np.linalg.solve(J, -F)
        I_new, Q_new = I + dI, Q + dQ
        if not (I_new > 0 and Q_new > b):
            raise ConvergenceError("critical-point Newton step left the domain", float(np.max(np.abs(F))))
        F_new = residuals(I_new, Q_new)
        small_step = abs(dI) <= 4e-16 * abs(I_new) and abs(dQ) <= 4e-16 * abs(Q_new)
        I, Q, F = I_new, Q_new, F_new
        P = price_level(params, I, Q)
        # dimensionless stationarity: P_Q * Q / P, P_QQ * Q^2 / P
        scaled = np.abs(F) * np.array([Q, Q * Q]) / abs(P)
        if small_step or np.all(scaled <= 1e-3 * tol):
            break
    else:
        raise ConvergenceError(
            f"critical-point Newton did not converge in {max_iter} iterations",
            float(np.max(np.abs(F))),
        )
    if not np.all(scaled <= tol):
        raise ConvergenceError("critical-point stationarity residual above tolerance", float(np.max(scaled)))
    return CriticalPoint(I_c=float(I), P_c=float(price_level(params, I, Q)), Q_c=float(Q))


def find_critical(params, tol=1e-9, max_iter=100):
    """Solve dP/dQ = d2P/dQ2 = 0 for (I_c, Q_c) by two-dimensional Newton."""
    _require_vdw(params, "critical point")
    return _critical_cached(params, float(tol), int(max_iter))


def spinodal(params, I):
    """Volumes of the local minimum and maximum of the isotherm at ``I``."""
    a, b, R = params.a, params.b, params.R
    # dP/dQ = 0  <=>  R*I*Q^3 - 2a*(Q - b)^2 = 0
    roots = real_cubic_roots((R * I, -2.0 * a, 4.0 * a * b, -2.0 * a * b * b), b)
    distinct = [q for q, m in roots if m == 1]
    if len(distinct) != 2:
        raise NoCoexistenceError(f"isotherm at I={I!r} has no van der Waals loop")
    return distinct[0], distinct[1]


def equal_area(params, I, P, Q_low, Q_high, tol=1e-12):
    """Signed area of P(I, Q) - P between two volumes, by adaptive quadrature."""
    RI, a, b = params.R * I, params.a, params.b
    value, _ = quad(
        lambda q: RI / (q - b) - a / (q * q) - P, Q_low, Q_high,
        epsabs=tol, epsrel=tol, limit=200,
    )
    return value


def _check_subcritical(params, I):
    _require_vdw(params, "coexistence region")
    if not I > 0:
        raise DomainError(f"stability I must be > 0, got {I}")
    crit = find_critical(params)
    if I >= crit.I_c:
        raise SupercriticalError(f"I={I!r} is at or above the critical stability I_c={crit.I_c!r}")
    return crit


def maxwell_construction(params, I, tol=Tolerances()):
    """Equal-area saturation price of the isotherm at stability ``I``.

    P_sat is bisected between the loop's local-minimum and local-maximum
    prices (clipped at 0 from below). The signed area between the isotherm
    and the horizontal line decreases monotonically in P on that bracket.
    """
    I = float(I)
    _check_subcritical(params, I)
    Q_min, Q_max = spinodal(params, I)
    P_lo = max(price_level(params, I, Q_min), 0.0)
    P_hi = price_level(params, I, Q_max)
    if not P_hi > P_lo:
        raise NoCoexistenceError(f"isotherm at I={I!r} has no three-root price window")

    def area(P):
        roots = solve_volume(params, I, P)
        if len(roots) < 2:
            # only one branch: above the window it is the small root
            return (-1.0 if roots[0] <= Q_max else 1.0), roots[0], roots[0]
        return equal_area(params, I, P, roots[0], roots[-1]), roots[0], roots[-1]

    lo, hi = P_lo, P_hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        A, _, _ = area(mid)
        if A == 0.0:
            lo = hi = mid
            break
        if A > 0:
            lo = mid
        else:
            hi = mid
    P_sat = 0.5 * (lo + hi)
    A, Q_low, Q_high = area(P_sat)
    if not Q_high > Q_low or abs(A) > tol.area:
        raise ConvergenceError(
            f"equal-area bisection at I={I!r} ended with residual {A!r}", abs(A)
        )
    latent = I * (entropy(params, I, Q_high) - entropy(params, I, Q_low))
    g_low = exchange_potential(params, I, Q_low)
    g_high = exchange_potential(params, I, Q_high)
    if abs(g_low - g_high) > tol.potential * max(1.0, abs(g_low)):
        raise ConvergenceError(
            f"exchange potentials differ across branches at I={I!r}", abs(g_low - g_high)
        )
    return CoexistencePoint(
        I=I, P_sat=P_sat, Q_low=Q_low, Q_high=Q_high, latent_q=latent, area_residual=abs(A)
    )


def _annotated(err, I):
    try:
        new = err.__class__(f"at I={I!r}: {err}")
    except TypeError:
        return err
    return new


def trace_increase_decrease(params, I_t, n, tol=Tolerances(), n_jobs=None):
    """Liquidity-income coexistence curve from ``I_t`` up to the critical point.

    ``n`` is the total sample count: ``n - 1`` Maxwell constructions evenly
    spaced on [I_t, I_c (1 - 1e-6)] followed by the critical point itself.
    With ``n_jobs`` set, constructions run in parallel; the output is
    identical to the serial run.
    """
    crit = find_critical(params)
    if int(n) != n or n < 2:
        raise ArgumentError(f"sample count n must be an integer >= 2, got {n!r}")
    if not 0 < I_t < crit.I_c:
        raise ArgumentError(f"need 0 < I_t < I_c={crit.I_c!r}, got I_t={I_t!r}")
    I_grid = np.linspace(I_t, crit.I_c * (1 - CRITICAL_OFFSET), int(n) - 1)
    I_grid[0] = I_t

    def one(I):
        try:
            return maxwell_construction(params, float(I), tol)
        except RoegenError as err:
            raise _annotated(err, float(I)) from err

    if n_jobs in (None, 1):
        points = [one(I) for I in I_grid]
    else:
        from joblib import Parallel, delayed

        points = Parallel(n_jobs=n_jobs)(delayed(one)(I) for I in I_grid)
    points.append(CoexistencePoint(crit.I_c, crit.P_c, crit.Q_c, crit.Q_c, 0.0))
    P = np.array([p.P_sat for p in points])
    if np.any(np.diff(P) <= 0):
        raise ConvergenceError("traced saturation prices are not strictly increasing")
    return BoundaryCurve(
        CurveKind.INCREASE_DECREASE,
        I=[p.I for p in points],
        P=P,
        Q_low=[p.Q_low for p in points],
        Q_high=[p.Q_high for p in points],
        latent_q=[p.latent_q for p in points],
    )


def clausius_clapeyron_slope(point):
    """Boundary slope dP/dI = latent_q / (I (Q_high - Q_low))."""
    width = point.Q_high - point.Q_low
    if not width > 0:
        raise DegeneratePointError(
            f"coexisting volumes coincide at I={point.I!r}; the slope is undefined"
        )
    return point.latent_q / (point.I * width)


def sublimation_price(I, P_t, I_t, L_sub, R):
    """Closed-form inflation-income boundary through (I_t, P_t)."""
    I = np.asarray(I, dtype=float)
    return P_t * np.exp(-(L_sub / R) * (1.0 / I - 1.0 / I_t))


def melting_price(I, P_t, I_t, L_melt, dQ_melt):
    """Closed-form inflation-liquidity boundary through (I_t, P_t)."""
    I = np.asarray(I, dtype=float)
    return P_t + (L_melt / dQ_melt) * np.log(I / I_t)


def integrate_boundary(rhs, I_start, P_start, I_eval, rtol):
    """Integrate dP/dI = rhs(I, P) from (I_start, P_start) to the ``I_eval`` points.

    Embedded Runge-Kutta 4(5) with step control; ``I_eval`` must be ordered
    away from ``I_start``.
    """
    I_eval = np.asarray(I_eval, dtype=float)
    sol = solve_ivp(
        lambda I, P: rhs(I, P), (I_start, float(I_eval[-1])), [P_start],
        method="RK45", t_eval=I_eval, rtol=rtol, atol=rtol * 1e-6 * max(abs(P_start), 1e-300),
    )
    if not sol.success:
        raise ConvergenceError(f"boundary ODE integration failed: {sol.message}")
    return sol.y[0]


def _check_against_ode(kind, I, closed, ode, tol):
    rel = np.abs(ode - closed) / np.maximum(np.abs(closed), np.finfo(float).tiny)
    worst = float(np.max(rel))
    if worst > tol:
        raise ConvergenceError(
            f"{kind.value}: ODE and closed form disagree by {worst:.3e} (relative)", worst
        )


def trace_boom_crisis(params, solid, triple, I_min, n, tol=Tolerances()):
    """Inflation-income boundary on [I_min, I_t], I ascending.

    Uses the Clausius-Clapeyron law with the income branch dominating the
    volume jump (dQ ~ R I / P), which integrates to an exponential; the ODE
    is integrated independently and must agree.
    """
    if int(n) != n or n < 2:
        raise ArgumentError(f"sample count n must be an integer >= 2, got {n!r}")
    if not 0 < I_min < triple.I_t:
        raise ArgumentError(f"need 0 < I_min < I_t={triple.I_t!r}, got I_min={I_min!r}")
    I = np.linspace(I_min, triple.I_t, int(n))
    I[0], I[-1] = I_min, triple.I_t
    P = sublimation_price(I, triple.P_t, triple.I_t, solid.L_sub, params.R)
    L, R = solid.L_sub, params.R
    ode = integrate_boundary(lambda i, p: L * p / (R * i * i), triple.I_t, triple.P_t, I[::-1], tol.ode)[::-1]
    _check_against_ode(CurveKind.BOOM_CRISIS, I, P, ode, tol.closed_form)
    return BoundaryCurve(CurveKind.BOOM_CRISIS, I=I, P=P)


def trace_recovery_recession(params, solid, triple, I_max, n, tol=Tolerances()):
    """Inflation-liquidity boundary on [I_t, I_max], constant latent and volume jump."""
    if int(n) != n or n < 2:
        raise ArgumentError(f"sample count n must be an integer >= 2, got {n!r}")
    if not I_max > triple.I_t:
        raise ArgumentError(f"need I_max > I_t={triple.I_t!r}, got I_max={I_max!r}")
    I = np.linspace(triple.I_t, I_max, int(n))
    I[0], I[-1] = triple.I_t, I_max
    P = melting_price(I, triple.P_t, triple.I_t, solid.L_melt, solid.dQ_melt)
    slope = solid.L_melt / solid.dQ_melt
    ode = integrate_boundary(lambda i, p: slope / i, triple.I_t, triple.P_t, I, tol.ode)
    _check_against_ode(CurveKind.RECOVERY_RECESSION, I, P, ode, tol.closed_form)
    return BoundaryCurve(CurveKind.RECOVERY_RECESSION, I=I, P=P)


def find_triple_point(params, solid, tol=Tolerances()):
    """Triple point at the configured stability, priced by the Maxwell construction."""
    crit = find_critical(params)
    if not solid.I_t < crit.I_c:
        raise ArgumentError(f"I_t must be < I_c={crit.I_c!r}, got I_t={solid.I_t!r}")
    try:
        point = maxwell_construction(params, solid.I_t, tol)
    except RoegenError as err:
        raise _annotated(err, solid.I_t) from err
    return TriplePoint(I_t=solid.I_t, P_t=point.P_sat)


@dataclass(frozen=True, eq=False)
class PhaseDiagram:
    """Critical point, triple point and the three boundary curves.

    The liquidity-income boundary between samples is a cubic spline through
    the traced Maxwell prices; the inflation boundaries are their closed forms.
    """

    critical: CriticalPoint
    triple: TriplePoint
    curves: tuple
    params: EosParams
    solid: SolidModel
    grid: Grid = field(default_factory=Grid)
    tolerances: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        curves = tuple(self.curves.values()) if isinstance(self.curves, dict) else tuple(self.curves)
        order = [CurveKind.BOOM_CRISIS, CurveKind.RECOVERY_RECESSION, CurveKind.INCREASE_DECREASE]
        by_kind = {c.kind: c for c in curves}
        if sorted(by_kind, key=order.index) != order or len(curves) != 3:
            raise ArgumentError("a phase diagram needs exactly one curve of each kind")
        object.__setattr__(self, "curves", tuple(by_kind[k] for k in order))

    def curve(self, kind):
        kind = CurveKind(kind)
        return next(c for c in self.curves if c.kind is kind)

    @property
    def i_range(self):
        return (self.grid.I_min, self.grid.I_max)

    @cached_property
    def _saturation_spline(self):
        c = self.curve(CurveKind.INCREASE_DECREASE)
        return CubicSpline(c.I, c.P)

    def p_sat(self, I):
        P = self._saturation_spline(np.asarray(I, dtype=float))
        return float(P) if np.ndim(P) == 0 else P

    def p_sub(self, I):
        P = sublimation_price(I, self.triple.P_t, self.triple.I_t, self.solid.L_sub, self.params.R)
        return float(P) if np.ndim(P) == 0 else P

    def p_melt(self, I):
        P = melting_price(I, self.triple.P_t, self.triple.I_t, self.solid.L_melt, self.solid.dQ_melt)
        return float(P) if np.ndim(P) == 0 else P

    def curve_price(self, kind, I):
        kind = CurveKind(kind)
        if kind is CurveKind.BOOM_CRISIS:
            return self.p_sub(I)
        if kind is CurveKind.RECOVERY_RECESSION:
            return self.p_melt(I)
        return self.p_sat(I)

    def curve_domain(self, kind):
        kind = CurveKind(kind)
        lo, hi = self.curve(kind).endpoints
        return lo, hi

    def check_invariants(self):
        """Raise :class:`ArgumentError` naming the first violated invariant."""
        tol = self.tolerances
        crit, trip = self.critical, self.triple
        d1, d2, _ = price_level_derivatives(self.params, crit.I_c, crit.Q_c)
        scaled = (abs(d1) * crit.Q_c / crit.P_c, abs(d2) * crit.Q_c**2 / crit.P_c)
        if max(scaled) > tol.stationarity:
            raise ArgumentError(f"critical point is not stationary: {scaled}")
        if not trip.I_t < crit.I_c:
            raise ArgumentError("triple point must lie below the critical stability")
        meeting = [abs(self.curve_price(k, trip.I_t) - trip.P_t) for k in CurveKind]
        if max(meeting) > tol.meeting:
            raise ArgumentError(f"boundary curves do not meet at the triple point: {meeting}")
        inc = self.curve(CurveKind.INCREASE_DECREASE)
        if (inc.I[-1], inc.P[-1]) != (crit.I_c, crit.P_c):
            raise ArgumentError("IncreaseDecrease must end at the critical point")
        if inc.endpoints[0] != trip.I_t:
            raise ArgumentError("IncreaseDecrease must start at the triple point")
        boom = self.curve(CurveKind.BOOM_CRISIS)
        if boom.endpoints[1] != trip.I_t:
            raise ArgumentError("BoomCrisis must end at the triple point")
        rec = self.curve(CurveKind.RECOVERY_RECESSION)
        if rec.endpoints[0] != trip.I_t:
            raise ArgumentError("RecoveryRecession must start at the triple point")
        inner = inc.I[1:-1]
        if np.any(self.p_melt(inner) <= inc.P[1:-1]):
            raise ArgumentError("RecoveryRecession must lie above IncreaseDecrease")
        if np.any(np.diff(inc.P) <= 0):
            raise ArgumentError("saturation prices must increase strictly with I")
        if np.any(np.diff(inc.Q_high - inc.Q_low) >= 0):
            raise ArgumentError("coexistence width must shrink towards the critical point")
        return self


def build_diagram(params, solid=SolidModel(), grid=Grid(), tol=Tolerances(), n_jobs=None):
    """Assemble and validate the full phase diagram.

    Any failure is re-raised as :class:`BuildError` whose ``stage`` is one of
    ``critical``, ``triple-point``, ``increase-decrease``, ``boom-crisis``,
    ``recovery-recession`` or ``validation``.
    """
    stage = "critical"
    try:
        critical = find_critical(params)
        stage = "triple-point"
        triple = find_triple_point(params, solid, tol)
        stage = "increase-decrease"
        inc = trace_increase_decrease(params, triple.I_t, grid.n_increase_decrease, tol, n_jobs)
        stage = "boom-crisis"
        boom = trace_boom_crisis(params, solid, triple, grid.I_min, grid.n_boom_crisis, tol)
        stage = "recovery-recession"
        rec = trace_recovery_recession(params, solid, triple, grid.I_max, grid.n_recovery_recession, tol)
        stage = "validation"
        diagram = PhaseDiagram(critical, triple, (boom, rec, inc), params, solid, grid, tol)
        return diagram.check_invariants()
    except RoegenError as err:
        raise BuildError(f"diagram build failed at stage {stage!r}: {err}", stage) from err


def scaled_params(params, factor):
    """Copy of ``params`` with the attraction ``a`` multiplied by ``factor``."""
    return replace(params, a=params.a * factor)
