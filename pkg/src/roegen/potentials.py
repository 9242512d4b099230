"""Entropy, growth energy and exchange potential, plus the law checks.

The growth energy U_g obeys the economic Gibbs-Pfaff relation

    dU_g = I dE - P dQ - sum_k nu_k dN_k

with entropy E = R ln(Q - b) + c R ln I + E0 and U_g = c R I - a/Q + U0.
Production of goods along a path is dq = I dE when reversible and strictly
less when a per-step dissipation is charged.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .eos import price_level, _check_state
from .exceptions import ArgumentError
from .fields import field_work

__all__ = [
    "PotentialState",
    "QuasiStaticPath",
    "SecondLawVerdict",
    "ThirdLawResult",
    "entropy",
    "growth_energy",
    "exchange_potential",
    "potential_state",
    "work_integral",
    "pfaff_residual",
    "pfaff_loop_residual",
    "growth_energy_change",
    "production_along_path",
    "wealth_along_path",
    "second_law_check",
    "third_law_probe",
]


def _entropy(R, b, c, I, Q, E0):
    return R * np.log(Q - b) + c * R * np.log(I) + E0


def entropy(params, I, Q, E0=0.0):
    I, Q = _check_state(params, I, Q)
    E = _entropy(params.R, params.b, params.c, I, Q, E0)
    return float(E) if np.ndim(E) == 0 else E


def growth_energy(params, I, Q, U0=0.0):
    I, Q = _check_state(params, I, Q)
    U = params.c * params.R * I - params.a / Q + U0
    return float(U) if np.ndim(U) == 0 else U


def exchange_potential(params, I, Q, E0=0.0, U0=0.0):
    """Gibbs analog: U_g - I*E + P*Q. Equal on coexisting branches."""
    return (
        growth_energy(params, I, Q, U0)
        - np.asarray(I) * entropy(params, I, Q, E0)
        + price_level(params, I, Q) * np.asarray(Q)
    )


@dataclass(frozen=True)
class PotentialState:
    E: float
    U_g: float
    G_x: float
    sectors: tuple = ()

    def __post_init__(self):
        for name in ("E", "U_g", "G_x"):
            if not np.isfinite(getattr(self, name)):
                raise ArgumentError(f"{name} is not finite")


def potential_state(params, I, Q, sectors=(), E0=0.0, U0=0.0):
    """All potentials at one state; ``sectors`` holds (nu_k, N_k) pairs."""
    sectors = tuple((float(nu), float(n)) for nu, n in sectors)
    if any(n < 0 for _, n in sectors):
        raise ArgumentError("sector commodity counts must be >= 0")
    return PotentialState(
        E=entropy(params, I, Q, E0),
        U_g=growth_energy(params, I, Q, U0),
        G_x=float(exchange_potential(params, I, Q, E0, U0)),
        sectors=sectors,
    )


@dataclass(frozen=True)
class QuasiStaticPath:
    """Ordered (I, Q) samples of a quasi-static process.

    ``dissipation`` is the per-step loss charged when ``reversible`` is
    False. ``sectors`` optionally holds commodity counts N_k with shape
    (n_samples, n_sectors).
    """

    I: np.ndarray
    Q: np.ndarray
    reversible: bool = True
    dissipation: float = 0.0
    sectors: np.ndarray = field(default=None)

    def __post_init__(self):
        I = np.array(self.I, dtype=float).reshape(-1)
        Q = np.array(self.Q, dtype=float).reshape(-1)
        if I.shape != Q.shape:
            raise ArgumentError(f"I and Q must have equal length, got {I.shape} and {Q.shape}")
        if len(I) < 2:
            raise ArgumentError(f"a path needs >= 2 samples, got {len(I)}")
        if self.dissipation < 0:
            raise ArgumentError(f"dissipation must be >= 0, got {self.dissipation}")
        I.flags.writeable = False
        Q.flags.writeable = False
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "dissipation", float(self.dissipation))
        if self.sectors is not None:
            N = np.array(self.sectors, dtype=float)
            if N.ndim == 1:
                N = N[:, None]
            if N.shape[0] != len(I):
                raise ArgumentError("sector counts must have one row per sample")
            if np.any(N < 0):
                raise ArgumentError("sector commodity counts must be >= 0")
            N.flags.writeable = False
            object.__setattr__(self, "sectors", N)

    def __len__(self):
        return len(self.I)

    @property
    def closed(self):
        return self.I[0] == self.I[-1] and self.Q[0] == self.Q[-1]

    @property
    def n_steps(self):
        return len(self.I) - 1

    def reversed(self):
        N = None if self.sectors is None else self.sectors[::-1]
        return QuasiStaticPath(self.I[::-1], self.Q[::-1], self.reversible, self.dissipation, N)

    def refine(self, segments):
        """Polyline resampled with about ``segments`` pieces, split evenly over edges."""
        k = max(1, int(segments) // self.n_steps)
        t = np.linspace(0.0, 1.0, k + 1)[:-1]
        def sub(x):
            pieces = x[:-1, None] + t[None, :] * np.diff(x)[:, None]
            return np.concatenate([pieces.reshape(-1), x[-1:]])
        N = None
        if self.sectors is not None:
            N = np.column_stack([sub(col) for col in self.sectors.T])
        return QuasiStaticPath(sub(self.I), sub(self.Q), self.reversible, self.dissipation, N)


def _midpoints(params, path):
    I_mid = 0.5 * (path.I[1:] + path.I[:-1])
    Q_mid = 0.5 * (path.Q[1:] + path.Q[:-1])
    return I_mid, Q_mid, price_level(params, I_mid, Q_mid)


def _reversible_production(params, path, E0=0.0):
    E = entropy(params, path.I, path.Q, E0)
    I_mid = 0.5 * (path.I[1:] + path.I[:-1])
    return float(np.sum(I_mid * np.diff(E)))


def work_integral(params, path):
    """Midpoint-rule value of the line integral of I dE - P dQ."""
    _check_state(params, path.I, path.Q)
    I_mid, _, P_mid = _midpoints(params, path)
    E = entropy(params, path.I, path.Q)
    return float(np.sum(I_mid * np.diff(E) - P_mid * np.diff(path.Q)))


def pfaff_residual(params, path, segments=None):
    """|integral of (I dE - P dQ) - (U_g(end) - U_g(start))| along ``path``.

    With ``segments`` given, the polyline is first resampled into that many
    pieces; the residual then shrinks as O(1/segments**2).
    """
    if segments is not None:
        path = path.refine(segments)
    dU = growth_energy(params, path.I[-1], path.Q[-1]) - growth_energy(params, path.I[0], path.Q[0])
    return abs(work_integral(params, path) - dU)


def pfaff_loop_residual(params, loop, segments=None):
    """Exactness check of the Gibbs-Pfaff form on a closed reversible loop."""
    if not loop.closed:
        raise ArgumentError("Pfaff loop residual needs a closed path (first sample == last)")
    if not loop.reversible:
        raise ArgumentError("Pfaff loop residual needs a reversible path")
    return pfaff_residual(params, loop, segments)


def growth_energy_change(params, path, nu=()):
    """Midpoint estimate of dU_g including sector terms -sum nu_k dN_k (constant nu_k)."""
    dU = work_integral(params, path)
    nu = np.asarray(nu, dtype=float).reshape(-1)
    if nu.size:
        if path.sectors is None or path.sectors.shape[1] != nu.size:
            raise ArgumentError("path must carry one commodity-count column per sector potential")
        dU -= float(nu @ (path.sectors[-1] - path.sectors[0]))
    return dU


def production_along_path(params, path, E0=0.0):
    """Cumulative production of goods: sum of I_mid dE, minus dissipation if irreversible."""
    if path.dissipation < 0:
        raise ArgumentError(f"dissipation must be >= 0, got {path.dissipation}")
    q = _reversible_production(params, path, E0)
    if not path.reversible:
        q -= path.n_steps * path.dissipation
    return q


def wealth_along_path(params, path, fields=None, chi_e=0.0, chi_m=0.0):
    """Cumulative wealth sum P_mid dQ, plus field work when ``fields`` is given."""
    _, _, P_mid = _midpoints(params, path)
    W = float(np.sum(P_mid * np.diff(path.Q)))
    if fields is not None:
        if len(fields) != len(path):
            raise ArgumentError(
                f"field trajectory has {len(fields)} samples, path has {len(path)}"
            )
        W += field_work(fields, chi_e, chi_m)
    return W


class SecondLawVerdict(str, Enum):
    REVERSIBLE_EQUALITY = "reversible-equality"
    IRREVERSIBLE_STRICT = "irreversible-strict"
    VIOLATION = "violation"


def second_law_check(params, path, production=None, tol=1e-12):
    """Compare production with the reversible bound sum I_mid dE.

    ``production`` overrides the computed production (for auditing externally
    reported figures). Without it the deficit is the charged dissipation,
    which keeps any positive dissipation strictly visible.
    """
    bound = _reversible_production(params, path)
    if production is None:
        deficit = path.n_steps * path.dissipation if not path.reversible else 0.0
    else:
        deficit = bound - float(production)
    scale = tol * max(1.0, abs(bound))
    if deficit < -scale:
        return SecondLawVerdict.VIOLATION
    if deficit > scale or (production is None and deficit > 0):
        return SecondLawVerdict.IRREVERSIBLE_STRICT
    return SecondLawVerdict.REVERSIBLE_EQUALITY


@dataclass(frozen=True)
class ThirdLawResult:
    I: np.ndarray
    E: np.ndarray
    verdict: str
    log_coefficient: float


def third_law_probe(params, I_sequence, Q, E0=0.0, c=None, tol=1e-9):
    """Tabulate E(I, Q) as I decreases towards 0 and judge the limit.

    ``c`` overrides the model's degrees-of-freedom coefficient (0 is
    allowed here, to probe modified entropy models). The reported
    coefficient is the least-squares slope of E against ln I.
    """
    I = np.asarray(I_sequence, dtype=float).reshape(-1)
    if len(I) < 2:
        raise ArgumentError("need at least two stabilities")
    if np.any(~(I > 0)):
        raise ArgumentError(f"all stabilities must be > 0, got {I}")
    if np.any(np.diff(I) >= 0):
        raise ArgumentError("stability sequence must be strictly decreasing")
    _check_state(params, I, Q)
    c = params.c if c is None else float(c)
    E = _entropy(params.R, params.b, c, I, float(Q), E0)
    slope = float(np.polyfit(np.log(I), E, 1)[0])
    if np.all(np.abs(E) <= tol) or (abs(E[-1]) <= tol and abs(slope) <= tol):
        verdict = "satisfied"
    elif abs(slope) > tol and np.all(np.diff(np.abs(E)) > 0):
        verdict = "violated (diverges)"
    else:
        verdict = "inconclusive"
    E.flags.writeable = False
    return ThirdLawResult(I=I, E=E, verdict=verdict, log_coefficient=slope)
