"""State points, phase labels and the thermodynamics-economics dictionary."""
import csv
import io
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import ArgumentError, DictionaryLookupError, DomainError, PhaseRangeError

__all__ = [
    "EconomicState",
    "Phase",
    "DictionaryEntry",
    "DICTIONARY",
    "dictionary_lookup",
    "dictionary_csv",
    "extend_dictionary",
    "classify_phase",
    "phase_name",
]


class Phase(str, Enum):
    INFLATION = "Inflation"
    LIQUIDITY = "Liquidity"
    INCOME = "Income"
    SUPERCRITICAL = "Supercritical"


@dataclass(frozen=True)
class EconomicState:
    """A point (I, P, Q); P may be left as None and derived from an EOS."""

    I: float
    P: float = None
    Q: float = None
    potentials: object = None

    def __post_init__(self):
        if not self.I > 0:
            raise DomainError(f"stability I must be > 0, got {self.I!r}")
        if self.P is not None and not np.isfinite(self.P):
            raise DomainError(f"price level P must be finite, got {self.P!r}")

    @classmethod
    def on_surface(cls, params, I, Q, with_potentials=False):
        from .eos import price_level
        from .potentials import potential_state

        pots = potential_state(params, I, Q) if with_potentials else None
        return cls(I=float(I), P=price_level(params, I, Q), Q=float(Q), potentials=pots)


@dataclass(frozen=True)
class DictionaryEntry:
    thermo_symbol: str
    thermo_name: str
    econ_symbol: str
    econ_name: str


# Row order follows the source tables: state variables, process variables,
# Gibbs-Pfaff sector terms, field terms, phases, then artifact quantities.
_BUILTIN = (
    DictionaryEntry("U", "internal energy", "G", "growth potential"),
    DictionaryEntry("T", "temperature", "I", "internal politics stability"),
    DictionaryEntry("S", "entropy", "E", "entropy"),
    DictionaryEntry("P", "pressure", "P", "price level"),
    DictionaryEntry("V", "volume", "Q", "volume, structure, quality"),
    DictionaryEntry("W", "mechanical work", "W", "wealth of the system"),
    DictionaryEntry("Q", "heat", "q", "production of goods"),
    DictionaryEntry("mu_k", "chemical potential", "nu_k", "sector potential"),
    DictionaryEntry("N_k", "particle number", "𝒩_k", "sector commodity count"),
    DictionaryEntry("E_vec", "external electric field", "e_vec", "external investment (econo-electric) field"),
    DictionaryEntry("P_vec", "polarization", "p_vec", "initial growth condition field (econo-polarization field)"),
    DictionaryEntry("H_vec", "external magnetic field", "h_vec", "external growth field (econo-magnetic field)"),
    DictionaryEntry("M_vec", "magnetizing", "m_vec", "growth (econo-magnetization)"),
    DictionaryEntry("solid", "solid", "inflation", "inflation"),
    DictionaryEntry("fluid", "fluid", "liquidity", "monetary policy as liquidity"),
    DictionaryEntry("gas", "gas", "income", "income"),
    DictionaryEntry("G", "Gibbs free energy", "Γ", "exchange potential"),
    DictionaryEntry("L", "latent heat", "latent_q", "latent production of goods"),
)

DICTIONARY = _BUILTIN


def _check_unique(entries):
    for column in ("thermo_symbol", "econ_symbol"):
        seen = [getattr(e, column) for e in entries]
        dupes = sorted({s for s in seen if seen.count(s) > 1})
        if dupes:
            raise ArgumentError(f"duplicate {column} in dictionary: {dupes}")


_check_unique(_BUILTIN)


def extend_dictionary(extra, base=_BUILTIN):
    """Return ``base`` plus user entries; built-in symbols cannot be redefined."""
    extra = tuple(DictionaryEntry(**e) if isinstance(e, dict) else e for e in extra)
    entries = tuple(base) + extra
    _check_unique(entries)
    return entries


def dictionary_lookup(symbol, direction="thermo->econ", entries=None):
    """Find the entry whose thermodynamic (or economic) symbol is ``symbol``.

    ``direction`` is ``"thermo->econ"`` or ``"econ->thermo"``.
    """
    if not symbol:
        raise ArgumentError("symbol must be non-empty")
    entries = DICTIONARY if entries is None else entries
    if direction in ("thermo->econ", "thermo→econ"):
        column = "thermo_symbol"
    elif direction in ("econ->thermo", "econ→thermo"):
        column = "econ_symbol"
    else:
        raise ArgumentError(f"unknown direction {direction!r}")
    for entry in entries:
        if getattr(entry, column) == symbol:
            return entry
    available = ", ".join(getattr(e, column) for e in entries)
    raise DictionaryLookupError(f"unknown symbol {symbol!r}; available: {available}")


def dictionary_csv(entries=None):
    """The dictionary as CSV text, rows sorted by thermodynamic symbol."""
    entries = DICTIONARY if entries is None else entries
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["thermo_symbol", "thermo_name", "econ_symbol", "econ_name"])
    for e in sorted(entries, key=lambda e: e.thermo_symbol):
        writer.writerow([e.thermo_symbol, e.thermo_name, e.econ_symbol, e.econ_name])
    return out.getvalue()


def phase_name(phase):
    """Economic wording of a phase label, taken from the dictionary."""
    symbol = {
        Phase.INFLATION: "inflation",
        Phase.LIQUIDITY: "liquidity",
        Phase.INCOME: "income",
    }.get(Phase(phase))
    if symbol is None:
        return "supercritical monetary policy as liquidity"
    return dictionary_lookup(symbol, "econ->thermo").econ_name


def _on(P, P_curve, rtol):
    return abs(P - P_curve) <= rtol * abs(P_curve)


def classify_phase(state, diagram):
    """Label an (I, P) point against a built phase diagram.

    Returns a :class:`Phase`, or a
    :class:`~roegen.equilibrium.CurveKind` when the point lies on a boundary
    within the diagram's boundary tolerance.
    """
    from .equilibrium import CurveKind

    if isinstance(state, EconomicState):
        I, P = state.I, state.P
    else:
        I, P = state
    I, P = float(I), float(P)
    if not I > 0:
        raise DomainError(f"stability I must be > 0, got {I!r}")
    lo, hi = diagram.i_range
    if not lo <= I <= hi:
        raise PhaseRangeError(f"I={I!r} outside the diagram range [{lo!r}, {hi!r}]", (lo, hi))
    rtol = diagram.tolerances.boundary
    I_t = diagram.triple.I_t
    I_c, P_c = diagram.critical.I_c, diagram.critical.P_c

    if I < I_t:
        P_sub = diagram.p_sub(I)
        if _on(P, P_sub, rtol):
            return CurveKind.BOOM_CRISIS
        return Phase.INFLATION if P > P_sub else Phase.INCOME

    P_melt = diagram.p_melt(I)
    if _on(P, P_melt, rtol):
        return CurveKind.RECOVERY_RECESSION
    if P > P_melt:
        return Phase.INFLATION
    if I < I_c:
        P_sat = diagram.p_sat(I)
        if _on(P, P_sat, rtol):
            return CurveKind.INCREASE_DECREASE
        return Phase.LIQUIDITY if P > P_sat else Phase.INCOME
    return Phase.SUPERCRITICAL if P > P_c else Phase.INCOME
