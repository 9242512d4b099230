"""Phase-equilibrium computations for Roegenian economic systems."""
from .core import (
    DICTIONARY,
    DictionaryEntry,
    EconomicState,
    Phase,
    classify_phase,
    dictionary_lookup,
)
from .eos import EosParams, ModelKind, isotherm, price_level, price_level_derivatives, solve_volume
from .equilibrium import (
    BoundaryCurve,
    CoexistencePoint,
    CriticalPoint,
    CurveKind,
    Grid,
    PhaseDiagram,
    SolidModel,
    Tolerances,
    TriplePoint,
    build_diagram,
    clausius_clapeyron_slope,
    find_critical,
    find_triple_point,
    maxwell_construction,
    trace_boom_crisis,
    trace_increase_decrease,
    trace_recovery_recession,
)
from .estimator import PhaseDiagramClassifier
from .process import SimulationReport, TransitionEvent, detect_crossing, simulate

__version__ = "0.1.0"
