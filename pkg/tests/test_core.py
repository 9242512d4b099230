import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from roegen.core import (
    DICTIONARY,
    DictionaryEntry,
    EconomicState,
    Phase,
    classify_phase,
    dictionary_csv,
    dictionary_lookup,
    extend_dictionary,
    phase_name,
)
from roegen.equilibrium import CurveKind
from roegen.exceptions import ArgumentError, DictionaryLookupError, DomainError, PhaseRangeError


@pytest.mark.parametrize(
    "symbol, econ_name",
    [("T", "internal politics stability"), ("S", "entropy"), ("P", "price level"), ("U", "growth potential")],
)
def test_lookup_thermo_to_econ(symbol, econ_name):
    assert dictionary_lookup(symbol, "thermo->econ").econ_name == econ_name


def test_lookup_unknown_lists_symbols():
    with pytest.raises(DictionaryLookupError, match="available: U, T"):
        dictionary_lookup("Z")
    with pytest.raises(ArgumentError):
        dictionary_lookup("")
    with pytest.raises(ArgumentError):
        dictionary_lookup("T", "sideways")


@pytest.mark.parametrize("entry", DICTIONARY, ids=lambda e: e.thermo_symbol)
def test_round_trip(entry):
    back = dictionary_lookup(entry.econ_symbol, "econ→thermo")
    assert dictionary_lookup(back.thermo_symbol, "thermo→econ") == entry


def test_dictionary_csv():
    lines = dictionary_csv().splitlines()
    assert lines[0] == "thermo_symbol,thermo_name,econ_symbol,econ_name"
    symbols = [line.split(",")[0] for line in lines[1:]]
    assert symbols == sorted(symbols)
    assert len(symbols) == len(DICTIONARY)


def test_extend_dictionary():
    extra = {"thermo_symbol": "F", "thermo_name": "free energy", "econ_symbol": "F_e", "econ_name": "free growth"}
    entries = extend_dictionary([extra])
    assert dictionary_lookup("F", entries=entries).econ_symbol == "F_e"
    with pytest.raises(ArgumentError):
        extend_dictionary([DictionaryEntry("T", "x", "y", "z")])


def test_phase_names():
    assert phase_name(Phase.LIQUIDITY) == "monetary policy as liquidity"
    assert phase_name("Inflation") == "inflation"


def test_state_validation(reduced):
    with pytest.raises(DomainError):
        EconomicState(I=0.0, P=1.0)
    s = EconomicState.on_surface(reduced, 1.0, 1.0, with_potentials=True)
    assert s.P == pytest.approx(1.0)
    assert s.potentials.U_g == pytest.approx(1.0)


def test_supercritical(diagram):
    c = diagram.critical
    assert classify_phase((1.1 * c.I_c, 1.1 * c.P_c), diagram) is Phase.SUPERCRITICAL
    assert classify_phase((1.1 * c.I_c, 0.5 * c.P_c), diagram) is Phase.INCOME


def test_income_below_saturation(diagram):
    I = diagram.triple.I_t * 1.01
    assert classify_phase((I, 0.5 * diagram.p_sat(I)), diagram) is Phase.INCOME
    assert classify_phase((I, 2.0 * diagram.p_sat(I)), diagram) is Phase.LIQUIDITY


def test_inflation_at_low_stability(diagram):
    I = diagram.triple.I_t * 0.6
    assert classify_phase((I, 10 * diagram.p_sub(I)), diagram) is Phase.INFLATION
    assert classify_phase(EconomicState(I, 0.1 * diagram.p_sub(I)), diagram) is Phase.INCOME


def test_boundary_points(diagram):
    assert classify_phase((0.4, diagram.p_sub(0.4)), diagram) is CurveKind.BOOM_CRISIS
    assert classify_phase((0.8, diagram.p_melt(0.8)), diagram) is CurveKind.RECOVERY_RECESSION
    assert classify_phase((0.8, diagram.p_sat(0.8)), diagram) is CurveKind.INCREASE_DECREASE


def test_out_of_range(diagram):
    with pytest.raises(PhaseRangeError, match=r"\[0.3, 1.2\]") as info:
        classify_phase((2.0, 1.0), diagram)
    assert info.value.interval == (0.3, 1.2)
    with pytest.raises(DomainError):
        classify_phase((-1.0, 1.0), diagram)


def _region(diagram, I, P):
    """Independent sign bookkeeping against the three curves."""
    if I < diagram.triple.I_t:
        return "Inflation" if P > diagram.p_sub(I) else "Income"
    if P > diagram.p_melt(I):
        return "Inflation"
    if I < diagram.critical.I_c:
        return "Liquidity" if P > diagram.p_sat(I) else "Income"
    return "Supercritical" if P > diagram.critical.P_c else "Income"


@settings(max_examples=200, deadline=None)
@given(I=st.floats(0.3, 1.2), P=st.floats(1e-4, 8.0))
def test_piecewise_constant(diagram, I, P):
    label = classify_phase((I, P), diagram)
    if isinstance(label, CurveKind):
        return
    assert label.value == _region(diagram, I, P)
    for I2, P2 in ((I, P * (1 + 1e-6)), (min(I * (1 + 1e-7), 1.2), P)):
        other = classify_phase((I2, P2), diagram)
        if not isinstance(other, CurveKind) and _region(diagram, I2, P2) == label.value:
            assert other is label


def test_deterministic(diagram):
    pts = np.column_stack([np.linspace(0.3, 1.2, 50), np.linspace(0.01, 3, 50)])
    assert [classify_phase(p, diagram) for p in pts] == [classify_phase(p, diagram) for p in pts]
