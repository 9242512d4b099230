import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from roegen.eos import (
    EosParams,
    isotherm,
    price_level,
    price_level_derivatives,
    solve_volume,
    volume_roots,
)
from roegen.equilibrium import find_critical
from roegen.exceptions import ArgumentError, DomainError

from oracles import central_difference, dense_roots


def test_price_level_reduced_critical(reduced):
    assert price_level(reduced, 1.0, 1.0) == pytest.approx(1.0, abs=1e-15)


def test_price_level_ideal(ideal):
    assert price_level(ideal, 1.0, 2.0) == 0.5


def test_price_level_at_floor_names_b(reduced):
    with pytest.raises(DomainError, match="b="):
        price_level(reduced, 1.0, 1.0 / 3.0)


def test_price_level_vectorised(reduced):
    Q = np.array([0.5, 1.0, 2.0])
    P = price_level(reduced, 1.0, Q)
    assert P.shape == (3,)
    assert P[1] == pytest.approx(1.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(a=0.0, b=1.0),
        dict(a=1.0, b=0.0),
        dict(R=0.0),
        dict(c=-1.0),
        dict(a=1.0, b=0.0, kind="Ideal"),
    ],
)
def test_params_invariants(kwargs):
    with pytest.raises(ArgumentError):
        EosParams(**kwargs)


def test_derivatives_at_critical(reduced):
    d1, d2, dI = price_level_derivatives(reduced, 1.0, 1.0)
    assert d1 == pytest.approx(0.0, abs=1e-12)
    assert d2 == pytest.approx(0.0, abs=1e-12)
    assert dI == pytest.approx(4.0)


def test_derivatives_ideal(ideal):
    assert price_level_derivatives(ideal, 1.0, 2.0) == pytest.approx((-0.25, 0.25, 0.5))


def _fd_derivatives(params, I, Q, h=1e-6):
    d1 = central_difference(lambda q: price_level(params, I, q), Q, h)
    d2 = central_difference(
        lambda q: central_difference(lambda r: price_level(params, I, r), q, 1e-4), Q, 1e-4
    )
    dI = central_difference(lambda i: price_level(params, i, Q), I, h)
    return d1, d2, dI


def test_derivatives_match_finite_differences(reduced):
    got = price_level_derivatives(reduced, 0.9, 2.0)
    want = _fd_derivatives(reduced, 0.9, 2.0)
    assert got[0] == pytest.approx(want[0], abs=1e-6)
    assert got[1] == pytest.approx(want[1], abs=1e-6)
    assert got[2] == pytest.approx(want[2], abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(I=st.floats(0.3, 2.0), Q=st.floats(0.6, 5.0))
def test_derivatives_property(reduced, I, Q):
    d1, _, dI = price_level_derivatives(reduced, I, Q)
    fd1 = central_difference(lambda q: price_level(reduced, I, q), Q)
    fdI = central_difference(lambda i: price_level(reduced, i, Q), I)
    assert d1 == pytest.approx(fd1, rel=1e-6, abs=1e-6)
    assert dI == pytest.approx(fdI, rel=1e-6)


def test_isotherm_endpoints(reduced):
    rows = isotherm(reduced, 1.0, 0.5, 3.0, 3)
    assert rows.shape == (3, 2)
    assert rows[0, 0] == 0.5 and rows[-1, 0] == 3.0
    assert rows[0, 1] == price_level(reduced, 1.0, 0.5)
    assert rows[-1, 1] == price_level(reduced, 1.0, 3.0)


def test_isotherm_supercritical_monotone(reduced):
    P = isotherm(reduced, 1.2, 0.4, 10.0, 10**4)[:, 1]
    assert np.all(np.diff(P) < 0)


def test_isotherm_subcritical_loop(reduced):
    P = isotherm(reduced, 0.85, 0.4, 4.0, 10**4)[:, 1]
    signs = np.sign(np.diff(P))
    assert np.count_nonzero(signs[1:] != signs[:-1]) == 2


@pytest.mark.parametrize("n", [1, 0, 2.5])
def test_isotherm_rejects_bad_count(reduced, n):
    with pytest.raises(ArgumentError):
        isotherm(reduced, 1.0, 0.5, 3.0, n)


def test_solve_volume_triple_root(reduced):
    assert volume_roots(reduced, 1.0, 1.0) == [(1.0, 3)]
    assert solve_volume(reduced, 1.0, 1.0) == [1.0]


def test_solve_volume_ideal(ideal):
    assert solve_volume(ideal, 2.0, 4.0) == [0.5]


def test_solve_volume_three_roots_match_dense_scan(reduced):
    roots = solve_volume(reduced, 0.9, 0.6)
    oracle = dense_roots(3.0, 1.0 / 3.0, 8.0 / 3.0, 0.9, 0.6)
    assert len(roots) == 3 == len(oracle)
    np.testing.assert_allclose(roots, oracle, rtol=1e-10)


@settings(max_examples=200, deadline=None)
@given(I=st.floats(0.2, 1.5), P=st.floats(1e-3, 5.0))
def test_root_residual_bound(reduced, I, P):
    roots = solve_volume(reduced, I, P)
    assert roots == sorted(roots)
    assert 1 <= len(roots) <= 3
    for q in roots:
        assert q > reduced.b
        assert abs(price_level(reduced, I, q) - P) <= 1e-12 * max(1.0, P)


def test_root_count_law(reduced):
    I_c = find_critical(reduced).I_c
    for I in np.linspace(0.3, 2.0, 50):
        counts = [len(solve_volume(reduced, I, P)) for P in np.linspace(0.01, 3.0, 50)]
        if I < I_c:
            # a three-root window exists: probe around the loop's own price range
            Pw = isotherm(reduced, I, 0.4, 20.0, 4000)[:, 1]
            d = np.diff(Pw)
            k = np.nonzero(np.sign(d[:-1]) != np.sign(d[1:]))[0]
            p_mid = 0.5 * (max(Pw[k[0] + 1], 0.0) + Pw[k[1] + 1])
            assert len(solve_volume(reduced, I, p_mid)) == 3
        else:
            assert set(counts) == {1}


def test_ideal_is_small_ab_limit():
    vdw = EosParams(a=1e-8, b=1e-8, R=1.0)
    ideal = EosParams.ideal(R=1.0)
    I, Q = np.meshgrid(np.linspace(0.5, 2.0, 7), np.linspace(0.5, 4.0, 7))
    np.testing.assert_allclose(price_level(vdw, I, Q), price_level(ideal, I, Q), rtol=1e-6)
