import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from roegen.exceptions import ArgumentError
from roegen.fields import (
    FieldPath,
    FieldState,
    field_work,
    field_work_closed_form,
    magnetization,
    polarization,
    read_field_csv,
)

vectors = arrays(np.float64, (6, 3), elements=st.floats(-5, 5))


@pytest.mark.parametrize(
    "chi, e, expected",
    [(0.0, (4, 5, 6), (0, 0, 0)), (2.0, (1, 0, 0), (2, 0, 0)), (1.0, (1, 2, 3), (1, 2, 3))],
)
def test_polarization(chi, e, expected):
    np.testing.assert_array_equal(polarization(FieldState(e, (0, 0, 0), chi_e=chi)), expected)


@pytest.mark.parametrize(
    "chi, h, expected",
    [(0.0, (1, 1, 1), (0, 0, 0)), (3.0, (0, 1, 0), (0, 3, 0)), (1.0, (-1, -1, -1), (-1, -1, -1))],
)
def test_magnetization(chi, h, expected):
    np.testing.assert_array_equal(magnetization(FieldState((0, 0, 0), h, chi_m=chi)), expected)


def test_negative_susceptibility():
    with pytest.raises(ArgumentError):
        FieldState((0, 0, 0), (0, 0, 0), chi_e=-1.0)


def test_closed_loop_work_vanishes():
    t = np.linspace(0, 2 * np.pi, 4097)
    e = np.column_stack([np.cos(t), np.sin(t), 0.3 * np.sin(2 * t)])
    h = np.column_stack([np.sin(t), 0 * t, np.cos(t)])
    e[-1], h[-1] = e[0], h[0]
    assert abs(field_work(FieldPath(e, h), 1.3, 0.7)) <= 1e-10


def test_ramp_work():
    e = np.column_stack([np.linspace(0, 2, 1001), np.zeros(1001), np.zeros(1001)])
    path = FieldPath(e, np.zeros_like(e))
    assert field_work(path, 1.0, 0.0) == pytest.approx(2.0, rel=1e-12)
    assert field_work(path.refine(2), 1.0, 0.0) == pytest.approx(field_work(path, 1.0, 0.0), rel=1e-12)


@given(e=vectors, h=vectors)
def test_zero_susceptibility(e, h):
    assert field_work(FieldPath(e, h), 0.0, 0.0) == 0.0


@settings(deadline=None)
@given(e=vectors, h=vectors, chi_e=st.floats(0, 3), chi_m=st.floats(0, 3))
def test_quadratic_scaling(e, h, chi_e, chi_m):
    w1 = field_work(FieldPath(e, h), chi_e, chi_m)
    w2 = field_work(FieldPath(2 * e, 2 * h), chi_e, chi_m)
    assert w2 == pytest.approx(4 * w1, rel=1e-9, abs=1e-9)
    assert w1 == pytest.approx(field_work_closed_form(FieldPath(e, h), chi_e, chi_m), rel=1e-9, abs=1e-9)


@given(e=vectors, h=vectors, chi_e=st.floats(0, 3), chi_m=st.floats(0, 3))
def test_additivity(e, h, chi_e, chi_m):
    first = FieldPath(e[:3], h[:3])
    second = FieldPath(e[2:], h[2:])
    whole = first.concat(second)
    total = field_work(first, chi_e, chi_m) + field_work(second, chi_e, chi_m)
    assert field_work(whole, chi_e, chi_m) == pytest.approx(total, abs=1e-12 * max(1.0, abs(total)))


def test_path_too_short():
    with pytest.raises(ArgumentError):
        FieldPath([[0, 0, 0]], [[0, 0, 0]])


def test_read_field_csv():
    text = "ex,ey,ez,hx,hy,hz\n0,0,0,0,0,0\n1,0,0,0,2,0\n"
    path = read_field_csv(io.StringIO(text))
    assert len(path) == 2
    np.testing.assert_array_equal(path.h[1], [0, 2, 0])
    with pytest.raises(ArgumentError):
        read_field_csv(io.StringIO("e,h\n1,2\n"))
