"""Work done by the external investment and growth fields.

The investment field e induces econo-polarization p and the growth field h
induces econo-magnetization m. Responses are linear, isotropic and
memoryless: p = chi_e * e, m = chi_m * h.
"""
import csv
from dataclasses import dataclass

import numpy as np

from .exceptions import ArgumentError

__all__ = [
    "FieldState",
    "FieldPath",
    "polarization",
    "magnetization",
    "field_work",
    "field_work_closed_form",
    "read_field_csv",
]

FIELD_CSV_HEADER = ("ex", "ey", "ez", "hx", "hy", "hz")


def _check_susceptibility(name, value):
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise ArgumentError(f"{name} must be finite and >= 0, got {value!r}")
    return value


def _vector(name, v):
    v = np.array(v, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise ArgumentError(f"{name} must be a 3-vector, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class FieldState:
    e: np.ndarray
    h: np.ndarray
    chi_e: float = 0.0
    chi_m: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "e", _vector("e", self.e))
        object.__setattr__(self, "h", _vector("h", self.h))
        object.__setattr__(self, "chi_e", _check_susceptibility("chi_e", self.chi_e))
        object.__setattr__(self, "chi_m", _check_susceptibility("chi_m", self.chi_m))


@dataclass(frozen=True)
class FieldPath:
    """Trajectory of (e, h) samples; ``e`` and ``h`` have shape (n, 3)."""

    e: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        e = np.array(self.e, dtype=float)
        h = np.array(self.h, dtype=float)
        if e.ndim != 2 or e.shape[1] != 3 or h.shape != e.shape:
            raise ArgumentError(
                f"field samples must be two (n, 3) arrays, got {e.shape} and {h.shape}"
            )
        if len(e) < 2:
            raise ArgumentError(f"a field path needs >= 2 samples, got {len(e)}")
        e.flags.writeable = False
        h.flags.writeable = False
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "h", h)

    def __len__(self):
        return len(self.e)

    def concat(self, other):
        """Join two paths that share the junction sample."""
        return FieldPath(np.vstack([self.e, other.e[1:]]), np.vstack([self.h, other.h[1:]]))

    def refine(self, k):
        """Split every segment into ``k`` equal pieces."""
        t = np.linspace(0.0, 1.0, k + 1)[:-1, None, None]
        def sub(x):
            pieces = x[:-1][None] + t * (x[1:] - x[:-1])[None]
            return np.vstack([pieces.transpose(1, 0, 2).reshape(-1, 3), x[-1:]])
        return FieldPath(sub(self.e), sub(self.h))


def polarization(state):
    return state.chi_e * state.e


def magnetization(state):
    return state.chi_m * state.h


def field_work(path, chi_e, chi_m):
    """Field contribution to wealth, sum of e_mid . dp + h_mid . dm over segments."""
    chi_e = _check_susceptibility("chi_e", chi_e)
    chi_m = _check_susceptibility("chi_m", chi_m)
    if len(path) < 2:
        raise ArgumentError("field path shorter than 2 samples")
    e, h = path.e, path.h
    e_mid = 0.5 * (e[1:] + e[:-1])
    h_mid = 0.5 * (h[1:] + h[:-1])
    dp = chi_e * np.diff(e, axis=0)
    dm = chi_m * np.diff(h, axis=0)
    return float(np.sum(e_mid * dp) + np.sum(h_mid * dm))


def field_work_closed_form(path, chi_e, chi_m):
    """Telescoped value (chi_e/2)(|e_end|^2 - |e_0|^2) + (chi_m/2)(|h_end|^2 - |h_0|^2)."""
    e, h = path.e, path.h
    return float(
        0.5 * chi_e * (e[-1] @ e[-1] - e[0] @ e[0])
        + 0.5 * chi_m * (h[-1] @ h[-1] - h[0] @ h[0])
    )


def read_field_csv(fp):
    """Read a field trajectory from a CSV file object with header ex,ey,ez,hx,hy,hz."""
    reader = csv.reader(fp)
    header = tuple(next(reader, ()))
    if header != FIELD_CSV_HEADER:
        raise ArgumentError(f"field CSV header must be {','.join(FIELD_CSV_HEADER)}, got {header}")
    rows = np.array([[float(x) for x in row] for row in reader if row], dtype=float)
    if rows.ndim != 2 or rows.shape[1:] != (6,):
        raise ArgumentError("field CSV must contain six numeric columns per row")
    return FieldPath(rows[:, :3], rows[:, 3:])
