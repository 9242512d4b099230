"""Input validation helpers for array-shaped (I, P) and (I, Q) data."""
import numpy as np
from sklearn.utils.validation import check_array

from .exceptions import DomainError


def check_state_array(X, name="X"):
    """Validate an (n, 2) float array of states whose first column is I > 0."""
    X = check_array(X, dtype=np.float64, ensure_2d=True, ensure_all_finite=True, input_name=name)
    if X.shape[1] != 2:
        raise ValueError(f"{name} must have exactly 2 columns (I, P) or (I, Q), got {X.shape[1]}")
    if np.any(X[:, 0] <= 0):
        raise DomainError(f"{name}: stability column I must be > 0")
    return X


def check_path_array(X, name="path"):
    X = check_state_array(X, name)
    if len(X) < 2:
        raise ValueError(f"{name} needs at least 2 samples, got {len(X)}")
    return X
