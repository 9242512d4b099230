"""Scikit-learn compatible front end.

:class:`PhaseDiagramClassifier` builds a phase diagram in ``fit`` and labels
(I, P) points in ``predict``::

    clf = PhaseDiagramClassifier(I_t=0.55).fit()
    clf.predict([[0.9, 0.3], [0.4, 5.0]])   # -> ['Income', 'Inflation']
"""
import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_path_array, check_state_array
from .core import Phase, classify_phase
from .eos import EosParams, ModelKind
from .equilibrium import Grid, SolidModel, Tolerances, build_diagram, maxwell_construction
from .process import simulate

__all__ = ["PhaseDiagramClassifier"]


class PhaseDiagramClassifier(ClassifierMixin, BaseEstimator):
    """Phase labels of an economic equation of state.

    Parameters mirror the configuration file: equation-of-state coefficients
    (``a``, ``b``, ``R``, ``c``, ``kind``), the inflation-phase anchor
    (``I_t``, ``L_melt``, ``dQ_melt``, ``L_sub``), the stability range and
    sample counts of the traced curves, and ``n_jobs`` for parallel Maxwell
    constructions.

    Attributes
    ----------
    diagram_ : PhaseDiagram
    classes_ : ndarray of str
        Phase labels, plus boundary-curve names for points lying on a curve.
    critical_point_, triple_point_
    """

    def __init__(
        self, a=3.0, b=1.0 / 3.0, R=8.0 / 3.0, c=1.5, kind="VanDerWaals",
        I_t=0.55, L_melt=0.5, dQ_melt=0.05, L_sub=2.0,
        I_min=0.3, I_max=1.2, n_samples=128, boundary_tol=1e-9, n_jobs=None,
    ):
        self.a = a
        self.b = b
        self.R = R
        self.c = c
        self.kind = kind
        self.I_t = I_t
        self.L_melt = L_melt
        self.dQ_melt = dQ_melt
        self.L_sub = L_sub
        self.I_min = I_min
        self.I_max = I_max
        self.n_samples = n_samples
        self.boundary_tol = boundary_tol
        self.n_jobs = n_jobs

    def _params(self):
        return EosParams(a=self.a, b=self.b, R=self.R, c=self.c, kind=ModelKind(self.kind))

    def fit(self, X=None, y=None):
        """Build the phase diagram. ``X`` and ``y`` are ignored."""
        n = int(self.n_samples)
        self.diagram_ = build_diagram(
            self._params(),
            SolidModel(self.I_t, self.L_melt, self.dQ_melt, self.L_sub),
            Grid(n, n, n, float(self.I_min), float(self.I_max)),
            Tolerances(boundary=self.boundary_tol),
            n_jobs=self.n_jobs,
        )
        self.critical_point_ = self.diagram_.critical
        self.triple_point_ = self.diagram_.triple
        self.classes_ = np.array([p.value for p in Phase] + ["BoomCrisis", "RecoveryRecession", "IncreaseDecrease"])
        return self

    def predict(self, X):
        """Label each (I, P) row of ``X``."""
        check_is_fitted(self, "diagram_")
        X = check_state_array(X)
        return np.array([classify_phase(row, self.diagram_).value for row in X], dtype=object)

    def transform(self, X):
        """Signed distance in P of each (I, P) row from the saturation curve.

        Columns: P - P_sat(I), P - P_melt(I), P - P_sub(I); entries are NaN
        outside the stability range of the corresponding curve.
        """
        check_is_fitted(self, "diagram_")
        X = check_state_array(X)
        d = self.diagram_
        out = np.full((len(X), 3), np.nan)
        for col, kind in enumerate(("IncreaseDecrease", "RecoveryRecession", "BoomCrisis")):
            lo, hi = d.curve_domain(kind)
            mask = (X[:, 0] >= lo) & (X[:, 0] <= hi)
            out[mask, col] = X[mask, 1] - d.curve_price(kind, X[mask, 0])
        return out

    def saturation(self, I):
        """Maxwell construction at stability ``I`` on the fitted model."""
        check_is_fitted(self, "diagram_")
        return maxwell_construction(self.diagram_.params, I, self.diagram_.tolerances)

    def simulate(self, path):
        """Phase labels and transition events along an (I, P) polyline."""
        check_is_fitted(self, "diagram_")
        return simulate(self.diagram_, check_path_array(path, "path"))
