import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from roegen.estimator import PhaseDiagramClassifier


@pytest.fixture(scope="module")
def clf():
    return PhaseDiagramClassifier(n_samples=48).fit()


def test_params_and_clone():
    est = PhaseDiagramClassifier(I_t=0.6, n_jobs=2)
    params = est.get_params()
    assert params["I_t"] == 0.6 and params["n_jobs"] == 2
    twin = clone(est)
    assert twin.get_params() == params
    assert twin.set_params(L_sub=3.0).L_sub == 3.0


def test_predict_before_fit():
    with pytest.raises(NotFittedError):
        PhaseDiagramClassifier().predict([[0.9, 0.3]])


def test_fit_predict(clf):
    assert clf.critical_point_.I_c == pytest.approx(1.0, abs=1e-9)
    labels = clf.predict([[0.9, 0.3], [0.4, 5.0], [0.8, 1.0], [1.1, 1.2]])
    assert list(labels) == ["Income", "Inflation", "Liquidity", "Supercritical"]
    assert set(labels) <= set(clf.classes_)


def test_predict_validation(clf):
    with pytest.raises(ValueError):
        clf.predict([[0.9, 0.3, 1.0]])
    with pytest.raises(ValueError):
        clf.predict([[-0.9, 0.3]])


def test_transform(clf):
    X = np.array([[0.8, 1.0], [0.4, 1.0]])
    T = clf.transform(X)
    assert T.shape == (2, 3)
    assert T[0, 0] == pytest.approx(1.0 - clf.diagram_.p_sat(0.8))
    assert np.isnan(T[1, 0]) and np.isnan(T[1, 1]) and np.isnan(T[0, 2])


def test_saturation_and_simulate(clf):
    assert clf.saturation(0.9).P_sat == pytest.approx(0.6469983518733514, abs=1e-7)
    report = clf.simulate([[0.8, 0.2], [0.8, 0.6]])
    assert len(report.events) == 1
