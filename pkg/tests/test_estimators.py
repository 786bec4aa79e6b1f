from fractions import Fraction as F

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from helpers import GOLDEN_TEXT, golden_instance
from upsolve.estimators import UpLcpSolver, UpQpSolver
from upsolve.io import parse_instance
from upsolve.validation import as_rational, check_theta
from upsolve.instances import ParamInterval


def test_params_and_clone():
    est = UpLcpSolver(n_jobs=2, tol="1/1000")
    assert est.get_params()["n_jobs"] == 2
    c = clone(est)
    assert c.get_params() == est.get_params()
    est.set_params(tol=1e-6)
    assert est.tol == 1e-6


def test_fit_predict_golden():
    est = UpLcpSolver().fit(golden_instance())
    assert est.n_pieces_ == 4
    assert [round(float(b), 3) for b in est.breakpoints_] == [-1.535, 0.869, 1.382]
    assert est.predict_exact([0]) == [((F(1, 3), 0), (0, F(2, 3)))]
    pred = est.predict(np.array([0.0, 1.9]))
    assert pred.shape == (2, 4)
    assert np.allclose(pred[0], [1 / 3, 0, 0, 2 / 3])
    assert list(est.transform([-2, 0, 1.2, 2])) == [0, 1, 2, 3]
    assert est.cache_.computations["zz"] == 1


def test_fit_from_text():
    assert UpLcpSolver().fit(GOLDEN_TEXT).n_pieces_ == 4


def test_not_fitted():
    with pytest.raises(NotFittedError):
        UpLcpSolver().predict([0])


def test_theta_validation():
    est = UpLcpSolver().fit(golden_instance())
    with pytest.raises(ValueError):
        est.predict([3])
    with pytest.raises(ValueError):
        est.predict(np.zeros((2, 2)))
    with pytest.raises(TypeError):
        UpLcpSolver().fit(42)


def test_as_rational():
    assert as_rational(0.1) == F(1, 10)
    assert as_rational("2/3") == F(2, 3)
    assert as_rational(np.int64(4)) == 4
    with pytest.raises(ValueError):
        as_rational(float("nan"))
    with pytest.raises(TypeError):
        as_rational(True)
    assert check_theta(np.array([[0.5], [0.25]]), ParamInterval(0, 1)) == [F(1, 2), F(1, 4)]


def test_qp_estimator():
    qp = parse_instance("problem upqp\nn 1\nm 1\ntheta 0 1\nQ 1 1 : 2\nc 1 : -2\nA 1 1 : 1\nb 1 : 1\n")
    est = UpQpSolver().fit(qp)
    assert est.predict([0.5]).tolist() == [[1.0]]
    assert est.objective([F(1, 2)]) == [-1]


def test_lp_estimator():
    lp = "problem uplp\nn 1\nm 1\ntheta -1 1\nc 1 : 0 -1\nA 1 1 : 1\nb 1 : 1\n"
    est = UpQpSolver(linear=True).fit(lp)
    assert est.n_pieces_ == 2
    assert est.predict([-0.5, 0.5]).ravel().tolist() == [0.0, 1.0]
    assert list(est.transform([-0.5, 0.5])) == [0, 1]


def test_nonconvex_warning():
    qp = "problem upqp\nn 1\ntheta 0 1\nQ 1 1 : 1 -2\nc 1 : 1\n"
    with pytest.warns(RuntimeWarning):
        try:
            UpQpSolver().fit(qp)
        except Exception:
            pass
