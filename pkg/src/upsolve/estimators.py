"""scikit-learn style front ends.

``fit`` takes a problem instance and computes the parametric solution;
``predict`` evaluates it at parameter values and ``transform`` maps parameter
values to the index of the invariancy interval they fall in.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .reformulate import check_convexity, lp_to_lcp, map_solution_back, qp_to_lcp
from .solver import BasisCache, SolverOptions, solve_uplcp
from .validation import as_rational, check_theta, check_upqp_instance, check_uplcp_instance


class _PartitionMixin(TransformerMixin):
    def _options(self) -> SolverOptions:
        return SolverOptions(workers=self.n_jobs, eps=as_rational(self.tol),
                             pivot_limit=self.pivot_limit, max_intervals=self.max_intervals,
                             tableau=self.tableau)

    def _pieces(self):
        raise NotImplementedError

    def transform(self, theta) -> np.ndarray:
        """Index of the piece containing each theta (left piece at breakpoints)."""
        check_is_fitted(self, "partition_")
        out = []
        for t in check_theta(theta, self.partition_.theta):
            out.append(next(i for i, p in enumerate(self._pieces()) if p.interval.contains(t)))
        return np.asarray(out, dtype=int)

    @property
    def breakpoints_(self) -> List:
        check_is_fitted(self, "partition_")
        return [p.hi for p in self.partition_.pieces[:-1]]


class UpLcpSolver(_PartitionMixin, BaseEstimator):
    """Parametric solution of a uni-parametric LCP.

    Parameters
    ----------
    n_jobs : int
        Worker threads used to process the interval queue.
    tol : float, str or Fraction
        Output precision for decimal renderings of breakpoints.
    pivot_limit : int, optional
        Criss-cross pivot cap per probe; defaults to ``10 * 2**min(h, 20)``.
    max_intervals : int, optional
        Cap on processed queue items.
    tableau : {"auto", "resolve", "pivot"}
        How criss-cross maintains its tableau.

    Attributes
    ----------
    partition_ : Partition
    instance_ : UpLcpInstance
    n_pieces_ : int
    cache_ : BasisCache
    """

    def __init__(self, n_jobs=1, tol=1e-9, pivot_limit=None, max_intervals=None, tableau="auto"):
        self.n_jobs = n_jobs
        self.tol = tol
        self.pivot_limit = pivot_limit
        self.max_intervals = max_intervals
        self.tableau = tableau

    def fit(self, X, y=None):
        inst = check_uplcp_instance(X)
        self.instance_ = inst
        self.cache_ = BasisCache(inst)
        self.partition_ = solve_uplcp(inst, self._options(), self.cache_)
        self.n_pieces_ = len(self.partition_)
        return self

    def _pieces(self):
        return self.partition_.pieces

    def predict_exact(self, theta):
        """Exact ``(w, z)`` tuples for each parameter value."""
        check_is_fitted(self, "partition_")
        return [self.partition_.locate(t).values(t) for t in check_theta(theta, self.partition_.theta)]

    def predict(self, theta) -> np.ndarray:
        """Array of shape ``(n_samples, 2h)`` holding ``w`` then ``z`` as floats."""
        rows = [[float(v) for v in w + z] for w, z in self.predict_exact(theta)]
        return np.asarray(rows, dtype=float).reshape(len(rows), 2 * self.instance_.h)


class UpQpSolver(_PartitionMixin, BaseEstimator):
    """Parametric solution of a convex uni-parametric QP, or an LP with ``linear=True``.

    After ``fit``, ``solution_`` holds one :class:`QpSolutionPiece` per
    invariancy interval and ``predict`` returns the primal ``x``.
    """

    def __init__(self, linear=False, n_jobs=1, tol=1e-9, pivot_limit=None, max_intervals=None,
                 tableau="auto", check_convex=True):
        self.linear = linear
        self.n_jobs = n_jobs
        self.tol = tol
        self.pivot_limit = pivot_limit
        self.max_intervals = max_intervals
        self.tableau = tableau
        self.check_convex = check_convex

    def fit(self, X, y=None):
        qp = check_upqp_instance(X, linear=self.linear)
        if self.check_convex and not qp.is_linear():
            check_convexity(qp)
        lcp, index_map = lp_to_lcp(qp) if self.linear else qp_to_lcp(qp)
        self.instance_ = qp
        self.lcp_instance_ = lcp
        self.index_map_ = index_map
        self.partition_ = solve_uplcp(lcp, self._options(), BasisCache(lcp))
        self.solution_ = map_solution_back(self.partition_, index_map)
        self.n_pieces_ = len(self.solution_)
        return self

    def _pieces(self):
        return self.solution_

    def _locate(self, t):
        return next(p for p in self.solution_ if p.interval.contains(t))

    def predict_exact(self, theta):
        """Exact ``(x, slack, lam, u)`` for each parameter value."""
        check_is_fitted(self, "solution_")
        return [self._locate(t).at(t) for t in check_theta(theta, self.partition_.theta)]

    def predict(self, theta) -> np.ndarray:
        """Primal solutions as a float array of shape ``(n_samples, n)``."""
        xs = [[float(v) for v in sol[0]] for sol in self.predict_exact(theta)]
        return np.asarray(xs, dtype=float).reshape(len(xs), self.instance_.n)

    def objective(self, theta) -> List[Fraction]:
        check_is_fitted(self, "solution_")
        ts = check_theta(theta, self.partition_.theta)
        return [self.instance_.objective(self._locate(t).at(t)[0], t) for t in ts]
