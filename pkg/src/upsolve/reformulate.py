"""Uni-parametric convex QP and LP as uni-parametric LCP.

For ``min 1/2 x'Qx + c'x  s.t.  Ax <= b, x >= 0`` the KKT system is the LCP

    w = (u, s),  z = (x, lam),
    M = [[Q, A'], [-A, 0]],  q = (c, b),

where ``u = Qx + A'lam + c`` is the reduced cost (multiplier of x >= 0) and
``s = b - Ax`` is the primal slack.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .instances import ParamInterval, UpLcpInstance
from .paramlinalg import ZERO, ParamMatrix
from .polyring import Endpoint, Poly, poly_eval, _frac
from .solver import Partition

logger = logging.getLogger(__name__)

# number of parameter values at which convexity of Q(theta) is spot-checked
CONVEXITY_SAMPLES = 5


@dataclass(frozen=True)
class UpQpInstance:
    """``min 1/2 x'Q(t)x + c(t)'x  s.t.  A(t)x <= b(t), x >= 0`` for t in theta.

    ``A`` and ``b`` are ``None`` when there are no general constraints.
    """

    Q: ParamMatrix
    c: ParamMatrix
    A: Optional[ParamMatrix]
    b: Optional[ParamMatrix]
    theta: ParamInterval

    def __post_init__(self):
        if isinstance(self.theta, tuple):
            object.__setattr__(self, "theta", ParamInterval(*self.theta))
        n = self.Q.rows
        if self.Q.cols != n:
            raise ValueError("Q must be square")
        if self.c.rows != n or self.c.cols != 1:
            raise ValueError("c must be a column of length n")
        if (self.A is None) != (self.b is None):
            raise ValueError("A and b must be given together")
        if self.A is not None:
            if self.A.cols != n:
                raise ValueError("A must have n columns")
            if self.b.rows != self.A.rows or self.b.cols != 1:
                raise ValueError("b must be a column with one entry per row of A")
        for i in range(n):
            for j in range(i):
                if self.Q[i, j] != self.Q[j, i]:
                    raise ValueError("Q(theta) must be symmetric")
        if not self.theta.is_rational or self.theta.lo >= self.theta.hi:
            raise ValueError("the parameter interval must be rational with alpha < beta")

    @property
    def n(self) -> int:
        return self.Q.rows

    @property
    def m(self) -> int:
        return 0 if self.A is None else self.A.rows

    def is_linear(self) -> bool:
        return all(e.is_zero() for row in self.Q.entries for e in row)

    def objective(self, x: Sequence[Fraction], theta) -> Fraction:
        Q = self.Q.at(theta)
        c = [row[0] for row in self.c.at(theta)]
        n = self.n
        quad = sum(x[i] * Q[i][j] * x[j] for i in range(n) for j in range(n))
        return quad / 2 + sum(ci * xi for ci, xi in zip(c, x))


@dataclass(frozen=True)
class IndexMap:
    """Role of every LCP coordinate: pair i < n is (x_i, u_i), pair n + j is (lam_j, s_j)."""

    n: int
    m: int

    @property
    def h(self) -> int:
        return self.n + self.m

    def role(self, pair: int, z_side: bool) -> Tuple[str, int]:
        if not 0 <= pair < self.h:
            raise IndexError(pair)
        if pair < self.n:
            return ("x" if z_side else "dual_nonneg", pair)
        return ("dual_constraints" if z_side else "primal_slack", pair - self.n)

    def roles(self) -> List[Tuple[str, int]]:
        return [self.role(i, zs) for zs in (False, True) for i in range(self.h)]


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly

    def __call__(self, theta) -> Fraction:
        return poly_eval(self.num, theta) / poly_eval(self.den, theta)

    def is_zero(self) -> bool:
        return self.num.is_zero()


@dataclass(frozen=True)
class QpSolutionPiece:
    interval: ParamInterval
    x: Tuple[RationalFunction, ...]
    primal_slack: Tuple[RationalFunction, ...]
    dual_constraints: Tuple[RationalFunction, ...]
    dual_nonneg: Tuple[RationalFunction, ...]
    basis: object = None

    @property
    def lo(self) -> Endpoint:
        return self.interval.lo

    @property
    def hi(self) -> Endpoint:
        return self.interval.hi

    def at(self, theta):
        """Exact ``(x, s, lam, u)`` at a rational theta."""
        theta = _frac(theta)
        return tuple(tuple(f(theta) for f in group) for group in
                     (self.x, self.primal_slack, self.dual_constraints, self.dual_nonneg))


def _is_psd(S: List[List[Fraction]]) -> bool:
    """Exact PSD test of a symmetric matrix by symmetric elimination."""
    A = [list(r) for r in S]
    n = len(A)
    for k in range(n):
        p = A[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(A[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return True


def check_convexity(qp: UpQpInstance, samples: int = CONVEXITY_SAMPLES) -> List[Fraction]:
    """Parameter values among ``samples`` evenly spaced ones where Q is not PSD.

    A warning is issued for each offending value; an empty list means no
    violation was seen, not that convexity is certified.
    """
    lo, hi = qp.theta.lo, qp.theta.hi
    bad = []
    for k in range(samples):
        t = lo + (hi - lo) * k / (samples - 1) if samples > 1 else lo
        if not _is_psd(qp.Q.at(t)):
            bad.append(t)
            warnings.warn(f"Q(theta) is not positive semidefinite at theta = {t}", RuntimeWarning)
    return bad


def qp_to_lcp(qp: UpQpInstance) -> Tuple[UpLcpInstance, IndexMap]:
    n, m = qp.n, qp.m
    h = n + m
    rows = []
    for i in range(n):
        row = list(qp.Q.entries[i])
        row += [qp.A[j, i] for j in range(m)] if m else []
        rows.append(row)
    for j in range(m):
        rows.append([-qp.A[j, i] for i in range(n)] + [ZERO] * m)
    qv = qp.c.vector() + (qp.b.vector() if m else [])
    return UpLcpInstance(ParamMatrix(rows), ParamMatrix.column(qv), qp.theta), IndexMap(n, m)


def lp_to_lcp(lp: UpQpInstance) -> Tuple[UpLcpInstance, IndexMap]:
    if not lp.is_linear():
        raise ValueError("an LP must have Q identically zero")
    return qp_to_lcp(lp)


def map_solution_back(partition: Partition, index_map: IndexMap) -> List[QpSolutionPiece]:
    """Express every piece of an LCP partition in terms of the original QP."""
    out = []
    zero = Poly()
    for piece in partition:
        if piece.basis.h != index_map.h:
            raise ValueError(f"partition has h = {piece.basis.h}, index map expects {index_map.h}")
        den = piece.funcs.det
        groups = {"x": [None] * index_map.n, "dual_nonneg": [None] * index_map.n,
                  "primal_slack": [None] * index_map.m, "dual_constraints": [None] * index_map.m}
        for i, zb in enumerate(piece.basis.z):
            for z_side in (False, True):
                name, k = index_map.role(i, z_side)
                num = piece.funcs.numerators[i] if z_side == zb else zero
                groups[name][k] = RationalFunction(num, den)
        out.append(QpSolutionPiece(piece.interval, tuple(groups["x"]), tuple(groups["primal_slack"]),
                                   tuple(groups["dual_constraints"]), tuple(groups["dual_nonneg"]),
                                   piece.basis))
    return out
