"""Fixtures and checkers shared by several test modules."""

from __future__ import annotations

from fractions import Fraction as F
from typing import List

from oracles import lcp_conditions_hold
from upsolve.instances import ParamInterval, UpLcpInstance
from upsolve.paramlinalg import ParamMatrix
from upsolve.polyring import AlgebraicNumber, bounds, compare

GOLDEN_TEXT = """\
# golden example: two pairs on [-2, 2]
problem uplcp
h 2
theta -2 2
M 1 1 : 2 0
M 1 2 : -1 1/2
M 2 1 : 1 -1
M 2 2 : 3 0
q 1 : 1 -1
q 2 : -2 3/2
"""


def golden_instance() -> UpLcpInstance:
    M = ParamMatrix([[(2, 0), (-1, F(1, 2))], [(1, -1), (3, 0)]])
    q = ParamMatrix.column([(1, -1), (-2, F(3, 2))])
    return UpLcpInstance(M, q, ParamInterval(-2, 2))


def inner_samples(lo, hi, k: int = 10) -> List[F]:
    """k rationals strictly inside (lo, hi), using only rational brackets."""
    a = bounds(lo)[1]
    b = bounds(hi)[0]
    while a >= b:
        if isinstance(lo, AlgebraicNumber):
            lo = lo.bisected()
        if isinstance(hi, AlgebraicNumber):
            hi = hi.bisected()
        a, b = bounds(lo)[1], bounds(hi)[0]
    return [a + (b - a) * i / (k + 1) for i in range(1, k + 1)]


def partition_integrity_errors(partition) -> List[str]:
    """Exact cover, disjoint interiors, no singletons, merged neighbours."""
    errs = []
    pieces = list(partition)
    theta = partition.theta
    if not pieces:
        return ["empty partition"]
    if compare(pieces[0].lo, theta.lo) != 0:
        errs.append("first piece does not start at alpha")
    if compare(pieces[-1].hi, theta.hi) != 0:
        errs.append("last piece does not end at beta")
    for p in pieces:
        if compare(p.lo, p.hi) >= 0:
            errs.append(f"degenerate piece {p.interval}")
    for a, b in zip(pieces, pieces[1:]):
        if compare(a.hi, b.lo) != 0:
            errs.append(f"gap or overlap between {a.interval} and {b.interval}")
        if a.basis == b.basis:
            errs.append(f"unmerged neighbours with basis {a.basis}")
    return errs


def validity_errors(partition, inst: UpLcpInstance, k: int = 10) -> List[str]:
    """Membership and exact LCP conditions at interior samples of every piece."""
    errs = []
    for p in partition:
        for t in inner_samples(p.lo, p.hi, k):
            if any(c(t) < 0 for c in p.funcs.constraints()):
                errs.append(f"membership fails at {t} for {p.basis}")
            w, z = p.values(t)
            M = inst.M.at(t)
            q = [row[0] for row in inst.q.at(t)]
            if not lcp_conditions_hold(M, q, w, z):
                errs.append(f"LCP conditions fail at {t} for {p.basis}")
    return errs


def random_convex_qp(rng, n: int, m: int, coef: int = 3):
    """Strictly convex upQP on [0, 1] with constant A and x = 0 always feasible.

    ``Q(t) = B0'B0 + I + t B1'B1``; keeping A constant means every KKT basis
    determinant factors into minors that cannot vanish on [0, 1].
    """
    from upsolve.reformulate import UpQpInstance

    def r():
        return rng.randint(-coef, coef)

    B0 = [[r() for _ in range(n)] for _ in range(n)]
    B1 = [[r() for _ in range(n)] for _ in range(n)]
    gram = lambda B: [[sum(B[k][i] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    G0, G1 = gram(B0), gram(B1)
    Q = ParamMatrix.from_parts([[G0[i][j] + (i == j) for j in range(n)] for i in range(n)], G1)
    c = ParamMatrix.column([(r(), r()) for _ in range(n)])
    A = b = None
    if m:
        A = ParamMatrix.from_parts([[r() for _ in range(n)] for _ in range(m)])
        bs = []
        for _ in range(m):
            b0 = rng.randint(1, 2 * coef)
            bs.append((b0, rng.randint(-b0, 2 * coef)))
        b = ParamMatrix.column(bs)
    return UpQpInstance(Q, c, A, b, ParamInterval(0, 1))


def qp_numeric(qp, t):
    Q = qp.Q.at(t)
    c = [row[0] for row in qp.c.at(t)]
    A = qp.A.at(t) if qp.m else []
    b = [row[0] for row in qp.b.at(t)] if qp.m else []
    return Q, c, A, b


def kkt_errors(qp, x, s, lam, u, t) -> List[str]:
    from oracles import matvec
    Q, c, A, b = qp_numeric(qp, t)
    errs = []
    At_lam = [sum(A[j][i] * lam[j] for j in range(qp.m)) for i in range(qp.n)]
    if [a + g + ci for a, g, ci in zip(matvec(Q, x), At_lam, c)] != list(u):
        errs.append("stationarity")
    if [bi - v for bi, v in zip(b, matvec(A, x))] != list(s):
        errs.append("primal slack")
    if any(v < 0 for v in list(x) + list(s) + list(lam) + list(u)):
        errs.append("sign")
    if sum(a * b for a, b in zip(x, u)) != 0 or sum(a * b for a, b in zip(lam, s)) != 0:
        errs.append("complementarity")
    return errs
