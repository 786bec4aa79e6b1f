"""Fixed-parameter LCP: exact least-index criss-cross pivoting.

Variables are ordered ``w_1..w_h, z_1..z_h``.  The tableau ``T = G_B^-1 G``
with ``G = [I | -M]`` keeps one row per complementary pair, so row i always
holds whichever of ``w_i`` / ``z_i`` is basic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exceptions import SingularBasisError
from .polyring import Number, _frac

SOLVED = "solved"
INFEASIBLE = "infeasible"
PIVOT_LIMIT = "pivot_limit"
NOT_SUFFICIENT = "not_sufficient"

# tableau re-solved from scratch up to this size, rank-one updates above
RESOLVE_MAX_H = 8


@dataclass(frozen=True, order=True)
class ComplementaryBasis:
    """One basic variable per complementary pair; ``z[i]`` is True when z_i is basic."""

    z: Tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(bool(b) for b in self.z))

    @classmethod
    def all_w(cls, h: int) -> "ComplementaryBasis":
        return cls((False,) * h)

    @classmethod
    def from_labels(cls, labels: Sequence[str]) -> "ComplementaryBasis":
        """Build from labels such as ``["w1", "z2"]`` (one per pair, any order)."""
        picks = {}
        for lab in labels:
            kind, idx = lab[0].lower(), int(lab[1:]) - 1
            if kind not in "wz" or idx in picks:
                raise ValueError(f"bad basis label {lab!r}")
            picks[idx] = kind == "z"
        if sorted(picks) != list(range(len(picks))):
            raise ValueError("basis labels must cover every pair exactly once")
        return cls(tuple(picks[i] for i in range(len(picks))))

    @property
    def h(self) -> int:
        return len(self.z)

    def flip(self, *pairs: int) -> "ComplementaryBasis":
        z = list(self.z)
        for i in pairs:
            z[i] = not z[i]
        return ComplementaryBasis(tuple(z))

    def labels(self) -> List[str]:
        return [("z" if b else "w") + str(i + 1) for i, b in enumerate(self.z)]

    def key(self) -> str:
        return "".join("z" if b else "w" for b in self.z)

    def __str__(self):
        return "{" + ", ".join(self.labels()) + "}"


@dataclass(frozen=True)
class FixedLcp:
    M: Tuple[Tuple[Fraction, ...], ...]
    q: Tuple[Fraction, ...]

    def __post_init__(self):
        M = tuple(tuple(_frac(x) for x in row) for row in self.M)
        q = tuple(_frac(x) for x in self.q)
        if any(len(row) != len(q) for row in M) or len(M) != len(q):
            raise ValueError("FixedLcp dimensions are inconsistent")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "q", q)

    @property
    def h(self) -> int:
        return len(self.q)


@dataclass(frozen=True)
class LcpOutcome:
    status: str
    basis: Optional[ComplementaryBasis] = None
    w: Optional[Tuple[Fraction, ...]] = None
    z: Optional[Tuple[Fraction, ...]] = None
    pivots: int = 0
    history: Tuple[ComplementaryBasis, ...] = field(default=(), repr=False)

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


def fix_theta(inst, theta_star: Number) -> FixedLcp:
    """Evaluate a parametric instance at one parameter value."""
    theta_star = _frac(theta_star)
    if not (inst.alpha <= theta_star <= inst.beta):
        raise ValueError(f"theta* = {theta_star} lies outside [{inst.alpha}, {inst.beta}]")
    return FixedLcp(inst.M.at(theta_star), [row[0] for row in inst.q.at(theta_star)])


def default_pivot_limit(h: int) -> int:
    return 10 * 2 ** min(h, 20)


# ---------------------------------------------------------------------------
# exact dense linear algebra
# ---------------------------------------------------------------------------

def _solve(A: List[List[Fraction]], B: List[List[Fraction]]) -> List[List[Fraction]]:
    """Solve ``A X = B`` by Gauss-Jordan elimination; raises on singular A."""
    n = len(A)
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularBasisError("singular basis matrix")
        aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        rk = [x / pk for x in aug[k]]
        aug[k] = rk
        for i in range(n):
            if i != k:
                f = aug[i][k]
                if f:
                    aug[i] = [a - f * b for a, b in zip(aug[i], rk)]
    return [row[n:] for row in aug]


def _basis_matrix(lcp: FixedLcp, basis: ComplementaryBasis) -> List[List[Fraction]]:
    h = lcp.h
    one, zero = Fraction(1), Fraction(0)
    return [[(-lcp.M[i][j] if basis.z[j] else (one if i == j else zero)) for j in range(h)]
            for i in range(h)]


def basic_solution(lcp: FixedLcp, basis: ComplementaryBasis):
    """Values ``(w, z)`` of the basic solution of a complementary basis.

    No sign condition is imposed.  Raises :class:`SingularBasisError` when the
    basis columns are linearly dependent.
    """
    if basis.h != lcp.h:
        raise ValueError("basis and LCP sizes differ")
    x = [row[0] for row in _solve(_basis_matrix(lcp, basis), [[v] for v in lcp.q])]
    zero = Fraction(0)
    w = tuple(zero if basis.z[i] else x[i] for i in range(lcp.h))
    z = tuple(x[i] if basis.z[i] else zero for i in range(lcp.h))
    return w, z


def _full_tableau(lcp: FixedLcp, basis: ComplementaryBasis):
    h = lcp.h
    G = [[Fraction(int(i == j)) for j in range(h)] + [-lcp.M[i][j] for j in range(h)] + [lcp.q[i]]
         for i in range(h)]
    X = _solve(_basis_matrix(lcp, basis), G)
    return [row[:2 * h] for row in X], [row[2 * h] for row in X]


def _pivot(T, t, r, c):
    pr = T[r][c]
    T[r] = [x / pr for x in T[r]]
    t[r] = t[r] / pr
    rowr = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f:
                T[i] = [a - f * b for a, b in zip(T[i], rowr)]
                t[i] -= f * t[r]


# ---------------------------------------------------------------------------
# criss-cross
# ---------------------------------------------------------------------------

def criss_cross(lcp: FixedLcp, pivot_limit: Optional[int] = None,
                method: str = "auto") -> LcpOutcome:
    """Least-index criss-cross method for an LCP with a sufficient matrix.

    Starts from the all-w basis.  The least pair index with a negative basic
    value leaves; its complement enters by a diagonal pivot when the diagonal
    tableau entry is negative, otherwise an exchange pivot swaps in the
    complement of the least pair s whose entry in the leaving row is negative.

    ``method`` picks how the tableau is maintained: ``"resolve"`` recomputes it
    exactly from the basis after each step, ``"pivot"`` applies Gauss-Jordan
    updates, ``"auto"`` uses the former for small problems.

    Returned statuses: ``solved``, ``infeasible`` (a row certifies that no
    nonnegative solution exists), ``pivot_limit``, and ``not_sufficient``
    (a sign pattern or a repeated basis that cannot occur for sufficient M).
    """
    h = lcp.h
    if pivot_limit is None:
        pivot_limit = default_pivot_limit(h)
    if pivot_limit < 1:
        raise ValueError("pivot_limit must be >= 1")
    if method == "auto":
        method = "resolve" if h <= RESOLVE_MAX_H else "pivot"
    if method not in ("resolve", "pivot"):
        raise ValueError(f"unknown tableau method {method!r}")

    basis = ComplementaryBasis.all_w(h)
    T, t = _full_tableau(lcp, basis)
    seen = {basis}
    history = [basis]
    pivots = 0

    def comp(i):
        # column of the nonbasic member of pair i
        return i if basis.z[i] else h + i

    def outcome(status):
        return LcpOutcome(status, basis if status == SOLVED else None,
                          *(_split(basis, t) if status == SOLVED else (None, None)),
                          pivots=pivots, history=tuple(history))

    while True:
        r = next((i for i in range(h) if t[i] < 0), None)
        if r is None:
            return outcome(SOLVED)
        if pivots >= pivot_limit:
            return outcome(PIVOT_LIMIT)
        cr = comp(r)
        diag = T[r][cr]
        if diag > 0:
            return outcome(NOT_SUFFICIENT)
        if diag < 0:
            if method == "pivot":
                _pivot(T, t, r, cr)
            basis = basis.flip(r)
        else:
            s = next((j for j in range(h) if j != r and T[r][comp(j)] < 0), None)
            if s is None:
                return outcome(INFEASIBLE)
            if T[s][cr] <= 0:
                return outcome(NOT_SUFFICIENT)
            if method == "pivot":
                cs = comp(s)
                _pivot(T, t, r, cs)
                _pivot(T, t, s, cr)
                T[r], T[s] = T[s], T[r]
                t[r], t[s] = t[s], t[r]
            basis = basis.flip(r, s)
        pivots += 1
        if method == "resolve":
            T, t = _full_tableau(lcp, basis)
        if basis in seen:
            return outcome(NOT_SUFFICIENT)
        seen.add(basis)
        history.append(basis)


def _split(basis: ComplementaryBasis, t):
    zero = Fraction(0)
    w = tuple(zero if basis.z[i] else t[i] for i in range(basis.h))
    z = tuple(t[i] if basis.z[i] else zero for i in range(basis.h))
    return w, z
