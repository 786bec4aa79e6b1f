"""Matrices whose entries are affine in the parameter, and the polynomial
algebra needed to describe a complementary basis over the whole interval.

For a basis B, ``G_B`` is the h x h matrix of basis columns of ``[I | -M]``.
Its determinant ``d`` and the Cramer numerators ``v = Adj(G_B) q`` are
polynomials of degree at most h; the basic solution is ``v / d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .polyring import (
    Number,
    Poly,
    _frac,
    _idivexact,
    _imul,
    _isub,
    isolate_real_roots,
    poly_eval,
)


@dataclass(frozen=True)
class AffineScalar:
    """``sigma + mu * theta``."""

    sigma: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "sigma", _frac(self.sigma))
        object.__setattr__(self, "mu", _frac(self.mu))

    def at(self, theta: Number) -> Fraction:
        return self.sigma + self.mu * theta

    def as_poly(self) -> Poly:
        return Poly([self.sigma, self.mu])

    def __neg__(self):
        return AffineScalar(-self.sigma, -self.mu)

    def is_zero(self) -> bool:
        return self.sigma == 0 and self.mu == 0


ZERO = AffineScalar()
ONE = AffineScalar(1, 0)


class ParamMatrix:
    """Dense ``rows x cols`` grid of :class:`AffineScalar` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[AffineScalar]]):
        entries = tuple(tuple(_as_affine(e) for e in row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("a parametric matrix needs at least one row and column")
        cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise ValueError("ragged parametric matrix")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_parts(cls, sigma, mu=None) -> "ParamMatrix":
        """Build from constant and slope arrays of equal shape."""
        sigma = [list(r) for r in sigma]
        if mu is None:
            mu = [[0] * len(r) for r in sigma]
        return cls([[AffineScalar(s, m) for s, m in zip(rs, rm)] for rs, rm in zip(sigma, mu)])

    @classmethod
    def column(cls, values: Sequence[AffineScalar]) -> "ParamMatrix":
        return cls([[v] for v in values])

    @classmethod
    def identity(cls, n: int) -> "ParamMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ParamMatrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> AffineScalar:
        i, j = ij
        return self.entries[i][j]

    def at(self, theta: Number) -> List[List[Fraction]]:
        theta = _frac(theta)
        return [[e.at(theta) for e in row] for row in self.entries]

    def sigma(self) -> List[List[Fraction]]:
        return [[e.sigma for e in row] for row in self.entries]

    def mu(self) -> List[List[Fraction]]:
        return [[e.mu for e in row] for row in self.entries]

    def transpose(self) -> "ParamMatrix":
        return ParamMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def vector(self) -> List[AffineScalar]:
        """Entries of a single-column matrix."""
        if self.cols != 1:
            raise ValueError("not a column vector")
        return [row[0] for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, ParamMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ParamMatrix({self.rows}x{self.cols})"


def _as_affine(e) -> AffineScalar:
    if isinstance(e, AffineScalar):
        return e
    if isinstance(e, tuple) and len(e) == 2:
        return AffineScalar(*e)
    return AffineScalar(e, 0)


@dataclass(frozen=True)
class BasisPolynomials:
    """Determinant, Cramer numerators and determinant sign of one basis."""

    det: Poly
    numerators: Tuple[Poly, ...]
    sign: int

    def values(self, theta: Number) -> List[Fraction]:
        """Basic-variable values ``v_i(theta) / d(theta)``."""
        d = poly_eval(self.det, theta)
        return [poly_eval(v, theta) / d for v in self.numerators]

    def constraints(self) -> List[Poly]:
        """Polynomials ``s_B * v_i`` that must be nonnegative on the interval."""
        return [v if self.sign > 0 else -v for v in self.numerators]


# ---------------------------------------------------------------------------
# column extraction
# ---------------------------------------------------------------------------

def basis_columns(M: ParamMatrix, basis) -> ParamMatrix:
    """Columns of ``[I | -M]`` selected by a complementary basis.

    Column j is ``e_j`` when w_j is basic and ``-M[:, j]`` when z_j is.
    """
    h = M.rows
    z = _z_flags(basis)
    if len(z) != h or M.cols != h:
        raise ValueError(f"basis of size {len(z)} does not fit a {M.rows}x{M.cols} matrix")
    cols = []
    for j in range(h):
        if z[j]:
            cols.append([-M.entries[i][j] for i in range(h)])
        else:
            cols.append([ONE if i == j else ZERO for i in range(h)])
    return ParamMatrix([[cols[j][i] for j in range(h)] for i in range(h)])


def _z_flags(basis) -> Tuple[bool, ...]:
    return tuple(getattr(basis, "z", basis))


# ---------------------------------------------------------------------------
# fraction-free elimination over Z[theta]
# ---------------------------------------------------------------------------

def _row_to_int_polys(row: Sequence[AffineScalar]):
    den = 1
    for e in row:
        for c in (e.sigma, e.mu):
            den = den * c.denominator // math.gcd(den, c.denominator)
    out = []
    for e in row:
        s, m = int(e.sigma * den), int(e.mu * den)
        out.append(() if (s == 0 and m == 0) else ((s,) if m == 0 else (s, m)))
    return out, den


def _bareiss(rows):
    """In-place fraction-free forward elimination of an integer-polynomial
    matrix with ``n`` rows and at least ``n`` columns.

    Returns ``(sign, pivots)`` where sign accounts for row swaps, or
    ``(0, None)`` when the leading n x n block is singular.
    """
    n = len(rows)
    sign = 1
    prev = (1,)
    for k in range(n):
        piv = next((i for i in range(k, n) if rows[i][k]), None)
        if piv is None:
            return 0, None
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pk = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            aik = ri[k]
            new = [()] * (k + 1)
            for j in range(k + 1, len(rk)):
                t = _isub(_imul(pk, ri[j]), _imul(aik, rk[j]))
                new.append(_idivexact(t, prev) if t and prev != (1,) else t)
            rows[i] = new
        prev = pk
    return sign, prev


def _int_poly_to_poly(a, scale) -> Poly:
    return Poly(Fraction(c, scale) for c in a)


def param_determinant(A: ParamMatrix) -> Poly:
    """Determinant of a square parametric matrix as an exact polynomial."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    rows, scale = [], 1
    for row in A.entries:
        r, den = _row_to_int_polys(row)
        rows.append(r)
        scale *= den
    sign, det = _bareiss(rows)
    if det is None:
        return Poly()
    return _int_poly_to_poly(det if sign > 0 else tuple(-c for c in det), scale)


def cramer_numerators(Gb: ParamMatrix, q: ParamMatrix) -> List[Poly]:
    """Polynomials ``v_i = det(Gb with column i replaced by q)``.

    One fraction-free elimination of the augmented matrix ``[Gb | q]`` is
    followed by fraction-free back substitution; every division is exact.
    Singular ``Gb`` falls back to one determinant per column.
    """
    h = Gb.rows
    qv = q.vector() if q.cols == 1 else q.entries[0]
    if Gb.cols != h or len(qv) != h:
        raise ValueError("dimension mismatch in Cramer numerators")
    rows, scale = [], 1
    for i in range(h):
        r, den = _row_to_int_polys(list(Gb.entries[i]) + [qv[i]])
        rows.append(r)
        scale *= den
    sign, D = _bareiss(rows)
    if D is None:
        return [_replaced_det(Gb, qv, i) for i in range(h)]
    # D = sign * det(scaled Gb); solve U v = D b' from the bottom up
    v = [()] * h
    for i in range(h - 1, -1, -1):
        acc = _imul(D, rows[i][h])
        for j in range(i + 1, h):
            if rows[i][j] and v[j]:
                acc = _isub(acc, _imul(rows[i][j], v[j]))
        v[i] = _idivexact(acc, rows[i][i]) if acc else ()
    out = []
    for a in v:
        if sign < 0:
            a = tuple(-c for c in a)
        out.append(_int_poly_to_poly(a, scale))
    return out


def _replaced_det(Gb: ParamMatrix, qv, col: int) -> Poly:
    ent = [list(r) for r in Gb.entries]
    for i in range(Gb.rows):
        ent[i][col] = qv[i]
    return param_determinant(ParamMatrix(ent))


# ---------------------------------------------------------------------------
# determinant sign
# ---------------------------------------------------------------------------

def det_sign(d: Poly, theta_star: Number) -> int:
    """Sign of ``d`` at a probe point known to lie in the parameter interval."""
    val = poly_eval(d, theta_star)
    if val == 0:
        raise ValueError(f"determinant vanishes at the probe point {theta_star}")
    return 1 if val > 0 else -1


@dataclass(frozen=True)
class DetViolation:
    """A root of a basis determinant inside the parameter interval."""

    lo: Fraction
    hi: Fraction
    multiplicity: int

    def __str__(self):
        if self.lo == self.hi:
            return f"basis determinant vanishes at {self.lo}"
        return f"basis determinant vanishes in ({self.lo}, {self.hi})"


def validate_det_nonvanishing(d: Poly, theta_range) -> Optional[DetViolation]:
    """Return ``None`` when ``d`` has no root in ``[lo, hi]``, else a report.

    ``theta_range`` is any object with rational ``lo``/``hi`` or a pair.
    """
    if d.is_zero():
        raise ValueError("zero determinant polynomial")
    lo, hi = _range_pair(theta_range)
    for end in (lo, hi):
        if poly_eval(d, end) == 0:
            return DetViolation(end, end, 1)
    roots = isolate_real_roots(d, lo, hi)
    if roots:
        r = roots[0]
        return DetViolation(r.lo, r.hi, r.multiplicity)
    return None


def _range_pair(theta_range):
    if hasattr(theta_range, "lo"):
        return _frac(theta_range.lo), _frac(theta_range.hi)
    lo, hi = theta_range
    return _frac(lo), _frac(hi)
