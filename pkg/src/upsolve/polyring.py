"""Exact univariate polynomials over the rationals.

Coefficients are stored low-to-high as :class:`fractions.Fraction`.  Heavy
lifting (gcd, Sturm sequences, sign evaluation) runs on primitive integer
coefficient tuples, which every :class:`Poly` caches on first use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple, Union

Number = Union[int, Fraction]

# bisection steps spent separating two algebraic numbers before the gcd test
COMPARE_BUDGET = 64


# ---------------------------------------------------------------------------
# integer coefficient helpers (tuples, low-to-high, no trailing zeros)
# ---------------------------------------------------------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _ideg(a):
    return len(a) - 1


def _isub(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _imul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _iscale(a, k):
    if k == 0:
        return ()
    return tuple(k * x for x in a)


def _ideriv(a):
    return _trim(i * a[i] for i in range(1, len(a)))


def _icontent(a):
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _iprimitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = _icontent(a)
    if a[-1] < 0:
        g = -g
    return tuple(x // g for x in a)


def _iprem(a, b):
    """Pseudo-remainder of a by b, scaled by ``lc(b)**(deg a - deg b + 1)``."""
    da, db = _ideg(a), _ideg(b)
    if da < db:
        return a
    lb = b[-1]
    r = list(a)
    for k in range(da - db, -1, -1):
        lead = r[k + db]
        r = [lb * x for x in r]
        if lead:
            for j, y in enumerate(b):
                r[k + j] -= lead * y
    return _trim(r)


def _idivexact(a, b):
    """Quotient of a by b when b divides a over the integers."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    da, db = _ideg(a), _ideg(b)
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    r = list(a)
    lb = b[-1]
    q = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        lead = r[k + db]
        if lead:
            c, rem = divmod(lead, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = c
            for j, y in enumerate(b):
                r[k + j] -= c * y
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


def _idiv_q(a, b):
    """Primitive part of a / b, where b divides a over the rationals."""
    k = _ideg(a) - _ideg(b) + 1
    return _iprimitive(_idivexact(_iscale(a, b[-1] ** k), b))


def _igcd(a, b):
    """Primitive gcd via the primitive remainder sequence."""
    a, b = _iprimitive(a), _iprimitive(b)
    if not a:
        return b
    if not b:
        return a
    if _ideg(a) < _ideg(b):
        a, b = b, a
    while b:
        a, b = b, _iprimitive(_iprem(a, b))
    return a


def _isign_at(a, x):
    """Sign of a(x) at rational x using integer arithmetic only."""
    if not a:
        return 0
    if isinstance(x, int):
        n, d = x, 1
    else:
        n, d = x.numerator, x.denominator
    # d**deg * a(n/d), accumulated Horner-style; d > 0 keeps the sign
    acc = a[-1]
    dp = d
    for c in reversed(a[:-1]):
        acc = acc * n + c * dp
        dp *= d
    return (acc > 0) - (acc < 0)


def _sturm_chain(f):
    """Sturm sequence of a square-free integer polynomial.

    Remainders are taken with a positive pseudo-division scale and reduced to
    primitive parts, which leaves every sign-variation count unchanged.
    """
    chain = [f, _ideriv(f)]
    while _ideg(chain[-1]) > 0:
        a, b = chain[-2], chain[-1]
        r = _iprem(a, b)
        if not r:
            break
        delta = _ideg(a) - _ideg(b) + 1
        if b[-1] < 0 and delta % 2:
            r = tuple(-x for x in r)
        g = _icontent(r)
        chain.append(tuple(-x // g for x in r))
    return chain


def _variations(chain, x):
    count = 0
    last = 0
    for p in chain:
        s = _isign_at(p, x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def _cauchy_bound(a):
    lead = abs(a[-1])
    m = max(abs(c) for c in a[:-1]) if len(a) > 1 else 0
    return 1 + -(-m // lead)


# ---------------------------------------------------------------------------
# public polynomial type
# ---------------------------------------------------------------------------

def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Immutable polynomial in one variable with rational coefficients.

    ``Poly([c0, c1, c2])`` is ``c0 + c1*t + c2*t**2``.  The zero polynomial
    has no coefficients and degree ``-1``.
    """

    __slots__ = ("coeffs", "_int")

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs: Tuple[Fraction, ...] = _trim(_frac(c) for c in coeffs)
        self._int = None

    @classmethod
    def _from_ints(cls, a) -> "Poly":
        p = cls.__new__(cls)
        p.coeffs = tuple(Fraction(x) for x in a)
        p._int = _iprimitive(a)
        return p

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def affine(cls, sigma: Number, mu: Number) -> "Poly":
        return cls([sigma, mu])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "Poly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    # -- basic queries -----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def primitive(self) -> Tuple[int, ...]:
        """Integer coefficients of the primitive part (positive leading term)."""
        if self._int is None:
            if not self.coeffs:
                self._int = ()
            else:
                den = 1
                for c in self.coeffs:
                    den = den * c.denominator // math.gcd(den, c.denominator)
                self._int = _iprimitive(tuple(int(c * den) for c in self.coeffs))
        return self._int

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        return Poly(c / lead for c in self.coeffs)

    def __call__(self, x: Number) -> Fraction:
        return poly_eval(self, x)

    def sign_at(self, x: Number) -> int:
        return _isign_at(self.primitive(), x) if self.coeffs and self.coeffs[-1] > 0 \
            else -_isign_at(self.primitive(), x)

    def derivative(self) -> "Poly":
        return poly_derivative(self)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return Poly(), self
        q = [Fraction(0)] * (len(r) - db)
        lead = other.coeffs[-1]
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lead
            q[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    r[k + j] -= c * y
        return Poly(q), Poly(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([x])


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def poly_eval(p: Poly, x: Number) -> Fraction:
    """Exact value of ``p`` at the rational ``x`` (Horner)."""
    x = _frac(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(p: Poly) -> Poly:
    return Poly(i * p.coeffs[i] for i in range(1, len(p.coeffs)))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor of two polynomials, not both zero."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    g = _igcd(p.primitive(), q.primitive())
    return Poly._from_ints(g).monic()


def square_free_decomposition(p: Poly) -> List[Tuple[Poly, int]]:
    """Split ``p`` into pairwise coprime square-free factors by multiplicity.

    Returns ``[(f_k, k), ...]`` with each ``f_k`` monic, ordered by increasing
    multiplicity, such that ``p == p.lc * prod(f_k ** k)``.
    """
    if p.degree < 1:
        raise ValueError("square-free decomposition needs a polynomial of degree >= 1")
    return [(Poly._from_ints(f).monic(), k) for f, k in _isqf(p.primitive())]


def _isqf(f):
    # Musser's repeated-gcd scheme; only ever needs results up to constants
    c = _igcd(f, _ideriv(f))
    w = _idiv_q(f, c)
    out = []
    k = 1
    while _ideg(w) > 0:
        y = _igcd(w, c)
        z = _idiv_q(w, y)
        if _ideg(z) > 0:
            out.append((z, k))
        k += 1
        w = y
        c = _idiv_q(c, y)
    return out


@dataclass(frozen=True)
class IsolatedRoot:
    """A real root of a polynomial together with an isolating bracket.

    For irrational (or not yet identified) roots the bracket ``(lo, hi)`` is
    open with ``lo < hi`` and the square-free ``factor`` changes sign across
    it.  When the root is known exactly, ``lo == hi == exact``.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int
    exact: Optional[Fraction] = None
    factor: Poly = field(default_factory=Poly, compare=False, repr=False)

    @property
    def bracket(self) -> Tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        if self.exact is not None:
            return float(self.exact)
        return float(refine_root(self.factor, self, Fraction(1, 2 ** 60)).midpoint)

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def _bisect_once(f, lo, hi, slo):
    """One bisection step on an open bracket of the square-free integer poly f."""
    mid = (lo + hi) / 2
    sm = _isign_at(f, mid)
    if sm == 0:
        return mid, mid, 0
    if sm == slo:
        return mid, hi, sm
    return lo, mid, slo


def _pin_rational(f, lo, hi):
    """Bracket entry for the single root of f in (lo, hi), exact if rational.

    A rational root of a primitive integer polynomial has a denominator
    dividing the leading coefficient L; two such fractions are at least 1/L^2
    apart, so once the bracket is narrower than 1/(2 L^2) the only candidate
    is the best approximation to its midpoint with denominator <= L.
    """
    L = abs(f[-1])
    slo = _isign_at(f, lo)
    target = Fraction(1, 2 * L * L)
    while hi - lo > target:
        lo, hi, s = _bisect_once(f, lo, hi, slo)
        if s == 0:
            return (lo, lo, lo)
    cand = ((lo + hi) / 2).limit_denominator(L)
    if lo < cand < hi and _isign_at(f, cand) == 0:
        return (cand, cand, cand)
    return (lo, hi, None)


def _isolate_sqfree(f, lo, hi):
    """Isolate the roots of square-free f inside the open interval (lo, hi).

    Returns a sorted list of ``(lo, hi, exact)`` where exact is a Fraction for
    roots found exactly (then lo == hi).
    """
    if _ideg(f) == 1:
        r = Fraction(-f[0], f[1])
        return [(r, r, r)] if lo < r < hi else []
    chain = _sturm_chain(f)
    out = []

    def is_root(x):
        return _isign_at(f, x) == 0

    def count_open(a, va, b, vb):
        return va - vb - (1 if is_root(b) else 0)

    va, vb = _variations(chain, lo), _variations(chain, hi)
    stack = [(lo, va, hi, vb)]
    while stack:
        a, va, b, vb = stack.pop()
        n = count_open(a, va, b, vb)
        if n == 0:
            continue
        if n == 1 and not is_root(a) and not is_root(b):
            out.append(_pin_rational(f, a, b))
            continue
        m = (a + b) / 2
        vm = _variations(chain, m)
        if is_root(m):
            out.append((m, m, m))
        stack.append((m, vm, b, vb))
        stack.append((a, va, m, vm))
    out.sort(key=lambda t: t[0])
    return out


def isolate_real_roots(p: Poly, lo: Optional[Number] = None,
                       hi: Optional[Number] = None) -> List[IsolatedRoot]:
    """Isolate every distinct real root of ``p`` and report its multiplicity.

    With ``lo``/``hi`` given, only roots strictly inside ``(lo, hi)`` are
    returned.  Brackets of the result are pairwise disjoint and sorted.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    if p.degree < 1:
        return []
    roots = []
    for f, k in _isqf(p.primitive()):
        B = _cauchy_bound(f)
        a = Fraction(-B) if lo is None else _frac(lo)
        b = Fraction(B) if hi is None else _frac(hi)
        if a >= b:
            continue
        fpoly = Poly._from_ints(f)
        for rlo, rhi, ex in _isolate_sqfree(f, a, b):
            roots.append([rlo, rhi, ex, f, fpoly, k])
    # brackets from different factors may overlap; they hold distinct roots
    while True:
        clash = next(((r, s) for i, r in enumerate(roots) for s in roots[i + 1:]
                      if _overlap(r, s)), None)
        if clash is None:
            break
        for t in clash:
            if t[2] is None:
                t[0], t[1], s = _bisect_once(t[3], t[0], t[1], _isign_at(t[3], t[0]))
                if s == 0:
                    t[2] = t[0]
    roots.sort(key=lambda r: r[0])
    return [IsolatedRoot(r[0], r[1], r[5], r[2], r[4]) for r in roots]


def _overlap(r, s):
    (a, b, ea), (c, d, ec) = r[:3], s[:3]
    if ea is not None and ec is not None:
        return False
    if ea is not None:
        return c < ea < d
    if ec is not None:
        return a < ec < b
    return max(a, c) < min(b, d)


def refine_root(p: Poly, r: IsolatedRoot, eps: Number) -> IsolatedRoot:
    """Shrink the bracket of ``r`` to width at most ``eps`` by bisection."""
    eps = _frac(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if r.exact is not None:
        return r
    factor = r.factor if not r.factor.is_zero() else _factor_for(p, r)
    f = factor.primitive()
    if _ideg(f) == 1:
        x = Fraction(-f[0], f[1])
        return IsolatedRoot(x, x, r.multiplicity, x, factor)
    lo, hi = r.lo, r.hi
    slo = _isign_at(f, lo)
    while hi - lo > eps:
        lo, hi, s = _bisect_once(f, lo, hi, slo)
        if s == 0:
            return IsolatedRoot(lo, lo, r.multiplicity, lo, factor)
    return IsolatedRoot(lo, hi, r.multiplicity, None, factor)


def _factor_for(p, r):
    """Square-free factor of p owning the root bracketed by r."""
    for f, _ in _isqf(p.primitive()):
        if _ideg(f) >= 1 and _isign_at(f, r.lo) * _isign_at(f, r.hi) < 0:
            return Poly._from_ints(f)
    return Poly._from_ints(_iprimitive(p.primitive()))


# ---------------------------------------------------------------------------
# real algebraic numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicNumber:
    """The unique root of a square-free polynomial inside an open bracket."""

    factor: Poly
    lo: Fraction
    hi: Fraction

    @classmethod
    def from_root(cls, root: IsolatedRoot) -> Union[Fraction, "AlgebraicNumber"]:
        if root.exact is not None:
            return root.exact
        return cls(root.factor, root.lo, root.hi)

    def refined(self, eps: Number) -> Union[Fraction, "AlgebraicNumber"]:
        f = self.factor.primitive()
        lo, hi = self.lo, self.hi
        if _ideg(f) == 1:
            return Fraction(-f[0], f[1])
        slo = _isign_at(f, lo)
        while hi - lo > eps:
            lo, hi, s = _bisect_once(f, lo, hi, slo)
            if s == 0:
                return lo
        return AlgebraicNumber(self.factor, lo, hi)

    def bisected(self) -> Union[Fraction, "AlgebraicNumber"]:
        f = self.factor.primitive()
        lo, hi, s = _bisect_once(f, self.lo, self.hi, _isign_at(f, self.lo))
        if s == 0:
            return lo
        return AlgebraicNumber(self.factor, lo, hi)

    def __float__(self):
        x = self.refined(Fraction(1, 2 ** 60))
        return float(x if isinstance(x, Fraction) else (x.lo + x.hi) / 2)

    def __repr__(self):
        return f"AlgebraicNumber(root of {self.factor} in ({self.lo}, {self.hi}) ~ {float(self):.12g})"


Endpoint = Union[Fraction, AlgebraicNumber]


def as_endpoint(x) -> Endpoint:
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, IsolatedRoot):
        return AlgebraicNumber.from_root(x)
    return _frac(x)


def bounds(x: Endpoint) -> Tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` enclosing x (degenerate for rationals)."""
    if isinstance(x, AlgebraicNumber):
        return x.lo, x.hi
    return x, x


def _cmp_rational_algebraic(x: Fraction, a: AlgebraicNumber) -> int:
    if x <= a.lo:
        return -1
    if x >= a.hi:
        return 1
    f = a.factor.primitive()
    s = _isign_at(f, x)
    if s == 0:
        return 0
    # the root sits on the side where the sign differs from f(x)
    return -1 if s == _isign_at(f, a.lo) else 1


def _count_roots_open(g, lo, hi):
    if lo >= hi:
        return 0
    if _ideg(g) == 1:
        r = Fraction(-g[0], g[1])
        return 1 if lo < r < hi else 0
    chain = _sturm_chain(g)
    n = _variations(chain, lo) - _variations(chain, hi)
    if _isign_at(g, hi) == 0:
        n -= 1
    return n


def compare(a: Endpoint, b: Endpoint) -> int:
    """Exact three-way comparison of two real endpoints (-1, 0, 1)."""
    a_alg = isinstance(a, AlgebraicNumber)
    b_alg = isinstance(b, AlgebraicNumber)
    if not a_alg and not b_alg:
        return (a > b) - (a < b)
    if not a_alg:
        return _cmp_rational_algebraic(_frac(a), b)
    if not b_alg:
        return -_cmp_rational_algebraic(_frac(b), a)
    if a == b:
        return 0
    if a.factor == b.factor and a.lo < b.hi and b.lo < a.hi:
        # one root of the shared factor per bracket: equal iff the overlap holds one
        if _count_roots_open(a.factor.primitive(), max(a.lo, b.lo), min(a.hi, b.hi)):
            return 0
    for _ in range(COMPARE_BUDGET):
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if a.hi - a.lo >= b.hi - b.lo:
            a = a.bisected()
        else:
            b = b.bisected()
        if not isinstance(a, AlgebraicNumber) or not isinstance(b, AlgebraicNumber):
            return compare(a, b)
    g = _igcd(a.factor.primitive(), b.factor.primitive())
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if _ideg(g) >= 1 and _count_roots_open(g, lo, hi) >= 1:
        return 0
    while True:
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        a, b = a.bisected(), b.bisected()
        if not isinstance(a, AlgebraicNumber) or not isinstance(b, AlgebraicNumber):
            return compare(a, b)


def compare_algebraic(a: Tuple[Poly, IsolatedRoot], b: Tuple[Poly, IsolatedRoot]) -> int:
    """Order two isolated roots, each given as ``(polynomial, root)``."""
    ea = _endpoint_of(*a)
    eb = _endpoint_of(*b)
    return compare(ea, eb)


def _endpoint_of(p: Poly, r: IsolatedRoot) -> Endpoint:
    if r.exact is not None:
        return r.exact
    factor = r.factor if not r.factor.is_zero() else _factor_for(p, r)
    return AlgebraicNumber(factor, r.lo, r.hi)


def approximate(x: Endpoint, eps: Number) -> Fraction:
    """A rational within ``eps / 2`` of x."""
    if not isinstance(x, AlgebraicNumber):
        return _frac(x)
    y = x.refined(_frac(eps) / 2)
    if isinstance(y, Fraction):
        return y
    return (y.lo + y.hi) / 2


def to_float(x: Endpoint) -> float:
    return float(x)
