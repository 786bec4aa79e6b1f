"""Partition the parameter interval of a uni-parametric LCP into invariancy
intervals.

Work proceeds over a queue of subintervals.  Each one is probed at an exact
rational point, a complementary basis feasible there is found by
criss-cross, and the largest connected stretch around the probe on which
that basis stays feasible is carved out.  Whatever is left on either side
goes back on the queue.
"""

from __future__ import annotations

import functools
import logging
import math
import threading
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exceptions import AssumptionViolation, InvariantError, SingularBasisError
from .instances import ParamInterval, UpLcpInstance
from .lcp import INFEASIBLE, SOLVED, ComplementaryBasis, criss_cross, fix_theta
from .paramlinalg import (
    BasisPolynomials,
    basis_columns,
    cramer_numerators,
    det_sign,
    param_determinant,
    validate_det_nonvanishing,
)
from .polyring import (
    AlgebraicNumber,
    Endpoint,
    Poly,
    _frac,
    compare,
    isolate_real_roots,
    poly_eval,
)

logger = logging.getLogger(__name__)

# isolated roots are tightened to this fraction of the interval length up front
_ROOT_PRECISION_BITS = 30


@dataclass
class SolverOptions:
    """Knobs for :func:`solve_uplcp`.

    ``max_intervals`` bounds the number of queue items processed; ``None``
    means ``1000 + 64 * h``.
    """

    workers: int = 1
    eps: Fraction = Fraction(1, 10 ** 9)
    pivot_limit: Optional[int] = None
    max_intervals: Optional[int] = None
    tableau: str = "auto"

    def __post_init__(self):
        self.eps = _frac(self.eps)
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.eps <= 0:
            raise ValueError("eps must be positive")


@dataclass(frozen=True)
class IntervalPiece:
    """A basis, the interval on which it is used, and its solution functions."""

    basis: ComplementaryBasis
    interval: ParamInterval
    funcs: BasisPolynomials

    @property
    def lo(self) -> Endpoint:
        return self.interval.lo

    @property
    def hi(self) -> Endpoint:
        return self.interval.hi

    def values(self, theta) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        """Exact ``(w, z)`` at a rational theta."""
        x = self.funcs.values(theta)
        zero = Fraction(0)
        w = tuple(zero if b else x[i] for i, b in enumerate(self.basis.z))
        z = tuple(x[i] if b else zero for i, b in enumerate(self.basis.z))
        return w, z


@dataclass
class Partition:
    pieces: Tuple[IntervalPiece, ...]
    theta: ParamInterval
    diagnostics: List[str] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def __getitem__(self, i):
        return self.pieces[i]

    def locate(self, theta) -> IntervalPiece:
        """First piece whose closed interval contains theta."""
        theta = _frac(theta)
        for p in self.pieces:
            if p.interval.contains(theta):
                return p
        raise ValueError(f"theta = {theta} lies outside the partitioned interval")

    def bases(self) -> List[ComplementaryBasis]:
        return [p.basis for p in self.pieces]


# ---------------------------------------------------------------------------
# per-basis algebra
# ---------------------------------------------------------------------------

def basis_polynomials(inst: UpLcpInstance, basis: ComplementaryBasis,
                      theta_star) -> BasisPolynomials:
    """Determinant, Cramer numerators and determinant sign of a basis.

    Raises :class:`AssumptionViolation` when the determinant has a root in
    the parameter interval, which cannot happen for sufficient M(theta).
    """
    G = basis_columns(inst.M, basis)
    d = param_determinant(G)
    if d.is_zero():
        raise SingularBasisError(f"basis {basis} is singular for every theta")
    sign = det_sign(d, theta_star)
    report = validate_det_nonvanishing(d, inst.theta)
    if report is not None:
        raise AssumptionViolation(1, f"{report} for basis {basis}", theta_star)
    return BasisPolynomials(d, tuple(cramer_numerators(G, inst.q)), sign)


RootList = Tuple[Tuple[Endpoint, int], ...]


def constraint_roots(bp: BasisPolynomials, theta: ParamInterval) -> Tuple[RootList, ...]:
    """Real roots strictly inside the parameter interval, per numerator."""
    lo, hi = theta.lo, theta.hi
    eps = (hi - lo) / 2 ** _ROOT_PRECISION_BITS
    out = []
    for v in bp.numerators:
        if v.degree < 1:
            out.append(())
            continue
        roots = []
        for r in isolate_real_roots(v, lo, hi):
            e = AlgebraicNumber.from_root(r)
            if isinstance(e, AlgebraicNumber):
                e = e.refined(eps)
            roots.append((e, r.multiplicity))
        out.append(tuple(roots))
    return tuple(out)


class BasisCache:
    """Thread-safe memo of per-basis polynomials and roots.

    Each basis is computed at most once; ``computations`` counts how often
    the expensive path actually ran for each basis key.
    """

    def __init__(self, inst: UpLcpInstance):
        self.inst = inst
        self._lock = threading.Lock()
        self._key_locks: Dict[ComplementaryBasis, threading.Lock] = {}
        self._entries: Dict[ComplementaryBasis, Tuple[BasisPolynomials, Tuple[RootList, ...]]] = {}
        self.computations: Dict[str, int] = {}

    def get(self, basis: ComplementaryBasis, theta_star):
        entry = self._entries.get(basis)
        if entry is not None:
            return entry
        with self._lock:
            klock = self._key_locks.setdefault(basis, threading.Lock())
        with klock:
            entry = self._entries.get(basis)
            if entry is None:
                bp = basis_polynomials(self.inst, basis, theta_star)
                entry = (bp, constraint_roots(bp, self.inst.theta))
                with self._lock:
                    self._entries[basis] = entry
                    self.computations[basis.key()] = self.computations.get(basis.key(), 0) + 1
        return entry

    def __len__(self):
        return len(self._entries)


# ---------------------------------------------------------------------------
# extremes of the invariancy interval around a probe
# ---------------------------------------------------------------------------

def _direction(p: Poly, x: Fraction) -> int:
    """Sign of the lowest-order nonvanishing derivative of p at x."""
    d = p
    while True:
        d = d.derivative()
        if d.is_zero():
            return 0
        v = poly_eval(d, x)
        if v:
            return 1 if v > 0 else -1


def get_extremes(basis: ComplementaryBasis, theta_star, alpha_p: Endpoint, beta_p: Endpoint,
                 bp: BasisPolynomials, roots: Optional[Sequence[RootList]] = None):
    """Largest connected subinterval of the basis' invariancy set around the probe.

    Only odd-multiplicity roots can bound the interval.  A root sitting exactly
    at the probe makes the probe itself an endpoint, chosen by the direction
    in which the constraint grows there.  Returns ``(alpha_star, beta_star)``;
    they coincide when two constraints vanish at the probe growing in
    opposite directions.
    """
    theta_star = _frac(theta_star)
    constraints = bp.constraints()
    for i, c in enumerate(constraints):
        if poly_eval(c, theta_star) < 0:
            raise InvariantError(f"probe {theta_star} is not feasible for basis {basis} (row {i + 1})")
    if roots is None:
        lo, hi = _outer_rational_bounds(alpha_p, beta_p)
        roots = []
        for v in bp.numerators:
            if v.degree < 1:
                roots.append(())
            else:
                roots.append(tuple((AlgebraicNumber.from_root(r), r.multiplicity)
                                   for r in isolate_real_roots(v, lo, hi)))
    a_star, b_star = alpha_p, beta_p
    for c, rlist in zip(constraints, roots):
        for r, mult in rlist:
            if mult % 2 == 0:
                continue
            side = compare(r, theta_star)
            if side == 0:
                if _direction(c, theta_star) > 0:
                    a_star = theta_star
                else:
                    b_star = theta_star
            elif side < 0:
                if compare(r, a_star) > 0:
                    a_star = r
            elif compare(r, b_star) < 0:
                b_star = r
    return a_star, b_star


def _outer_rational_bounds(a: Endpoint, b: Endpoint):
    lo = a.lo if isinstance(a, AlgebraicNumber) else a
    hi = b.hi if isinstance(b, AlgebraicNumber) else b
    # widen by one so that roots at the endpoints themselves are still seen
    return lo - 1, hi + 1


# ---------------------------------------------------------------------------
# probe selection
# ---------------------------------------------------------------------------

def _simplest_between(a: Fraction, b: Fraction) -> Fraction:
    """Rational with the smallest denominator in the closed interval [a, b]."""
    if a > b:
        a, b = b, a
    if a <= 0 <= b:
        return Fraction(0)
    if b < 0:
        return -_simplest_between(-b, -a)
    fl = math.floor(a)
    if fl == a:
        return Fraction(fl)
    if fl + 1 <= b:
        return Fraction(fl + 1)
    return fl + 1 / _simplest_between(1 / (b - fl), 1 / (a - fl))


def select_probe(interval: ParamInterval) -> Fraction:
    """An exact rational strictly inside a nondegenerate interval.

    Rational endpoints give the exact midpoint.  Algebraic endpoints are
    refined until their brackets are small next to the gap between them; the
    simplest rational in the middle half of that gap is returned.
    """
    lo, hi = interval.lo, interval.hi
    if compare(lo, hi) >= 0:
        raise ValueError("cannot probe an empty or single-point interval")
    if not isinstance(lo, AlgebraicNumber) and not isinstance(hi, AlgebraicNumber):
        return (lo + hi) / 2
    while True:
        L = lo.hi if isinstance(lo, AlgebraicNumber) else lo
        U = hi.lo if isinstance(hi, AlgebraicNumber) else hi
        wl = lo.hi - lo.lo if isinstance(lo, AlgebraicNumber) else 0
        wh = hi.hi - hi.lo if isinstance(hi, AlgebraicNumber) else 0
        if L < U and 8 * max(wl, wh) <= U - L:
            break
        if wl >= wh:
            lo = lo.bisected()
        else:
            hi = hi.bisected()
    quarter = (U - L) / 4
    return _simplest_between(L + quarter, U - quarter)


# ---------------------------------------------------------------------------
# the partitioner
# ---------------------------------------------------------------------------

def _interval_budget(inst: UpLcpInstance, options: SolverOptions) -> int:
    if options.max_intervals is not None:
        return options.max_intervals
    return 1000 + 64 * inst.h


def _process(inst: UpLcpInstance, cache: BasisCache, options: SolverOptions,
             interval: ParamInterval):
    """Handle one queue item: returns ``(piece or None, leftover intervals)``."""
    theta_star = select_probe(interval)
    out = criss_cross(fix_theta(inst, theta_star), options.pivot_limit, options.tableau)
    if out.status == INFEASIBLE:
        raise AssumptionViolation(2, f"no complementary solution at theta = {theta_star}", theta_star)
    if out.status != SOLVED:
        raise AssumptionViolation(
            1, f"criss-cross stopped with status {out.status!r} at theta = {theta_star}", theta_star)
    bp, roots = cache.get(out.basis, theta_star)
    a_star, b_star = get_extremes(out.basis, theta_star, interval.lo, interval.hi, bp, roots)
    leftovers = []
    if compare(a_star, b_star) == 0:
        # singleton: reject it and cover both flanks separately
        logger.debug("singleton at %s for basis %s", theta_star, out.basis)
        return None, [ParamInterval(interval.lo, theta_star), ParamInterval(theta_star, interval.hi)]
    if compare(interval.lo, a_star) < 0:
        leftovers.append(ParamInterval(interval.lo, a_star))
    if compare(b_star, interval.hi) < 0:
        leftovers.append(ParamInterval(b_star, interval.hi))
    return IntervalPiece(out.basis, ParamInterval(a_star, b_star), bp), leftovers


def solve_uplcp(inst: UpLcpInstance, options: Optional[SolverOptions] = None,
                cache: Optional[BasisCache] = None) -> Partition:
    """Partition the parameter interval of ``inst`` into invariancy intervals.

    Raises :class:`AssumptionViolation` when the instance turns out not to be
    feasible everywhere or not sufficient, and :class:`InvariantError` when
    the interval budget runs out or the pieces fail to tile the interval.
    """
    options = options or SolverOptions()
    cache = cache if cache is not None else BasisCache(inst)
    budget = _interval_budget(inst, options)
    pieces: List[IntervalPiece] = []
    processed = 0

    if options.workers == 1:
        stack = [inst.theta]
        while stack:
            processed += 1
            if processed > budget:
                raise InvariantError(f"interval budget of {budget} exhausted")
            piece, rest = _process(inst, cache, options, stack.pop())
            if piece is not None:
                pieces.append(piece)
            stack.extend(rest)
    else:
        with ThreadPoolExecutor(max_workers=options.workers) as pool:
            pending = {pool.submit(_process, inst, cache, options, inst.theta)}
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    processed += 1
                    if processed > budget:
                        for f in pending:
                            f.cancel()
                        raise InvariantError(f"interval budget of {budget} exhausted")
                    piece, rest = fut.result()
                    if piece is not None:
                        pieces.append(piece)
                    for item in rest:
                        pending.add(pool.submit(_process, inst, cache, options, item))

    partition = normalize_partition(pieces, inst.theta)
    partition.stats = {"intervals": processed, "bases": len(cache),
                       "raw_pieces": len(pieces), "pieces": len(partition)}
    partition.diagnostics.extend(_observation_bound(partition, cache))
    for msg in partition.diagnostics:
        logger.warning(msg)
    return partition


def normalize_partition(pieces: Sequence[IntervalPiece], theta: ParamInterval) -> Partition:
    """Sort pieces, drop single points, merge same-basis neighbours, check the cover."""
    keep = [p for p in pieces if not p.interval.is_singleton()]
    keep.sort(key=functools.cmp_to_key(
        lambda a, b: compare(a.lo, b.lo) or compare(a.hi, b.hi)))
    merged: List[IntervalPiece] = []
    for p in keep:
        if merged:
            last = merged[-1]
            gap = compare(last.hi, p.lo)
            if gap != 0:
                raise InvariantError(
                    f"pieces {last.interval} and {p.interval} {'overlap' if gap > 0 else 'leave a gap'}")
            if last.basis == p.basis:
                merged[-1] = IntervalPiece(last.basis, ParamInterval(last.lo, p.hi), last.funcs)
                continue
        merged.append(p)
    if not merged:
        raise InvariantError("no pieces cover the parameter interval")
    if compare(merged[0].lo, theta.lo) != 0 or compare(merged[-1].hi, theta.hi) != 0:
        raise InvariantError("pieces do not reach both ends of the parameter interval")
    return Partition(tuple(merged), theta)


def _observation_bound(partition: Partition, cache: BasisCache) -> List[str]:
    """Flag bases used on more stretches than their odd root count suggests."""
    counts: Dict[ComplementaryBasis, int] = {}
    for p in partition:
        counts[p.basis] = counts.get(p.basis, 0) + 1
    msgs = []
    h = partition.pieces[0].basis.h
    for basis, k in counts.items():
        if k < 2:
            continue
        bp, _ = cache.get(basis, None)
        distinct: List[Endpoint] = []
        for v in bp.numerators:
            if v.degree < 1:
                continue
            for r in isolate_real_roots(v):
                if r.multiplicity % 2 == 0:
                    continue
                e = AlgebraicNumber.from_root(r)
                if not any(compare(e, x) == 0 for x in distinct):
                    distinct.append(e)
        bound = max(1, len(distinct) - h)
        if k > bound:
            msgs.append(f"basis {basis} appears on {k} pieces, above the bound {bound} "
                        f"from {len(distinct)} odd roots")
    return msgs
