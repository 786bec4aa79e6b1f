"""Acceptance criteria 1-9, one test each, at the stated tolerances and time limits."""

import math
import random
import time
from fractions import Fraction as F

from helpers import (golden_instance, inner_samples, kkt_errors, partition_integrity_errors, qp_numeric,
                     random_convex_qp, validity_errors)
from oracles import brute_force_lcp, lcp_conditions_hold, qp_brute_force, random_psd_lcp
from upsolve.instances import ParamInterval
from upsolve.io import generate_sufficient_instance, write_partition
from upsolve.lcp import SOLVED, FixedLcp, criss_cross
from upsolve.paramlinalg import ParamMatrix
from upsolve.polyring import Poly, isolate_real_roots, square_free_decomposition
from upsolve.reformulate import UpQpInstance, lp_to_lcp, map_solution_back, qp_to_lcp
from upsolve.solver import BasisCache, SolverOptions, solve_uplcp

# every partition produced below is re-checked for integrity in criterion 6
PARTITIONS = []


def _solve(inst, **kw):
    p = solve_uplcp(inst, SolverOptions(**kw))
    PARTITIONS.append(p)
    return p


# --- 1 ----------------------------------------------------------------------------

# reference solution functions of the golden example, as (numerator, denominator)
GOLDEN_FUNCS = {
    "wz": [(Poly([F(1, 3), F(-1, 6), F(-1, 4)]), Poly([1])), (Poly([F(2, 3), F(-1, 2)]), Poly([1]))],
    "zw": [(Poly([F(-1, 2), F(1, 2)]), Poly([1])), (Poly([F(-5, 2), F(5, 2), F(-1, 2)]), Poly([1]))],
    "zz": [(Poly([4, -2, -3]), Poly([-28, 6, -2])), (Poly([-10, 10, -2]), Poly([-14, 3, -1]))],
}


def test_criterion_1_golden(verdict):
    start = time.perf_counter()
    p = _solve(golden_instance())
    elapsed = time.perf_counter() - start
    bases = sorted(b.key() for b in p.bases())
    exact = [(-1 - math.sqrt(13)) / 3, (-1 + math.sqrt(13)) / 3, (5 - math.sqrt(5)) / 2]
    got = [float(piece.hi) for piece in p.pieces[:-1]]
    ok_breaks = len(got) == 3 and all(abs(a - b) < 1e-6 for a, b in zip(got, exact))
    ok_funcs = True
    for piece in p:
        for v, (num, den) in zip(piece.funcs.numerators, GOLDEN_FUNCS[piece.basis.key()]):
            # v / d == num / den as rational functions
            ok_funcs &= v * den == num * piece.funcs.det
    ok = (len(p) == 4 and bases == ["wz", "zw", "zz", "zz"] and ok_breaks and ok_funcs and elapsed < 1.0
          and p[0].lo == -2 and p[-1].hi == 2)
    verdict(1, ok, f"{len(p)} pieces, breakpoints {[round(x, 6) for x in got]}, {elapsed:.3f}s")
    assert ok


# --- 2 ----------------------------------------------------------------------------

def test_criterion_2_basis_reuse(verdict):
    inst = golden_instance()
    cache = BasisCache(inst)
    p = solve_uplcp(inst, cache=cache)
    PARTITIONS.append(p)
    zz = [piece for piece in p if piece.basis.key() == "zz"]
    ok = len(zz) == 2 and cache.computations.get("zz") == 1
    verdict(2, ok, f"{len(zz)} pieces with {{z1, z2}}, computed {cache.computations.get('zz')} time(s)")
    assert ok


# --- 3 ----------------------------------------------------------------------------

def test_criterion_3_fixed_oracle(verdict):
    rng = random.Random(20240603)
    start = time.perf_counter()
    bad, infeasible = [], 0
    for k in range(200):
        h = rng.randint(1, 4)
        rank = h if rng.random() < 0.5 else rng.randint(0, h - 1)
        M, q = random_psd_lcp(rng, h, rank)
        out = criss_cross(FixedLcp(M, q))
        sols = brute_force_lcp(M, q)
        if out.status == SOLVED:
            if not sols or not lcp_conditions_hold(M, q, out.w, out.z):
                bad.append(k)
        else:
            infeasible += 1
            if sols:
                bad.append(k)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    verdict(3, ok, f"200 instances, {infeasible} infeasible, {len(bad)} disagreements, {elapsed:.2f}s")
    assert ok


# --- 4 ----------------------------------------------------------------------------

def test_criterion_4_parametric_oracle(verdict):
    rng = random.Random(4)
    start = time.perf_counter()
    bad = []
    checked = multi = 0
    for k in range(50):
        h = rng.randint(1, 3)
        inst = generate_sufficient_instance(h, density=rng.choice([0.5, 1.0]), seed=rng.randrange(10 ** 9))
        p = _solve(inst)
        multi += len(p) > 1
        samples = [F(i, 24) for i in range(25)]
        for t in samples:
            w, z = p.locate(t).values(t)
            M = inst.M.at(t)
            q = [row[0] for row in inst.q.at(t)]
            if not lcp_conditions_hold(M, q, w, z):
                bad.append((k, t, "system"))
                continue
            sols = {(tuple(a), tuple(b)) for _, a, b in brute_force_lcp(M, q)}
            if len(sols) == 1 and (w, z) not in sols:
                bad.append((k, t, "value"))
            checked += 1
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    verdict(4, ok, f"50 instances ({multi} with several pieces) x 25 samples, {checked} checked, {len(bad)} failures, {elapsed:.2f}s")
    assert ok


# --- 5 ----------------------------------------------------------------------------

def _qp_1d(Q, c, A, b, theta):
    wrap = lambda v: ParamMatrix([[v]])
    return UpQpInstance(wrap(Q), wrap(c), wrap(A), wrap(b), ParamInterval(*theta))


def _pieces(qp, linear=False):
    lcp, imap = lp_to_lcp(qp) if linear else qp_to_lcp(qp)
    part = _solve(lcp)
    return map_solution_back(part, imap)


def test_criterion_5_reformulation(verdict):
    start = time.perf_counter()
    notes = []
    # hand-solved QP: x = 1 on the whole interval
    hand = _qp_1d((2, 0), (-2, 0), (1, 0), (1, 0), (0, 1))
    lcp, _ = qp_to_lcp(hand)
    ok_hand = lcp.M.at(0) == [[2, 1], [-1, 0]] and [r[0] for r in lcp.q.at(0)] == [-2, 1]
    ok_hand &= all(pc.at(t)[0] == (1,) for pc in _pieces(hand) for t in inner_samples(pc.lo, pc.hi, 5))
    notes.append(f"hand QP {'ok' if ok_hand else 'WRONG'}")
    # min -theta x, x <= 1 on [-1, 1]: x = 0 left of 0, x = 1 right of 0
    lp1 = _pieces(_qp_1d((0, 0), (0, -1), (1, 0), (1, 0), (-1, 1)), linear=True)
    ok_lp1 = [(pc.lo, pc.hi) for pc in lp1] == [(-1, 0), (0, 1)]
    ok_lp1 &= all(lp1[0].at(t)[0] == (0,) for t in inner_samples(-1, 0, 5))
    ok_lp1 &= all(lp1[1].at(t)[0] == (1,) for t in inner_samples(0, 1, 5))
    notes.append(f"LP sign switch {'ok' if ok_lp1 else 'WRONG'}")
    # min -x, x <= theta on [0, 1]: x = theta, slack 0, dual 1
    lp2 = _pieces(_qp_1d((0, 0), (-1, 0), (1, 0), (0, 1), (0, 1)), linear=True)
    ok_lp2 = len(lp2) == 1 and all(lp2[0].at(t)[:3] == ((t,), (0,), (1,))
                                   for t in inner_samples(0, 1, 5))
    notes.append(f"LP x = theta {'ok' if ok_lp2 else 'WRONG'}")

    rng = random.Random(55)
    bad = 0
    for _ in range(20):
        n = rng.randint(1, 4)
        m = rng.randint(0, 5 - n)
        qp = random_convex_qp(rng, n, m)
        pieces = _pieces(qp)
        for i in range(10):
            t = F(2 * i + 1, 20)
            pc = next(x for x in pieces if x.interval.contains(t))
            x, s, lam, u = pc.at(t)
            if kkt_errors(qp, x, s, lam, u, t) or qp.objective(x, t) != qp_brute_force(*qp_numeric(qp, t))[0]:
                bad += 1
    elapsed = time.perf_counter() - start
    notes.append(f"20 random QPs x 10 samples, {bad} failures, {elapsed:.2f}s")
    ok = ok_hand and ok_lp1 and ok_lp2 and bad == 0 and elapsed < 60
    verdict(5, ok, "; ".join(notes))
    assert ok


# --- 7 and 8 run before 6 so that 6 sees their partitions -------------------------

def test_criterion_7_determinism(verdict):
    same = 0
    for seed in range(10):
        inst = generate_sufficient_instance(3 + seed % 4, density=0.6, seed=100 + seed)
        a = write_partition(_solve(inst, workers=1))
        b = write_partition(_solve(inst, workers=4))
        same += a == b
    ok = same == 10
    verdict(7, ok, f"{same}/10 reports byte-identical for 1 and 4 workers")
    assert ok


def test_criterion_8_scale(verdict):
    notes, ok = [], True
    for h, limit in ((10, 60), (20, 600)):
        inst = generate_sufficient_instance(h, density=0.5, seed=h)
        start = time.perf_counter()
        p = _solve(inst)
        elapsed = time.perf_counter() - start
        errs = partition_integrity_errors(p)
        ok &= elapsed < limit and not errs
        notes.append(f"h={h}: {elapsed:.2f}s, {p.stats['intervals']} intervals, {len(p)} pieces")
    verdict(8, ok, "; ".join(notes))
    assert ok


def test_criterion_6_integrity(verdict):
    if not PARTITIONS:
        # run on its own: build a representative set
        PARTITIONS.append(solve_uplcp(golden_instance()))
        for seed in range(10):
            PARTITIONS.append(solve_uplcp(generate_sufficient_instance(3, seed=seed)))
    failures = [(i, e) for i, p in enumerate(PARTITIONS) for e in partition_integrity_errors(p)]
    ok = not failures
    verdict(6, ok, f"{len(PARTITIONS)} partitions checked, {len(failures)} problems")
    assert ok, failures[:5]


# --- 9 ----------------------------------------------------------------------------

def test_criterion_9_root_isolation(verdict):
    rng = random.Random(9)
    start = time.perf_counter()
    bad = 0
    for _ in range(500):
        k = rng.randint(1, 6)
        roots = set()
        while len(roots) < k:
            roots.add(F(rng.randint(-60, 60), rng.randint(1, 12)))
        roots = sorted(roots)
        mults = [rng.randint(1, 3) for _ in roots]
        lead = F(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
        p = Poly.from_roots([r for r, m in zip(roots, mults) for _ in range(m)], lead)
        iso = isolate_real_roots(p)
        recovered = [(r.exact, r.multiplicity) for r in iso]
        brackets_ok = all(r.lo <= x <= r.hi for r, x in zip(iso, roots))
        disjoint = all(a.hi <= b.lo for a, b in zip(iso, iso[1:]))
        by_mult = {}
        for f, m in square_free_decomposition(p):
            by_mult[m] = f
        sqf_ok = all(by_mult.get(m, Poly([1]))(r) == 0 for r, m in zip(roots, mults))
        if recovered != list(zip(roots, mults)) or not brackets_ok or not disjoint or not sqf_ok:
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 30
    verdict(9, ok, f"500 polynomials, {bad} mismatches, {elapsed:.2f}s")
    assert ok
