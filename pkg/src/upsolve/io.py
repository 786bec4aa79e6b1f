"""Instance files, partition reports, plot data and random test instances.

Instance grammar (line oriented, ``#`` starts a comment, indices 1-based)::

    problem uplcp            # or upqp / uplp
    h 2                      # uplcp: dimension; upqp/uplp use "n" and "m"
    theta -2 2
    M 1 1 : 2                # section row col : sigma [mu]
    M 1 2 : -1 1/2
    q 1 : 1 -1               # vectors omit the column

Cells that are never mentioned are zero.  Numbers may be integers, ``p/q``
fractions or decimals; all are read exactly.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exceptions import ParseError
from .instances import ParamInterval, UpLcpInstance
from .paramlinalg import AffineScalar, ParamMatrix
from .polyring import AlgebraicNumber, Endpoint, Poly, approximate
from .reformulate import QpSolutionPiece, UpQpInstance
from .solver import IntervalPiece, Partition

KINDS = {"uplcp": "uplcp", "lcp": "uplcp", "upqp": "upqp", "qp": "upqp", "uplp": "uplp", "lp": "uplp"}

_SECTIONS = {
    "uplcp": {"M": "matrix", "q": "vector"},
    "upqp": {"Q": "matrix", "c": "vector", "A": "matrix", "b": "vector"},
    "uplp": {"Q": "matrix", "c": "vector", "A": "matrix", "b": "vector"},
}


def _num(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {tok!r}", line) from None


def _int(tok: str, line: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"not an integer: {tok!r}", line) from None
    if v < 0:
        raise ParseError(f"negative size {v}", line)
    return v


def parse_instance(text: str, kind: Optional[str] = None) -> Union[UpLcpInstance, UpQpInstance]:
    """Read an instance; ``kind`` (lcp/qp/lp) is required if the file omits ``problem``."""
    declared = None
    dims: Dict[str, int] = {}
    theta = None
    cells: Dict[Tuple[str, int, int], Tuple[Fraction, Fraction, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.replace(":", " : ").split()
        head = toks[0]
        if head == "problem":
            if len(toks) != 2 or toks[1].lower() not in KINDS:
                raise ParseError("expected 'problem uplcp|upqp|uplp'", lineno)
            declared = KINDS[toks[1].lower()]
        elif head in ("h", "n", "m"):
            if len(toks) != 2:
                raise ParseError(f"expected '{head} <size>'", lineno)
            if head in dims:
                raise ParseError(f"size {head} given twice", lineno)
            dims[head] = _int(toks[1], lineno)
        elif head == "theta":
            if len(toks) != 3:
                raise ParseError("expected 'theta <alpha> <beta>'", lineno)
            a, b = _num(toks[1], lineno), _num(toks[2], lineno)
            if a >= b:
                raise ParseError(f"theta bounds need alpha < beta, got {a} >= {b}", lineno)
            theta = (a, b)
        else:
            if ":" not in toks:
                raise ParseError(f"unrecognised line {raw.strip()!r}", lineno)
            colon = toks.index(":")
            idx, vals = toks[1:colon], toks[colon + 1:]
            if not 1 <= len(idx) <= 2 or not 1 <= len(vals) <= 2:
                raise ParseError("expected 'section row [col] : sigma [mu]'", lineno)
            row = _int(idx[0], lineno)
            col = _int(idx[1], lineno) if len(idx) == 2 else 1
            key = (head, row, col)
            if key in cells:
                raise ParseError(f"entry {head} {row} {col} given twice", lineno)
            sigma = _num(vals[0], lineno)
            mu = _num(vals[1], lineno) if len(vals) == 2 else Fraction(0)
            cells[key] = (sigma, mu, lineno, len(idx))

    if kind is not None:
        kind = KINDS.get(kind.lower())
        if kind is None:
            raise ParseError("problem type must be lcp, qp or lp")
        if declared is not None and declared != kind:
            raise ParseError(f"file declares {declared} but {kind} was requested")
    kind = kind or declared
    if kind is None:
        raise ParseError("problem type not given (add a 'problem' line)")
    if theta is None:
        raise ParseError("missing 'theta <alpha> <beta>' line")

    sections = _SECTIONS[kind]
    if kind == "uplcp":
        if "h" not in dims or dims["h"] < 1:
            raise ParseError("uplcp needs 'h <size>' with h >= 1")
        shapes = {"M": (dims["h"], dims["h"]), "q": (dims["h"], 1)}
    else:
        if "n" not in dims or dims["n"] < 1:
            raise ParseError(f"{kind} needs 'n <size>' with n >= 1")
        n, m = dims["n"], dims.get("m", 0)
        shapes = {"Q": (n, n), "c": (n, 1), "A": (m, n), "b": (m, 1)}

    grids = {name: [[AffineScalar() for _ in range(c)] for _ in range(r)]
             for name, (r, c) in shapes.items()}
    for (name, row, col), (sigma, mu, lineno, nidx) in cells.items():
        if name not in sections:
            raise ParseError(f"unknown section {name!r} for {kind}", lineno)
        want = 2 if sections[name] == "matrix" else 1
        if nidx != want:
            raise ParseError(f"section {name} takes {want} index(es)", lineno)
        r, c = shapes[name]
        if not (1 <= row <= r and 1 <= col <= c):
            raise ParseError(f"index ({row}, {col}) outside {name} of shape {r}x{c}", lineno)
        grids[name][row - 1][col - 1] = AffineScalar(sigma, mu)

    try:
        if kind == "uplcp":
            return UpLcpInstance(ParamMatrix(grids["M"]), ParamMatrix(grids["q"]), ParamInterval(*theta))
        if kind == "uplp" and any(not e.is_zero() for row in grids["Q"] for e in row):
            raise ParseError("an LP may not have Q entries")
        m = shapes["A"][0]
        return UpQpInstance(ParamMatrix(grids["Q"]), ParamMatrix(grids["c"]),
                            ParamMatrix(grids["A"]) if m else None,
                            ParamMatrix(grids["b"]) if m else None, ParamInterval(*theta))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_instance(inst: Union[UpLcpInstance, UpQpInstance], kind: Optional[str] = None) -> str:
    """Serialise an instance in the grammar read by :func:`parse_instance`."""
    lines = []
    if isinstance(inst, UpLcpInstance):
        lines += ["problem uplcp", f"h {inst.h}"]
        mats = [("M", inst.M, True), ("q", inst.q, False)]
    else:
        kind = KINDS[kind] if kind else ("uplp" if inst.is_linear() else "upqp")
        lines += [f"problem {kind}", f"n {inst.n}", f"m {inst.m}"]
        mats = [("Q", inst.Q, True), ("c", inst.c, False)]
        if inst.m:
            mats += [("A", inst.A, True), ("b", inst.b, False)]
    lines.append(f"theta {inst.theta.lo} {inst.theta.hi}")
    for name, mat, is_matrix in mats:
        for i in range(mat.rows):
            for j in range(mat.cols):
                e = mat[i, j]
                if e.is_zero():
                    continue
                idx = f"{i + 1} {j + 1}" if is_matrix else f"{i + 1}"
                lines.append(f"{name} {idx} : {e.sigma} {e.mu}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def decimal_digits(eps) -> int:
    """Digits after the point so that rounding costs at most eps / 8."""
    eps = Fraction(eps)
    k = 0
    while Fraction(1, 10 ** k) > eps / 4:
        k += 1
    return k


def format_decimal(x: Fraction, digits: int) -> str:
    scaled = round(x * 10 ** digits)
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + s
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def endpoint_decimal(x: Endpoint, eps) -> str:
    """Decimal string within eps of the exact endpoint."""
    return format_decimal(approximate(x, Fraction(eps) / 4), decimal_digits(eps))


def _coeffs(p: Poly) -> str:
    return " ".join(str(c) for c in p.coeffs) if p.coeffs else "0"


def _endpoint_line(tag: str, x: Endpoint, eps) -> str:
    dec = endpoint_decimal(x, eps)
    if isinstance(x, AlgebraicNumber):
        y = x.refined(Fraction(eps))
        if isinstance(y, AlgebraicNumber):
            poly = " ".join(str(c) for c in y.factor.primitive())
            return f"  {tag} algebraic poly {poly} bracket {y.lo} {y.hi} decimal {dec}"
        x = y
    return f"  {tag} rational {x} decimal {dec}"


def write_partition(p: Union[Partition, Sequence[QpSolutionPiece]], eps=Fraction(1, 10 ** 9)) -> str:
    """Deterministic text report of a partition or of mapped QP pieces."""
    eps = Fraction(eps)
    pieces = list(p)
    out = ["# upsolve partition report", f"eps {eps}", f"pieces {len(pieces)}"]
    for k, piece in enumerate(pieces, 1):
        out.append("")
        out.append(f"piece {k}")
        out.append(_endpoint_line("lo", piece.lo, eps))
        out.append(_endpoint_line("hi", piece.hi, eps))
        if isinstance(piece, IntervalPiece):
            out.append("  basis " + " ".join(piece.basis.labels()))
            out.append(f"  denominator : {_coeffs(piece.funcs.det)}")
            for lab, v in zip(piece.basis.labels(), piece.funcs.numerators):
                out.append(f"  {lab} : {_coeffs(v)}")
        else:
            if piece.basis is not None:
                out.append("  basis " + " ".join(piece.basis.labels()))
            den = (piece.x or piece.primal_slack)[0].den
            out.append(f"  denominator : {_coeffs(den)}")
            for name, group in _qp_groups(piece):
                for i, f in enumerate(group, 1):
                    out.append(f"  {name}{i} : {_coeffs(f.num)}")
        out.append("end")
    return "\n".join(out) + "\n"


def _qp_groups(piece: QpSolutionPiece):
    return [("x", piece.x), ("slack", piece.primal_slack),
            ("lambda", piece.dual_constraints), ("u", piece.dual_nonneg)]


def _inner_bounds(piece, eps: Fraction) -> Tuple[Fraction, Fraction]:
    lo = approximate(piece.lo, eps) + eps
    hi = approximate(piece.hi, eps) - eps
    if lo >= hi:
        mid = (approximate(piece.lo, eps) + approximate(piece.hi, eps)) / 2
        return mid, mid
    return lo, hi


def emit_plot_data(p, samples_per_piece: int = 25, eps=Fraction(1, 10 ** 9)) -> str:
    """CSV rows ``theta,variable,value`` sampled evenly inside every piece."""
    if samples_per_piece < 2:
        raise ValueError("samples_per_piece must be >= 2")
    eps = Fraction(eps)
    digits = decimal_digits(eps)
    rows = ["theta,variable,value"]
    for piece in p:
        lo, hi = _inner_bounds(piece, eps)
        for k in range(samples_per_piece):
            t = lo + (hi - lo) * k / (samples_per_piece - 1)
            for name, val in _named_values(piece, t):
                rows.append(f"{format_decimal(t, digits)},{name},{format_decimal(val, digits)}")
    return "\n".join(rows) + "\n"


def _named_values(piece, t):
    if isinstance(piece, IntervalPiece):
        w, z = piece.values(t)
        return [(f"w{i + 1}", v) for i, v in enumerate(w)] + [(f"z{i + 1}", v) for i, v in enumerate(z)]
    out = []
    for name, group in _qp_groups(piece):
        out += [(f"{name}{i}", f(t)) for i, f in enumerate(group, 1)]
    return out


# ---------------------------------------------------------------------------
# instance generation
# ---------------------------------------------------------------------------

def generate_sufficient_instance(h: int, density: float = 1.0, seed: int = 0,
                                 coef_range: int = 3) -> UpLcpInstance:
    """Random upLCP on [0, 1] whose M(theta) is positive definite for theta >= 0.

    ``M(theta) = B0'B0 + I + (K - K') + theta * B1'B1`` with sparse random
    integer B0, B1, K; the symmetric part is positive definite, so every
    principal minor is positive and the LCP has a unique solution for each
    theta.  ``q(theta)`` interpolates random integer vectors ``q(0)`` and ``q(1)``
    with entries in ``[-2 c h, 2 c h]``, ``c = coef_range``.
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    if not 0 < density <= 1:
        raise ValueError("density must lie in (0, 1]")
    rng = random.Random(seed)

    def sparse(rows, cols):
        return [[rng.randint(-coef_range, coef_range) if rng.random() < density else 0
                 for _ in range(cols)] for _ in range(rows)]

    def gram(B):
        return [[sum(B[k][i] * B[k][j] for k in range(h)) for j in range(h)] for i in range(h)]

    B0, B1, K = sparse(h, h), sparse(h, h), sparse(h, h)
    G0, G1 = gram(B0), gram(B1)
    sigma = [[G0[i][j] + (i == j) + K[i][j] - K[j][i] for j in range(h)] for i in range(h)]
    mu = G1
    # q(0) and q(1) drawn independently so entries often change sign inside [0, 1]
    R = 2 * coef_range * h
    q0 = [rng.randint(-R, R) for _ in range(h)]
    q1 = [rng.randint(-R, R) for _ in range(h)]
    q_sigma = q0
    q_mu = [b - a for a, b in zip(q0, q1)]
    return UpLcpInstance(ParamMatrix.from_parts(sigma, mu),
                         ParamMatrix.from_parts([[s] for s in q_sigma], [[m] for m in q_mu]),
                         ParamInterval(0, 1))
