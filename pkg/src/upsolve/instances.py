"""Problem containers shared by the solver, the reformulation and the I/O layer."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .paramlinalg import ParamMatrix
from .polyring import AlgebraicNumber, Endpoint, _frac, compare, to_float


@dataclass(frozen=True)
class ParamInterval:
    """Closed interval ``[lo, hi]`` with rational or algebraic endpoints."""

    lo: Endpoint
    hi: Endpoint

    def __post_init__(self):
        for name in ("lo", "hi"):
            v = getattr(self, name)
            if not isinstance(v, AlgebraicNumber):
                object.__setattr__(self, name, _frac(v))
        if compare(self.lo, self.hi) > 0:
            raise ValueError("interval endpoints out of order")

    @property
    def is_rational(self) -> bool:
        return isinstance(self.lo, Fraction) and isinstance(self.hi, Fraction)

    def is_singleton(self) -> bool:
        return compare(self.lo, self.hi) == 0

    def contains(self, theta) -> bool:
        return compare(self.lo, theta) <= 0 <= compare(self.hi, theta)

    def contains_open(self, theta) -> bool:
        return compare(self.lo, theta) < 0 < compare(self.hi, theta)

    def __str__(self):
        return f"[{to_float(self.lo):.6g}, {to_float(self.hi):.6g}]"


@dataclass(frozen=True)
class UpLcpInstance:
    """``w - M(theta) z = q(theta)``, ``w, z >= 0``, ``w'z = 0`` for theta in [alpha, beta]."""

    M: ParamMatrix
    q: ParamMatrix
    theta: ParamInterval

    def __post_init__(self):
        if isinstance(self.theta, tuple):
            object.__setattr__(self, "theta", ParamInterval(*self.theta))
        if self.M.rows != self.M.cols:
            raise ValueError("M must be square")
        if self.q.rows != self.M.rows or self.q.cols != 1:
            raise ValueError("q must be a column of length h")
        if not self.theta.is_rational:
            raise ValueError("the parameter interval must have rational endpoints")
        if self.theta.lo >= self.theta.hi:
            raise ValueError("the parameter interval must satisfy alpha < beta")

    @property
    def h(self) -> int:
        return self.M.rows

    @property
    def alpha(self) -> Fraction:
        return self.theta.lo

    @property
    def beta(self) -> Fraction:
        return self.theta.hi


Instance = Union[UpLcpInstance, "UpQpInstance"]  # noqa: F821
