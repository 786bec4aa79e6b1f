"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import List, Union

import numpy as np

from .instances import ParamInterval, UpLcpInstance
from .reformulate import UpQpInstance


def as_rational(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float.

    Floats are read through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not parameter values")
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, numbers.Real):
        xf = float(x)
        if not np.isfinite(xf):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(xf))
    raise TypeError(f"cannot read {type(x).__name__} as a rational number")


def check_theta(theta, interval: ParamInterval) -> List[Fraction]:
    """Validate parameter values (scalar or 1-D array-like) against an interval."""
    if isinstance(theta, (str, Fraction, numbers.Number)):
        values = [theta]
    else:
        arr = theta if isinstance(theta, (list, tuple)) else np.asarray(theta, dtype=object)
        if isinstance(arr, np.ndarray):
            if arr.ndim == 2 and arr.shape[1] == 1:
                arr = arr[:, 0]
            if arr.ndim != 1:
                raise ValueError(f"expected a 1-D array of parameter values, got shape {arr.shape}")
            arr = list(arr)
        values = list(arr)
    out = [as_rational(v) for v in values]
    for v in out:
        if not interval.contains(v):
            raise ValueError(f"theta = {v} lies outside [{interval.lo}, {interval.hi}]")
    return out


def check_uplcp_instance(X) -> UpLcpInstance:
    if isinstance(X, UpLcpInstance):
        return X
    if isinstance(X, str):
        from .io import parse_instance
        inst = parse_instance(X, None if "problem" in X else "lcp")
        if not isinstance(inst, UpLcpInstance):
            raise TypeError("text describes a QP/LP, not an LCP")
        return inst
    raise TypeError(f"expected an UpLcpInstance, got {type(X).__name__}")


def check_upqp_instance(X, linear: bool = False) -> UpQpInstance:
    if isinstance(X, str):
        from .io import parse_instance
        X = parse_instance(X, None if "problem" in X else ("lp" if linear else "qp"))
    if not isinstance(X, UpQpInstance):
        raise TypeError(f"expected an UpQpInstance, got {type(X).__name__}")
    if linear and not X.is_linear():
        raise ValueError("an LP must have Q identically zero")
    return X


Numeric = Union[int, float, Fraction, str]
