"""Scalar entropy functions: the binary entropy ``s``, its inverse on ``[0, 1/2]``, and ``xi_S``."""
from __future__ import annotations

import math

from scipy.optimize import bisect
from scipy.special import xlogy

from .errors import DomainError

__all__ = ["s", "s_inverse", "xi_S", "LN2", "BISECT_MAXITER"]

LN2 = math.log(2.0)
BISECT_MAXITER = 1100  # enough halvings to reach the smallest subnormal from [0, 1]
_RTOL = 4 * 2.220446049250313e-16


def s(x: float) -> float:
    """``-x ln x - (1-x) ln(1-x)``, with ``s(0) = s(1) = 0``."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"s is defined on [0, 1], got {x!r}")
    return float(-xlogy(x, x) - xlogy(1.0 - x, 1.0 - x))


def s_inverse(y: float) -> float:
    """The ``x`` in ``[0, 1/2]`` with ``s(x) = y``, for ``y`` in ``[0, ln 2]``."""
    if y < 0.0 or y > LN2 + 1e-15:
        raise DomainError(f"s_inverse is defined on [0, ln 2], got {y!r}")
    if y == 0.0:
        return 0.0
    if y >= LN2:
        return 0.5
    return bisect(lambda x: s(x) - y, 0.0, 0.5, xtol=1e-300, rtol=_RTOL, maxiter=BISECT_MAXITER)


def xi_S(S: float) -> float:
    """``s_inverse(S)`` when ``S < ln 2``, else 1.

    This is the branch assignment used when the grand-canonical state is actually built
    (``s_inverse`` only exists below ``ln 2``).
    """
    if S < 0:
        raise DomainError("entropy must be nonnegative")
    return s_inverse(S) if S < LN2 else 1.0
