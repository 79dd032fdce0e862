"""Necessary wing-positivity conditions for a general SVI smile.

For fixed (gamma, b, rho), positivity of both factors G1+- of G1 confines
mu to an open interval.  Its endpoints are values of the bound curve

    L-(l) = 2*N(l)*(1/N'(l) + b/4) - l

at the unique root l- of the level curve g-(l; b, rho) = gamma located
below the smile minimum; the mirrored root (rho -> -rho) gives the upper
endpoint.  On the wing-slope boundaries b*(1 -+ rho) = 2 the corresponding
root escapes to -infinity and the endpoint degenerates to the limit value
-+ b*gamma/2.  The interval is non-empty iff gamma exceeds a threshold
depending on (b, rho) only, computed here by bisecting the emptiness
predicate (which is monotone in gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import (
    BOUNDARY_TOL,
    EvaluationDomainError,
    InvalidParamsError,
    NoRootError,
    n_funcs,
)

__all__ = [
    "FukasawaInterval",
    "l_minus_curve",
    "solve_l_minus",
    "mu_lower_curve",
    "mu_interval",
    "fukasawa_threshold",
]

_SCAN_POINTS = 128
_SCAN_FAR = 1.0e8
_SCAN_NEAR = 1.0e-6


@dataclass(frozen=True, slots=True)
class FukasawaInterval:
    """Open admissible interval for mu, with its degeneracy tag."""

    lower: float
    upper: float
    degenerate_case: str = "generic"

    @property
    def is_empty(self) -> bool:
        return not self.lower < self.upper

    def contains(self, mu: float) -> bool:
        """Strict membership; boundary points are excluded."""
        return self.lower < mu < self.upper

    def on_boundary(self, mu: float, tol: float = BOUNDARY_TOL) -> bool:
        return min(abs(mu - self.lower), abs(mu - self.upper)) <= tol


def l_minus_curve(l, b: float, rho: float):
    """Level curve whose root below the smile minimum locates the mu bound.

    Algebraically (rho*s + l)^2 * (s*(1/2 + b*rho/4) + b*l/4) - (rho*l + s)
    with s = sqrt(l^2+1); evaluated here as s^3*N'^2*(2 + b*N')/4 - N so the
    deep left wing keeps full precision.
    """
    l = np.asarray(l, dtype=np.float64)
    s = np.hypot(l, 1.0)
    n0, n1, _ = n_funcs(l, 0.0, rho)
    val = s**3 * n1 * n1 * (2.0 + b * n1) / 4.0 - n0
    return float(val) if np.ndim(val) == 0 else val


def _validate_level(gamma: float, rho: float) -> None:
    root = math.sqrt(max(0.0, (1.0 - rho) * (1.0 + rho)))
    if abs(rho) < 1.0:
        if gamma + root <= 0.0:
            raise InvalidParamsError(
                f"gamma={gamma} must exceed -sqrt(1-rho^2)={-root}"
            )
    elif gamma < 0.0:
        raise InvalidParamsError(f"gamma={gamma} must be >= 0 when |rho| = 1")


def solve_l_minus(gamma: float, b: float, rho: float) -> float:
    """Unique root of l_minus_curve(., b, rho) = gamma below the minimum.

    Raises NoRootError in the degenerate case b*(1 - rho) = 2, where the
    curve no longer diverges on the left and the root escapes to -infinity.
    """
    _validate_level(gamma, rho)
    if rho >= 1.0:
        raise EvaluationDomainError("no domain below the minimum for rho = 1")
    if b * (1.0 - rho) >= 2.0 - BOUNDARY_TOL:
        tag = (
            "b2_rho0"
            if abs(b * (1.0 + rho) - 2.0) <= BOUNDARY_TOL
            else "b_one_minus_rho_eq_2"
        )
        raise NoRootError(
            f"left root removed at b*(1-rho)={b * (1.0 - rho)}", degenerate_case=tag
        )

    if abs(rho) < 1.0:
        upper = -rho / math.sqrt((1.0 - rho) * (1.0 + rho)) - _SCAN_NEAR
    else:  # rho = -1: the smile minimum sits at +infinity
        upper = _SCAN_FAR
    offsets = np.geomspace(_SCAN_NEAR, upper + _SCAN_FAR, _SCAN_POINTS)
    grid = upper - offsets
    vals = l_minus_curve(grid, b, rho) - gamma

    # negative near the minimum, diverges to +infinity on the far left
    idx = np.flatnonzero(np.diff(np.sign(vals)) != 0)
    if idx.size == 0:
        raise NoRootError(
            f"no sign change for gamma={gamma}, b={b}, rho={rho}"
        )
    i = int(idx[0])
    lo, hi = grid[i + 1], grid[i]
    return float(
        brentq(lambda l: l_minus_curve(l, b, rho) - gamma, lo, hi, xtol=1e-14)
    )


def mu_lower_curve(l: float, gamma: float, b: float, rho: float) -> float:
    """Bound curve 2*N*(1/N' + b/4) - l; undefined at the smile minimum."""
    n, n1, _ = n_funcs(l, gamma, rho)
    if n1 == 0.0:
        raise EvaluationDomainError("bound curve undefined where N'(l) = 0")
    return 2.0 * n * (1.0 / n1 + b / 4.0) - l


def mu_interval(gamma: float, b: float, rho: float) -> FukasawaInterval:
    """Admissible open mu-interval for the wing conditions G1+- > 0.

    Covers the generic case and all three wing-slope degeneracies; emptiness
    is reported through the interval itself, never by an exception.
    """
    if abs(rho) >= 1.0:
        raise InvalidParamsError("mu_interval requires |rho| < 1")
    _validate_level(gamma, rho)
    if b < 0.0:
        raise InvalidParamsError(f"b must be >= 0, got {b}")
    if b * (1.0 + abs(rho)) > 2.0 + BOUNDARY_TOL:
        raise InvalidParamsError(
            f"wing slope b*(1+|rho|)={b * (1.0 + abs(rho))} exceeds 2"
        )

    deg_minus = b * (1.0 - rho) >= 2.0 - BOUNDARY_TOL
    deg_plus = b * (1.0 + rho) >= 2.0 - BOUNDARY_TOL

    if deg_minus and deg_plus:
        return FukasawaInterval(-gamma, gamma, "b2_rho0")
    if deg_minus:
        upper = -mu_lower_curve(solve_l_minus(gamma, b, -rho), gamma, b, -rho)
        return FukasawaInterval(-b * gamma / 2.0, upper, "b_one_minus_rho_eq_2")
    if deg_plus:
        lower = mu_lower_curve(solve_l_minus(gamma, b, rho), gamma, b, rho)
        return FukasawaInterval(lower, b * gamma / 2.0, "b_one_plus_rho_eq_2")

    lower = mu_lower_curve(solve_l_minus(gamma, b, rho), gamma, b, rho)
    upper = -mu_lower_curve(solve_l_minus(gamma, b, -rho), gamma, b, -rho)
    return FukasawaInterval(lower, upper)


def fukasawa_threshold(b: float, rho: float, tol: float = 1e-10) -> float:
    """Smallest gamma making the mu-interval non-empty, by bisection.

    The non-emptiness predicate is monotone in gamma, which justifies the
    bisection; the result lies in [-1, 0].
    """
    floor = -math.sqrt(max(0.0, (1.0 - rho) * (1.0 + rho)))

    def nonempty(g: float) -> bool:
        return not mu_interval(g, b, rho).is_empty

    lo = floor + 1e-12
    if nonempty(lo):
        return floor
    hi = 0.5
    while not nonempty(hi):  # gamma > 0 is always admissible
        hi *= 2.0
        if hi > 64.0:
            raise NoRootError(f"interval never opens for b={b}, rho={rho}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if nonempty(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
