"""Brute-force arbitrage oracle: numerical sigma* and a direct density check.

sigma* is the supremum of the pointwise requirement f = -b*g2/(2*G1) over
the two wing intervals where g2 < 0.  Each admissible side is searched with
a dense log-spaced scan followed by golden-section refinement; on the
wing-slope boundaries b*(1 +- rho) = 2 the supremum may be attained only in
the limit l -> +-infinity, so the closed-form limit of f is evaluated
explicitly (a grid cannot witness it).  Every closed-form family domain in
this package is validated against this oracle.

durrleman_check is the independent second route: it verifies nonnegativity
of G1 + b*g2/(2*sigma) directly on a wide grid.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import (
    BOUNDARY_TOL,
    EvaluationDomainError,
    FukasawaViolation,
    NormalizedSvi,
    RawSviParams,
    RogerLeeViolation,
    g1,
    hgg2,
    n_funcs,
    sigma_floor,
)
from .fukasawa import mu_interval, mu_lower_curve, solve_l_minus

__all__ = [
    "G2Zeros",
    "SigmaStarResult",
    "GridSpec",
    "DensityReport",
    "g2_zeros",
    "maximize_f_on_interval",
    "sigma_star",
    "sigma_star_for",
    "durrleman_check",
]

GRID_ENV_VAR = "SMILE_DOMAIN_GRID"


# ---------------------------------------------------------------------------
# Result containers
# ---------------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class G2Zeros:
    """Zeros of g2; one of them is absent when |rho| = 1."""

    l1: float | None
    l2: float | None


@dataclass(frozen=True, slots=True)
class SigmaStarResult:
    sigma_star: float
    argsup_l: float  # +-inf when the supremum is a limit
    side: str  # "left" | "right" | "limit_at_infinity"


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Evaluation grid for the density check: a uniform core plus
    log-spaced tails on both sides."""

    n_core: int = 4001
    l_core: float = 50.0
    n_tail: int = 500
    l_tail: float = 1.0e6

    @classmethod
    def from_env(cls) -> "GridSpec":
        """Default grid, with the core density overridable via the
        SMILE_DOMAIN_GRID environment variable (an integer point count)."""
        raw = os.environ.get(GRID_ENV_VAR)
        if not raw:
            return cls()
        try:
            n = int(raw)
        except ValueError as exc:
            raise ValueError(
                f"{GRID_ENV_VAR} must be an integer, got {raw!r}"
            ) from exc
        if n < 101:
            raise ValueError(f"{GRID_ENV_VAR} must be >= 101, got {n}")
        return cls(n_core=n)

    def points(self) -> np.ndarray:
        core = np.linspace(-self.l_core, self.l_core, self.n_core)
        tail = np.geomspace(self.l_core, self.l_tail, self.n_tail + 1)[1:]
        return np.concatenate([-tail[::-1], core, tail])


@dataclass(frozen=True, slots=True)
class DensityReport:
    """Minimum of the density functional G1 + b*g2/(2*sigma) over the grid."""

    min_value: float
    argmin_l: float
    n_points: int


# ---------------------------------------------------------------------------
# Zeros of g2
# ---------------------------------------------------------------------------
def _right_zero(gamma: float, rho: float) -> float:
    """Unique zero of g2 to the right of the smile minimum."""
    if abs(rho) < 1.0:
        start = -rho / math.sqrt((1.0 - rho) * (1.0 + rho))
    else:  # rho = 1: g2 > 0 on the whole left half-line
        start = 0.0

    def g2_at(l: float) -> float:
        n, n1, n2 = n_funcs(l, gamma, rho)
        return n2 - n1 * n1 / (2.0 * n)

    offs = np.geomspace(1e-9, 1e7, 400)
    grid = start + offs
    n, n1, n2 = n_funcs(grid, gamma, rho)
    vals = n2 - n1 * n1 / (2.0 * n)
    idx = np.flatnonzero(np.diff(np.sign(vals)) != 0)
    if idx.size == 0:
        raise EvaluationDomainError(
            f"no g2 sign change found for gamma={gamma}, rho={rho}"
        )
    i = int(idx[0])
    return float(brentq(g2_at, grid[i], grid[i + 1], xtol=1e-15, rtol=8.9e-16))


def g2_zeros(gamma: float, rho: float) -> G2Zeros:
    """Zeros l1 < 0 < l2 of g2; single-sided for |rho| = 1.

    The left zero is obtained from the right zero of the strike-inverted
    smile, an exact symmetry of g2.
    """
    if rho >= 1.0:
        return G2Zeros(l1=None, l2=_right_zero(gamma, 1.0))
    if rho <= -1.0:
        return G2Zeros(l1=-_right_zero(gamma, 1.0), l2=None)
    return G2Zeros(
        l1=-_right_zero(gamma, -rho),
        l2=_right_zero(gamma, rho),
    )


# ---------------------------------------------------------------------------
# Supremum search
# ---------------------------------------------------------------------------
def _golden_max(fn, lo: float, hi: float, reltol: float = 1e-10):
    """Golden-section maximization of a unimodal-ish fn on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(256):
        if b - a <= reltol * (abs(a) + abs(b) + 1e-12):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    if fc >= fd:
        return c, fc
    return d, fd


def _limit_at_plus_infinity(gamma: float, b: float, rho: float, mu: float) -> float:
    """Limit of f as l -> +infinity; finite and positive only on the wing
    boundary b*(1+rho) = 2 with the wing factor still positive."""
    denom = gamma / (1.0 + rho) - mu
    if denom <= 0.0:
        return math.inf
    return 1.0 / denom


def _search_right(
    gamma: float, b: float, rho: float, mu: float, l2: float
) -> tuple[float, float]:
    """(argsup, sup) of f on (l2, infinity); argsup = +inf for a limit sup."""
    nsvi = NormalizedSvi(gamma=gamma, b=b, rho=rho, mu=mu, sigma=1.0)
    offs = np.geomspace(1e-8 * max(1.0, abs(l2)), 1e8, 512)
    grid = l2 + offs
    vals = np.asarray(sigma_floor(grid, nsvi))
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]
    arg, sup = _golden_max(lambda l: sigma_floor(l, nsvi), lo, hi)

    if abs(b * (1.0 + rho) - 2.0) <= BOUNDARY_TOL:
        lim = _limit_at_plus_infinity(gamma, b, rho, mu)
        # G1 ~ 1/(2*lim*l) in the far tail, so f there carries relative
        # cancellation noise of order eps*l*lim; only an interior max that
        # beats the limit beyond that noise is genuine
        noise_rel = 2e-15 * max(abs(arg), 1.0) * max(lim, 1.0) + 1e-12
        if sup <= lim * (1.0 + noise_rel):
            return math.inf, lim
    return float(arg), float(sup)


def maximize_f_on_interval(nsvi: NormalizedSvi, side: str) -> tuple[float, float]:
    """(argsup, sup) of f = -b*g2/(2*G1) on one wing interval.

    side "right" searches l > l2, side "left" searches l < l1 through the
    exact inversion symmetry f(l; rho, mu) = f(-l; -rho, -mu).  An argsup of
    +-inf signals a supremum attained only in the limit, which happens
    exactly on the wing-slope boundary of that side.
    """
    if side == "left":
        mirrored = NormalizedSvi(
            gamma=nsvi.gamma, b=nsvi.b, rho=-nsvi.rho, mu=-nsvi.mu, sigma=nsvi.sigma
        )
        arg, sup = maximize_f_on_interval(mirrored, "right")
        return -arg, sup
    if side != "right":
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    l2 = g2_zeros(nsvi.gamma, nsvi.rho).l2
    if l2 is None:
        raise EvaluationDomainError("g2 has no right zero for rho = -1")
    return _search_right(nsvi.gamma, nsvi.b, nsvi.rho, nsvi.mu, l2)


def _check_fukasawa_extreme_rho(gamma: float, b: float, mu: float) -> None:
    """Wing conditions for rho = 1 (mu bound from the mirrored curve)."""
    if gamma < 0.0:
        raise FukasawaViolation(f"gamma={gamma} must be >= 0 for rho = 1")
    if b < 1.0 - BOUNDARY_TOL:
        upper = -mu_lower_curve(solve_l_minus(gamma, b, -1.0), gamma, b, -1.0)
    else:  # b = 1 is the wing boundary; the bound degenerates to its limit
        upper = b * gamma / 2.0
    if mu >= upper:
        raise FukasawaViolation(f"mu={mu} >= bound {upper} for rho = 1")


def sigma_star(gamma: float, b: float, rho: float, mu: float) -> SigmaStarResult:
    """Numerical minimal arbitrage-free sigma for shape (gamma, b, rho, mu).

    Requires the wing conditions to hold (RogerLeeViolation or
    FukasawaViolation otherwise).  Side-selection shortcuts: a decorrelated
    smile only needs the side matching the sign of mu; a smile with
    gamma = sqrt(1-rho^2) and mu at the minimum only needs the side matching
    the sign of rho; |rho| = 1 is one-sided by construction.  Everything
    else searches both sides and keeps the larger supremum.
    """
    if b <= 0.0:
        raise EvaluationDomainError("sigma_star requires b > 0")
    if b * (1.0 + abs(rho)) > 2.0 + BOUNDARY_TOL:
        raise RogerLeeViolation(
            f"wing slope b*(1+|rho|)={b * (1.0 + abs(rho))} exceeds 2"
        )

    if rho <= -1.0:
        res = sigma_star(gamma, b, 1.0, -mu)
        side = "limit_at_infinity" if math.isinf(res.argsup_l) else "left"
        return SigmaStarResult(res.sigma_star, -res.argsup_l, side)
    if rho >= 1.0:
        _check_fukasawa_extreme_rho(gamma, b, mu)
        nsvi = NormalizedSvi(gamma=gamma, b=b, rho=1.0, mu=mu, sigma=1.0)
        arg, sup = maximize_f_on_interval(nsvi, "right")
        side = "limit_at_infinity" if math.isinf(arg) else "right"
        return SigmaStarResult(sup, arg, side)

    interval = mu_interval(gamma, b, rho)
    if interval.is_empty or not interval.contains(mu):
        raise FukasawaViolation(
            f"mu={mu} outside admissible interval "
            f"({interval.lower}, {interval.upper})"
        )

    nsvi = NormalizedSvi(gamma=gamma, b=b, rho=rho, mu=mu, sigma=1.0)
    root = math.sqrt((1.0 - rho) * (1.0 + rho))
    ssvi_like = abs(gamma - root) <= 1e-12 and abs(mu + rho / root) <= 1e-9

    sides: list[str]
    if ssvi_like:
        sides = ["right"] if rho >= 0.0 else ["left"]
    elif abs(rho) <= BOUNDARY_TOL:
        sides = ["right"] if mu >= 0.0 else ["left"]
    else:
        sides = ["right", "left"]

    best_sup = -math.inf
    best_arg = math.nan
    best_side = ""
    for side in sides:
        arg, sup = maximize_f_on_interval(nsvi, side)
        if sup > best_sup:
            best_sup, best_arg, best_side = sup, arg, side
    if math.isinf(best_arg):
        best_side = "limit_at_infinity"
    return SigmaStarResult(best_sup, best_arg, best_side)


def sigma_star_for(nsvi: NormalizedSvi) -> SigmaStarResult:
    """sigma_star for a normalized parameter set (its sigma is ignored)."""
    return sigma_star(nsvi.gamma, nsvi.b, nsvi.rho, nsvi.mu)


# ---------------------------------------------------------------------------
# Independent density check
# ---------------------------------------------------------------------------
def durrleman_check(p: RawSviParams, grid: GridSpec | None = None) -> DensityReport:
    """Minimum of the density functional G1 + b*g2/(2*sigma) on a wide grid.

    Nonnegativity of this functional is equivalent to absence of butterfly
    arbitrage; this check is deliberately independent of the supremum search
    so the two can validate each other.
    """
    grid = grid or GridSpec()
    if p.b <= 0.0:
        # flat smile: the functional is identically 1
        return DensityReport(min_value=1.0, argmin_l=0.0, n_points=1)
    nsvi = p.normalized()
    ls = grid.points()
    G1, _, _ = g1(ls, nsvi)
    _, _, g2v = hgg2(ls, nsvi)
    vals = G1 + nsvi.b * g2v / (2.0 * nsvi.sigma)
    i = int(np.argmin(vals))
    return DensityReport(
        min_value=float(vals[i]), argmin_l=float(ls[i]), n_points=len(ls)
    )
