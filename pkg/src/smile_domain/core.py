"""Core SVI smile machinery shared by every no-arbitrage domain module.

Total variance: ``w(k) = a + b*(rho*(k - m) + sqrt((k - m)^2 + sigma^2))``.

With ``gamma = a/(b*sigma)`` and ``mu = m/sigma`` the smile rescales to
``w(k) = b*sigma*N(l)`` at ``l = (k - m)/sigma``, where

    N(l) = gamma + rho*l + sqrt(l^2 + 1).

Absence of butterfly arbitrage is equivalent to nonnegativity of
``G1 + b*g2/(2*sigma)``, where G1, g2 (and the auxiliary h, g) depend only
on the shape parameters (gamma, b, rho, mu).  Everything in this module is
a pure function of its arguments and safe to call from multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BOUNDARY_TOL",
    "SmileDomainError",
    "InvalidParamsError",
    "EvaluationDomainError",
    "RogerLeeViolation",
    "FukasawaViolation",
    "NoRootError",
    "RawSviParams",
    "NormalizedSvi",
    "EvalPoint",
    "total_variance",
    "n_funcs",
    "hgg2",
    "g1",
    "hgg2_prime",
    "sigma_floor",
    "sigma_floor_dual",
    "invert",
]

# Absolute tolerance for all bound comparisons; strict paper inequalities are
# enforced as value < bound, boundary membership reported when within this.
BOUNDARY_TOL = 1e-10


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------
class SmileDomainError(Exception):
    """Base class for errors raised by the domain machinery."""


class InvalidParamsError(SmileDomainError, ValueError):
    """Parameters violate a structural invariant (not merely arbitrageable)."""


class EvaluationDomainError(SmileDomainError, ValueError):
    """A shape function was evaluated outside its mathematical domain."""


class RogerLeeViolation(SmileDomainError):
    """Wing slopes b*(1 +/- rho) exceed 2; no sigma can repair the smile."""


class FukasawaViolation(SmileDomainError):
    """The necessary wing conditions G1+- > 0 fail; sigma* is undefined."""


class NoRootError(SmileDomainError):
    """A normally guaranteed root is removed by a degenerate boundary case."""

    def __init__(self, message: str, degenerate_case: str = "generic"):
        super().__init__(message)
        self.degenerate_case = degenerate_case


# ---------------------------------------------------------------------------
# Parameter containers
# ---------------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class RawSviParams:
    """The five raw SVI parameters in total-variance space."""

    a: float
    b: float
    rho: float
    m: float
    sigma: float

    def __post_init__(self):
        vals = (self.a, self.b, self.rho, self.m, self.sigma)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidParamsError(f"non-finite SVI parameters: {vals}")
        if self.b < 0.0:
            raise InvalidParamsError(f"b must be >= 0, got {self.b}")
        if abs(self.rho) > 1.0:
            raise InvalidParamsError(f"|rho| must be <= 1, got {self.rho}")
        if self.sigma < 0.0:
            raise InvalidParamsError(f"sigma must be >= 0, got {self.sigma}")
        if self.b == 0.0 and self.a == 0.0:
            raise InvalidParamsError("a = b = 0 is the trivial (zero) smile")
        if self.min_total_variance < -BOUNDARY_TOL:
            raise InvalidParamsError(
                f"minimum total variance {self.min_total_variance} < 0"
            )

    @property
    def min_total_variance(self) -> float:
        """a + b*sigma*sqrt(1 - rho^2), the smile's global minimum."""
        return self.a + self.b * self.sigma * math.sqrt(
            max(0.0, (1.0 - self.rho) * (1.0 + self.rho))
        )

    def normalized(self) -> "NormalizedSvi":
        return NormalizedSvi.from_raw(self)


@dataclass(frozen=True, slots=True)
class NormalizedSvi:
    """Reduced smile parameters (gamma, b, rho, mu, sigma).

    gamma = a/(b*sigma) and mu = m/sigma; the shape functions below depend
    only on (gamma, b, rho, mu), while sigma sets the arbitrage threshold.
    """

    gamma: float
    b: float
    rho: float
    mu: float
    sigma: float

    def __post_init__(self):
        if self.b < 0.0 or abs(self.rho) > 1.0 or self.sigma <= 0.0:
            raise InvalidParamsError(
                f"invalid normalized parameters b={self.b}, rho={self.rho}, "
                f"sigma={self.sigma}"
            )
        floor = -math.sqrt(max(0.0, (1.0 - self.rho) * (1.0 + self.rho)))
        if self.gamma < floor - BOUNDARY_TOL:
            raise InvalidParamsError(
                f"gamma={self.gamma} below -sqrt(1-rho^2)={floor}"
            )

    @classmethod
    def from_raw(cls, p: RawSviParams) -> "NormalizedSvi":
        if p.b <= 0.0:
            raise InvalidParamsError("normalization requires b > 0")
        if p.sigma <= 0.0:
            raise InvalidParamsError("normalization requires sigma > 0")
        return cls(
            gamma=p.a / (p.b * p.sigma),
            b=p.b,
            rho=p.rho,
            mu=p.m / p.sigma,
            sigma=p.sigma,
        )

    def to_raw(self) -> RawSviParams:
        return RawSviParams(
            a=self.gamma * self.b * self.sigma,
            b=self.b,
            rho=self.rho,
            m=self.mu * self.sigma,
            sigma=self.sigma,
        )

    @property
    def l_star(self) -> float:
        """Location of the smile minimum, -rho/sqrt(1 - rho^2)."""
        if abs(self.rho) >= 1.0:
            raise EvaluationDomainError("l_star undefined for |rho| = 1")
        return -self.rho / math.sqrt((1.0 - self.rho) * (1.0 + self.rho))


@dataclass(frozen=True, slots=True)
class EvalPoint:
    """Normalized evaluation point with cached wing coordinates.

    x = l/sqrt(l^2+1) in (-1, 1) and z = 1/sqrt(l^2+1) in (0, 1]; both are
    computed from l directly (never by chained division) so they stay
    consistent to machine precision for |l| up to overflow.
    """

    l: float
    x: float
    z: float

    @classmethod
    def from_l(cls, l: float) -> "EvalPoint":
        s = math.hypot(l, 1.0)
        return cls(l=float(l), x=l / s, z=1.0 / s)

    @classmethod
    def from_x(cls, x: float) -> "EvalPoint":
        if not -1.0 < x < 1.0:
            raise EvaluationDomainError(f"x must lie in (-1, 1), got {x}")
        root = math.sqrt((1.0 - x) * (1.0 + x))
        return cls(l=x / root, x=float(x), z=root)

    @classmethod
    def from_z(cls, z: float) -> "EvalPoint":
        """Point with l >= 0; z in (0, 1]."""
        if not 0.0 < z <= 1.0:
            raise EvaluationDomainError(f"z must lie in (0, 1], got {z}")
        root = math.sqrt((1.0 - z) * (1.0 + z))
        return cls(l=root / z, x=root, z=float(z))


# ---------------------------------------------------------------------------
# Shape functions
# ---------------------------------------------------------------------------
def total_variance(p: RawSviParams, k):
    """Total variance w(k) of the raw SVI smile; vectorized in k."""
    d = np.asarray(k, dtype=np.float64) - p.m
    w = p.a + p.b * (p.rho * d + np.hypot(d, p.sigma))
    return float(w) if w.ndim == 0 else w


def n_funcs(l, gamma: float, rho: float):
    """Normalized level N and its first two derivatives at l.

    Returns (N, N', N'') with N = gamma + rho*l + sqrt(l^2+1),
    N' = rho + l/sqrt(l^2+1) and N'' = (l^2+1)^(-3/2).  Both N and N' are
    rationalized when rho*l < 0 so the wings keep full relative precision
    instead of cancelling two nearly equal magnitudes.
    """
    l = np.asarray(l, dtype=np.float64)
    s = np.hypot(l, 1.0)
    x = l / s
    one_m_rho2 = (1.0 - rho) * (1.0 + rho)

    lin = rho * l
    with np.errstate(divide="ignore", invalid="ignore"):
        # rho*l + s == (l^2*(1-rho^2) + 1)/(s - rho*l) when signs oppose
        n_alt = gamma + (l * l * one_m_rho2 + 1.0) / (s - lin)
        n = np.where(lin < 0.0, n_alt, gamma + lin + s)
        # rho + x == (rho^2 - x^2)/(rho - x) when signs oppose, with
        # rho^2 - x^2 = (rho^2 - l^2*(1-rho^2))/(l^2+1)
        n1_alt = (rho * rho - l * l * one_m_rho2) / (s * s) / (rho - x)
        n1 = np.where(rho * x < 0.0, n1_alt, rho + x)
    n2 = 1.0 / (s * s * s)

    if n.ndim == 0:
        return float(n), float(n1), float(n2)
    return n, n1, n2


def hgg2(l, nsvi: NormalizedSvi):
    """Auxiliary functions (h, g, g2) of the normalized smile at l.

    h = 1 - N'*(l + mu)/(2N), g = N'/4 and g2 = N'' - N'^2/(2N).  Raises
    EvaluationDomainError if N <= 0 anywhere on the input.
    """
    n, n1, n2 = n_funcs(l, nsvi.gamma, nsvi.rho)
    if np.any(np.asarray(n) <= 0.0):
        raise EvaluationDomainError("N(l) <= 0: smile level vanishes")
    h = 1.0 - n1 * (np.asarray(l, dtype=np.float64) + nsvi.mu) / (2.0 * n)
    g = n1 / 4.0
    g2 = n2 - n1 * n1 / (2.0 * n)
    if np.ndim(h) == 0:
        return float(h), float(g), float(g2)
    return h, g, g2


def g1(l, nsvi: NormalizedSvi):
    """Wing positivity factors (G1, G1+, G1-) with G1 = G1+ * G1-."""
    h, g, _ = hgg2(l, nsvi)
    plus = h - nsvi.b * g
    minus = h + nsvi.b * g
    return plus * minus, plus, minus


def hgg2_prime(l, nsvi: NormalizedSvi):
    """Values and first l-derivatives of (h, g, g2).

    Returns (h, g, g2, h', g', g2').  Used by the critical-point machinery
    that trades the curvature parameter b for the minimizer location.
    """
    l = np.asarray(l, dtype=np.float64)
    n, n1, n2 = n_funcs(l, nsvi.gamma, nsvi.rho)
    if np.any(np.asarray(n) <= 0.0):
        raise EvaluationDomainError("N(l) <= 0: smile level vanishes")
    s = np.hypot(l, 1.0)
    n3 = -3.0 * l / s**5

    lm = l + nsvi.mu
    h = 1.0 - n1 * lm / (2.0 * n)
    g = n1 / 4.0
    g2 = n2 - n1 * n1 / (2.0 * n)
    h1 = -(n2 * lm + n1) / (2.0 * n) + n1 * n1 * lm / (2.0 * n * n)
    g1d = n2 / 4.0
    g21 = n3 - n1 * n2 / n + n1**3 / (2.0 * n * n)

    if np.ndim(h) == 0:
        return float(h), float(g), float(g2), float(h1), float(g1d), float(g21)
    return h, g, g2, h1, g1d, g21


def sigma_floor(l, nsvi: NormalizedSvi):
    """Pointwise sigma requirement -b*g2/(2*G1); its supremum over the
    wings is the minimal arbitrage-free sigma."""
    G1, _, _ = g1(l, nsvi)
    _, _, g2v = hgg2(l, nsvi)
    return -nsvi.b * g2v / (2.0 * G1)


def sigma_floor_dual(l, nsvi: NormalizedSvi):
    """Dual form -G1/g2 = b/(2*sigma_floor); the same critical point
    minimizes it, which is what the reparametrized families exploit."""
    G1, _, _ = g1(l, nsvi)
    _, _, g2v = hgg2(l, nsvi)
    return -G1 / g2v


def invert(p: RawSviParams) -> RawSviParams:
    """Strike-inverted smile (a, b, -rho, -m, sigma).

    Butterfly arbitrage is preserved exactly: the inverted smile is
    arbitrage-free iff the original one is.  Involution by construction.
    """
    return RawSviParams(a=p.a, b=p.b, rho=-p.rho, m=-p.m, sigma=p.sigma)
