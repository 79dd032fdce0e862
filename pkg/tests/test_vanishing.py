from __future__ import annotations

import math

import numpy as np
import pytest

from smile_domain import InvalidParamsError, durrleman_check, sigma_star
from smile_domain.vanishing import (
    VanishingParams,
    certify,
    fukasawa_bound,
    mu_star,
    sigma_star_closed,
    subdomain_bound,
    subdomain_check,
    x_from_mu,
    x_plus_star,
)

SUB_COEF = 0.68338743024419042921  # (34*sqrt(2) - 5*sqrt(5))/54


@pytest.mark.parametrize(
    "b, expected", [(1.0, 0.0), (0.0, math.sqrt(3.0)), (2.0 / 3.0, 1.0)]
)
def test_fukasawa_bound_examples(b, expected):
    assert fukasawa_bound(b) == pytest.approx(expected, abs=1e-14)


def test_params_validation():
    with pytest.raises(InvalidParamsError):
        VanishingParams(b=1.2, mu=0.0, sigma=1.0)
    with pytest.raises(InvalidParamsError):
        VanishingParams(b=0.5, mu=0.0, sigma=0.0)
    p = VanishingParams(b=0.5, mu=-1.0, sigma=1.0, direction="downward")
    raw = p.to_raw()
    assert raw.rho == -1.0 and raw.a == 0.0 and raw.m == -1.0


# ---------------------------------------------------------------------------
# mu*
# ---------------------------------------------------------------------------
def _mu_star_quadratic_oracle(x: float, b: float) -> float:
    """Root of the quadratic-in-mu critical-point numerator, selected below
    the admissible bound."""
    s = math.sqrt(1 - x * x)
    A = 4.0 * (1 - x * x) * (2 * x * x - 2 * x - 1)
    B = -8.0 * (1 - x) * s * (2 * x * x - 8 * x - 1)
    C = (
        2 * x**4 * (4 - b * b)
        - 6 * x**3 * (b * b + 12)
        + 3 * x * x * (52 - b * b)
        + 4 * x * (b * b - 22)
        + 3 * b * b
    )
    disc = math.sqrt(B * B - 4 * A * C)
    roots = [(-B + disc) / (2 * A), (-B - disc) / (2 * A)]
    ok = [r for r in roots if r < fukasawa_bound(b) + 1e-9]
    assert len(ok) >= 1
    return min(ok, key=lambda r: abs(r - mu_star(x, b)))


def test_mu_star_solves_critical_point_quadratic():
    for b in (0.2, 0.5, 0.8):
        for x in (0.7, 0.8, 0.9, 0.95):
            if x <= x_plus_star(b):
                continue
            assert mu_star(x, b) == pytest.approx(
                _mu_star_quadratic_oracle(x, b), rel=1e-10
            )


def test_mu_star_left_endpoint_limit():
    for b in (0.2, 0.5, 0.8):
        x = x_plus_star(b) + 1e-6
        assert abs(mu_star(x, b) - fukasawa_bound(b)) <= 1e-4


def test_mu_star_diverges_at_one():
    assert mu_star(1.0 - 1e-9, 0.5) < -1e3


def test_mu_star_strictly_decreasing():
    for b in np.arange(0.1, 0.95, 0.1):
        b = float(b)
        xs = np.linspace(x_plus_star(b) + 1e-6, 1.0 - 1e-6, 200)
        vals = [mu_star(float(x), b) for x in xs]
        assert np.all(np.diff(vals) < 0)


def test_mu_star_extends_continuously_to_b_zero():
    # the b -> 0 limit of mu* exists even though b = 0 smiles are flat and
    # excluded from certification
    for x in (0.7, 0.85, 0.95):
        tiny = mu_star(x, 1e-10)
        s = math.sqrt(1 - x * x)
        radicand = 64 * x**4 - 128 * x**3 + 96 * x * x - 32 * x + 4
        limit = (2 * (1 - x) * (2 * x * x - 8 * x - 1) + math.sqrt(radicand)) / (
            2 * s * (2 * x * x - 2 * x - 1)
        )
        assert tiny == pytest.approx(limit, rel=1e-8)


def test_mu_star_domain_errors():
    with pytest.raises(Exception):
        mu_star(0.5, 0.5)  # left of the interval
    with pytest.raises(Exception):
        mu_star(0.9, 1.0)  # b = 1 excluded


# ---------------------------------------------------------------------------
# sigma*
# ---------------------------------------------------------------------------
def test_sigma_star_closed_matches_oracle_grid():
    for b in (0.1, 0.3, 0.5, 0.7, 0.9):
        x0 = x_plus_star(b)
        for t in (0.25, 0.5, 0.75):
            x = x0 + t * (1.0 - x0)
            closed = sigma_star_closed(x, b)
            res = sigma_star(0.0, b, 1.0, mu_star(x, b))
            assert closed == pytest.approx(res.sigma_star, rel=1e-6)
            assert closed > 0.0


def test_sigma_star_direction_independent():
    assert sigma_star_closed(0.8, 0.5, "downward") == sigma_star_closed(
        0.8, 0.5, "upward"
    )


def test_sigma_star_dominated_by_subdomain_at_mu_zero():
    for b in (0.2, 0.5, 0.8):
        x = x_from_mu(0.0, b)
        assert sigma_star_closed(x, b) <= subdomain_bound(b) + 1e-12


# ---------------------------------------------------------------------------
# sub-domain
# ---------------------------------------------------------------------------
def test_subdomain_examples():
    bound = SUB_COEF * 0.5 / (1 - 0.25)
    assert subdomain_bound(0.5) == pytest.approx(bound, rel=1e-12)
    assert subdomain_check(0.5, 0.0, bound, "upward")
    assert not subdomain_check(0.5, 0.1, 10.0, "upward")  # mu > 0 exits
    assert subdomain_check(0.5, -0.1, bound, "downward") is False  # mirrored mu
    assert subdomain_check(0.5, 0.1, bound, "downward")


def test_subdomain_bound_diverges():
    assert subdomain_bound(1.0 - 1e-9) > 1e6


def test_subdomain_implies_certified():
    rng = np.random.default_rng(23)
    for _ in range(50):
        b = rng.uniform(0.05, 0.95)
        mu = rng.uniform(-3.0, 0.0)
        sigma = subdomain_bound(b) * rng.uniform(1.0, 2.0)
        assert subdomain_check(b, mu, sigma)
        assert certify(VanishingParams(b=b, mu=mu, sigma=sigma)).passed


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------
def test_certify_round_trips_mu():
    rng = np.random.default_rng(31)
    for _ in range(30):
        b = rng.uniform(0.05, 0.95)
        mu = fukasawa_bound(b) - rng.uniform(0.01, 4.0)
        x = x_from_mu(mu, b)
        assert mu_star(x, b) == pytest.approx(mu, rel=1e-10, abs=1e-10)


def test_certify_b1_wing_boundary():
    # requirement on the boundary is -1/mu, scale-free in sigma: m <= -1
    cert = certify(VanishingParams(b=1.0, mu=-2.0, sigma=1.0))
    assert cert.passed and cert.bounds["sigma_star"] == pytest.approx(0.5)
    cert = certify(VanishingParams(b=1.0, mu=-2.0, sigma=0.499))
    assert not cert.passed
    cert = certify(VanishingParams(b=1.0, mu=0.5, sigma=5.0))
    assert not cert.conditions["fukasawa"]
    # oracle agreement on the boundary bound
    res = sigma_star(0.0, 1.0, 1.0, -2.0)
    assert res.sigma_star == pytest.approx(0.5, rel=1e-9)


def test_certify_b1_matches_density_check():
    for mu, sigma in [(-1.0, 1.05), (-1.0, 0.9), (-0.5, 2.2), (-0.5, 1.5)]:
        cert = certify(VanishingParams(b=1.0, mu=mu, sigma=sigma))
        rep = durrleman_check(cert.params_raw)
        assert cert.passed == (rep.min_value >= -1e-8)


def test_certify_fukasawa_violation():
    cert = certify(VanishingParams(b=0.5, mu=2.0, sigma=10.0))
    assert not cert.conditions["fukasawa"]
    assert not cert.passed
    assert cert.bounds["sigma_star"] == math.inf


def test_certify_downward_figure_instance():
    # b=1/2, m=1, sigma=1
    p = VanishingParams(b=0.5, mu=1.0, sigma=1.0, direction="downward")
    cert = certify(p)
    rep = durrleman_check(p.to_raw())
    assert cert.passed == (rep.min_value >= -1e-8)
    assert cert.passed  # sits inside the explicit sub-domain


def test_certify_matches_density_check_randomized():
    rng = np.random.default_rng(37)
    for direction in ("upward", "downward"):
        sgn = 1.0 if direction == "upward" else -1.0
        for _ in range(50):
            b = rng.uniform(0.05, 0.98)
            mu_up = fukasawa_bound(b) - rng.uniform(0.05, 3.0)
            star = sigma_star_closed(x_from_mu(mu_up, b), b)
            sigma = star * rng.choice([0.7, 0.9, 1.1, 1.5])
            p = VanishingParams(b=b, mu=sgn * mu_up, sigma=sigma, direction=direction)
            cert = certify(p)
            rep = durrleman_check(p.to_raw())
            assert cert.passed == (rep.min_value >= -1e-8), (b, mu_up, sigma)


def test_certificate_records_diagnostics():
    cert = certify(VanishingParams(b=0.5, mu=-1.0, sigma=1.0))
    assert 0.0 < cert.diagnostics["x"] < 1.0
    assert abs(cert.diagnostics["mu_star_residual"]) < 1e-9
    assert cert.conditions["roger_lee"]
