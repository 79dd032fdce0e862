"""The exact domain of a vanishing smile, walked coordinate by coordinate.

For 0 < b < 1 the whole arbitrage-free boundary is parametrized by the
critical-point location x in ((2+b)/(4-b), 1): mu*(x) pins the shift that
makes x critical and sigma*(x) is the exact threshold there.  The explicit
sub-domain (mu <= 0, one sigma level per b) sits strictly inside.
"""

import numpy as np

from smile_domain import sigma_star
from smile_domain.vanishing import (
    VanishingParams,
    certify,
    fukasawa_bound,
    mu_star,
    sigma_star_closed,
    subdomain_bound,
    x_from_mu,
    x_plus_star,
)

b = 0.5
print(f"wing level b = {b}")
print(f"admissible shift: mu < sqrt(3(1-b)) = {fukasawa_bound(b):.6f}")
print(f"critical-point coordinate runs over ({x_plus_star(b):.6f}, 1)\n")

print(f"{'x':>8} {'mu*(x)':>12} {'sigma*(x)':>12} {'oracle':>12} {'rel gap':>10}")
for t in (0.05, 0.25, 0.5, 0.75, 0.95):
    x0 = x_plus_star(b)
    x = x0 + t * (1 - x0)
    mu = mu_star(x, b)
    closed = sigma_star_closed(x, b)
    oracle = sigma_star(0.0, b, 1.0, mu).sigma_star
    print(f"{x:8.4f} {mu:12.6f} {closed:12.6f} {oracle:12.6f} "
          f"{abs(closed - oracle)/oracle:10.2e}")

print("\nsub-domain vs full domain (the explicit level dominates):")
print(f"{'b':>6} {'subdomain':>12} {'sigma* at mu=0':>15}")
for bb in np.arange(0.1, 0.95, 0.2):
    bb = float(bb)
    x_zero = x_from_mu(0.0, bb)
    print(f"{bb:6.2f} {subdomain_bound(bb):12.6f} {sigma_star_closed(x_zero, bb):15.6f}")

print("\ninverting the parametrization: pick mu, recover x, certify")
for mu, sigma in [(-1.0, 0.2), (-1.0, 0.05), (0.8, 1.0)]:
    cert = certify(VanishingParams(b=b, mu=mu, sigma=sigma))
    print(f"  mu={mu:+.2f} sigma={sigma:.2f}: verdict={cert.to_dict()['verdict']},"
          f" sigma*={cert.bounds['sigma_star']:.6f}")

print("\nthe b = 1 edge: the threshold is attained only in the far wing")
for mu in (-0.5, -1.0, -2.0):
    res = sigma_star(0.0, 1.0, 1.0, mu)
    print(f"  mu={mu:+.1f}: sigma* = {res.sigma_star:.6f} = -1/mu, side={res.side}")
