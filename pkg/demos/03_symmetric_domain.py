"""Symmetric smiles: threshold, its inverse, and the z-sweep of the boundary.

gamma must exceed the closed-form wing threshold F(b); its inverse G(gamma)
caps the admissible curvature.  Trading b for the critical point z of the
sigma requirement sweeps the interval between z*(gamma, 0) and
z*(gamma, G(gamma)) and yields the exact threshold sigma*(z, gamma).  One
exceptional level gamma_hat freezes the critical point at z_hat.
"""

import numpy as np

from smile_domain import sigma_star
from smile_domain.symmetric import (
    B_HAT_MAX,
    GAMMA_HAT,
    Z_HAT,
    SymmetricParams,
    b_star,
    certify,
    fukasawa_threshold_closed,
    g_tilde,
    sigma_star_closed,
    z2,
    z_from_b,
    z_interval,
)

print("threshold and inverse round trip:")
for gamma in (-0.9, -0.5, -0.2):
    bmax = g_tilde(gamma)
    print(f"  gamma={gamma:+.2f}: G(gamma)={bmax:.8f}, F(G(gamma))="
          f"{fukasawa_threshold_closed(bmax):+.12f}")

print("\ncurvature zero z2 across its four branches:")
for gamma in (-0.9, 0.0, 0.5, 3.0):
    z = z2(gamma)
    residual = 2 * gamma * z**3 + 3 * z * z - 1
    print(f"  gamma={gamma:+.2f}: z2={z:.10f}, residual={residual:+.2e}")

print("\nsweeping the critical point for gamma = -0.5:")
gamma = -0.5
za, zb = z_interval(gamma)
print(f"  sweep endpoints: z*(gamma,0)={za:.6f} (b->0), "
      f"z*(gamma,G)={zb:.6f} (b->{g_tilde(gamma):.4f})")
for t in (0.2, 0.5, 0.8):
    z = za + t * (zb - za)
    b = b_star(z, gamma)
    closed = sigma_star_closed(z, gamma)
    oracle = sigma_star(gamma, b, 0.0, 0.0).sigma_star
    print(f"  z={z:.6f}: b*={b:.6f} sigma*={closed:.8f} "
          f"(oracle gap {abs(closed-oracle)/oracle:.1e})")

print("\ninversion b -> z and certification:")
for b, sigma in [(1.0, 1.0), (1.0, 0.3), (1.9, 5.0)]:
    z = z_from_b(b, gamma)
    cert = certify(SymmetricParams(gamma=gamma, b=b, sigma=sigma))
    print(f"  b={b}: z={z:.6f}, sigma={sigma} -> {cert.to_dict()['verdict']}"
          f" (sigma* = {cert.bounds['sigma_star']:.6f})")

print(f"\nthe exceptional level gamma_hat = {GAMMA_HAT:.12f}:")
print(f"  frozen critical point z_hat = {Z_HAT:.12f}, "
      f"curvature cap {B_HAT_MAX:.12f}")
for b in np.linspace(0.15, 0.8, 4):
    b = float(b)
    closed = sigma_star_closed(Z_HAT, GAMMA_HAT, b=b)
    oracle = sigma_star(GAMMA_HAT, b, 0.0, 0.0).sigma_star
    print(f"  b={b:.3f}: sigma* = {closed:.8f} (oracle gap "
          f"{abs(closed-oracle)/oracle:.1e})")
