"""Tour of the certifiers: one smile per family, checked two ways.

Each family certificate comes from its closed-form domain; the same smile is
then re-checked with the brute-force density functional so you can see the
two routes agree.
"""

import json

from smile_domain import durrleman_check
from smile_domain.extremal import ExtremalParams, certify as certify_extremal
from smile_domain.ssvi import SsviParams, certify as certify_ssvi
from smile_domain.symmetric import SymmetricParams, certify as certify_symmetric
from smile_domain.vanishing import VanishingParams, certify as certify_vanishing

CASES = [
    (
        "vanishing upward  (w = b(k-m+sqrt((k-m)^2+s^2)), b=1/2, m=-1, s=1)",
        certify_vanishing,
        VanishingParams(b=0.5, mu=-1.0, sigma=1.0),
    ),
    (
        "vanishing downward (mirror image, b=1/2, m=+1, s=1)",
        certify_vanishing,
        VanishingParams(b=0.5, mu=1.0, sigma=1.0, direction="downward"),
    ),
    (
        "extremal decorrelated (a=8, m=2, s=2 -> gamma=2, q=1/2)",
        certify_extremal,
        ExtremalParams(gamma=2.0, q=0.5, sigma=2.0),
    ),
    (
        "symmetric (a=0.64, b=1.6, s=0.4 -> gamma=1)",
        certify_symmetric,
        SymmetricParams(gamma=1.0, b=1.6, sigma=0.4),
    ),
    (
        "ssvi slice (b=1, rho=1/2, s=1/2)",
        certify_ssvi,
        SsviParams(theta=2.0 * 1.0 / (3**0.5), phi=3**0.5, rho=0.5),
    ),
]

for title, certify, params in CASES:
    print("=" * 72)
    print(title)
    cert = certify(params)
    print(json.dumps(cert.to_dict(), indent=2, sort_keys=True))
    report = durrleman_check(cert.params_raw)
    agree = cert.passed == (report.min_value >= -1e-8)
    print(f"density check: min = {report.min_value:.3e} at l = {report.argmin_l:.3f}"
          f"  -> {'agrees' if agree else 'DISAGREES'} with the certificate")
