"""Verdict objects emitted by the family certifiers.

A certificate records one boolean per no-arbitrage condition together with
the computed bounds and diagnostics; the overall verdict is always the AND
of the individual conditions.  Values sitting within tolerance of a bound
are additionally flagged as on-boundary so callers can tell a comfortable
pass from a marginal one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import RawSviParams

__all__ = ["DomainCertificate", "make_certificate"]


@dataclass(frozen=True)
class DomainCertificate:
    family: str
    passed: bool
    conditions: dict[str, bool]
    bounds: dict[str, float]
    on_boundary: tuple[str, ...]
    params_raw: RawSviParams
    params_native: dict[str, float | str]
    diagnostics: dict[str, float | str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready representation (infinities become strings)."""

        def scrub(v):
            if isinstance(v, float) and math.isinf(v):
                return "inf" if v > 0 else "-inf"
            return v

        raw = self.params_raw
        return {
            "family": self.family,
            "passed": self.passed,
            "verdict": "arbitrage_free" if self.passed else "arbitrage",
            "conditions": dict(self.conditions),
            "bounds": {k: scrub(v) for k, v in self.bounds.items()},
            "on_boundary": list(self.on_boundary),
            "params": {
                "raw": {
                    "a": raw.a,
                    "b": raw.b,
                    "rho": raw.rho,
                    "m": raw.m,
                    "sigma": raw.sigma,
                },
                "native": {k: scrub(v) for k, v in self.params_native.items()},
            },
            "diagnostics": {k: scrub(v) for k, v in self.diagnostics.items()},
        }


def make_certificate(
    family: str,
    conditions: dict[str, bool],
    bounds: dict[str, float],
    on_boundary: list[str],
    params_raw: RawSviParams,
    params_native: dict,
    diagnostics: dict | None = None,
) -> DomainCertificate:
    return DomainCertificate(
        family=family,
        passed=all(conditions.values()),
        conditions=conditions,
        bounds=bounds,
        on_boundary=tuple(on_boundary),
        params_raw=params_raw,
        params_native=params_native,
        diagnostics=diagnostics or {},
    )
