"""Command-line surface: certify parameters, print sigma* bounds, sample
arbitrage-free smiles, emit boundary/comparison tables as CSV, and run the
critical-point uniqueness scan.

stdout carries data (JSON or CSV), stderr carries logs.  Exit codes for
``certify``: 0 = arbitrage-free, 1 = arbitrage, 2 = invalid input.
Identical invocations (including --seed) produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import extremal, ssvi, symmetric, vanishing
from .certificates import DomainCertificate
from .core import InvalidParamsError, SmileDomainError
from .extremal import ExtremalParams
from .oracle import GridSpec, durrleman_check, sigma_star
from .ssvi import SsviParams
from .symmetric import SymmetricParams
from .vanishing import VanishingParams

SCHEMA = "smile-domain/1"

FAMILIES = ("vanishing-up", "vanishing-down", "extremal", "symmetric", "ssvi")


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True))


def _error_doc(kind: str, message: str) -> dict:
    return {"schema": SCHEMA, "error": {"type": kind, "message": message}}


# ---------------------------------------------------------------------------
# Parameter parsing (native coordinates, with raw-SVI alternates)
# ---------------------------------------------------------------------------
def _require(args, names: list[str]) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise InvalidParamsError(f"missing required options: {missing}")


def _vanishing_from_args(args, direction: str) -> VanishingParams:
    _require(args, ["b", "sigma"])
    if args.mu is None and args.m is None:
        raise InvalidParamsError("provide --mu (normalized) or --m (raw)")
    mu = args.mu if args.mu is not None else args.m / args.sigma
    return VanishingParams(b=args.b, mu=mu, sigma=args.sigma, direction=direction)


def _extremal_from_args(args) -> ExtremalParams:
    _require(args, ["sigma"])
    if args.gamma is not None and args.q is not None:
        return ExtremalParams(gamma=args.gamma, q=args.q, sigma=args.sigma)
    if args.a is not None and args.m is not None:
        gamma = args.a / (2.0 * args.sigma)
        if gamma <= 0.0:
            raise InvalidParamsError(f"a={args.a} implies gamma <= 0")
        return ExtremalParams(
            gamma=gamma, q=args.m / (args.sigma * gamma), sigma=args.sigma
        )
    raise InvalidParamsError("provide --gamma/--q (native) or --a/--m (raw)")


def _symmetric_from_args(args) -> SymmetricParams:
    _require(args, ["b", "sigma"])
    if args.gamma is not None:
        gamma = args.gamma
    elif args.a is not None:
        gamma = args.a / (args.b * args.sigma)
    else:
        raise InvalidParamsError("provide --gamma (native) or --a (raw)")
    return SymmetricParams(gamma=gamma, b=args.b, sigma=args.sigma)


def _ssvi_from_args(args) -> SsviParams:
    if args.theta is not None and args.phi is not None and args.rho is not None:
        return SsviParams(theta=args.theta, phi=args.phi, rho=args.rho)
    raw_opts = (args.a, args.b, args.rho, args.m, args.sigma)
    if all(v is not None for v in raw_opts):
        from .core import RawSviParams

        return SsviParams.from_raw(
            RawSviParams(a=args.a, b=args.b, rho=args.rho, m=args.m, sigma=args.sigma)
        )
    raise InvalidParamsError(
        "provide --theta/--phi/--rho (native) or --a/--b/--rho/--m/--sigma (raw)"
    )


def _certify_family(args) -> DomainCertificate:
    family = args.family
    if family == "vanishing-up":
        return vanishing.certify(_vanishing_from_args(args, "upward"))
    if family == "vanishing-down":
        return vanishing.certify(_vanishing_from_args(args, "downward"))
    if family == "extremal":
        return extremal.certify(_extremal_from_args(args))
    if family == "symmetric":
        return symmetric.certify(_symmetric_from_args(args))
    if family == "ssvi":
        return ssvi.certify(_ssvi_from_args(args))
    raise InvalidParamsError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------
def cmd_certify(args) -> int:
    try:
        cert = _certify_family(args)
        doc = cert.to_dict()
        doc["schema"] = SCHEMA
        if args.oracle:
            report = durrleman_check(cert.params_raw, GridSpec.from_env())
            doc["diagnostics"]["oracle_min"] = report.min_value
            doc["diagnostics"]["oracle_argmin_l"] = report.argmin_l
            doc["diagnostics"]["oracle_grid_points"] = report.n_points
    except (SmileDomainError, ValueError) as exc:
        _emit(_error_doc("invalid_params", str(exc)))
        return 2
    _emit(doc)
    return 0 if cert.passed else 1


# ---------------------------------------------------------------------------
# bound
# ---------------------------------------------------------------------------
def _bound_and_shape(args) -> tuple[float, tuple[float, float, float, float]]:
    """Closed-form sigma* plus the normalized shape used by the oracle."""
    family = args.family
    probe_sigma = 1.0
    if family in ("vanishing-up", "vanishing-down"):
        _require(args, ["b", "mu"])
        direction = "upward" if family == "vanishing-up" else "downward"
        p = VanishingParams(b=args.b, mu=args.mu, sigma=probe_sigma, direction=direction)
        cert = vanishing.certify(p)
        rho = 1.0 if direction == "upward" else -1.0
        return cert.bounds["sigma_star"], (0.0, args.b, rho, args.mu)
    if family == "extremal":
        _require(args, ["gamma", "q"])
        bound = extremal.sigma_bound(args.gamma, args.q)
        return bound, (args.gamma, 2.0, 0.0, args.q * args.gamma)
    if family == "symmetric":
        _require(args, ["gamma", "b"])
        cert = symmetric.certify(
            SymmetricParams(gamma=args.gamma, b=args.b, sigma=probe_sigma)
        )
        return cert.bounds["sigma_star"], (args.gamma, args.b, 0.0, 0.0)
    if family == "ssvi":
        _require(args, ["rho"])
        if args.b is not None:
            b = args.b
        elif args.theta is not None and args.phi is not None:
            b = args.theta * args.phi / 2.0
        else:
            raise InvalidParamsError("provide --b or --theta/--phi")
        ar = abs(args.rho)
        root = math.sqrt((1.0 - args.rho) * (1.0 + args.rho))
        if b * (1.0 + ar) >= 2.0 - 1e-10:
            bound = root
        else:
            bound = ssvi.sigma_star_closed(ssvi.l_from_b(b, ar), ar)
        return bound, (root, b, ar, -ar / root if ar > 0 else 0.0)
    raise InvalidParamsError(f"unknown family {family!r}")


def cmd_bound(args) -> int:
    try:
        bound, shape = _bound_and_shape(args)
        doc = {"schema": SCHEMA, "family": args.family, "sigma_star": bound}
        if args.oracle:
            res = sigma_star(*shape)
            gap = abs(res.sigma_star - bound) / max(abs(bound), 1e-300)
            doc["sigma_star_oracle"] = res.sigma_star
            doc["oracle_side"] = res.side
            doc["relative_gap"] = gap
    except (SmileDomainError, ValueError) as exc:
        _emit(_error_doc("invalid_params", str(exc)))
        return 2
    if args.json:
        _emit(doc)
    else:
        print(f"sigma_star = {bound!r}")
        if args.oracle:
            print(f"sigma_star_oracle = {doc['sigma_star_oracle']!r}")
            print(f"relative_gap = {doc['relative_gap']!r}")
    return 0


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------
def _sample_params(args, rng) -> list:
    lo_hi = lambda pair: (float(pair[0]), float(pair[1]))  # noqa: E731
    out = []
    for _ in range(args.count):
        scale = rng.uniform(*lo_hi(args.scale_range))
        if args.family in ("vanishing-up", "vanishing-down"):
            direction = "upward" if args.family == "vanishing-up" else "downward"
            b = rng.uniform(*lo_hi(args.b_range))
            u = rng.uniform(*lo_hi(args.u_range))
            x0 = vanishing.x_plus_star(b)
            x = x0 + u * (1.0 - x0)
            mu_up = vanishing.mu_star(x, b)
            sig = scale * vanishing.sigma_star_closed(x, b)
            mu = mu_up if direction == "upward" else -mu_up
            out.append(VanishingParams(b=b, mu=mu, sigma=sig, direction=direction))
        elif args.family == "extremal":
            gamma = rng.uniform(*lo_hi(args.gamma_range))
            q = rng.uniform(*lo_hi(args.q_range))
            sig = scale * extremal.sigma_bound(gamma, q)
            out.append(ExtremalParams(gamma=gamma, q=q, sigma=sig))
        elif args.family == "symmetric":
            u = rng.uniform(*lo_hi(args.u_range))
            gamma = symmetric.gamma_star(u)
            za, zb = symmetric.z_interval(gamma)
            t = rng.uniform(*lo_hi(args.t_range))
            z = za + t * (zb - za)
            b = symmetric.b_star(z, gamma)
            sig = scale * symmetric.sigma_star_closed(z, gamma)
            out.append(SymmetricParams(gamma=gamma, b=b, sigma=sig))
        elif args.family == "ssvi":
            rho = rng.uniform(*lo_hi(args.rho_range))
            t = rng.uniform(*lo_hi(args.t_range))
            b = t * 2.0 / (1.0 + abs(rho))
            ar = abs(rho)
            sig = scale * ssvi.sigma_star_closed(ssvi.l_from_b(b, ar), ar)
            phi = math.sqrt((1.0 - rho) * (1.0 + rho)) / sig
            out.append(SsviParams(theta=2.0 * b / phi, phi=phi, rho=rho))
        else:
            raise InvalidParamsError(f"unknown family {args.family!r}")
    return out


def cmd_sample(args) -> int:
    rng = np.random.default_rng(args.seed)
    try:
        params = _sample_params(args, rng)
    except (SmileDomainError, ValueError) as exc:
        _emit(_error_doc("invalid_params", str(exc)))
        return 2

    certifiers = {
        "vanishing-up": vanishing.certify,
        "vanishing-down": vanishing.certify,
        "extremal": extremal.certify,
        "symmetric": symmetric.certify,
        "ssvi": ssvi.certify,
    }
    samples = []
    for p in params:
        cert = certifiers[args.family](p)
        if not cert.passed:
            print(f"sample failed certification: {p}", file=sys.stderr)
            return 1
        d = cert.to_dict()
        samples.append({"raw": d["params"]["raw"], "native": d["params"]["native"]})
    _emit(
        {
            "schema": SCHEMA,
            "family": args.family,
            "seed": args.seed,
            "count": args.count,
            "samples": samples,
        }
    )
    return 0


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------
def _rows_vanishing_domains():
    yield ["b", "subdomain_sigma", "sigma_star_at_mu_zero", "sigma_star_mid", "sigma_star_x099"]
    for b in np.arange(0.05, 0.951, 0.05):
        b = round(float(b), 2)
        x_zero = vanishing.x_from_mu(0.0, b)
        x_mid = 0.5 * (x_zero + 0.99)
        yield [
            b,
            vanishing.subdomain_bound(b),
            vanishing.sigma_star_closed(x_zero, b),
            vanishing.sigma_star_closed(x_mid, b),
            vanishing.sigma_star_closed(0.99, b),
        ]


def _rows_symmetric_zstar(gamma_hi: float, n: int):
    yield ["gamma", "z_at_b0", "z_at_bmax"]
    for g in np.linspace(-0.9999, gamma_hi, n):
        g = float(g)
        yield [g, symmetric.z_star_zero(g), symmetric.z_star_at_g_tilde(g)]


def _rows_symmetric_j1prime():
    yield ["gamma", "z_inflection", "j1_slope_at_b2"]
    for g in np.linspace(-0.999, -0.001, 100):
        g = float(g)
        zi = symmetric.z_inflection(g)
        yield [g, zi, symmetric.j1_slope(zi, g, 2.0)]


def _rows_gamma_admissibility():
    yield ["u", "ratio_gamma_plus", "ratio_gamma_minus"]
    us = np.concatenate([np.linspace(-0.98, -0.02, 60), np.linspace(0.02, 3.0, 60)])
    for u in us:
        u = float(u)
        gp = symmetric.gamma_star(u)
        rp = gp * symmetric.z2(gp) / u
        inner = (
            6.0 * u**3
            + 15.0 * u * u
            + 14.0 * u
            + 6.0
            - (1.0 + u) ** 2 * math.sqrt(3.0 * (12.0 * u * u + 12.0 * u + 11.0))
        )
        rm = ""
        if u < 0.0 and inner >= 0.0:
            gm = -abs(u) * math.sqrt(inner)
            if gm > -1.0:
                rm = gm * symmetric.z2(gm) / u
        yield [u, rp, rm]


def _rows_ssvi_n_curves():
    rhos = (0.0, 0.25, 0.5, 0.75, 0.999)
    yield ["x"] + [f"n_rho_{r}" for r in rhos]
    xs = np.linspace(ssvi.X_M2_RHO1, 0.999, 200)
    cols = [ssvi.uniqueness_target(xs, np.full_like(xs, r)) for r in rhos]
    for i, x in enumerate(xs):
        yield [float(x)] + [float(c[i]) for c in cols]


def _ssvi_bound_rows(rho: float, b: float):
    gj = ssvi.gj_sigma_bound(b, rho)
    sub = ssvi.subdomain_bound(b, rho)
    star = ssvi.sigma_star_closed(ssvi.l_from_b(b, abs(rho)), abs(rho))
    return [gj, sub, star]


def _rows_ssvi_gj_vs_b():
    yield ["rho", "b", "gj_sigma", "subdomain_sigma", "sigma_star"]
    for rho in (0.3, 0.7):
        bmax = 2.0 / (1.0 + rho)
        for b in np.linspace(0.05, bmax - 0.05, 40):
            b = float(b)
            yield [rho, b] + _ssvi_bound_rows(rho, b)


def _rows_ssvi_gj_vs_rho():
    yield ["b", "rho", "gj_sigma", "subdomain_sigma", "sigma_star"]
    for b in (1.0, 1.5):
        rho_max = min(0.99, 2.0 / b - 1.0)
        for rho in np.linspace(0.01, rho_max - 0.01, 40):
            rho = float(rho)
            yield [b, rho] + _ssvi_bound_rows(rho, b)


TABLES = {
    "vanishing-domains": _rows_vanishing_domains,
    "symmetric-zstar": lambda: _rows_symmetric_zstar(-0.98, 100),
    "symmetric-zstar-wide": lambda: _rows_symmetric_zstar(0.4, 141),
    "symmetric-j1prime": _rows_symmetric_j1prime,
    "gamma-admissibility": _rows_gamma_admissibility,
    "ssvi-n-curves": _rows_ssvi_n_curves,
    "ssvi-gj-vs-b": _rows_ssvi_gj_vs_b,
    "ssvi-gj-vs-rho": _rows_ssvi_gj_vs_rho,
}


def cmd_table(args) -> int:
    rows = TABLES[args.figure]()
    writer = csv.writer(sys.stdout, lineterminator="\n")
    for row in rows:
        writer.writerow([f"{v!r}" if isinstance(v, float) else v for v in row])
    return 0


# ---------------------------------------------------------------------------
# scan-uniqueness
# ---------------------------------------------------------------------------
def cmd_scan_uniqueness(args) -> int:
    report = ssvi.scan_uniqueness(args.rho_steps, args.x_steps)
    print(f"min_n = {report.min_value!r} at rho = {report.arg_rho!r}, x = {report.arg_x!r}")
    print(f"negative_count = {report.negative_count}")
    print(report.message)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------
def _add_param_options(p: argparse.ArgumentParser) -> None:
    for name in ("a", "b", "rho", "m", "sigma", "mu", "gamma", "q", "theta", "phi"):
        p.add_argument(f"--{name}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smile-domain",
        description="Certify and construct butterfly-arbitrage-free SVI smiles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="certify a parameter set (JSON on stdout)")
    p.add_argument("family", choices=FAMILIES)
    _add_param_options(p)
    p.add_argument("--oracle", action="store_true", help="also run the density check")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("bound", help="print the minimal arbitrage-free sigma")
    p.add_argument("family", choices=FAMILIES)
    _add_param_options(p)
    p.add_argument("--oracle", action="store_true", help="compare against the numerical supremum")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sample", help="sample arbitrage-free smiles (JSON on stdout)")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--b-range", nargs=2, type=float, default=(0.1, 0.9), metavar=("LO", "HI"))
    p.add_argument("--u-range", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    p.add_argument("--t-range", nargs=2, type=float, default=(0.05, 0.95), metavar=("LO", "HI"))
    p.add_argument("--gamma-range", nargs=2, type=float, default=(0.5, 4.0), metavar=("LO", "HI"))
    p.add_argument("--q-range", nargs=2, type=float, default=(-0.8, 0.8), metavar=("LO", "HI"))
    p.add_argument("--rho-range", nargs=2, type=float, default=(-0.9, 0.9), metavar=("LO", "HI"))
    p.add_argument("--scale-range", nargs=2, type=float, default=(1.0, 3.0), metavar=("LO", "HI"))
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("table", help="emit the data behind a figure as CSV")
    p.add_argument("figure", choices=sorted(TABLES))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scan-uniqueness", help="grid scan of the critical-point uniqueness target")
    p.add_argument("--rho-steps", type=int, default=1000)
    p.add_argument("--x-steps", type=int, default=1000)
    p.set_defaults(func=cmd_scan_uniqueness)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sample" and args.u_range is None:
        args.u_range = (-0.9, 3.0) if args.family == "symmetric" else (0.05, 0.95)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
