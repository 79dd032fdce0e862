from __future__ import annotations

import json

import pytest

from smile_domain.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------
def test_certify_pass_exit_zero(capsys):
    code, out = _run(
        capsys, "certify", "vanishing-up", "--b", "1", "--mu", "-2", "--sigma", "1"
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == "smile-domain/1"
    assert doc["verdict"] == "arbitrage_free"
    assert doc["conditions"] == {
        "roger_lee": True,
        "fukasawa": True,
        "sigma_bound": True,
    }


def test_certify_fail_exit_one(capsys):
    code, out = _run(
        capsys, "certify", "extremal", "--gamma", "1", "--q", "0.5",
        "--sigma", "1.999",
    )
    doc = json.loads(out)
    assert code == 1
    assert doc["verdict"] == "arbitrage"
    assert doc["bounds"]["sigma_star"] == 2.0


def test_certify_invalid_exit_two(capsys):
    code, out = _run(
        capsys, "certify", "symmetric", "--gamma", "-1.5", "--b", "1",
        "--sigma", "9",
    )
    doc = json.loads(out)
    assert code == 2
    assert doc["error"]["type"] == "invalid_params"


def test_certify_with_oracle_consistent(capsys):
    code, out = _run(
        capsys, "certify", "ssvi", "--theta", "0.1", "--phi", "1",
        "--rho", "0.5", "--oracle",
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["diagnostics"]["oracle_min"] >= -1e-8


def test_certify_accepts_raw_coordinates(capsys):
    # vanishing via raw m; symmetric via raw a
    code, out = _run(
        capsys, "certify", "vanishing-up", "--b", "0.5", "--m", "-2",
        "--sigma", "2",
    )
    assert json.loads(out)["params"]["native"]["mu"] == -1.0
    code, out = _run(
        capsys, "certify", "symmetric", "--a", "0.64", "--b", "1.6",
        "--sigma", "0.4",
    )
    assert json.loads(out)["params"]["native"]["gamma"] == pytest.approx(1.0)
    # ssvi via raw five parameters
    code, out = _run(
        capsys, "certify", "ssvi", "--a", "0.0375", "--b", "0.05",
        "--rho", "0.5", "--m", "-0.5", "--sigma", "0.8660254037844386",
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["params"]["native"]["theta"] == pytest.approx(0.1, rel=1e-9)


def test_certify_missing_params(capsys):
    code, out = _run(capsys, "certify", "extremal", "--sigma", "1")
    assert code == 2


# ---------------------------------------------------------------------------
# bound
# ---------------------------------------------------------------------------
def test_bound_text_and_oracle(capsys):
    code, out = _run(
        capsys, "bound", "extremal", "--gamma", "1", "--q", "0.5", "--oracle"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "sigma_star = 2.0"
    assert "sigma_star_oracle" in lines[1]
    gap = float(lines[2].split("=")[1])
    assert gap <= 1e-9


def test_bound_json_ssvi(capsys):
    code, out = _run(
        capsys, "bound", "ssvi", "--b", "1.25", "--rho", "0.6", "--json",
        "--oracle",
    )
    doc = json.loads(out)
    assert code == 0
    assert doc["sigma_star"] == pytest.approx(0.8, rel=1e-9)
    assert doc["oracle_side"] == "limit_at_infinity"
    assert doc["relative_gap"] <= 1e-6


def test_bound_vanishing(capsys):
    code, out = _run(capsys, "bound", "vanishing-up", "--b", "1", "--mu", "-2")
    assert code == 0
    assert out.strip() == "sigma_star = 0.5"


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------
@pytest.mark.parametrize(
    "family", ["vanishing-up", "vanishing-down", "extremal", "symmetric", "ssvi"]
)
def test_sample_closure(capsys, family):
    code, out = _run(
        capsys, "sample", family, "--count", "6", "--seed", "11"
    )
    doc = json.loads(out)
    assert code == 0
    assert len(doc["samples"]) == 6
    # re-certify every sample through the CLI round trip
    for s in doc["samples"]:
        native = s["native"]
        if family.startswith("vanishing"):
            args = ["certify", family, "--b", str(native["b"]), "--mu",
                    str(native["mu"]), "--sigma", str(native["sigma"])]
        elif family == "extremal":
            args = ["certify", family, "--gamma", str(native["gamma"]), "--q",
                    str(native["q"]), "--sigma", str(native["sigma"])]
        elif family == "symmetric":
            args = ["certify", family, "--gamma", str(native["gamma"]), "--b",
                    str(native["b"]), "--sigma", str(native["sigma"])]
        else:
            args = ["certify", family, "--theta", str(native["theta"]), "--phi",
                    str(native["phi"]), "--rho", str(native["rho"])]
        code, _ = _run(capsys, *args)
        assert code == 0


def test_sample_deterministic(capsys):
    _, out1 = _run(capsys, "sample", "ssvi", "--count", "5", "--seed", "3")
    _, out2 = _run(capsys, "sample", "ssvi", "--count", "5", "--seed", "3")
    assert out1 == out2
    _, out3 = _run(capsys, "sample", "ssvi", "--count", "5", "--seed", "4")
    assert out1 != out3


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------
TABLE_HEADERS = {
    "vanishing-domains": "b,subdomain_sigma,sigma_star_at_mu_zero,sigma_star_mid,sigma_star_x099",
    "symmetric-zstar": "gamma,z_at_b0,z_at_bmax",
    "symmetric-zstar-wide": "gamma,z_at_b0,z_at_bmax",
    "symmetric-j1prime": "gamma,z_inflection,j1_slope_at_b2",
    "gamma-admissibility": "u,ratio_gamma_plus,ratio_gamma_minus",
    "ssvi-n-curves": "x,n_rho_0.0,n_rho_0.25,n_rho_0.5,n_rho_0.75,n_rho_0.999",
    "ssvi-gj-vs-b": "rho,b,gj_sigma,subdomain_sigma,sigma_star",
    "ssvi-gj-vs-rho": "b,rho,gj_sigma,subdomain_sigma,sigma_star",
}


@pytest.mark.parametrize("figure", sorted(TABLE_HEADERS))
def test_table_headers_stable(capsys, figure):
    code, out = _run(capsys, "table", figure)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == TABLE_HEADERS[figure]
    assert len(lines) > 10
    assert "," in lines[1] and ";" not in lines[1]  # '.' decimal, ',' separator


def test_table_vanishing_ordering(capsys):
    # explicit sub-domain level dominates every exact threshold column
    _, out = _run(capsys, "table", "vanishing-domains")
    for line in out.strip().splitlines()[1:]:
        b, sub, s0, s1, s2 = map(float, line.split(","))
        assert sub >= max(s0, s1, s2) - 1e-12


def test_table_admissibility_ratios(capsys):
    # the admissible branch always maps back above the curvature zero
    _, out = _run(capsys, "table", "gamma-admissibility")
    for line in out.strip().splitlines()[1:]:
        u, rp, rm = line.split(",")
        assert float(rp) > 1.0
        if rm:
            assert float(rm) < 1.0  # the rejected branch falls below


# ---------------------------------------------------------------------------
# scan-uniqueness
# ---------------------------------------------------------------------------
def test_scan_uniqueness_output(capsys):
    code, out = _run(capsys, "scan-uniqueness", "--rho-steps", "60", "--x-steps", "60")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("min_n = ")
    assert lines[1] == "negative_count = 0"
    assert lines[2] == "There is unicity"
