import json
import math

import pytest

import chromacert as cc


def test_j0_values():
    value, err = cc.bessel_j0(0.0)
    assert value == 1.0
    assert err < 1e-14
    assert cc.bessel_j0(2.404825557695773)[0] == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(cc.DomainError):
        cc.bessel_j0(-1.0)


def test_j0_minimum():
    cert = cc.minimize_bessel_sum([1.0])
    assert cert["min_value"] == pytest.approx(-0.402759395702553, abs=1e-9)
    assert cert["argmin"] == pytest.approx(3.8317059702, abs=1e-6)
    assert cc.j0_minimum() == pytest.approx(cert["min_value"], abs=1e-12)


def test_criteria():
    collinear = cc.check_collinear(1.0)
    assert collinear["status"] == "pass"
    assert collinear["certificate"]["margin"] >= 0.25
    assert cc.check_triangle_crude(2.0)["passes"]
    assert cc.check_triangle_rotation(1.0, math.pi / 3)["status"] == "fail"
    with pytest.raises(cc.SingularMapError):
        cc.check_triangle_rotation(1.0, 0.0)


def test_composed_map():
    c = cc.composed_map_minus_identity(1.0, math.pi / 3)
    assert c["omega_prime"] == pytest.approx(1.0)
    assert c["phi_prime"] == pytest.approx(2 * math.pi / 3)
    assert not c["degenerate"]


def test_profile():
    points = cc.bessel_sum_profile([1.0, 2.0], 1.0, 0.5)
    assert [t for t, _ in points] == [0.0, 0.5, 1.0]
    assert points[0][1] == pytest.approx(2.0)


def test_spheres_and_sums():
    assert cc.sphere_points(3, 1) == [(0, 1), (0, 2), (1, 0), (2, 0)]
    assert len(cc.sphere_points(7, 3)) == 8
    assert abs(cc.gauss_sum(1, 11)) == pytest.approx(math.sqrt(11))
    assert abs(cc.kloosterman_sum(1, 1, 13)) <= 2 * math.sqrt(13)
    assert cc.legendre_symbol(2, 7) == 1
    assert cc.sphere_fourier_max(11, 1) <= 2 * math.sqrt(11) + 1e-6
    assert cc.sphere_fourier_max(11, 1, c=2, d=3) <= 2 * math.sqrt(11) + 1e-6


def test_coloring_roundtrip():
    col = cc.Coloring.random(11, 1)
    assert col.count("A") == 59
    assert col.count("A") + col.count("B") == 121
    text = col.to_text()
    assert text.startswith("p=11\n00000100110\n")
    again = cc.Coloring.parse(text)
    assert again.to_text() == text
    with pytest.raises(cc.ParseError, match="line 2"):
        cc.Coloring.parse("p=3\n012\n000\n000\n")


def test_sigma_and_triple():
    col = cc.Coloring.norm_residue(13)
    report = cc.sigma_decomposed(col, 0, 1, 1, "A")
    assert report["total"] == pytest.approx(report["direct_count"], abs=1e-6)
    assert report["direct_count"] == cc.sigma_direct(col, 0, 1, 1, "A")
    hit = cc.find_monochromatic_triple(col, 0, 1, 1)
    total = cc.sigma_direct(col, 0, 1, 1, "A") + cc.sigma_direct(col, 0, 1, 1, "B")
    assert (hit is not None) == (total > 0)
    with pytest.raises(cc.SingularMapError):
        cc.sigma_direct(col, 1, 0, 1)


def test_lower_bound_and_verify():
    assert cc.theorem_lower_bound(673) < 0 < cc.theorem_lower_bound(1009)
    report = cc.fp_verify_report(7, 1, 2)
    assert all(check["passed"] for check in report["checks"])


def test_run_cli():
    code, out, err = cc.run_cli(["criterion", "collinear", "--kappa", "1"])
    assert code == 0, err
    assert json.loads(out)["verdict"]["status"] == "pass"
    code, _, _ = cc.run_cli(["criterion", "nonsense"])
    assert code == 64
