import math

import pytest

import wishart_extremes as we


def test_scalar_case_closed_forms():
    c = we.row_case(1, 1, we.Spectrum([1.0]))
    assert c.kind == "row" and c.n == 1 and c.m == 1
    r = we.cdf(c, "max", 1.0)
    assert r["value"] == pytest.approx(1 - math.exp(-1), rel=1e-14)
    assert r["reliable"] and r["warnings"] == []
    assert we.pdf(c, "max", 1.0)["value"] == pytest.approx(math.exp(-1), rel=1e-14)
    assert we.cdf(c, "min", 1.0)["value"] == pytest.approx(math.exp(-1), rel=1e-14)


def test_min_closed_form_at_square_shape():
    c = we.row_case(3, 3, we.Spectrum([1, 2, 3]))
    assert we.cdf(c, "min", 0.5)["value"] == pytest.approx(math.exp(-3), rel=1e-14)
    assert we.cdf_min_tricomi(c, 0.5)["value"] == pytest.approx(math.exp(-3), rel=1e-12)


def test_determinant_matches_series():
    s = we.Spectrum([1, 2])
    c = we.row_case(3, 2, s)
    assert we.cdf(c, "max", 1.5)["value"] == pytest.approx(we.cdf_max_schur(1.5, 3, 2, s), rel=1e-8)
    assert we.cdf(c, "min", 0.3)["value"] == pytest.approx(we.cdf_min_schur(0.3, 3, 2, s), rel=1e-10)


def test_gap_and_joint():
    c = we.row_case(2, 1, we.Spectrum([1.0]))
    assert we.prob_gap(c, 0.5, 2.0)["value"] == pytest.approx(0.503790139859112, rel=1e-12)
    assert abs(we.pdf_joint_minmax(c, 0.5, 2.0)["value"]) < 1e-12


def test_other_cases_and_errors():
    col = we.column_case(3, 2, we.Spectrum([1, 2, 3]))
    assert 0 < we.cdf(col, "max", 1.0)["value"] < 1
    d = we.doubly_case(3, 2, we.Spectrum([1, 2]), we.Spectrum([1, 2, 3]))
    assert 0 < we.cdf(d, "max", 1.0)["value"] < 1
    with pytest.raises(ValueError, match="m == n"):
        we.cdf(d, "min", 1.0)
    with pytest.raises(ValueError):
        we.cdf(col, "max", -1.0)
    with pytest.raises(ValueError):
        we.Spectrum([1.0, -2.0])
    with pytest.raises(ValueError):
        we.cdf(col, "median", 1.0)


def test_degenerate_spectrum_is_perturbed():
    s = we.Spectrum([1.0, 1.0])
    assert s.perturbed and len(s) == 2
    r = we.cdf(we.row_case(2, 2, s), "max", 1.0)
    assert any(tag == "perturbed_spectrum" for tag, _ in r["warnings"])


def test_clustered_spectrum_precision_modes():
    c = we.row_case(5, 3, we.Spectrum([1, 1.0001, 1.0002]))
    d = we.cdf(c, "max", 1.0)
    assert not d["reliable"] and d["cancel_digits"] > 12
    a = we.cdf(c, "max", 1.0, precision="auto")
    assert a["precision"] == "extended"
    assert a["value"] == pytest.approx(we.cdf(c, "max", 1.0, precision="extended")["value"])


def test_special_functions():
    assert we.reg_lower_gamma(1, 2.0) == pytest.approx(1 - math.exp(-2), rel=1e-14)
    assert we.reg_upper_gamma(1, 2.0) == pytest.approx(math.exp(-2), rel=1e-14)
    assert we.kummer_1f1(2, 4, -1.3) == pytest.approx(0.544437643183181, rel=1e-13)
    assert we.schur_poly([2, 0], [1, 2]) == pytest.approx(7)
    value, tail, weight = we.hyp1f1_multivar(3, 3, [-0.5, -1.0], 80, 1e-15)
    assert value == pytest.approx(math.exp(-1.5), rel=1e-13)
    assert we.hyp1f1_matrix_det(3, [-1.3]) == pytest.approx(we.kummer_1f1(3, 4, -1.3), rel=1e-13)


def test_empirical_cdf_is_deterministic_and_in_band():
    c = we.row_case(1, 1, we.Spectrum([2.0]))
    grid = [0.2, 0.5, 1.0]
    frac, eps = we.empirical_cdf(c, "max", grid, samples=20000, seed=3)
    again, _ = we.empirical_cdf(c, "max", grid, samples=20000, seed=3)
    assert frac == again
    for x, f in zip(grid, frac):
        assert abs(f - (1 - math.exp(-2 * x))) <= eps
