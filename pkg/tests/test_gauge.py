import math

import numpy as np
import pytest

from nczar.gauge import (
    AFFINE_WINDOW,
    TORUS_WINDOW,
    ConnectionSpec,
    GaugeError,
    SectionFamily,
    SectionGrid,
    commutator,
    covariant_derivative,
    curvature,
    curvature_report,
    transport_consistency,
)


def test_constant_section_gives_exact_affine_curvature():
    # A_x = -2 pi i y is linear, so central differences are exact
    vals, _, _ = commutator(SectionGrid.constant(AFFINE_WINDOW, 1e-2), ConnectionSpec("affine"))
    assert np.max(np.abs(vals - 2j * math.pi)) < 1e-9


def test_torus_expected_value_at_a_point():
    spec = ConnectionSpec("torus")
    z1, z2 = np.exp(2j * math.pi * 0.25), math.exp(0.5)
    assert spec.expected(np.array(0.25), np.array(0.5)) == pytest.approx(1 / (z1 * z2))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_affine_probe(seed):
    rep = curvature_report("affine", h=1e-3, seed=seed)
    assert rep["max_dev"] <= 1e-6
    assert 3.0 <= rep["ratio"] <= 5.0
    assert rep["passed"]


@pytest.mark.parametrize("seed", [0, 1])
def test_torus_probe(seed):
    rep = curvature_report("torus", h=1e-3, seed=seed)
    assert rep["max_dev"] <= 1e-5
    assert rep["order_estimate"] == pytest.approx(2.0, abs=0.2)


def test_curvature_is_section_independent():
    a = curvature("torus", h=2e-3, seed=3)
    b = curvature("torus", h=2e-3, seed=4)
    rel = np.abs(a.values - b.values) / np.abs(a.expected)
    assert np.max(rel) < 1e-4


def test_torus_curvature_is_not_constant():
    r = curvature("torus", h=5e-3, seed=0)
    assert np.ptp(np.abs(r.values)) > 0.1


@pytest.mark.parametrize("case", ["affine", "torus"])
def test_connection_method(case):
    r = curvature(case, h=1e-3, method="connection")
    assert r.max_dev <= 1e-6


@pytest.mark.parametrize("case", ["affine", "torus"])
def test_numeric_derivative_matches_analytic(case):
    fam = SectionFamily.random(5)
    window = AFFINE_WINDOW if case == "affine" else TORUS_WINDOW
    psi = SectionGrid.from_family(fam, window, 1e-3)
    exact_x, _, _ = covariant_derivative(psi, "x", case, analytic=True)
    exact_y, _, _ = covariant_derivative(psi, "y", case, analytic=True)
    num_x, _, _ = covariant_derivative(psi, "x", case)
    num_y, _, _ = covariant_derivative(psi, "y", case)
    assert np.max(np.abs(num_x - exact_x[1:-1, :])) < 1e-4
    assert np.max(np.abs(num_y - exact_y[:, 1:-1])) < 1e-4


def test_sections_have_unit_modulus():
    psi = SectionGrid.from_family(SectionFamily.random(0), AFFINE_WINDOW, 1e-2)
    assert psi.unit_modulus_error() < 1e-14


def test_section_from_coeffs_pads():
    fam = SectionFamily.from_coeffs([0.01])
    assert fam.as_list() == [0.01, 0.0, 0.0]
    assert SectionFamily.from_coeffs([1, 2, 3, 4]).as_list() == [1.0, 2.0, 3.0, 4.0]


def test_bad_inputs():
    with pytest.raises(GaugeError):
        ConnectionSpec("sphere")
    with pytest.raises(GaugeError):
        curvature("affine", h=1e-2, method="plaquette")
    with pytest.raises(GaugeError):
        SectionGrid.constant(AFFINE_WINDOW, 0.9)
    psi = SectionGrid.constant(AFFINE_WINDOW, 0.1)
    with pytest.raises(GaugeError):
        covariant_derivative(psi, "z", "affine")
    with pytest.raises(GaugeError):
        covariant_derivative(SectionGrid(psi.x, psi.y, psi.values, psi.h), 0, "affine", analytic=True)


@pytest.mark.parametrize("N", [16, 256, 10_000])
def test_transport_matches_discrete_phase(N):
    res = transport_consistency(N, 300, seed=N)
    assert res["passed"], res
    assert res["gamma_phase_changes"] == 0
