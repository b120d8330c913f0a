import cmath
import math

import numpy as np
import pytest

from nczar.scalars import AFFINE, TORUS
from nczar.structures import (
    AffinePoint,
    OrbitCoord,
    StarParams,
    affine_fiber,
    band,
    commutator_affine,
    gamma_affine,
    gamma_affine_inv,
    gamma_torus,
    gamma_torus_inv,
    hat_sgn,
    orbit_commutator,
    orbit_gamma,
    orbit_phi,
    orbit_point,
    phi_affine,
    phi_affine_inv,
    phi_torus,
    project_affine,
    project_inv,
    project_torus,
    random_orbit_coord,
    semidef_funcs,
    sgn,
    star_function_check,
)


def test_params_validation():
    with pytest.raises(ValueError):
        StarParams(AFFINE, 3, 1.0, 1.0)
    with pytest.raises(ValueError):
        StarParams(TORUS, 3, 1.0, 2.0, rho=1.0)
    with pytest.raises(ValueError):
        StarParams.affine(0)
    p = StarParams.torus(4)
    # alpha^-1 delta is a positive real
    r = p.delta / p.alpha
    assert abs(r.imag) < 1e-15 and r.real > 0
    assert abs(p.alpha**4 - p.a) < 1e-12


def test_band_examples():
    p = StarParams.affine(5)
    assert band(0, p) == 0
    lam = 0.3 + 0.2j
    assert band(lam + p.a, p) == (band(lam, p) + 1) % 5
    p10 = StarParams.affine(10)
    # Re(lam/a) = y N for lam = x + 2 pi i y
    assert band(0.7 + 2j * math.pi * 0.37, p10) == 3
    with pytest.raises(ValueError):
        band(1.0, StarParams.torus(3))


def test_sgn_examples():
    assert sgn(1, 5) == 0
    assert sgn(1j, 4) == 1
    assert hat_sgn(1j, 4) == 4
    assert sgn(-1, 2) == 1
    with pytest.raises(ValueError):
        sgn(0, 3)


@pytest.mark.parametrize("N", [1, 2, 3, 8, 64])
def test_star_function_equations(N):
    rep = star_function_check(N, samples=1000, seed=N)
    assert rep["passed"], rep


def test_affine_actions():
    p = StarParams.affine(4)
    rng = np.random.default_rng(0)
    assert phi_affine(AffinePoint(0, 0, 4), p) == AffinePoint(p.a, 0, 4)
    for _ in range(100):
        t = AffinePoint(complex(*rng.uniform(-9, 9, 2)), int(rng.integers(0, 4)), 4)
        assert project_affine(phi_affine(t, p)) == t.x + p.a
        assert project_affine(gamma_affine(t, p)) == t.x + p.b
        g = gamma_affine(t, p)
        assert g.ell == (t.ell + band(t.x, p)) % 4
        back = gamma_affine_inv(g, p)
        assert back.ell == t.ell and abs(back.x - t.x) < 1e-12
        assert phi_affine_inv(phi_affine(t, p), p).ell == t.ell
        c = t
        for _ in range(4):
            c = commutator_affine(c, p)
        assert c.ell == t.ell and abs(c.x - t.x) < 1e-12
        # the commutator moves only the fibre coordinate
        c1 = commutator_affine(t, p)
        assert abs(c1.x - t.x) < 1e-12 and c1.ell != t.ell


def test_affine_fiber():
    p = StarParams.affine(5)
    rng = np.random.default_rng(1)
    for _ in range(200):
        lam = complex(*rng.uniform(-20, 20, 2))
        fib = affine_fiber(lam, p)
        assert len({t.ell for t in fib}) == 5
        assert all(project_affine(t) == lam for t in fib)
        # fibre is a single orbit of the commutator
        t = fib[0]
        orbit = {t.ell}
        for _ in range(4):
            t = commutator_affine(t, p)
            orbit.add(t.ell)
        assert len(orbit) == 5


def test_torus_actions():
    p = StarParams.torus(3)
    rng = np.random.default_rng(2)
    assert abs(phi_torus(1, p) - p.alpha) < 1e-15
    for _ in range(100):
        t = rng.uniform(0.3, 3) * cmath.exp(2j * math.pi * rng.random())
        ratio = gamma_torus(phi_torus(t, p), p) / phi_torus(gamma_torus(t, p), p)
        assert abs(ratio - p.eps) < 1e-12
        assert abs(project_torus(phi_torus(t, p), p) - p.a * project_torus(t, p)) < 1e-9 * abs(t) ** 3
        assert abs(project_torus(gamma_torus(t, p), p) - p.b * project_torus(t, p)) < 1e-9 * abs(t) ** 3
        assert abs(project_inv(t, p) * project_torus(t, p) - 1) < 1e-12
        assert abs(gamma_torus_inv(gamma_torus(t, p), p) - t) < 1e-12
    with pytest.raises(ValueError):
        phi_torus(0, p)


@pytest.mark.parametrize("case", [AFFINE, TORUS])
def test_orbit_coordinates_match_actions(case):
    N = 4
    p = StarParams.default(case, N)
    rng = np.random.default_rng(3)
    phi, gamma = (phi_affine, gamma_affine) if case == AFFINE else (phi_torus, gamma_torus)
    for _ in range(100):
        c = random_orbit_coord(rng, p, spread=8)
        t = orbit_point(c, p)
        for step, op in ((orbit_phi(c), phi), (orbit_gamma(c, N), gamma)):
            u, v = orbit_point(step, p), op(t, p)
            if case == AFFINE:
                assert u.ell == v.ell and abs(u.x - v.x) < 1e-9
            else:
                assert abs(u - v) < 1e-9 * abs(v)


def test_semidef_affine():
    N = 5
    p = StarParams.affine(N)
    s0 = semidef_funcs(OrbitCoord(0, 0, 0, 0.1 * p.a), p)
    assert (s0.y, s0.z, s0.w) == (0, 0, 0)
    rng = np.random.default_rng(4)
    for _ in range(100):
        c = random_orbit_coord(rng, p)
        v = semidef_funcs(c, p)
        vp = semidef_funcs(orbit_phi(c), p)
        vg = semidef_funcs(orbit_gamma(c, N), p)
        vc = semidef_funcs(orbit_commutator(c, N), p)
        assert vp.y == (v.y + 1) % N
        assert vg.y == v.y and vg.z == (v.z + v.y) % N
        assert vp.w == v.w + p.a and vg.w == v.w
        assert vc.y == v.y and vc.z == (v.z + 1) % N
        # z agrees with the fibre coordinate of the actual point
        assert orbit_point(c, p).ell == v.z


def test_semidef_torus():
    N = 3
    p = StarParams.torus(N)
    rng = np.random.default_rng(5)
    seen = []
    for _ in range(100):
        c = random_orbit_coord(rng, p)
        v = semidef_funcs(c, p)
        vg = semidef_funcs(orbit_gamma(c, N), p)
        vp = semidef_funcs(orbit_phi(c), p)
        vc = semidef_funcs(orbit_commutator(c, N), p)
        eps_y = cmath.exp(2j * math.pi * v.y / N)
        assert abs(vg.x - p.beta * eps_y * v.x) < 1e-9 * abs(vg.x)
        assert abs(vp.x - p.alpha * v.x) < 1e-9 * abs(vp.x)
        assert vp.y == (v.y + 1) % N
        # gamma phi = eps phi gamma makes the commutator multiply x by eps
        assert abs(vc.x - v.x * p.eps) < 1e-9 * abs(vc.x)
        assert vc.y == v.y
        assert abs(v.x * v.x_inv - 1) < 1e-12
        seen.append(((c.m, c.n, c.ell), v.x))
    # x is injective on distinct orbit coordinates
    for i, (k1, x1) in enumerate(seen):
        for k2, x2 in seen[i + 1:]:
            if k1 != k2:
                assert abs(x1 - x2) > 1e-9
