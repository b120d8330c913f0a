import numpy as np
import pytest

from nczar.reconstruction import Duality, DualityError, State, verify_duality
from nczar.structures import AffinePoint, phi_affine, phi_torus, project_affine, project_torus


@pytest.mark.parametrize("case", ["affine", "torus"])
@pytest.mark.parametrize("N", [2, 3, 5, 8])
def test_verify_passes(case, N):
    report = verify_duality(case, N, 200, seed=N)
    assert [c["name"] for c in report["checks"]] == [
        "bijectivity", "fiber_cardinality", "anti_equivariance", "orientation_invariance",
    ]
    for check in report["checks"]:
        assert check["passed"], check


@pytest.mark.parametrize("case", ["affine", "torus"])
def test_round_trip(case):
    d = Duality(case, 3)
    rng = np.random.default_rng(1)
    for _ in range(50):
        t = d.random_point(rng)
        s = d.xi_map(t)
        assert d.rep.oriented(s.key)
        assert d.distance(d.xi_inv(s), t) <= 1e-12


@pytest.mark.parametrize("case", ["affine", "torus"])
def test_fiber_has_N_distinct_states(case):
    d = Duality(case, 5)
    rng = np.random.default_rng(2)
    for _ in range(20):
        t = d.random_point(rng)
        lam = project_affine(t) if case == "affine" else project_torus(t, d.params)
        states = d.fiber_states(lam)
        assert len({s.key for s in states}) == 5
        for s in states:
            assert d.projection(s) == pytest.approx(lam, rel=1e-12, abs=1e-12)


def test_F_undoes_phi():
    # F on states is phi^-1 on points
    for case, step in [("affine", phi_affine), ("torus", phi_torus)]:
        d = Duality(case, 3)
        rng = np.random.default_rng(3)
        for _ in range(20):
            t = d.random_point(rng)
            s = d.state_action("F", d.xi_map(step(t, d.params)))
            assert d.distance(d.xi_inv(s), t) <= 1e-12


def test_unoriented_state_rejected():
    d = Duality("affine", 3)
    key = d.xi_map(AffinePoint(complex(0.3, 0.0), 0, 3)).key
    bad = State(type(key)(key.u, key.v, key.ka, key.kb, (key.xi + 1) % 3, key.zeta))
    with pytest.raises(DualityError):
        d.xi_inv(bad)


def test_unknown_operator_rejected():
    d = Duality("torus", 3)
    with pytest.raises(DualityError):
        d.state_action("X", d.xi_map(1.5 + 0j))


def test_sample_size_below_N_rejected():
    with pytest.raises(DualityError):
        verify_duality("affine", 8, sample_size=4)
