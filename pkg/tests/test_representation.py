import numpy as np
import pytest

from strategies import overlapping_vector, random_element, random_word

from nczar import Algebra, StarParams
from nczar.expr import expand_words, parse
from nczar.representation import AffineKey, Representation, RepresentationError, SparseVec

CASES = ["affine", "torus"]


def relation_words(alg, lhs, rhs):
    return expand_words(parse(lhs), alg) + [(-c, w) for c, w in expand_words(parse(rhs), alg)]


@pytest.mark.parametrize("extended", [False, True])
@pytest.mark.parametrize("case", CASES)
@pytest.mark.parametrize("N", [2, 3, 5])
def test_relations_act_as_zero(case, N, extended):
    alg = Algebra(case, N, extended)
    rep = Representation(alg)
    rng = np.random.default_rng(N)
    for _, lhs, rhs in alg.relations():
        words = relation_words(alg, lhs, rhs)
        for _ in range(20):
            out = rep.act_words(words, SparseVec.basis(rep.random_key(rng)))
            assert out.norm_inf() <= 1e-12


def test_affine_relations_hold_off_the_real_line():
    # the base algebra acts on all of H_0, not only on real eigenvalues
    alg = Algebra("affine", 3)
    rep = Representation(alg)
    rng = np.random.default_rng(5)
    for _, lhs, rhs in alg.relations():
        words = relation_words(alg, lhs, rhs)
        for _ in range(10):
            mu = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
            key = rep.affine_key(mu, int(rng.integers(0, 3)), int(rng.integers(0, 3)))
            assert key.u != 0
            assert rep.act_words(words, SparseVec.basis(key)).norm_inf() <= 1e-12


@pytest.mark.parametrize("case", CASES)
def test_action_is_multiplicative(case):
    alg = Algebra(case, 3, extended=True)
    rep = Representation(alg)
    rng = np.random.default_rng(11)
    for _ in range(20):
        A, B = random_element(rng, alg, 2), random_element(rng, alg, 2)
        v = rep.random_vector(rng)
        lhs = rep.act(A * B, v)
        rhs = rep.act(A, rep.act(B, v))
        scale = max(1.0, lhs.norm_inf())
        assert (lhs - rhs).norm_inf() <= 1e-9 * scale


@pytest.mark.parametrize("case", CASES)
def test_x_is_diagonal(case):
    alg = Algebra(case, 3)
    rep = Representation(alg)
    rng = np.random.default_rng(0)
    for _ in range(10):
        key = rep.random_key(rng)
        out = rep.act(alg.gen("X"), SparseVec.basis(key))
        assert out.entries == pytest.approx({key: rep.mu(key)})


@pytest.mark.parametrize("case", CASES)
def test_adjointness(case):
    alg = Algebra(case, 3, extended=True)
    rep = Representation(alg)
    rng = np.random.default_rng(2)
    ops = [alg.gen(n) for n in alg.generator_names()]
    ops += [alg.normalize_words([random_word(rng, alg, 4)]) for _ in range(30)]
    overlaps = 0
    for A in ops:
        u = rep.random_vector(rng)
        v = overlapping_vector(rep, rng, rep.act(A, u))
        overlaps += abs(rep.inner(rep.act(A, u), v)) > 1e-6
        assert rep.adjoint_residual(A, u, v) <= 1e-10
    # the check is only meaningful if the inner products are not all zero
    assert overlaps == len(ops)


@pytest.mark.parametrize("case,names", [("affine", "FGY"), ("torus", "WFG")])
def test_unitary_generators(case, names):
    alg = Algebra(case, 3, extended=True)
    rep = Representation(alg)
    rng = np.random.default_rng(4)
    for name in names:
        A = alg.gen(name)
        for _ in range(20):
            u = rep.random_vector(rng)
            v = overlapping_vector(rep, rng, u)
            assert abs(rep.inner(rep.act(A, u), rep.act(A, v)) - rep.inner(u, v)) <= 1e-10


@pytest.mark.parametrize("case", CASES)
def test_faithfulness_matches_exact_zero(case):
    alg = Algebra(case, 3, extended=True)
    rep = Representation(alg)
    rng = np.random.default_rng(8)
    for i in range(40):
        if i % 2:
            A = random_element(rng, alg, 10)
        else:
            B, C, D = (random_element(rng, alg, 2) for _ in range(3))
            A = B * (C + D) - B * C - B * D
        assert A.is_zero() == rep.faithfulness_test(A, rng=rng)


def test_faithfulness_sees_partial_annihilators():
    # (Y - 1) F kills exactly the keys with xi = 1 after the shift
    alg = Algebra("affine", 3)
    rep = Representation(alg)
    A = (alg.gen("Y") - 1) * alg.gen("F")
    assert not A.is_zero()
    assert not rep.faithfulness_test(A, sample_size=30, rng=np.random.default_rng(0))


def test_inner_product_rejects_keys_outside_subspace():
    alg = Algebra("affine", 3)
    rep = Representation(alg)
    off = SparseVec.basis(AffineKey(0.5, 0.0, 0, 0, 0, 0))
    with pytest.raises(RepresentationError):
        rep.inner(off, off)


def test_parameters_must_match():
    with pytest.raises(RepresentationError):
        Representation(Algebra("affine", 3), StarParams.affine(5))
    with pytest.raises(RepresentationError):
        Representation(Algebra("torus", 3), StarParams.affine(3))


def test_operator_from_other_algebra_rejected():
    rep = Representation(Algebra("affine", 3))
    with pytest.raises(RepresentationError):
        rep.act(Algebra("affine", 5).gen("F"), SparseVec.basis(rep.random_key(np.random.default_rng(0))))
