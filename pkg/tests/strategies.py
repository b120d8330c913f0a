"""Random generators shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from nczar.algebra import Algebra
from nczar.scalars import AFFINE, Cyclotomic, Scalar, cyclotomic_order


def random_cyclotomic(rng, M: int, max_terms: int = 2) -> Cyclotomic:
    raw = [0] * M
    for _ in range(int(rng.integers(1, max_terms + 1))):
        raw[int(rng.integers(0, M))] += Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3)))
    if not any(raw):
        raw[0] = 1
    return Cyclotomic(M, raw)


def random_scalar(rng, alg: Algebra, max_terms: int = 2) -> Scalar:
    M = cyclotomic_order(alg.case, alg.N)
    s = Scalar.zero(alg.case, alg.N)
    for _ in range(int(rng.integers(1, max_terms + 1))):
        if alg.case == AFFINE:
            i, j = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        else:
            i, j = int(rng.integers(-2, 3)), int(rng.integers(-2, 3))
        s = s + Scalar.monomial(alg.case, alg.N, i, j, random_cyclotomic(rng, M))
    return s if not s.is_zero() else Scalar.one(alg.case, alg.N)


def random_monomial(rng, alg: Algebra) -> tuple:
    N = alg.N
    r = lambda lo, hi: int(rng.integers(lo, hi + 1))
    if alg.case == AFFINE:
        w = r(0, 2) if alg.extended else 0
        return (r(0, 3), w, r(0, N - 1), r(0, N - 1), r(-3, 3), r(-3, 3), r(0, N - 1))
    return (r(-3, 3), r(0, alg.vmod - 1), r(-3, 3), r(-3, 3), r(0, N - 1))


def random_element(rng, alg: Algebra, max_terms: int = 4):
    A = alg.zero()
    for _ in range(int(rng.integers(1, max_terms + 1))):
        A = A + alg.monomial(random_monomial(rng, alg), random_scalar(rng, alg))
    return A


def random_letters(rng, alg: Algebra, max_len: int = 6) -> list:
    names = alg.generator_names()
    from nczar.algebra import LETTER_ALIASES

    n = int(rng.integers(1, max_len + 1))
    return [LETTER_ALIASES[names[int(rng.integers(0, len(names)))]] for _ in range(n)]


def random_word(rng, alg: Algebra, max_len: int = 6) -> tuple:
    """(scalar, letters) pair: one unnormalized word."""
    return random_scalar(rng, alg, 1), random_letters(rng, alg, max_len)


def overlapping_vector(rep, rng, w):
    """Unit vector on the in-subspace support of ``w`` plus a few random keys.

    Pairs built this way have nonzero inner products, which random pairs
    almost never do once an operator has shifted the keys.
    """
    import numpy as np

    from nczar.representation import SparseVec

    keys = [k for k in w.keys() if rep.in_subspace(k)]
    c = rng.normal(size=len(keys)) + 1j * rng.normal(size=len(keys))
    v = SparseVec(dict(zip(keys, map(complex, c)))) + rep.random_vector(rng)
    return v * (1 / np.sqrt(sum(abs(x) ** 2 for x in v.entries.values())))
