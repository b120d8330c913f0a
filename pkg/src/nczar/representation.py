"""Eigenbasis modules: H_0 with its subspaces H_R (affine) and H_+ (torus).

Basis keys carry their X-eigenvalue as an exact lattice offset from a fixed
base value, so keys reached from one another by F, G, E compare exactly.

* Affine ``e_{mu,xi,zeta}``: ``mu = (u + ka) a + (v + kb) b`` with ``u, v`` in
  [0, 1); ``xi, zeta`` are eps-exponents mod N.
* Torus ``e_{mu,xi}`` / ``e_{mu,w}``: ``mu = base * alpha^ka beta^kb delta^kd``
  with ``arg(base)`` in [0, 2pi/N^2); the last slot is the eps-exponent of
  ``xi`` (base algebra) or the delta-exponent of ``w`` (extended algebra).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .algebra import Algebra, OpElement
from .scalars import AFFINE
from .structures import StarParams, root_value


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class AffineKey:
    u: float
    v: float
    ka: int
    kb: int
    xi: int
    zeta: int


@dataclass(frozen=True)
class TorusKey:
    base: complex
    ka: int
    kb: int
    kd: int
    w: int  # xi exponent (mod N) or w exponent (mod N^2)


Key = AffineKey | TorusKey


class SparseVec:
    """Finite complex combination of basis keys; no stored zeros."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping | None = None):
        self.entries = {k: complex(c) for k, c in (entries or {}).items() if c != 0}

    @classmethod
    def basis(cls, key) -> "SparseVec":
        return cls({key: 1.0})

    def __add__(self, other: "SparseVec") -> "SparseVec":
        out = dict(self.entries)
        for k, c in other.entries.items():
            out[k] = out.get(k, 0) + c
        return SparseVec(out)

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        return self + other * -1

    def __mul__(self, c: complex) -> "SparseVec":
        return SparseVec({k: c * x for k, x in self.entries.items()})

    __rmul__ = __mul__

    def __len__(self):
        return len(self.entries)

    def norm_inf(self) -> float:
        return max((abs(c) for c in self.entries.values()), default=0.0)

    def keys(self):
        return self.entries.keys()


class Representation:
    """Numeric action of an :class:`Algebra` on its eigenbasis module."""

    def __init__(self, alg: Algebra, params: StarParams | None = None):
        if params is None:
            params = StarParams.default(alg.case, alg.N)
        if params.case != alg.case or params.N != alg.N:
            raise RepresentationError("parameters do not match the algebra")
        self.alg = alg
        self.params = params
        self.N = alg.N
        self._consts = params.constants()

    # keys

    def affine_key(self, mu: complex, xi: int, zeta: int) -> AffineKey:
        """Key for a numeric eigenvalue ``mu`` (decomposed along a, b)."""
        p = self.params
        U = complex(mu).imag / complex(p.a).imag
        V = complex(mu).real / p.b
        ka, kb = math.floor(U), math.floor(V)
        return AffineKey(U - ka, V - kb, ka, kb, xi % self.N, zeta % self.N)

    def hr_key(self, x_frac: float, kb: int, k: int, m: int) -> AffineKey:
        """H_R key ``mu = x + k a`` with ``x = (x_frac + kb) b`` real."""
        return AffineKey(0.0, x_frac, k, kb, k % self.N, m % self.N)

    def torus_key(self, mu: complex, last: int) -> TorusKey:
        M = self.N * self.N
        th = cmath.phase(mu) % (2 * math.pi)
        kd = math.floor(M * th / (2 * math.pi)) % M
        base = mu * cmath.exp(-2j * math.pi * kd / M)
        return TorusKey(base, 0, 0, kd, last % (M if self.alg.extended else self.N))

    def mu(self, key) -> complex:
        if isinstance(key, AffineKey):
            a, b = self._consts
            return (key.u + key.ka) * a + (key.v + key.kb) * b
        al, be = self._consts
        return key.base * al**key.ka * be**key.kb * root_value(key.kd, self.N * self.N)

    # actions

    def act_group(self, h: tuple[int, int, int], key):
        """Apply ``F^f G^g E^e`` (E first, F last)."""
        f, g, e = h
        N = self.N
        if isinstance(key, AffineKey):
            zeta = key.zeta + e - g * key.xi
            return AffineKey(key.u, key.v, key.ka - f, key.kb - g, (key.xi - f) % N, zeta % N)
        M = N * N
        if not self.alg.extended:
            kd = key.kd + N * e - N * g * key.w
            return TorusKey(key.base, key.ka - f, key.kb - g, kd % M, (key.w - f) % N)
        kw = key.w + N * e
        kd = key.kd + N * e - g * N * kw
        kw = kw * (1 - g * N) - f
        return TorusKey(key.base, key.ka - f, key.kb - g, kd % M, kw % M)

    def w_eigen(self, key) -> complex:
        if isinstance(key, AffineKey):
            if key.u != 0:
                raise RepresentationError("W eigenvalue is defined only on H_R keys (real x)")
            return key.ka * self._consts[0]
        return root_value(key.w, self.N * self.N)

    def diag_eigen(self, d: tuple, key) -> complex:
        N = self.N
        if isinstance(key, AffineKey):
            i, j, k, l = d
            val = self.mu(key) ** i if i else 1.0
            if j:
                val *= self.w_eigen(key) ** j
            return val * root_value(key.xi * k + key.zeta * l, N)
        p, q = d
        val = self.mu(key) ** p if p else 1.0
        if self.alg.extended:
            return val * root_value(key.w * q, N * N)
        return val * root_value(key.w * q, N)

    def act(self, A: OpElement, v: SparseVec) -> SparseVec:
        if A.alg != self.alg:
            raise RepresentationError("operator belongs to a different algebra")
        split = 4 if self.alg.case == AFFINE else 2
        c1, c2 = self._consts
        coeffs = {m: c.evaluate(c1, c2) for m, c in A.terms.items()}
        out: dict = {}
        for key, amp in v.entries.items():
            for m, cval in coeffs.items():
                k2 = self.act_group(m[split:], key)
                val = cval * self.diag_eigen(m[:split], k2) * amp
                out[k2] = out.get(k2, 0) + val
        return SparseVec(out)

    def act_words(self, words, v: SparseVec) -> SparseVec:
        """Act by a sum of unnormalized words, one letter at a time (rightmost first)."""
        c1, c2 = self._consts
        out = SparseVec()
        for coeff, letters in words:
            w = v
            for name, k in reversed(list(letters)):
                w = self.act(self.alg.normalize([(name, k)]), w)
            out = out + w * coeff.evaluate(c1, c2)
        return out

    def act_terms(self, A: OpElement, key) -> dict:
        """Per-output-key (value, magnitude scale) of ``A e_key``."""
        split = 4 if self.alg.case == AFFINE else 2
        c1, c2 = self._consts
        out: dict = {}
        for m, c in A.terms.items():
            k2 = self.act_group(m[split:], key)
            val = c.evaluate(c1, c2) * self.diag_eigen(m[:split], k2)
            scale = sum(abs(t.evaluate(c1, c2)) for t in _split_terms(c)) * abs(
                self.diag_eigen(m[:split], k2)
            )
            s, sc = out.get(k2, (0j, 0.0))
            out[k2] = (s + val, sc + scale)
        return out

    # subspaces

    def in_subspace(self, key) -> bool:
        """H_R (affine), H_+ (extended torus), oriented states (base torus)."""
        N = self.N
        if isinstance(key, AffineKey):
            return key.u == 0 and (key.ka - key.xi) % N == 0
        if not self.alg.extended:
            return self.oriented(key)
        M = N * N
        return key.base.imag == 0 and key.base.real > 0 and (key.ka + key.kd - key.w) % M == 0

    def oriented(self, key) -> bool:
        """Real-oriented (``bd mu = xi``) or positively oriented (``sgn mu^N = xi``)."""
        N = self.N
        if isinstance(key, AffineKey):
            return (key.ka - key.xi) % N == 0
        if key.base == 0:
            raise RepresentationError("mu = 0 has no orientation")
        if self.alg.extended:
            return (key.ka + key.kd - key.w) % (N * N) == 0
        return (key.ka + key.kd - key.w) % N == 0

    def inner(self, u: SparseVec, v: SparseVec) -> complex:
        """Orthonormal-basis inner product, linear in ``u``."""
        for k in list(u.keys()) + list(v.keys()):
            if not self.in_subspace(k):
                raise RepresentationError(f"key {k} is outside the inner-product subspace")
        return sum((c * v.entries[k].conjugate() for k, c in u.entries.items() if k in v.entries), 0j)

    def adjoint_residual(self, A: OpElement, u: SparseVec, v: SparseVec) -> float:
        lhs = self.inner(self.act(A, u), v)
        rhs = self.inner(u, self.act(A.adjoint(), v))
        return abs(lhs - rhs)

    # sampling

    def random_key(self, rng, spread: int = 6):
        N = self.N
        ka = int(rng.integers(-spread, spread + 1))
        kb = int(rng.integers(-spread, spread + 1))
        if self.alg.case == AFFINE:
            return self.hr_key(float(rng.random()), kb, ka, int(rng.integers(0, N)))
        M = N * N
        kd = int(rng.integers(0, M))
        if self.alg.extended:
            base = complex(float(rng.uniform(0.5, 2.0)), 0.0)
            return TorusKey(base, ka, kb, kd, (ka + kd) % M)
        base = float(rng.uniform(0.5, 2.0)) * cmath.exp(1j * float(rng.random()) * 2 * math.pi / M)
        return TorusKey(base, ka, kb, kd, (ka + kd) % N)

    def random_vector(self, rng, n_terms: int = 3, unit: bool = True) -> SparseVec:
        keys = {self.random_key(rng) for _ in range(n_terms)}
        coeffs = rng.normal(size=len(keys)) + 1j * rng.normal(size=len(keys))
        if unit:
            coeffs = coeffs / np.linalg.norm(coeffs)
        return SparseVec(dict(zip(keys, (complex(c) for c in coeffs))))

    def annihilates(self, A: OpElement, key, tol: float = 1e-10) -> bool:
        """Does ``A`` kill ``e_key``?  Entries are compared relative to their term magnitudes."""
        for val, scale in self.act_terms(A, key).values():
            if abs(val) > tol * max(1.0, scale):
                return False
        return True

    def faithfulness_test(self, A: OpElement, sample_size: int | None = None, rng=None,
                          tol: float = 1e-10) -> bool:
        """True iff ``A`` annihilates every sampled basis vector of H_R / H_+.

        The default sample size is three times the number of distinct
        ``(F, G, E)`` exponent triples in ``A``.
        """
        if rng is None:
            rng = np.random.default_rng(0)
        if sample_size is None:
            sample_size = 3 * max(1, len(A.group_parts()))
        spread = 40 if self.alg.case == AFFINE else 10
        return all(
            self.annihilates(A, self.random_key(rng, spread=spread), tol) for _ in range(sample_size)
        )


def _split_terms(c) -> Iterable:
    """Single-monomial pieces of a Scalar (for magnitude bookkeeping)."""
    from .scalars import Cyclotomic, Scalar

    for key, cyc in c.terms.items():
        for k, q in enumerate(cyc.coeffs):
            if q:
                raw = [0] * (k + 1)
                raw[k] = q
                yield Scalar(c.flavor, c.N, {key: Cyclotomic(cyc.M, raw, reduced=True)})


def act(A: OpElement, v: SparseVec, params: StarParams | None = None) -> SparseVec:
    return Representation(A.alg, params).act(A, v)
