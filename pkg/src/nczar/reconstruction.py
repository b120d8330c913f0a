"""States of the commutative subalgebra and the duality with cover points.

``xi_map`` sends a point ``t`` to the oriented state of its delta-function:
``<p(t), y(t), z(t)>`` (affine) or ``<x(t), y(t)>`` (torus).  The group of
operators acts on states anti-isomorphically: F corresponds to ``phi^-1`` and
G to ``gamma^-1``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra
from .representation import AffineKey, Representation, TorusKey
from .scalars import AFFINE
from .structures import (
    AffinePoint,
    StarParams,
    band,
    gamma_affine,
    gamma_affine_inv,
    gamma_torus,
    gamma_torus_inv,
    phi_affine,
    phi_affine_inv,
    phi_torus,
    phi_torus_inv,
    project_torus,
    sgn,
)

_GROUP_STEPS = {"F": (1, 0, 0), "Finv": (-1, 0, 0), "G": (0, 1, 0), "Ginv": (0, -1, 0)}


class DualityError(ValueError):
    pass


@dataclass(frozen=True)
class State:
    key: AffineKey | TorusKey


class Duality:
    """Bijection between oriented states and points of P_N or T_N."""

    def __init__(self, case: str, N: int, params: StarParams | None = None):
        self.params = params or StarParams.default(case, N)
        self.case = case
        self.N = N
        self.rep = Representation(Algebra(case, N), self.params)

    def xi_map(self, t) -> State:
        p = self.params
        if self.case == AFFINE:
            return State(self.rep.affine_key(t.x, band(t.x, p), t.ell))
        return State(self.rep.torus_key(t, sgn(t**self.N, self.N)))

    def xi_inv(self, s: State):
        if not self.rep.oriented(s.key):
            raise DualityError(f"state {s.key} is not oriented")
        mu = self.rep.mu(s.key)
        if self.case == AFFINE:
            return AffinePoint(mu, s.key.zeta, self.N)
        return mu

    def state_action(self, op: str, s: State) -> State:
        """Act by ``F``, ``G``, ``Finv`` or ``Ginv`` on a state."""
        if op not in _GROUP_STEPS:
            raise DualityError(f"unknown operator {op!r}")
        return State(self.rep.act_group(_GROUP_STEPS[op], s.key))

    def point_action(self, op: str, t):
        """The point map that ``op`` induces through the duality."""
        p = self.params
        if self.case == AFFINE:
            inv = {"F": phi_affine_inv, "G": gamma_affine_inv}
            fwd = {"Finv": phi_affine, "Ginv": gamma_affine}
        else:
            inv = {"F": phi_torus_inv, "G": gamma_torus_inv}
            fwd = {"Finv": phi_torus, "Ginv": gamma_torus}
        fn = inv.get(op) or fwd[op]
        return fn(t, p)

    def projection(self, s: State) -> complex:
        """``p_X``: ``mu`` (affine) or ``mu^N`` (torus)."""
        mu = self.rep.mu(s.key)
        return mu if self.case == AFFINE else mu**self.N

    def fiber_states(self, lam: complex) -> list[State]:
        """All oriented states over ``lam``."""
        N = self.N
        if self.case == AFFINE:
            xi = band(lam, self.params)
            return [State(self.rep.affine_key(lam, xi, m)) for m in range(N)]
        r = abs(lam) ** (1.0 / N) * cmath.exp(1j * cmath.phase(lam) / N)
        out = []
        for j in range(N):
            mu = r * cmath.exp(2j * cmath.pi * j / N)
            out.append(State(self.rep.torus_key(mu, sgn(mu**N, N))))
        return out

    def random_point(self, rng):
        if self.case == AFFINE:
            x = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
            return AffinePoint(x, int(rng.integers(0, self.N)), self.N)
        return complex(rng.uniform(0.3, 3.0) * cmath.exp(2j * cmath.pi * rng.random()))

    def distance(self, t1, t2) -> float:
        if self.case == AFFINE:
            if t1.ell != t2.ell:
                return float("inf")
            return abs(t1.x - t2.x) / max(1.0, abs(t1.x))
        return abs(t1 - t2) / max(1.0, abs(t1))

    def verify(self, samples: int = 300, seed: int = 0, tol: float = 1e-12,
               word_length: int = 4) -> dict:
        """Bijectivity, fiber cardinality and anti-equivariance on random samples."""
        rng = np.random.default_rng(seed)
        bij, fib, anti, orient = [], [], [], []
        ops = list(_GROUP_STEPS)
        for _ in range(samples):
            t = self.random_point(rng)
            s = self.xi_map(t)
            back = self.xi_inv(s)
            if self.distance(t, back) > tol or not _keys_match(self.xi_map(back).key, s.key, tol):
                bij.append({"point": _jsonable(t), "state": repr(s.key)})
            lam = t.x if self.case == AFFINE else project_torus(t, self.params)
            states = self.fiber_states(lam)
            keys = {st.key for st in states}
            good = len(keys) == self.N and all(self.rep.oriented(k) for k in keys)
            good = good and all(abs(self.projection(st) - lam) <= tol * max(1.0, abs(lam)) for st in states)
            if not good:
                fib.append({"lambda": _jsonable(lam), "count": len(keys)})
            word = [ops[i] for i in rng.integers(0, len(ops), size=int(rng.integers(1, word_length + 1)))]
            st, pt = s, t
            for op in word:
                st = self.state_action(op, st)
                pt = self.point_action(op, pt)
                if not self.rep.oriented(st.key):
                    orient.append({"word": word, "state": repr(st.key)})
                    break
            if self.distance(self.xi_inv(st), pt) > tol:
                anti.append({"word": word, "point": _jsonable(t)})
        checks = [
            ("bijectivity", bij),
            ("fiber_cardinality", fib),
            ("anti_equivariance", anti),
            ("orientation_invariance", orient),
        ]
        return {
            "case": self.case,
            "N": self.N,
            "samples": samples,
            "checks": [
                {"name": name, "passed": not wit, "witnesses": wit[:5]} for name, wit in checks
            ],
        }


def _keys_match(k1, k2, tol: float) -> bool:
    if isinstance(k1, AffineKey):
        same = (k1.ka, k1.kb, k1.xi, k1.zeta) == (k2.ka, k2.kb, k2.xi, k2.zeta)
        return same and abs(k1.u - k2.u) <= tol and abs(k1.v - k2.v) <= tol
    same = (k1.ka, k1.kb, k1.kd, k1.w) == (k2.ka, k2.kb, k2.kd, k2.w)
    return same and abs(k1.base - k2.base) <= tol * max(1.0, abs(k1.base))


def _jsonable(z):
    if isinstance(z, AffinePoint):
        return {"x": [z.x.real, z.x.imag], "ell": z.ell}
    z = complex(z)
    return [z.real, z.imag]


def xi_map(t, case: str, N: int):
    return Duality(case, N).xi_map(t)


def xi_inv(s: State, case: str, N: int):
    return Duality(case, N).xi_inv(s)


def verify_duality(case: str, N: int, sample_size: int = 300, seed: int = 0) -> dict:
    if sample_size < N:
        raise DualityError("sample size must be at least N")
    return Duality(case, N).verify(sample_size, seed)
