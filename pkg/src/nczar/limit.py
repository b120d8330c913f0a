"""Heisenberg groups, the discrete and continuous actions, and Hausdorff limits.

Group elements are triples ``(k, l, m)`` standing for the unipotent matrix
with ``k, l`` above the diagonal and ``m`` in the corner, so that
``(k,l,m)(k',l',m') = (k+k', l+l', m+m'+k l')``.  With ``phi = (1,0,0)`` and
``gamma = (0,1,0)`` the commutator ``gamma phi gamma^-1 phi^-1`` is ``(0,0,-1)``.

Circle coordinates are compared as arc length on R/Z (period 1, not 2pi);
see ``hausdorff_dist``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree


# groups


@dataclass(frozen=True)
class HeisInt:
    k: int
    l: int
    m: int

    def __mul__(self, o: "HeisInt") -> "HeisInt":
        return HeisInt(self.k + o.k, self.l + o.l, self.m + o.m + self.k * o.l)

    def inverse(self) -> "HeisInt":
        return HeisInt(-self.k, -self.l, -self.m + self.k * self.l)

    @classmethod
    def identity(cls) -> "HeisInt":
        return cls(0, 0, 0)


@dataclass(frozen=True)
class HeisIntN:
    k: int
    l: int
    m: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "m", self.m % self.N)

    def __mul__(self, o: "HeisIntN") -> "HeisIntN":
        if o.N != self.N:
            raise ValueError("cannot multiply elements of different quotients")
        return HeisIntN(self.k + o.k, self.l + o.l, self.m + o.m + self.k * o.l, self.N)

    def inverse(self) -> "HeisIntN":
        return HeisIntN(-self.k, -self.l, -self.m + self.k * self.l, self.N)

    def is_identity(self) -> bool:
        return self.k == 0 and self.l == 0 and self.m == 0

    @classmethod
    def identity(cls, N: int) -> "HeisIntN":
        return cls(0, 0, 0, N)


@dataclass(frozen=True)
class HeisRealInf:
    u: float
    v: float
    w: float

    def __post_init__(self):
        object.__setattr__(self, "w", self.w % 1.0)

    def __mul__(self, o: "HeisRealInf") -> "HeisRealInf":
        return HeisRealInf(self.u + o.u, self.v + o.v, self.w + o.w + self.u * o.v)

    def inverse(self) -> "HeisRealInf":
        return HeisRealInf(-self.u, -self.v, -self.w + self.u * self.v)

    @classmethod
    def identity(cls) -> "HeisRealInf":
        return cls(0.0, 0.0, 0.0)


def heis_mul(g, h):
    return g * h


def embed_iN(g: HeisIntN) -> HeisRealInf:
    r = math.sqrt(g.N)
    return HeisRealInf(g.k / r, g.l / r, g.m / g.N)


def circle_dist(s1: float, s2: float) -> float:
    d = abs(s1 - s2) % 1.0
    return min(d, 1.0 - d)


def heis_real_dist(g: HeisRealInf, h: HeisRealInf) -> float:
    return abs(g.u - h.u) + abs(g.v - h.v) + circle_dist(g.w, h.w)


# points and actions


@dataclass(frozen=True)
class DiscretePoint:
    """``<x, y, exp(2 pi i q / N)>`` in P_N with ``x = x0 + kx/sqrt(N)``, ``y = y0 + ly/sqrt(N)``.

    Keeping the lattice offsets as integers makes ``[y sqrt(N)] = [y0 sqrt(N)] + ly``
    exact, so the phase arithmetic never touches floating point.
    """

    x0: float
    y0: float
    kx: int
    ly: int
    q: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "q", self.q % self.N)

    @property
    def x(self) -> float:
        return self.x0 + self.kx / math.sqrt(self.N)

    @property
    def y(self) -> float:
        return self.y0 + self.ly / math.sqrt(self.N)

    @property
    def s(self) -> float:
        return self.q / self.N

    def floor_y(self) -> int:
        return math.floor(self.y0 * math.sqrt(self.N)) + self.ly


@dataclass(frozen=True)
class BundlePoint:
    x: float
    y: float
    s: float

    def __post_init__(self):
        object.__setattr__(self, "s", self.s % 1.0)


def act_discrete(g: HeisIntN | HeisInt, p: DiscretePoint) -> DiscretePoint:
    return DiscretePoint(
        p.x0, p.y0, p.kx + g.k, p.ly + g.l, p.q + g.k * p.floor_y() + g.m, p.N
    )


def act_continuous(g: HeisRealInf, p: BundlePoint) -> BundlePoint:
    return BundlePoint(p.x + g.u, p.y + g.v, p.s + g.u * p.y + g.w)


def bundle_dist(p: BundlePoint, q: BundlePoint) -> float:
    return abs(p.x - q.x) + abs(p.y - q.y) + circle_dist(p.s, q.s)


def as_bundle(p: DiscretePoint) -> BundlePoint:
    return BundlePoint(p.x, p.y, p.s)


@dataclass(frozen=True)
class AdmissibleSeq:
    """``k_N = round(r sqrt(N))`` so that ``|r - k_N/sqrt(N)| <= 1/(2 sqrt(N))``."""

    r: float

    def k(self, N: int) -> int:
        return math.floor(self.r * math.sqrt(N) + 0.5)

    def term(self, N: int) -> float:
        return self.k(N) / math.sqrt(N)

    @property
    def limit(self) -> float:
        return self.r


class DtSeq(AdmissibleSeq):
    """The sequence ``1/sqrt(N)``: ``k_N = 1`` and limit 0."""

    def __init__(self):
        super().__init__(0.0)

    def k(self, N: int) -> int:
        return 1


DT = DtSeq()


def phi_alpha_discrete(alpha: AdmissibleSeq, p: DiscretePoint) -> DiscretePoint:
    return act_discrete(HeisIntN(alpha.k(p.N), 0, 0, p.N), p)


def gamma_beta_discrete(beta: AdmissibleSeq, p: DiscretePoint) -> DiscretePoint:
    return act_discrete(HeisIntN(0, beta.k(p.N), 0, p.N), p)


def phi_alpha_inf(alpha: AdmissibleSeq, p: BundlePoint) -> BundlePoint:
    return act_continuous(HeisRealInf(alpha.limit, 0.0, 0.0), p)


def gamma_beta_inf(beta: AdmissibleSeq, p: BundlePoint) -> BundlePoint:
    return act_continuous(HeisRealInf(0.0, beta.limit, 0.0), p)


# Hausdorff distance


def directed_hausdorff(A: np.ndarray, B: np.ndarray, periodic: Sequence[bool] | None = None) -> float:
    """``sup_{a in A} inf_{b in B} |a - b|_1`` with period-1 coordinates where flagged."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.size == 0 or B.size == 0:
        raise ValueError("Hausdorff distance needs nonempty point sets")
    if A.shape[1] != B.shape[1]:
        raise ValueError("point sets live in different dimensions")
    box = None
    if periodic is not None and any(periodic):
        box = np.array([1.0 if f else 0.0 for f in periodic])
        A = A.copy()
        B = B.copy()
        for j, f in enumerate(periodic):
            if f:
                A[:, j] %= 1.0
                B[:, j] %= 1.0
                # cKDTree wants periodic data strictly inside [0, 1)
                A[A[:, j] >= 1.0, j] = 0.0
                B[B[:, j] >= 1.0, j] = 0.0
    tree = cKDTree(B, boxsize=box)
    d, _ = tree.query(A, k=1, p=1, workers=-1)
    return float(np.max(d))


def hausdorff_dist(A, B, periodic: Sequence[bool] | None = None) -> float:
    """Symmetric Hausdorff distance in the sum metric."""
    return max(directed_hausdorff(A, B, periodic), directed_hausdorff(B, A, periodic))


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(round((hi - lo) / step))
    return lo + step * np.arange(n + 1)


def _circle_grid(step: float) -> np.ndarray:
    n = int(round(1.0 / step))
    return np.arange(n) / n


def group_distance(N: int, window: tuple[float, float] = (0.0, 1.0), grid_step: float = 0.01) -> float:
    """Distance from a grid of H(R)_inf (window^2 x circle) to i_N(H(Z)_N)."""
    lo, hi = window
    g = _grid(lo, hi, grid_step)
    c = _circle_grid(grid_step)
    U, V, W = np.meshgrid(g, g, c, indexing="ij")
    real = np.column_stack([U.ravel(), V.ravel(), W.ravel()])
    r = math.sqrt(N)
    ks = np.arange(math.floor(lo * r) - 1, math.ceil(hi * r) + 2) / r
    ms = np.arange(N) / N
    K, L, M = np.meshgrid(ks, ks, ms, indexing="ij")
    lattice = np.column_stack([K.ravel(), L.ravel(), M.ravel()])
    return directed_hausdorff(real, lattice, (False, False, True))


def embedding_into_distance(N: int, window=(0.0, 1.0)) -> float:
    """Directed distance from the embedded lattice into H(R)_inf.

    Every ``i_N(g)`` is itself an element of H(R)_inf, so the distance is the
    largest gap between an embedded point and its own image, namely zero.
    """
    lo, hi = window
    r = math.sqrt(N)
    worst = 0.0
    for k in range(math.ceil(lo * r), math.floor(hi * r) + 1):
        for m in range(N):
            g = HeisIntN(k, k, m, N)
            e = embed_iN(g)
            worst = max(worst, heis_real_dist(e, HeisRealInf(k / r, k / r, m / N)))
    return worst


def _base_grid(window, grid_step):
    lo, hi = window
    g = _grid(lo, hi, grid_step)
    X, Y = np.meshgrid(g, g, indexing="ij")
    return X.ravel(), Y.ravel()


def _circ(d):
    d = np.abs(d) % 1.0
    return np.minimum(d, 1.0 - d)


def _coupled_graph_dist(x, y, N, kx, ly, a, b, grid_step):
    """Graph distance with candidates restricted to the same base point.

    Every point of P_N is a point of P_inf, so the direction P_N -> P_inf uses
    ``p' = p``.  In the other direction a sampled ``p' = (x, y, s)`` is matched
    with the two P_N points over ``(x, y)`` whose phase brackets ``s``.  Both
    are upper bounds for the distance between the sampled sets.
    """
    r = math.sqrt(N)
    shift = abs(kx / r - a) + abs(ly / r - b)
    # phase of phi_N p minus phase of phi_inf p, independent of q
    phase = (kx * np.floor(y * r)) / N - a * y
    fwd = shift + float(np.max(_circ(phase)))
    s = _circle_grid(grid_step)
    best = np.full((len(x), len(s)), np.inf)
    for q in (np.floor(s * N), np.ceil(s * N)):
        d = (q / N - s)[None, :]
        best = np.minimum(best, _circ(d) + _circ(d + phase[:, None]))
    return max(fwd, shift + float(np.max(best)))


def limit_row(N: int, window=(0.0, 1.0), grid_step: float = 0.01,
              alpha: AdmissibleSeq = DT, beta: AdmissibleSeq = DT) -> dict:
    """Distances between the sampled structures P#_N and P_inf for one N."""
    x, y = _base_grid(window, grid_step)
    r = math.sqrt(N)
    c = _circle_grid(grid_step)
    # nearest phase q/N to each sampled s; P_N is contained in P_inf
    universe = float(np.max(_circ(c - np.round(c * N) / N)))
    phi = _coupled_graph_dist(x, y, N, alpha.k(N), 0, alpha.limit, 0.0, grid_step)
    gamma = _coupled_graph_dist(x, y, N, 0, beta.k(N), 0.0, beta.limit, grid_step)
    grp = group_distance(N, window, grid_step)
    into = embedding_into_distance(N, window)
    b3, b2 = 3 / r, 2 / r
    allowance = 2 * grid_step
    return {
        "N": N,
        "group_dist": grp,
        "bound_3_sqrtN": b3,
        "phi_graph_dist": phi,
        "gamma_graph_dist": gamma,
        "bound_2_sqrtN": b2,
        "grid_allowance": allowance,
        "pass": bool(grp <= b3 + allowance and phi <= b2 + allowance and gamma <= b2 + allowance),
        "universe_dist": universe,
        "group_dist_into": into,
    }


REPORT_COLUMNS = (
    "N",
    "group_dist",
    "bound_3_sqrtN",
    "phi_graph_dist",
    "gamma_graph_dist",
    "bound_2_sqrtN",
    "grid_allowance",
    "pass",
    "universe_dist",
    "group_dist_into",
)


def limit_report(Ns: Sequence[int], window=(0.0, 1.0), grid_step: float = 0.01,
                 alpha: AdmissibleSeq = DT, beta: AdmissibleSeq = DT) -> dict:
    """Per-N distances, bound checks and the monotonicity check across N."""
    rows = [limit_row(N, window, grid_step, alpha, beta) for N in sorted(Ns)]
    tol = 2 * grid_step
    monotone = True
    for prev, cur in zip(rows, rows[1:]):
        for col in ("group_dist", "phi_graph_dist", "gamma_graph_dist", "universe_dist"):
            if cur[col] > prev[col] + tol:
                monotone = False
    return {
        "rows": rows,
        "nonincreasing": monotone,
        "passed": monotone and all(r["pass"] for r in rows),
        "window": list(window),
        "grid_step": grid_step,
    }


# torus discrete model


@dataclass(frozen=True)
class TorusDiscretePoint:
    """``<exp(2 pi i x + y), exp(2 pi i q/N)>`` with ``x = x0 + kx/N``, ``y = y0 + ly/N``."""

    x0: float
    y0: float
    kx: int
    ly: int
    q: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "q", self.q % self.N)

    def floor_y(self) -> int:
        return math.floor(self.N * self.y0) + self.ly

    def z(self) -> complex:
        x = self.x0 + self.kx / self.N
        y = self.y0 + self.ly / self.N
        return complex(math.exp(y) * math.cos(2 * math.pi * x), math.exp(y) * math.sin(2 * math.pi * x))


def act_torus_discrete(g: HeisIntN | HeisInt, p: TorusDiscretePoint) -> TorusDiscretePoint:
    return TorusDiscretePoint(
        p.x0, p.y0, p.kx + g.k, p.ly + g.l, p.q + g.k * p.floor_y() + g.m, p.N
    )


def torus_model_check(N: int, samples: int = 500, seed: int = 0) -> dict:
    """Covering equations of the discrete torus model with ``a = e^(2 pi i/N)``, ``b = e^(1/N)``."""
    rng = np.random.default_rng(seed)
    a = complex(math.cos(2 * math.pi / N), math.sin(2 * math.pi / N))
    b = math.exp(1.0 / N)
    phi, gamma = HeisIntN(1, 0, 0, N), HeisIntN(0, 1, 0, N)
    res_phi = res_gamma = 0.0
    law_fail = fixed = 0
    for _ in range(samples):
        p = TorusDiscretePoint(float(rng.random()), float(rng.uniform(-1, 1)),
                               int(rng.integers(-50, 51)), int(rng.integers(-50, 51)),
                               int(rng.integers(0, N)), N)
        z = p.z()
        res_phi = max(res_phi, abs(act_torus_discrete(phi, p).z() - a * z) / abs(z))
        res_gamma = max(res_gamma, abs(act_torus_discrete(gamma, p).z() - b * z) / abs(z))
        g = HeisIntN(*(int(v) for v in rng.integers(-20, 21, size=3)), N)
        h = HeisIntN(*(int(v) for v in rng.integers(-20, 21, size=3)), N)
        if act_torus_discrete(h, act_torus_discrete(g, p)) != act_torus_discrete(h * g, p):
            law_fail += 1
        if not g.is_identity() and act_torus_discrete(g, p) == p:
            fixed += 1
    comm = gamma * phi * gamma.inverse() * phi.inverse()
    return {
        "N": N,
        "samples": samples,
        "phi_residual": res_phi,
        "gamma_residual": res_gamma,
        "action_law_failures": law_fail,
        "fixed_points": fixed,
        "commutator": [comm.k, comm.l, comm.m],
        "passed": res_phi <= 1e-10 and res_gamma <= 1e-10 and law_fail == 0 and fixed == 0,
    }
