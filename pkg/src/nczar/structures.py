"""Concrete models of the covers P_N (affine line) and T_N (torus).

Both covers carry an action of the group generated by ``phi`` and ``gamma``
with central commutator ``[phi, gamma] = gamma phi gamma^-1 phi^-1`` of order
``N``.  Points of P_N are pairs ``<x, eps^ell>``; points of T_N are nonzero
complex numbers.  Orbit-level work goes through :class:`OrbitCoord`, the
decomposition ``t = phi^m gamma^n [phi, gamma]^ell . s``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .scalars import AFFINE, TORUS

TWO_PI = 2.0 * math.pi


def _check_N(N: int):
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")


@dataclass(frozen=True)
class StarParams:
    """Numeric instantiation of the structure constants.

    Affine: ``a`` imaginary, ``b`` real.  Torus: ``a = eps * rho`` with
    ``rho > 0, rho != 1`` and ``b > 0, b != 1``; the N-th roots are
    ``alpha = delta * rho**(1/N)`` (so ``alpha^-1 delta`` is a positive real)
    and ``beta = b**(1/N)``.
    """

    case: str
    N: int
    a: complex
    b: float
    rho: float | None = None

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be positive, got {self.N}")
        if self.case == AFFINE:
            if self.a == 0 or abs(complex(self.a).real) > 1e-15 * abs(self.a):
                raise ValueError("affine a must be nonzero imaginary")
            if self.b == 0 or isinstance(self.b, complex):
                raise ValueError("affine b must be nonzero real")
        elif self.case == TORUS:
            if self.rho is None or self.rho <= 0 or self.rho == 1:
                raise ValueError("torus rho must be positive and != 1")
            if self.b <= 0 or self.b == 1:
                raise ValueError("torus b must be positive and != 1")
        else:
            raise ValueError(f"unknown case {self.case!r}")

    @classmethod
    def affine(cls, N: int, b: float = math.e) -> "StarParams":
        _check_N(N)
        return cls(AFFINE, N, 2j * math.pi / N, b)

    @classmethod
    def torus(cls, N: int, rho: float = math.e, b: float = math.pi) -> "StarParams":
        _check_N(N)
        eps = cmath.exp(2j * math.pi / N)
        return cls(TORUS, N, eps * rho, b, rho)

    @classmethod
    def default(cls, case: str, N: int) -> "StarParams":
        return cls.affine(N) if case == AFFINE else cls.torus(N)

    @property
    def eps(self) -> complex:
        return cmath.exp(2j * math.pi / self.N)

    @property
    def delta(self) -> complex:
        return cmath.exp(2j * math.pi / (self.N * self.N))

    @property
    def alpha(self) -> complex:
        self._torus_only()
        return self.delta * self.rho ** (1.0 / self.N)

    @property
    def beta(self) -> float:
        self._torus_only()
        return self.b ** (1.0 / self.N)

    def constants(self) -> tuple[complex, complex]:
        """Values substituted for the formal constants of a Scalar."""
        if self.case == AFFINE:
            return complex(self.a), complex(self.b)
        return self.alpha, complex(self.beta)

    def _torus_only(self):
        if self.case != TORUS:
            raise ValueError("alpha/beta are torus constants")


# star-functions


def band(lam: complex, p: StarParams) -> int:
    """Index ``k`` with ``bd(lam) = eps^k``, i.e. floor(Re(lam / a)) mod N."""
    if p.case != AFFINE:
        raise ValueError("band function is defined for the affine case")
    return math.floor((complex(lam) / p.a).real) % p.N


def _arg01(z: complex) -> float:
    if z == 0:
        raise ValueError("angular function undefined at 0")
    t = cmath.phase(z)
    return t + TWO_PI if t < 0 else t


def sgn(z: complex, N: int) -> int:
    """Index ``k`` with ``sgn(z) = eps^k``: floor(N arg z / 2pi) mod N, arg in [0, 2pi)."""
    return math.floor(N * _arg01(z) / TWO_PI) % N


def hat_sgn(z: complex, N: int) -> int:
    """Refined angular index mod N**2."""
    M = N * N
    return math.floor(M * _arg01(z) / TWO_PI) % M


def root_value(k: int, M: int) -> complex:
    return cmath.exp(2j * math.pi * (k % M) / M)


def star_function_check(N: int, samples: int = 1000, seed: int = 0, margin: float = 1e-9) -> dict:
    """Functional equations of bd and sgn on random arguments, plus the sgn bound.

    ``bd(lam + a) = eps bd(lam)`` and ``bd(lam + b) = bd(lam)`` for the affine
    constants; ``sgn(a lam) = eps sgn(lam)`` and ``sgn(b lam) = sgn(lam)`` for
    the torus constants, skipping arguments within ``margin`` of a sector edge.
    """
    import numpy as np

    rng = np.random.default_rng(seed)
    pa, pt = StarParams.affine(N), StarParams.torus(N)
    band_fail, sgn_fail, skipped = [], [], 0
    sup = 0.0
    for _ in range(samples):
        lam = complex(*rng.uniform(-50, 50, size=2))
        k = band(lam, pa)
        if band(lam + pa.a, pa) != (k + 1) % N or band(lam + pa.b, pa) != k:
            band_fail.append([lam.real, lam.imag])
        z = float(rng.uniform(0.1, 10)) * cmath.exp(1j * float(rng.uniform(0, TWO_PI)))
        sector = N * _arg01(z) / TWO_PI
        if min(sector % 1.0, 1.0 - sector % 1.0) < margin or _arg01(z) > TWO_PI - margin:
            skipped += 1
        else:
            s = sgn(z, N)
            if sgn(pt.a * z, N) != (s + 1) % N or sgn(pt.b * z, N) != s:
                sgn_fail.append([z.real, z.imag])
        sup = max(sup, abs(root_value(sgn(z, N), N) - cmath.exp(1j * _arg01(z))))
    bound = TWO_PI / N
    return {
        "N": N,
        "samples": samples,
        "band_failures": band_fail[:5],
        "sgn_failures": sgn_fail[:5],
        "sgn_skipped": skipped,
        "sgn_sup_error": sup,
        "sgn_bound": bound,
        "passed": not band_fail and not sgn_fail and sup <= bound,
    }


# affine cover


@dataclass(frozen=True)
class AffinePoint:
    x: complex
    ell: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "ell", self.ell % self.N)


def phi_affine(t: AffinePoint, p: StarParams) -> AffinePoint:
    return AffinePoint(t.x + p.a, t.ell, p.N)


def phi_affine_inv(t: AffinePoint, p: StarParams) -> AffinePoint:
    return AffinePoint(t.x - p.a, t.ell, p.N)


def gamma_affine(t: AffinePoint, p: StarParams) -> AffinePoint:
    return AffinePoint(t.x + p.b, t.ell + band(t.x, p), p.N)


def gamma_affine_inv(t: AffinePoint, p: StarParams) -> AffinePoint:
    x = t.x - p.b
    return AffinePoint(x, t.ell - band(x, p), p.N)


def project_affine(t: AffinePoint) -> complex:
    return t.x


def commutator_affine(t: AffinePoint, p: StarParams) -> AffinePoint:
    """``gamma phi gamma^-1 phi^-1`` applied to ``t``."""
    return gamma_affine(phi_affine(gamma_affine_inv(phi_affine_inv(t, p), p), p), p)


def affine_fiber(lam: complex, p: StarParams) -> list[AffinePoint]:
    return [AffinePoint(lam, ell, p.N) for ell in range(p.N)]


# torus cover


def _nonzero(t: complex):
    if t == 0:
        raise ValueError("T_N excludes 0")


def phi_torus(t: complex, p: StarParams) -> complex:
    _nonzero(t)
    return p.alpha * t


def phi_torus_inv(t: complex, p: StarParams) -> complex:
    _nonzero(t)
    return t / p.alpha


def gamma_torus(t: complex, p: StarParams) -> complex:
    _nonzero(t)
    return root_value(sgn(t**p.N, p.N), p.N) * p.beta * t


def gamma_torus_inv(t: complex, p: StarParams) -> complex:
    # sgn(t^N) is invariant under gamma, so the inverse reuses it
    _nonzero(t)
    return t / (root_value(sgn(t**p.N, p.N), p.N) * p.beta)


def project_torus(t: complex, p: StarParams) -> complex:
    _nonzero(t)
    return t**p.N


def project_inv(t: complex, p: StarParams) -> complex:
    _nonzero(t)
    return 1.0 / t**p.N


# orbit coordinates


@dataclass(frozen=True)
class OrbitCoord:
    """``t = phi^m gamma^n [phi, gamma]^ell . s``.

    Affine representatives are ``s = u*a + v*b`` with ``u, v`` in [0, 1), so
    that ``bd(s) = 1``.  Torus representatives are base points ``s`` with
    ``arg s`` in [0, 2pi/N); the point over ``s`` is its principal N-th root.
    """

    m: int
    n: int
    ell: int
    s: complex


@dataclass(frozen=True)
class SemidefValues:
    """Values of the semi-definable functions at one point.

    Root-of-unity valued functions are reported by their exponent index
    (``y = eps**y`` etc.); ``w`` is the complex value for the affine case and
    the ``delta`` index for the torus case.
    """

    case: str
    y: int
    z: int | None = None
    w: complex | int | None = None
    x: complex | None = None
    x_inv: complex | None = None
    extra: dict = field(default_factory=dict)


def affine_representative(u: float, v: float, p: StarParams) -> complex:
    if not (0 <= u < 1 and 0 <= v < 1):
        raise ValueError("representative coordinates must lie in [0, 1)")
    return u * p.a + v * p.b


def torus_representative(radius: float, theta: float, p: StarParams) -> complex:
    """Base point with ``theta`` in [0, 2pi/N)."""
    if radius <= 0 or not 0 <= theta < TWO_PI / p.N:
        raise ValueError("torus representative needs radius > 0 and theta in [0, 2pi/N)")
    return radius * cmath.exp(1j * theta)


def principal_root(s: complex, N: int) -> complex:
    return abs(s) ** (1.0 / N) * cmath.exp(1j * _arg01(s) / N)


def orbit_point(c: OrbitCoord, p: StarParams):
    """The actual cover point with orbit coordinate ``c``."""
    if p.case == AFFINE:
        return AffinePoint(c.m * p.a + c.n * p.b + c.s, c.ell, p.N)
    r = principal_root(c.s, p.N)
    return p.alpha**c.m * p.beta**c.n * root_value(c.ell, p.N) * r


def orbit_phi(c: OrbitCoord) -> OrbitCoord:
    return OrbitCoord(c.m + 1, c.n, c.ell, c.s)


def orbit_gamma(c: OrbitCoord, N: int) -> OrbitCoord:
    # gamma phi^m = [phi,gamma]^m phi^m gamma
    return OrbitCoord(c.m, c.n + 1, (c.ell + c.m) % N, c.s)


def orbit_commutator(c: OrbitCoord, N: int) -> OrbitCoord:
    return OrbitCoord(c.m, c.n, (c.ell + 1) % N, c.s)


def semidef_funcs(c: OrbitCoord, p: StarParams) -> SemidefValues:
    N = p.N
    if p.case == AFFINE:
        return SemidefValues(AFFINE, y=c.m % N, z=c.ell % N, w=c.m * p.a)
    x = orbit_point(c, p)
    return SemidefValues(
        TORUS, y=c.m % N, w=(c.m + N * c.ell) % (N * N), x=x, x_inv=1.0 / x
    )


def random_orbit_coord(rng, p: StarParams, spread: int = 20) -> OrbitCoord:
    m = int(rng.integers(-spread, spread + 1))
    n = int(rng.integers(-spread, spread + 1))
    ell = int(rng.integers(0, p.N))
    if p.case == AFFINE:
        s = affine_representative(float(rng.random()), float(rng.random()), p)
    else:
        s = torus_representative(
            float(rng.uniform(0.2, 5.0)), float(rng.random()) * TWO_PI / p.N, p
        )
    return OrbitCoord(m, n, ell, s)
