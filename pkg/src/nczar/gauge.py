"""Covariant derivatives and curvature of the limiting U(1) connection.

Sections are sampled on a uniform grid as ``psi = exp(2 pi i s(x, y))``.
Derivatives are central differences, so every derivative loses one node on
each side of the grid along its direction.

Affine: ``nabla_x = d/dx - 2 pi i y`` and ``nabla_y = d/dy``, with curvature 2 pi i.
Torus: ``z1 = exp(2 pi i x)`` and ``z2 = exp(y)``, ``nabla_1 = d/dz1 - ln(z2)/z1`` and
``nabla_2 = d/dz2``, with curvature ``1/(z1 z2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .limit import AdmissibleSeq, DT, DiscretePoint, act_discrete, HeisIntN
from .scalars import AFFINE, TORUS

AFFINE_WINDOW = (0.0, 1.0, 0.0, 1.0)
TORUS_WINDOW = (0.1, 0.4, 0.1, 1.0)

TWO_PI_I = 2j * math.pi


class GaugeError(ValueError):
    pass


def default_window(case: str) -> tuple[float, float, float, float]:
    return AFFINE_WINDOW if case == AFFINE else TORUS_WINDOW


@dataclass(frozen=True)
class ConnectionSpec:
    case: str

    def __post_init__(self):
        if self.case not in (AFFINE, TORUS):
            raise GaugeError(f"unknown case {self.case!r}")

    def A(self, direction: int, X, Y):
        """Connection component in the case's own coordinates."""
        if self.case == AFFINE:
            return -TWO_PI_I * Y if direction == 0 else np.zeros_like(Y, dtype=complex)
        if direction == 0:
            return -Y / np.exp(TWO_PI_I * X)
        return np.zeros_like(Y, dtype=complex)

    def expected(self, X, Y):
        if self.case == AFFINE:
            return np.full(np.shape(X), TWO_PI_I)
        return 1.0 / (np.exp(TWO_PI_I * X) * np.exp(Y))


@dataclass
class SectionFamily:
    """``s(x, y) = c1 x + c2 y + c3 x y + sum_j c_j sin(2 pi p x) cos(2 pi q y)``."""

    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    fourier: list = field(default_factory=list)  # (coeff, p, q)

    @classmethod
    def from_coeffs(cls, coeffs) -> "SectionFamily":
        coeffs = [float(c) for c in coeffs]
        if len(coeffs) < 3:
            coeffs += [0.0] * (3 - len(coeffs))
        four = [(c, 1, 1) for c in coeffs[3:4]]
        return cls(coeffs[0], coeffs[1], coeffs[2], four)

    @classmethod
    def random(cls, seed: int = 0) -> "SectionFamily":
        rng = np.random.default_rng(seed)
        c = rng.uniform(-0.02, 0.02, size=3)
        c4 = float(rng.uniform(-0.0005, 0.0005))
        return cls(float(c[0]), float(c[1]), float(c[2]), [(c4, 1, 1)])

    def s(self, X, Y):
        out = self.c1 * X + self.c2 * Y + self.c3 * X * Y
        for c, p, q in self.fourier:
            out = out + c * np.sin(2 * math.pi * p * X) * np.cos(2 * math.pi * q * Y)
        return out

    def ds(self, direction: int, X, Y):
        if direction == 0:
            out = self.c1 + self.c3 * Y
            for c, p, q in self.fourier:
                out = out + c * 2 * math.pi * p * np.cos(2 * math.pi * p * X) * np.cos(2 * math.pi * q * Y)
        else:
            out = self.c2 + self.c3 * X
            for c, p, q in self.fourier:
                out = out - c * 2 * math.pi * q * np.sin(2 * math.pi * p * X) * np.sin(2 * math.pi * q * Y)
        return out + np.zeros_like(X)

    def as_list(self) -> list:
        return [self.c1, self.c2, self.c3] + [c for c, _, _ in self.fourier]


@dataclass
class SectionGrid:
    """Complex values on a uniform lattice; axis 0 is x, axis 1 is y."""

    x: np.ndarray
    y: np.ndarray
    values: np.ndarray
    h: float
    family: SectionFamily | None = None

    @classmethod
    def from_family(cls, family: SectionFamily, window, h: float) -> "SectionGrid":
        x0, x1, y0, y1 = window
        if h <= 0 or h > min(x1 - x0, y1 - y0) / 2:
            raise GaugeError("grid step must be positive and leave interior nodes")
        x = x0 + h * np.arange(int(round((x1 - x0) / h)) + 1)
        y = y0 + h * np.arange(int(round((y1 - y0) / h)) + 1)
        X, Y = np.meshgrid(x, y, indexing="ij")
        return cls(x, y, np.exp(TWO_PI_I * family.s(X, Y)), h, family)

    @classmethod
    def constant(cls, window, h: float) -> "SectionGrid":
        return cls.from_family(SectionFamily(), window, h)

    def mesh(self):
        return np.meshgrid(self.x, self.y, indexing="ij")

    def unit_modulus_error(self) -> float:
        return float(np.max(np.abs(np.abs(self.values) - 1.0)))


def _central(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    if f.shape[axis] < 3:
        raise GaugeError("central difference needs at least three nodes")
    if axis == 0:
        return (f[2:, :] - f[:-2, :]) / (2 * h)
    return (f[:, 2:] - f[:, :-2]) / (2 * h)


def _trim(f: np.ndarray, axis: int) -> np.ndarray:
    return f[1:-1, :] if axis == 0 else f[:, 1:-1]


def _nabla(values, X, Y, h, direction, spec: ConnectionSpec):
    """One covariant derivative; result lives on the grid trimmed along ``direction``."""
    d = _central(values, h, direction)
    Xt, Yt, vt = _trim(X, direction), _trim(Y, direction), _trim(values, direction)
    if spec.case == TORUS:
        # d/dz1 = (1/(2 pi i z1)) d/dx and d/dz2 = (1/z2) d/dy
        d = d / (TWO_PI_I * np.exp(TWO_PI_I * Xt)) if direction == 0 else d / np.exp(Yt)
    return d + spec.A(direction, Xt, Yt) * vt, Xt, Yt


def covariant_derivative(psi: SectionGrid, direction: int | str, spec: ConnectionSpec | str,
                         analytic: bool = False):
    """``nabla psi`` on the interior nodes; returns (values, X, Y).

    With ``analytic=True`` the derivative term uses the section's closed form
    and the full grid is kept.
    """
    if isinstance(spec, str):
        spec = ConnectionSpec(spec)
    direction = {"x": 0, "y": 1, "z1": 0, "z2": 1}.get(direction, direction)
    if direction not in (0, 1):
        raise GaugeError(f"unknown direction {direction!r}")
    X, Y = psi.mesh()
    if not analytic:
        return _nabla(psi.values, X, Y, psi.h, direction, spec)
    if psi.family is None:
        raise GaugeError("analytic mode needs a section family")
    d = TWO_PI_I * psi.family.ds(direction, X, Y) * psi.values
    if spec.case == TORUS:
        d = d / (TWO_PI_I * np.exp(TWO_PI_I * X)) if direction == 0 else d / np.exp(Y)
    return d + spec.A(direction, X, Y) * psi.values, X, Y


def commutator(psi: SectionGrid, spec: ConnectionSpec):
    """``([nabla_1, nabla_2] psi) / psi`` on nodes two steps inside the window."""
    X, Y = psi.mesh()
    h = psi.h
    n1, X1, Y1 = _nabla(psi.values, X, Y, h, 0, spec)
    n2, X2, Y2 = _nabla(psi.values, X, Y, h, 1, spec)
    n21, _, _ = _nabla(n1, X1, Y1, h, 1, spec)
    n12, _, _ = _nabla(n2, X2, Y2, h, 0, spec)
    inner = psi.values[1:-1, 1:-1]
    return (n12 - n21) / inner, X[1:-1, 1:-1], Y[1:-1, 1:-1]


def connection_curvature(spec: ConnectionSpec, window, h: float):
    """``dA_2/dx_1 - dA_1/dx_2`` by central differences of the components."""
    psi = SectionGrid.constant(window, h)
    X, Y = psi.mesh()
    A1, A2 = spec.A(0, X, Y), spec.A(1, X, Y)
    d2 = _central(A2, h, 0)[:, 1:-1]
    d1 = _central(A1, h, 1)[1:-1, :]
    if spec.case == TORUS:
        Xi, Yi = X[1:-1, 1:-1], Y[1:-1, 1:-1]
        d2 = d2 / (TWO_PI_I * np.exp(TWO_PI_I * Xi))
        d1 = d1 / np.exp(Yi)
    return d2 - d1, X[1:-1, 1:-1], Y[1:-1, 1:-1]


@dataclass
class CurvatureResult:
    case: str
    h: float
    method: str
    values: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    expected: np.ndarray

    @property
    def deviation(self) -> np.ndarray:
        dev = np.abs(self.values - self.expected)
        if self.case == TORUS:
            dev = dev / np.abs(self.expected)
        return dev

    @property
    def max_dev(self) -> float:
        return float(np.max(self.deviation))


def curvature(case: str, window=None, h: float = 1e-3, method: str = "probe",
              section: SectionFamily | None = None, seed: int = 0) -> CurvatureResult:
    """Curvature on a window.

    ``probe`` applies the commutator of the covariant derivatives to a test
    section; ``connection`` differentiates the connection components.  The
    torus deviation is relative to ``1/(z1 z2)``.
    """
    spec = ConnectionSpec(case)
    window = tuple(window) if window is not None else default_window(case)
    if method == "probe":
        fam = section if section is not None else SectionFamily.random(seed)
        vals, X, Y = commutator(SectionGrid.from_family(fam, window, h), spec)
    elif method == "connection":
        vals, X, Y = connection_curvature(spec, window, h)
    else:
        raise GaugeError(f"unknown curvature method {method!r}")
    return CurvatureResult(case, h, method, vals, X, Y, spec.expected(X, Y))


def curvature_report(case: str, window=None, h: float = 1e-3, method: str = "probe",
                     section: SectionFamily | None = None, seed: int = 0,
                     tol: float | None = None) -> dict:
    """Max deviation at ``h`` and the observed order from ``h`` vs ``h/2``."""
    if tol is None:
        tol = 1e-6 if case == AFFINE else 1e-5
    r1 = curvature(case, window, h, method, section, seed)
    r2 = curvature(case, window, h / 2, method, section, seed)
    ratio = r1.max_dev / r2.max_dev if r2.max_dev > 0 else float("inf")
    order = math.log2(ratio) if 0 < ratio < float("inf") else float("nan")
    passed = r1.max_dev <= tol
    if case == AFFINE and method == "probe":
        passed = passed and 3.0 <= ratio <= 5.0
    return {
        "case": case,
        "method": method,
        "window": list(window if window is not None else default_window(case)),
        "h": h,
        "max_dev": r1.max_dev,
        "max_dev_half_h": r2.max_dev,
        "ratio": ratio,
        "order_estimate": order,
        "tolerance": tol,
        "passed": bool(passed),
        "_result": r1,
    }


def transport_consistency(N: int, samples: int = 500, seed: int = 0,
                          alpha: AdmissibleSeq = DT) -> dict:
    """Discrete phase increments of one phi-step against the continuous transport ``y dx``.

    With ``dx = 1/sqrt(N)`` the discrete step moves the phase by
    ``[y sqrt(N)]/N``, within ``1/N`` of ``y dx``.  The section
    ``exp(2 pi i x y)`` is parallel along x for the displayed connection,
    which confirms that the 2 pi in ``A_x`` matches the transport rule.
    """
    rng = np.random.default_rng(seed)
    dx = alpha.term(N)
    worst = 0.0
    gamma_moves = 0
    for _ in range(samples):
        y0 = float(rng.uniform(0, 1))
        p = DiscretePoint(float(rng.uniform(0, 1)), y0, 0, 0, int(rng.integers(0, N)), N)
        q = act_discrete(HeisIntN(alpha.k(N), 0, 0, N), p)
        inc = ((q.q - p.q) % N) / N
        worst = max(worst, abs(inc - y0 * dx))
        if act_discrete(HeisIntN(0, 1, 0, N), p).q != p.q:
            gamma_moves += 1
    bound = abs(alpha.k(N)) / N
    # parallel section check: d/dx exp(2 pi i x y) - 2 pi i y exp(2 pi i x y) == 0
    fam = SectionFamily(0.0, 0.0, 1.0)
    psi = SectionGrid.from_family(fam, (0.0, 1.0, 0.0, 1.0), 1e-2)
    nab, _, _ = covariant_derivative(psi, 0, ConnectionSpec(AFFINE), analytic=True)
    factor_ok = float(np.max(np.abs(nab))) < 1e-12
    return {
        "N": N,
        "samples": samples,
        "dx": dx,
        "max_phase_error": worst,
        "bound": bound,
        "gamma_phase_changes": gamma_moves,
        "two_pi_factor_consistent": factor_ok,
        "passed": worst < bound and gamma_moves == 0 and factor_ok,
    }
