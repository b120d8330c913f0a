"""Exact coefficients: cyclotomic numbers and formal monomials in structure constants.

A :class:`Cyclotomic` of order ``M`` is a residue modulo the ``M``-th cyclotomic
polynomial, stored on the power basis ``1, x, ..., x^(phi(M)-1)`` with rational
coefficients.  A :class:`Scalar` is a finite sum ``sum c_ij * u^i * v^j`` where
the ``c_ij`` are cyclotomic and ``(u, v)`` are the formal structure constants:
``(a, b)`` for the affine case (nonnegative exponents, root of unity ``eps`` of
order ``N``) and ``(alpha, beta)`` for the torus case (integer exponents, root
of unity ``delta`` of order ``N**2`` with ``eps = delta**N``).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

AFFINE = "affine"
TORUS = "torus"
FLAVORS = (AFFINE, TORUS)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; coefficients low -> high
    num = list(num)
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, d in enumerate(den):
                num[i - dd + j] -= c * d
    rem = num[:dd] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the ``M``-th cyclotomic polynomial."""
    if M < 1:
        raise ValueError(f"cyclotomic order must be positive, got {M}")
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


def euler_phi(M: int) -> int:
    return len(cyclotomic_polynomial(M)) - 1


def _reduce(coeffs: Iterable, M: int) -> tuple:
    """Remainder of a (low->high) coefficient list modulo Phi_M."""
    phi = cyclotomic_polynomial(M)
    deg = len(phi) - 1
    work = list(coeffs)
    # reduce x^M -> 1 first; cheap and keeps the long-division short
    if len(work) > M:
        folded = [0] * M
        for i, c in enumerate(work):
            if c:
                folded[i % M] += c
        work = folded
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            work[i] = 0
            for j in range(deg):
                if phi[j]:
                    work[i - deg + j] -= c * phi[j]
    out = work[:deg] + [0] * (deg - len(work))
    return tuple(_norm(c) for c in out)


@lru_cache(maxsize=1 << 16)
def _mul_coeffs(M: int, a: tuple, b: tuple) -> tuple:
    if a > b:
        a, b = b, a  # commutative; halve the cache
    nz_a = [(i, x) for i, x in enumerate(a) if x]
    nz_b = [(j, y) for j, y in enumerate(b) if y]
    if not nz_a or not nz_b:
        return (0,) * len(a)
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in nz_a:
        for j, y in nz_b:
            prod[i + j] += x * y
    return _reduce(prod, M)


class Cyclotomic:
    """Element of Q(zeta_M), canonical residue modulo Phi_M."""

    __slots__ = ("M", "coeffs", "_hash")

    def __init__(self, M: int, coeffs: Iterable = (), *, reduced: bool = False):
        if M < 1:
            raise ValueError(f"cyclotomic order must be positive, got {M}")
        self.M = M
        if reduced:
            self.coeffs = tuple(coeffs)
        else:
            self.coeffs = _reduce(
                [c if isinstance(c, (int, Fraction)) else Fraction(c) for c in coeffs], M
            )
        self._hash = None

    @classmethod
    def zero(cls, M: int) -> "Cyclotomic":
        return cls(M, (0,) * euler_phi(M), reduced=True)

    @classmethod
    def rational(cls, M: int, q) -> "Cyclotomic":
        return cls(M, [q])

    @classmethod
    def root_power(cls, M: int, k: int) -> "Cyclotomic":
        return _root_power(M, k % M)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.M == other.M and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.M, self.coeffs))
        return self._hash

    def _check(self, other: "Cyclotomic"):
        if other.M != self.M:
            raise ValueError(f"cyclotomic order mismatch: {self.M} vs {other.M}")

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check(other)
        return Cyclotomic(
            self.M, tuple(_norm(x + y) for x, y in zip(self.coeffs, other.coeffs)), reduced=True
        )

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check(other)
        return Cyclotomic(
            self.M, tuple(_norm(x - y) for x, y in zip(self.coeffs, other.coeffs)), reduced=True
        )

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.M, tuple(-x for x in self.coeffs), reduced=True)

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check(other)
        return Cyclotomic(self.M, _mul_coeffs(self.M, self.coeffs, other.coeffs), reduced=True)

    def scale(self, q) -> "Cyclotomic":
        return Cyclotomic(self.M, tuple(_norm(q * x) for x in self.coeffs), reduced=True)

    def conj(self) -> "Cyclotomic":
        """Complex conjugation: zeta -> zeta^-1."""
        raw = [0] * self.M
        for i, c in enumerate(self.coeffs):
            if c:
                raw[(-i) % self.M] += c
        return Cyclotomic(self.M, raw)

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            raise ValueError("negative powers of general cyclotomic numbers are not supported")
        result = Cyclotomic.rational(self.M, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self) -> complex:
        """Value at the primitive root exp(2*pi*i/M)."""
        w = _root_values(self.M)
        return complex(sum(complex(float(c)) * w[i] for i, c in enumerate(self.coeffs) if c))

    def as_root_power(self) -> int | None:
        """Return ``k`` if this equals ``zeta^k`` exactly, else ``None``."""
        for k in range(self.M):
            if _root_power(self.M, k) == self:
                return k
        return None

    def __repr__(self):
        return f"Cyclotomic({self.M}, {list(self.coeffs)})"


@lru_cache(maxsize=None)
def _root_power(M: int, k: int) -> Cyclotomic:
    raw = [0] * (k + 1)
    raw[k] = 1
    return Cyclotomic(M, raw)


@lru_cache(maxsize=None)
def _root_values(M: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / M) for k in range(M))


def cyc_reduce(poly: Iterable, M: int) -> Cyclotomic:
    """Reduce a raw polynomial in ``x`` (coefficients low to high) modulo Phi_M."""
    return Cyclotomic(M, poly)


class Scalar:
    """Exact coefficient: sum of cyclotomic multiples of structure-constant monomials.

    ``terms`` maps exponent pairs ``(i, j)`` to nonzero :class:`Cyclotomic`
    values.  Instances are immutable and hashable.
    """

    __slots__ = ("flavor", "N", "terms", "_hash")

    def __init__(self, flavor: str, N: int, terms: Mapping[tuple[int, int], Cyclotomic] | None = None):
        if flavor not in FLAVORS:
            raise ValueError(f"unknown scalar flavor {flavor!r}")
        if N < 1:
            raise ValueError(f"N must be positive, got {N}")
        self.flavor = flavor
        self.N = N
        clean = {}
        for key, c in (terms or {}).items():
            if flavor == AFFINE and (key[0] < 0 or key[1] < 0):
                raise ValueError("affine structure constants take nonnegative exponents")
            if not c.is_zero():
                clean[key] = c
        self.terms = clean
        self._hash = None

    @property
    def order(self) -> int:
        return cyclotomic_order(self.flavor, self.N)

    # constructors

    @classmethod
    def zero(cls, flavor: str, N: int) -> "Scalar":
        return cls(flavor, N)

    @classmethod
    def from_rational(cls, flavor: str, N: int, q) -> "Scalar":
        M = cyclotomic_order(flavor, N)
        return cls(flavor, N, {(0, 0): Cyclotomic.rational(M, q)})

    @classmethod
    def one(cls, flavor: str, N: int) -> "Scalar":
        return cls.from_rational(flavor, N, 1)

    @classmethod
    def root(cls, flavor: str, N: int, k: int) -> "Scalar":
        """``zeta^k`` for the primitive root of order ``N`` (affine) or ``N**2`` (torus)."""
        M = cyclotomic_order(flavor, N)
        return cls(flavor, N, {(0, 0): Cyclotomic.root_power(M, k)})

    @classmethod
    def eps(cls, flavor: str, N: int, k: int = 1) -> "Scalar":
        step = 1 if flavor == AFFINE else N
        return cls.root(flavor, N, step * k)

    @classmethod
    def delta(cls, N: int, k: int = 1) -> "Scalar":
        return cls.root(TORUS, N, k)

    @classmethod
    def imag_unit(cls, flavor: str, N: int) -> "Scalar":
        M = cyclotomic_order(flavor, N)
        if M % 4:
            raise ValueError(f"i is not in Q(zeta_{M}); choose N with 4 | {M}")
        return cls.root(flavor, N, M // 4)

    @classmethod
    def monomial(cls, flavor: str, N: int, i: int = 0, j: int = 0, coeff: Cyclotomic | None = None) -> "Scalar":
        M = cyclotomic_order(flavor, N)
        return cls(flavor, N, {(i, j): coeff if coeff is not None else Cyclotomic.rational(M, 1)})

    @classmethod
    def const_a(cls, N: int, k: int = 1) -> "Scalar":
        return cls.monomial(AFFINE, N, k, 0)

    @classmethod
    def const_b(cls, N: int, k: int = 1) -> "Scalar":
        return cls.monomial(AFFINE, N, 0, k)

    @classmethod
    def const_alpha(cls, N: int, k: int = 1) -> "Scalar":
        return cls.monomial(TORUS, N, k, 0)

    @classmethod
    def const_beta(cls, N: int, k: int = 1) -> "Scalar":
        return cls.monomial(TORUS, N, 0, k)

    # arithmetic

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.flavor != self.flavor or other.N != self.N:
                raise ValueError(
                    f"scalar mismatch: {self.flavor}/N={self.N} vs {other.flavor}/N={other.N}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_rational(self.flavor, self.N, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return Scalar(self.flavor, self.N, terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.flavor, self.N, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[tuple[int, int], Cyclotomic] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                c = c1 * c2
                terms[key] = terms[key] + c if key in terms else c
        return Scalar(self.flavor, self.N, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            inv = self.inverse_monomial()
            return inv ** (-k)
        result = Scalar.one(self.flavor, self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse_monomial(self) -> "Scalar":
        """Inverse of ``zeta^k * u^i * v^j`` (torus only for nonzero ``i, j``)."""
        if len(self.terms) != 1:
            raise ValueError("only single-term scalars are invertible here")
        (i, j), c = next(iter(self.terms.items()))
        k = c.as_root_power()
        if k is None:
            raise ValueError("coefficient is not a root of unity")
        if self.flavor == AFFINE and (i or j):
            raise ValueError("affine structure constants are not invertible")
        return Scalar(self.flavor, self.N, {(-i, -j): Cyclotomic.root_power(self.order, -k)})

    def conj(self) -> "Scalar":
        """Complex conjugate under a in iR, b in R (affine) or alpha in delta*R+, beta in R+ (torus)."""
        M = self.order
        terms: dict[tuple[int, int], Cyclotomic] = {}
        for (i, j), c in self.terms.items():
            cc = c.conj()
            if self.flavor == AFFINE:
                if i % 2:
                    cc = -cc
            elif i:
                cc = cc * Cyclotomic.root_power(M, -2 * i)
            terms[(i, j)] = cc
        return Scalar(self.flavor, self.N, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_rational(self.flavor, self.N, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.flavor == other.flavor and self.N == other.N and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.flavor, self.N, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, a: complex, b: complex) -> complex:
        """Numeric value with the structure constants set to ``a, b``.

        For the torus flavor ``a, b`` are the values of ``alpha, beta``.
        """
        total = 0j
        for (i, j), c in self.terms.items():
            total += c.evaluate() * (a**i) * (b**j)
        return total

    def as_rational(self):
        """Rational value if this is a plain rational, else ``None``."""
        if not self.terms:
            return 0
        if set(self.terms) != {(0, 0)}:
            return None
        co = self.terms[(0, 0)].coeffs
        if any(co[1:]):
            return None
        return co[0]

    def to_text(self) -> str:
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({self.flavor}, N={self.N}, {self.to_text()})"


def cyclotomic_order(flavor: str, N: int) -> int:
    return N if flavor == AFFINE else N * N


def scalar_add(s1: Scalar, s2: Scalar) -> Scalar:
    return s1 + s2


def scalar_mul(s1: Scalar, s2: Scalar) -> Scalar:
    return s1 * s2


def scalar_eval(s: Scalar, a_val: complex, b_val: complex) -> complex:
    return s.evaluate(a_val, b_val)


def scalar_is_zero(s: Scalar) -> bool:
    return s.is_zero()


def binomial_power(base: Scalar, k: int) -> list[Scalar]:
    """Coefficients ``C(k, i) * base^(k-i)`` for ``i = 0..k``."""
    powers = [Scalar.one(base.flavor, base.N)]
    for _ in range(k):
        powers.append(powers[-1] * base)
    return [powers[k - i] * comb(k, i) for i in range(k + 1)]


# text form


def _fmt_rat(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _root_name(flavor: str, N: int, k: int) -> str:
    if flavor == AFFINE:
        return "eps" if k == 1 else f"eps^{k}"
    if k % N == 0:
        e = k // N
        return "eps" if e == 1 else f"eps^{e}"
    return "delta" if k == 1 else f"delta^{k}"


def _fmt_cyc(flavor: str, N: int, c: Cyclotomic) -> list[tuple[int, str]]:
    parts = []
    for k, q in enumerate(c.coeffs):
        if not q:
            continue
        sign = -1 if q < 0 else 1
        mag = abs(q)
        if k == 0:
            body = _fmt_rat(mag)
        elif mag == 1:
            body = _root_name(flavor, N, k)
        else:
            body = f"{_fmt_rat(mag)}*{_root_name(flavor, N, k)}"
        parts.append((sign, body))
    return parts


def format_scalar(s: Scalar) -> str:
    """Canonical text: a sum of ``rational*root*const`` terms, parseable by the CLI."""
    if not s.terms:
        return "0"
    u, v = ("a", "b") if s.flavor == AFFINE else ("alpha", "beta")
    pieces: list[tuple[int, str]] = []
    for (i, j) in sorted(s.terms):
        consts = []
        for name, e in ((u, i), (v, j)):
            if e == 1:
                consts.append(name)
            elif e:
                consts.append(f"{name}^{e}")
        cparts = _fmt_cyc(s.flavor, s.N, s.terms[(i, j)])
        if consts and len(cparts) > 1:
            inner = _join(cparts)
            pieces.append((1, f"({inner})*" + "*".join(consts)))
            continue
        for sign, body in cparts:
            if consts:
                body = "*".join(consts) if body == "1" else body + "*" + "*".join(consts)
            pieces.append((sign, body))
    return _join(pieces)


def _join(parts: list[tuple[int, str]]) -> str:
    out = ""
    for n, (sign, body) in enumerate(parts):
        if n == 0:
            out = ("-" if sign < 0 else "") + body
        else:
            out += (" - " if sign < 0 else " + ") + body
    return out
