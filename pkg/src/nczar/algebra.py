"""Normal forms for the operator algebras of the two covers.

Affine monomials are ``X^i W^j Y^k Z^l F^f G^g E^e`` (``i, j >= 0``; ``k, l, e``
mod N).  Torus monomials are ``X^p V^q F^f G^g E^e`` with ``p`` any integer and
``V = Y`` (``q`` mod N) in the base algebra or ``V = W`` (``q`` mod N**2, with
``Y = W^N``) in the extended one.  ``E = G F G^-1 F^-1``.

Two independent routes produce normal forms:

* :meth:`Algebra.mul` multiplies normal forms using the closed form of the
  conjugation ``h D h^-1`` of a diagonal monomial ``D`` by ``h = F^f G^g E^e``;
* :meth:`Algebra.normalize` rewrites a word of single letters by swapping
  adjacent out-of-order letters until the word is sorted.

The test-suite checks that the two agree.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .scalars import AFFINE, TORUS, Scalar

AFFINE_ORDER = ("X", "W", "Y", "Z", "F", "G", "E")
GROUP = ("F", "G", "E")
_RANK_AFFINE = {n: i for i, n in enumerate(AFFINE_ORDER)}
_RANK_TORUS = {"X": 0, "W": 1, "Y": 1, "F": 4, "G": 5, "E": 6}

# letters accepted by name in words and expressions
LETTER_ALIASES = {
    "X": ("X", 1),
    "Xinv": ("X", -1),
    "W": ("W", 1),
    "Winv": ("W", -1),
    "Y": ("Y", 1),
    "Yinv": ("Y", -1),
    "Z": ("Z", 1),
    "Zinv": ("Z", -1),
    "F": ("F", 1),
    "Finv": ("F", -1),
    "G": ("G", 1),
    "Ginv": ("G", -1),
    "E": ("E", 1),
    "Einv": ("E", -1),
}


class AlgebraError(ValueError):
    pass


class OpElement:
    """Immutable sparse sum of normal-ordered monomials with Scalar coefficients."""

    __slots__ = ("alg", "terms", "_hash")

    def __init__(self, alg: "Algebra", terms: Mapping[tuple, Scalar] | None = None):
        self.alg = alg
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}
        self._hash = None

    def _same(self, other: "OpElement"):
        if not isinstance(other, OpElement):
            raise AlgebraError(f"cannot combine OpElement with {type(other).__name__}")
        if other.alg != self.alg:
            raise AlgebraError(f"algebra mismatch: {self.alg} vs {other.alg}")

    def _lift(self, other):
        if isinstance(other, OpElement):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return self.alg.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return OpElement(self.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return OpElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        if not isinstance(other, OpElement):
            return NotImplemented
        return self.alg.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        return self.alg.power(self, k)

    def scale(self, s) -> "OpElement":
        s = self.alg.coerce_scalar(s)
        return OpElement(self.alg, {m: s * c for m, c in self.terms.items()})

    def adjoint(self) -> "OpElement":
        return self.alg.adjoint(self)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, OpElement):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alg, frozenset(self.terms.items())))
        return self._hash

    def group_parts(self) -> set[tuple[int, int, int]]:
        return {m[-3:] for m in self.terms}

    def to_text(self) -> str:
        return self.alg.format(self)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"OpElement({self.alg.case}, N={self.alg.N}, {self.to_text()})"


class Algebra:
    """The algebra for one (case, N, extended) choice.

    ``extended`` adds the operator W (the C*-extension).  Instances compare
    equal when their parameters do.
    """

    def __init__(self, case: str, N: int, extended: bool = False):
        if case not in (AFFINE, TORUS):
            raise AlgebraError(f"unknown case {case!r}")
        if N < 1:
            raise AlgebraError(f"N must be positive, got {N}")
        self.case = case
        self.N = N
        self.extended = bool(extended)
        self._sigma_cache: dict = {}
        self._star_cache: dict = {}

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and (self.case, self.N, self.extended) == (other.case, other.N, other.extended)
        )

    def __hash__(self):
        return hash((self.case, self.N, self.extended))

    def __repr__(self):
        return f"Algebra({self.case!r}, N={self.N}, extended={self.extended})"

    # basic elements

    @property
    def vmod(self) -> int:
        """Modulus of the torus V exponent."""
        return self.N * self.N if self.extended else self.N

    def coerce_scalar(self, s) -> Scalar:
        if isinstance(s, Scalar):
            if s.flavor != self.case or s.N != self.N:
                raise AlgebraError("scalar belongs to a different algebra")
            return s
        return Scalar.from_rational(self.case, self.N, s)

    def one_monomial(self) -> tuple:
        return (0,) * (7 if self.case == AFFINE else 5)

    def zero(self) -> OpElement:
        return OpElement(self)

    def one(self) -> OpElement:
        return self.scalar(1)

    def scalar(self, s) -> OpElement:
        return OpElement(self, {self.one_monomial(): self.coerce_scalar(s)})

    def monomial(self, mono: Sequence[int], coeff=1) -> OpElement:
        return OpElement(self, {self._canon(tuple(mono)): self.coerce_scalar(coeff)})

    def _canon(self, mono: tuple) -> tuple:
        N = self.N
        if self.case == AFFINE:
            x, w, y, z, f, g, e = mono
            if x < 0 or w < 0:
                raise AlgebraError("affine X and W take nonnegative exponents")
            if w and not self.extended:
                raise AlgebraError("W is only available in the extended algebra")
            return (x, w, y % N, z % N, f, g, e % N)
        p, q, f, g, e = mono
        return (p, q % self.vmod, f, g, e % N)

    def gen(self, name: str) -> OpElement:
        """Generator (or inverse) by name, e.g. ``"F"``, ``"Ginv"``, ``"Xinv"``."""
        if name not in LETTER_ALIASES:
            raise AlgebraError(f"unknown generator {name!r}")
        letter, s = LETTER_ALIASES[name]
        self._check_letter(letter, s)
        return self.normalize([(letter, s)])

    def generator_names(self) -> list[str]:
        if self.case == AFFINE:
            names = ["X", "Y", "Z", "F", "Finv", "G", "Ginv", "E", "Einv"]
            if self.extended:
                names.insert(1, "W")
            return names
        names = ["X", "Xinv", "Y", "F", "Finv", "G", "Ginv", "E", "Einv"]
        if self.extended:
            names[3:3] = ["W", "Winv"]
        return names

    def _check_letter(self, letter: str, s: int):
        if self.case == AFFINE:
            if letter not in _RANK_AFFINE:
                raise AlgebraError(f"generator {letter} is not in the affine algebra")
            if letter == "W" and not self.extended:
                raise AlgebraError("W is only available in the extended algebra (use --extended)")
            if letter in ("X", "W") and s < 0:
                raise AlgebraError(f"{letter} is not invertible in the affine algebra")
        else:
            if letter not in _RANK_TORUS:
                raise AlgebraError(f"generator {letter} is not in the torus algebra")
            if letter == "W" and not self.extended:
                raise AlgebraError("W is only available in the extended algebra (use --extended)")

    # closed-form multiplication

    def _mul_diag(self, d1: tuple, d2: tuple) -> tuple:
        N = self.N
        if self.case == AFFINE:
            return (d1[0] + d2[0], d1[1] + d2[1], (d1[2] + d2[2]) % N, (d1[3] + d2[3]) % N)
        return (d1[0] + d2[0], (d1[1] + d2[1]) % self.vmod)

    def _mul_group(self, h1: tuple, h2: tuple) -> tuple:
        f, g, e = h1
        f2, g2, e2 = h2
        return (f + f2, g + g2, (e + e2 + g * f2) % self.N)

    def _sigma(self, h: tuple, d: tuple) -> dict:
        """``h D h^-1`` for group part ``h`` and diagonal monomial ``D``."""
        key = (h, d)
        hit = self._sigma_cache.get(key)
        if hit is not None:
            return hit
        f, g, e = h
        N = self.N
        case = self.case
        out: dict[tuple, Scalar] = {}
        if case == AFFINE:
            i, j, k, l = d
            a = Scalar.const_a(N)
            b = Scalar.const_b(N)
            cx = a * f + b * g
            cw = a * f
            root = Scalar.eps(AFFINE, N, f * k + (f * g - e) * l)
            xs = _binomial_terms(cx, i)
            ws = _binomial_terms(cw, j)
            ydeg = (k + g * l) % N
            for i2, sx in xs:
                for j2, sw in ws:
                    out[(i2, j2, ydeg, l % N)] = root * sx * sw
        elif not self.extended:
            p, r = d
            s = (
                Scalar.const_alpha(N, f * p)
                * Scalar.const_beta(N, g * p)
                * Scalar.eps(TORUS, N, f * (g * p + r) - e * p)
            )
            out[(p, (g * p + r) % N)] = s
        else:
            p, q = d
            M = N * N
            q2 = (g * N * p + q * (1 + g * N)) % M
            s = (
                Scalar.const_alpha(N, f * p)
                * Scalar.const_beta(N, g * p)
                * Scalar.delta(N, (f * q2 - N * e * (p + q)) % M)
            )
            out[(p, q2)] = s
        self._sigma_cache[key] = out
        return out

    def mul(self, A: OpElement, B: OpElement) -> OpElement:
        A._same(B)
        split = 4 if self.case == AFFINE else 2
        terms: dict[tuple, Scalar] = {}
        for m1, c1 in A.terms.items():
            d1, h1 = m1[:split], m1[split:]
            for m2, c2 in B.terms.items():
                d2, h2 = m2[:split], m2[split:]
                h = self._mul_group(h1, h2)
                c12 = c1 * c2
                for d, s in self._sigma(h1, d2).items():
                    mono = self._mul_diag(d1, d) + h
                    val = c12 * s
                    terms[mono] = terms[mono] + val if mono in terms else val
        return OpElement(self, terms)

    def power(self, A: OpElement, k: int) -> OpElement:
        if k < 0:
            return self.power(self.inverse(A), -k)
        result = self.one()
        base = A
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self, A: OpElement) -> OpElement:
        """Inverse of a single invertible monomial times an invertible scalar."""
        if len(A.terms) != 1:
            raise AlgebraError("only single monomials can be inverted")
        (mono, c), = A.terms.items()
        if self.case == AFFINE and (mono[0] or mono[1]):
            raise AlgebraError("affine X and W are not invertible")
        inv_c = c.inverse_monomial()
        word = [(n, -s) for n, s in reversed(self.monomial_word(mono))]
        return self.normalize(word).scale(inv_c)

    # rewriting route

    def _rank(self, letter: str) -> int:
        return (_RANK_AFFINE if self.case == AFFINE else _RANK_TORUS)[letter]

    def _letter_sigma(self, L: tuple, D: tuple) -> list[tuple[Scalar, list]]:
        """``L D L^-1`` for a single group letter ``L`` and diagonal letter ``D``."""
        (gname, s), (dname, t) = L, D
        N = self.N
        one = Scalar.one(self.case, N)
        if self.case == AFFINE:
            if dname == "X":
                if gname == "F":
                    return [(one, [D]), (Scalar.const_a(N) * s, [])]
                if gname == "G":
                    return [(one, [D]), (Scalar.const_b(N) * s, [])]
                return [(one, [D])]
            if dname == "W":
                if gname == "F":
                    return [(one, [D]), (Scalar.const_a(N) * s, [])]
                return [(one, [D])]
            if dname == "Y":
                if gname == "F":
                    return [(Scalar.eps(AFFINE, N, s * t), [D])]
                return [(one, [D])]
            if gname == "G":
                return [(one, [("Y", s * t), D])]
            if gname == "E":
                return [(Scalar.eps(AFFINE, N, -s * t), [D])]
            return [(one, [D])]
        if dname == "X":
            if gname == "F":
                return [(Scalar.const_alpha(N, s * t), [D])]
            if gname == "G":
                twist = ("W", N * s * t) if self.extended else ("Y", s * t)
                return [(Scalar.const_beta(N, s * t), [twist, D])]
            return [(Scalar.eps(TORUS, N, -s * t), [D])]
        if dname == "Y":
            if gname == "F":
                return [(Scalar.eps(TORUS, N, s * t), [D])]
            return [(one, [D])]
        # W
        if gname == "F":
            return [(Scalar.delta(N, s * t), [D])]
        if gname == "G":
            return [(one, [("W", t * (1 + s * N))])]
        return [(Scalar.eps(TORUS, N, -s * t), [D])]

    def _swap(self, L1: tuple, L2: tuple) -> list[tuple[Scalar, list]]:
        """Rewrite the out-of-order pair ``L1 L2``."""
        g1, g2 = L1[0] in GROUP, L2[0] in GROUP
        one = Scalar.one(self.case, self.N)
        if not g1:
            return [(one, [L2, L1])]
        if not g2:
            return [(s, letters + [L1]) for s, letters in self._letter_sigma(L1, L2)]
        if L1[0] == "G" and L2[0] == "F":
            # G^s F^t = F^t G^s E^(st), E central in <F, G>
            return [(one, [L2, L1, ("E", L1[1] * L2[1])])]
        return [(one, [L2, L1])]

    def _expand_letters(self, word: Iterable) -> tuple[Scalar, list]:
        coeff = Scalar.one(self.case, self.N)
        letters: list[tuple[str, int]] = []
        for item in word:
            if isinstance(item, Scalar):
                coeff = coeff * self.coerce_scalar(item)
                continue
            if isinstance(item, (int, Fraction)):
                coeff = coeff * item
                continue
            if isinstance(item, str):
                if item not in LETTER_ALIASES:
                    raise AlgebraError(f"unknown generator {item!r}")
                name, k = LETTER_ALIASES[item]
            else:
                name, k = item
                if name in LETTER_ALIASES and name not in _RANK_AFFINE:
                    name, sign = LETTER_ALIASES[name]
                    k *= sign
            self._check_letter(name, 1 if k >= 0 else -1)
            if self.case == TORUS and self.extended and name == "Y":
                name, k = "W", self.N * k
            unit = 1 if k > 0 else -1
            letters.extend([(name, unit)] * abs(k))
        return coeff, letters

    def _collapse(self, letters: Sequence[tuple[str, int]]) -> tuple:
        ex = {n: 0 for n in ("X", "W", "Y", "Z", "F", "G", "E")}
        for n, k in letters:
            ex[n] += k
        if self.case == AFFINE:
            return self._canon((ex["X"], ex["W"], ex["Y"], ex["Z"], ex["F"], ex["G"], ex["E"]))
        v = ex["W"] if self.extended else ex["Y"]
        return self._canon((ex["X"], v, ex["F"], ex["G"], ex["E"]))

    def normalize(self, word: Iterable, coeff=1) -> OpElement:
        """Normal form of a word by adjacent-swap rewriting.

        ``word`` is a sequence of letters (names like ``"Finv"`` or
        ``(name, exponent)`` pairs) optionally interleaved with scalar
        prefactors.
        """
        c0, letters = self._expand_letters(word)
        c0 = c0 * self.coerce_scalar(coeff)
        return self._rewrite({tuple(letters): c0})

    def normalize_words(self, words: Iterable[tuple[Scalar, Iterable]]) -> OpElement:
        pending: dict[tuple, Scalar] = {}
        for coeff, word in words:
            c0, letters = self._expand_letters(word)
            key = tuple(letters)
            val = c0 * self.coerce_scalar(coeff)
            pending[key] = pending[key] + val if key in pending else val
        return self._rewrite(pending)

    def _period(self, name: str) -> int:
        if name in ("Y", "Z", "E"):
            return self.N
        if name == "W" and self.case == TORUS:
            return self.N * self.N
        return 0

    def _tidy(self, letters: Sequence[tuple[str, int]]) -> tuple:
        """Merge runs of equal letters, reducing periodic ones to the shortest power.

        Without this a W passing G letters would multiply its length by N+1
        at every crossing.
        """
        out: list[tuple[str, int]] = []
        i, n = 0, len(letters)
        while i < n:
            name = letters[i][0]
            net = 0
            while i < n and letters[i][0] == name:
                net += letters[i][1]
                i += 1
            M = self._period(name)
            if M:
                net %= M
                if 2 * net > M:
                    net -= M
            if net:
                out.extend([(name, 1 if net > 0 else -1)] * abs(net))
        return tuple(out)

    def _rewrite(self, pending: dict[tuple, Scalar]) -> OpElement:
        rank = _RANK_AFFINE if self.case == AFFINE else _RANK_TORUS
        done: dict[tuple, Scalar] = {}
        pending = self._merge_pending(pending)
        while pending:
            word, c = pending.popitem()
            if c.is_zero():
                continue
            pos = next(
                (i for i in range(len(word) - 1) if rank[word[i][0]] > rank[word[i + 1][0]]),
                None,
            )
            if pos is None:
                mono = self._collapse(word)
                done[mono] = done[mono] + c if mono in done else c
                continue
            head, tail = word[:pos], word[pos + 2 :]
            for s, mid in self._swap(word[pos], word[pos + 1]):
                _, mid_letters = self._expand_letters(mid)
                new = self._tidy(head + tuple(mid_letters) + tail)
                val = c * s
                pending[new] = pending[new] + val if new in pending else val
        return OpElement(self, done)

    def _merge_pending(self, pending: dict) -> dict:
        out: dict[tuple, Scalar] = {}
        for word, c in pending.items():
            key = self._tidy(word)
            out[key] = out[key] + c if key in out else c
        return out

    def monomial_word(self, mono: tuple) -> list[tuple[str, int]]:
        """Letters whose product is the monomial (exponents as signed counts)."""
        if self.case == AFFINE:
            names = AFFINE_ORDER
        else:
            names = ("X", "W" if self.extended else "Y", "F", "G", "E")
        return [(n, k) for n, k in zip(names, mono) if k]

    def element_words(self, A: OpElement) -> list[tuple[Scalar, list]]:
        return [(c, self.monomial_word(m)) for m, c in A.terms.items()]

    def rewrite_product(self, A: OpElement, B: OpElement) -> OpElement:
        """``A * B`` computed by the rewriting route only."""
        A._same(B)
        words = []
        for m1, c1 in A.terms.items():
            for m2, c2 in B.terms.items():
                words.append((c1 * c2, self.monomial_word(m1) + self.monomial_word(m2)))
        return self.normalize_words(words)

    # involution

    def _star_letter(self, name: str) -> OpElement:
        hit = self._star_cache.get(name)
        if hit is not None:
            return hit
        if name in ("F", "G"):
            res = self.normalize([(name, -1)])
        elif name == "E":
            res = self.normalize([("E", -1)])
        elif self.case == AFFINE:
            if name in ("Y", "Z"):
                res = self.normalize([(name, -1)])
            elif name == "W":
                res = -self.gen("W")
            else:
                if not self.extended:
                    raise AlgebraError("X* = X - 2W needs W: use the extended algebra")
                res = self.gen("X") - self.gen("W").scale(2)
        else:
            if name == "Y":
                res = self.normalize([("Y", -1)])
            elif name == "W":
                res = self.normalize([("W", -1)])
            elif name == "X":
                if not self.extended:
                    raise AlgebraError("X* = X W^-2 needs W: use the extended algebra")
                res = self.normalize([("X", 1), ("W", -2)])
            else:  # X^-1
                if not self.extended:
                    raise AlgebraError("X* = X W^-2 needs W: use the extended algebra")
                res = self.normalize([("W", 2), ("X", -1)])
        self._star_cache[name] = res
        return res

    def adjoint(self, A: OpElement) -> OpElement:
        """Conjugate-linear antiautomorphism extending the generator adjoints."""
        total = self.zero()
        for mono, c in A.terms.items():
            acc = self.scalar(c.conj())
            for name, k in reversed(self.monomial_word(mono)):
                if name == "X" and k < 0:
                    name, k = "Xinv", -k
                acc = acc * self.power(self._star_letter(name), k)
            total = total + acc
        return total

    # conversions and text

    def to_extended(self, A: OpElement) -> OpElement:
        """Torus: rewrite a base-algebra element with ``Y = W^N``."""
        if self.case != TORUS or self.extended:
            raise AlgebraError("conversion starts from the torus base algebra")
        ext = Algebra(TORUS, self.N, extended=True)
        return OpElement(ext, {(p, r * self.N, f, g, e): c for (p, r, f, g, e), c in A.terms.items()})

    def from_extended(self, A: OpElement) -> OpElement:
        if self.case != TORUS or self.extended:
            raise AlgebraError("conversion targets the torus base algebra")
        terms = {}
        for (p, q, f, g, e), c in A.terms.items():
            if q % self.N:
                raise AlgebraError("element involves W^k with N not dividing k")
            terms[(p, q // self.N, f, g, e)] = c
        return OpElement(self, terms)

    def format_monomial(self, mono: tuple) -> str:
        parts = []
        for name, k in self.monomial_word(mono):
            parts.append(name if k == 1 else f"{name}^{k}")
        return "*".join(parts) if parts else "1"

    def format(self, A: OpElement) -> str:
        if not A.terms:
            return "0"
        out = []
        for mono in sorted(A.terms, reverse=True):
            c = A.terms[mono]
            mtext = self.format_monomial(mono)
            ctext = c.to_text()
            neg = False
            if len(c.terms) == 1 and ctext.startswith("-") and " " not in ctext:
                neg, ctext = True, ctext[1:]
            elif " " in ctext:
                ctext = f"({ctext})"
            if mtext == "1":
                body = ctext
            elif ctext == "1":
                body = mtext
            else:
                body = f"{ctext}*{mtext}"
            out.append((neg, body))
        text = ("-" if out[0][0] else "") + out[0][1]
        for neg, body in out[1:]:
            text += (" - " if neg else " + ") + body
        return text

    # relations

    def relations(self) -> list[tuple[str, str, str]]:
        """Defining relations as ``(name, lhs, rhs)`` expression strings."""
        N = self.N
        if self.case == AFFINE:
            rels = [
                ("XY", "X*Y", "Y*X"),
                ("XZ", "X*Z", "Z*X"),
                ("YZ", "Y*Z", "Z*Y"),
                ("Y^N", f"Y^{N}", "1"),
                ("Z^N", f"Z^{N}", "1"),
                ("FX", "F*X - X*F", "a*F"),
                ("GX", "G*X - X*G", "b*G"),
                ("FY", "F*Y", "eps*Y*F"),
                ("YG", "Y*G", "G*Y"),
                ("ZF", "Z*F", "F*Z"),
                ("GZ", "G*Z", "Y*Z*G"),
                ("FE", "F*E", "E*F"),
                ("GE", "G*E", "E*G"),
                ("E^N", f"E^{N}", "1"),
            ]
            if self.extended:
                rels += [
                    ("WX", "W*X", "X*W"),
                    ("WY", "W*Y", "Y*W"),
                    ("WZ", "W*Z", "Z*W"),
                    ("FW", "F*W", "W*F + a*F"),
                    ("GW", "G*W", "W*G"),
                ]
            return rels
        rels = [
            ("XY", "X*Y", "Y*X"),
            ("Y^N", f"Y^{N}", "1"),
            ("XXinv", "X*Xinv", "1"),
            ("XF", "X*F", "alpha^-1*F*X"),
            ("XG", "X*G", "beta^-1*Y^-1*G*X"),
            ("YF", "Y*F", "eps^-1*F*Y"),
            ("YG", "Y*G", "G*Y"),
            ("FE", "F*E", "E*F"),
            ("GE", "G*E", "E*G"),
            ("E^N", f"E^{N}", "1"),
        ]
        if self.extended:
            rels += [
                ("Y=W^N", "Y", f"W^{N}"),
                ("W^N2", f"W^{N * N}", "1"),
                ("XW", "X*W", "W*X"),
                ("FW", "F*W", "delta*W*F"),
                ("GW", "G*W", "Y*W*G"),
            ]
        return rels

    def check_relations(self) -> dict:
        """Normalize every ``lhs - rhs`` and report which reduce to exact zero."""
        from .expr import parse_element

        rows = []
        for name, lhs, rhs in self.relations():
            diff = parse_element(lhs, self) - parse_element(rhs, self)
            rows.append(
                {"name": name, "relation": f"{lhs} = {rhs}", "passed": diff.is_zero(),
                 "residual": diff.to_text()}
            )
        return {
            "case": self.case,
            "N": self.N,
            "extended": self.extended,
            "relations": rows,
            "passed": all(r["passed"] for r in rows),
        }


def _binomial_terms(c: Scalar, n: int) -> list[tuple[int, Scalar]]:
    """``(X + c)^n`` as ``[(k, C(n,k) c^(n-k))]``."""
    pw = [Scalar.one(c.flavor, c.N)]
    for _ in range(n):
        pw.append(pw[-1] * c)
    return [(k, pw[n - k] * comb(n, k)) for k in range(n + 1)]


def check_relations(case: str, N: int, extended: bool = False) -> dict:
    return Algebra(case, N, extended).check_relations()


def normalize(word: Iterable, case: str, N: int, extended: bool = False) -> OpElement:
    return Algebra(case, N, extended).normalize(word)


def mul(A: OpElement, B: OpElement) -> OpElement:
    return A.alg.mul(A, B)


def adjoint(A: OpElement) -> OpElement:
    return A.alg.adjoint(A)
