"""Parser, printer and evaluator for algebra expressions.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom postfix*
    postfix:= '^' integer | '†'
    atom   := NUMBER | NUMBER '/' NUMBER | IDENT | 'adj' '(' expr ')' | '(' expr ')'

Identifiers are generators (``X Xinv Y Z W F Finv G Ginv E Einv``) or scalar
constants (``a b alpha beta eps delta i``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .algebra import LETTER_ALIASES, Algebra, AlgebraError, OpElement
from .scalars import AFFINE, TORUS, Scalar

SCALAR_NAMES = {
    AFFINE: ("a", "b", "eps", "i"),
    TORUS: ("alpha", "beta", "eps", "delta", "i"),
}
DAGGER = "†"


class ExprError(ValueError):
    """Syntax or evaluation error carrying a 1-based line/column."""

    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        super().__init__(f"{msg} at line {line}, column {col}" if line else msg)


@dataclass(frozen=True)
class Pos:
    line: int
    col: int


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: Pos | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Sym:
    name: str
    pos: Pos | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int
    pos: Pos | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Adj:
    child: "Node"
    pos: Pos | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Mul:
    factors: tuple
    pos: Pos | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Add:
    terms: tuple  # of (sign, node)
    pos: Pos | None = field(default=None, compare=False)


Node = Union[Num, Sym, Pow, Adj, Mul, Add]


# lexer


def _tokens(text: str):
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        start = Pos(line, col)
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            yield ("INT", int(text[i:j]), start)
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            yield ("IDENT", text[i:j], start)
            col += j - i
            i = j
            continue
        if ch in "+-*^()/" or ch == DAGGER:
            yield (ch, ch, start)
            col, i = col + 1, i + 1
            continue
        raise ExprError(f"unexpected character {ch!r}", line, col)
    yield ("EOF", None, Pos(line, col))


class _Parser:
    def __init__(self, text: str):
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "integer" if kind == "INT" else repr(kind)
            got = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ExprError(f"expected {want}, found {got}", tok[2].line, tok[2].col)
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "EOF":
            raise ExprError(f"unexpected {tok[1]!r}", tok[2].line, tok[2].col)
        return node

    def expr(self) -> Node:
        pos = self.peek()[2]
        terms = []
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        terms.append((sign, self.term()))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Add(tuple(terms), pos)

    def term(self) -> Node:
        pos = self.peek()[2]
        factors = [self.factor()]
        while self.peek()[0] == "*":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Mul(tuple(factors), pos)

    def factor(self) -> Node:
        node = self.atom()
        while self.peek()[0] in ("^", DAGGER):
            tok = self.take()
            if tok[0] == DAGGER:
                node = Adj(node, tok[2])
                continue
            neg = False
            paren = False
            if self.peek()[0] == "(":
                self.take()
                paren = True
            if self.peek()[0] == "-":
                self.take()
                neg = True
            k = self.take("INT")[1]
            if paren:
                self.take(")")
            node = Pow(node, -k if neg else k, tok[2])
        return node

    def atom(self) -> Node:
        tok = self.peek()
        kind, val, pos = tok
        if kind == "INT":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.take("INT")[1]
                if den == 0:
                    raise ExprError("zero denominator", pos.line, pos.col)
                return Num(Fraction(val, den), pos)
            return Num(Fraction(val), pos)
        if kind == "IDENT":
            self.take()
            if val == "adj" and self.peek()[0] == "(":
                self.take("(")
                child = self.expr()
                self.take(")")
                return Adj(child, pos)
            return Sym(val, pos)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        got = "end of input" if kind == "EOF" else repr(val)
        raise ExprError(f"expected a generator, scalar or '(', found {got}", pos.line, pos.col)


def parse(text: str) -> Node:
    """Parse ``text`` into an expression tree."""
    return _Parser(text).parse()


# printer


def _fmt_num(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_text(node: Node) -> str:
    """Canonical text that parses back to an equal tree."""
    if isinstance(node, Num):
        return _fmt_num(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Adj):
        return f"adj({to_text(node.child)})"
    if isinstance(node, Pow):
        base = to_text(node.base)
        simple = isinstance(node.base, Sym) or (
            isinstance(node.base, Num) and node.base.value.denominator == 1
        ) or isinstance(node.base, Adj)
        if not simple:
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, Mul):
        parts = []
        for f in node.factors:
            t = to_text(f)
            parts.append(f"({t})" if isinstance(f, (Add, Mul)) else t)
        return "*".join(parts)
    parts = []
    for k, (sign, t) in enumerate(node.terms):
        body = to_text(t)
        if isinstance(t, Add):
            body = f"({body})"
        if k == 0:
            parts.append(("-" if sign < 0 else "") + body)
        else:
            parts.append((" - " if sign < 0 else " + ") + body)
    return "".join(parts)


# evaluation


def _err(msg: str, node: Node) -> ExprError:
    p = getattr(node, "pos", None)
    return ExprError(msg, p.line, p.col) if p else ExprError(msg)


def _scalar_symbol(name: str, alg: Algebra) -> Scalar | None:
    N = alg.N
    if name not in SCALAR_NAMES[alg.case]:
        return None
    if name == "eps":
        return Scalar.eps(alg.case, N)
    if name == "i":
        return Scalar.imag_unit(alg.case, N)
    if name == "a":
        return Scalar.const_a(N)
    if name == "b":
        return Scalar.const_b(N)
    if name == "alpha":
        return Scalar.const_alpha(N)
    if name == "beta":
        return Scalar.const_beta(N)
    return Scalar.delta(N)


def evaluate(node: Node, alg: Algebra) -> OpElement:
    """Evaluate via closed-form multiplication."""
    try:
        if isinstance(node, Num):
            return alg.scalar(node.value)
        if isinstance(node, Sym):
            s = _scalar_symbol(node.name, alg)
            if s is not None:
                return alg.scalar(s)
            if node.name in LETTER_ALIASES:
                return alg.gen(node.name)
            raise _err(f"unknown symbol {node.name!r} for the {alg.case} case", node)
        if isinstance(node, Pow):
            return alg.power(evaluate(node.base, alg), node.exp)
        if isinstance(node, Adj):
            return alg.adjoint(evaluate(node.child, alg))
        if isinstance(node, Mul):
            acc = evaluate(node.factors[0], alg)
            for f in node.factors[1:]:
                acc = alg.mul(acc, evaluate(f, alg))
            return acc
        acc = alg.zero()
        for sign, t in node.terms:
            v = evaluate(t, alg)
            acc = acc + v if sign > 0 else acc - v
        return acc
    except ExprError:
        raise
    except (AlgebraError, ValueError) as exc:
        raise _err(str(exc), node) from exc


def expand_words(node: Node, alg: Algebra) -> list[tuple[Scalar, list]]:
    """Expand into a sum of unnormalized words (scalar, letters)."""
    one = Scalar.one(alg.case, alg.N)
    try:
        if isinstance(node, Num):
            return [(one * node.value, [])]
        if isinstance(node, Sym):
            s = _scalar_symbol(node.name, alg)
            if s is not None:
                return [(s, [])]
            if node.name in LETTER_ALIASES:
                name, k = LETTER_ALIASES[node.name]
                alg._check_letter(name, k)
                return [(one, [(name, k)])]
            raise _err(f"unknown symbol {node.name!r} for the {alg.case} case", node)
        if isinstance(node, Pow):
            base = expand_words(node.base, alg)
            k = node.exp
            if k < 0:
                if len(base) != 1:
                    raise _err("negative powers need a single invertible factor", node)
                c, word = base[0]
                inv = [(n, -e) for n, e in reversed(word)]
                return [(c.inverse_monomial() ** (-k), inv * (-k))]
            acc = [(one, [])]
            for _ in range(k):
                acc = _word_product(acc, base)
            return acc
        if isinstance(node, Adj):
            return alg.element_words(alg.adjoint(evaluate(node.child, alg)))
        if isinstance(node, Mul):
            acc = expand_words(node.factors[0], alg)
            for f in node.factors[1:]:
                acc = _word_product(acc, expand_words(f, alg))
            return acc
        out = []
        for sign, t in node.terms:
            out.extend((c if sign > 0 else -c, w) for c, w in expand_words(t, alg))
        return out
    except ExprError:
        raise
    except (AlgebraError, ValueError) as exc:
        raise _err(str(exc), node) from exc


def _word_product(A, B):
    return [(c1 * c2, w1 + w2) for c1, w1 in A for c2, w2 in B]


def parse_element(text: str, alg: Algebra, route: str = "rewrite") -> OpElement:
    """Parse and normalize ``text``; ``route`` is ``"rewrite"`` or ``"mul"``."""
    node = parse(text)
    if route == "mul":
        return evaluate(node, alg)
    try:
        return alg.normalize_words(expand_words(node, alg))
    except (AlgebraError, ValueError) as exc:
        if isinstance(exc, ExprError):
            raise
        raise ExprError(str(exc)) from exc
