"""Sparse multivariate polynomials with exact coefficients, and their text form.

Grammar accepted by :func:`parse_poly`::

    poly  := ["+"|"-"] term (("+"|"-") term)*
    term  := factor ("*" factor)*
    factor:= rational | var ["^" int] | "(" poly ")" ["^" int]

Variables are identifiers such as ``x0``..``x8``, ``s0``, ``u``.
"""
from __future__ import annotations

import re
from typing import Mapping, Sequence

from .field import ONE, ZERO, as_rational, mpq, rational_to_str
from .linalg import Matrix, zeros


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None, line: int | None = None):
        where = ""
        if line is not None:
            where += f"line {line}, "
        if pos is not None:
            where += f"column {pos + 1}: "
        super().__init__(f"{where}{message}" + (f" in {text!r}" if text else ""))
        self.pos = pos
        self.line = line


class Poly:
    """Polynomial over Q (or a quadratic field) in named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.vars = tuple(variables)
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, variables, c) -> "Poly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name: str) -> "Poly":
        i = tuple(variables).index(name)
        m = [0] * len(variables)
        m[i] = 1
        return cls(variables, {tuple(m): ONE})

    @classmethod
    def gens(cls, variables) -> list["Poly"]:
        return [cls.var(variables, v) for v in variables]

    # arithmetic ------------------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError("polynomials in different variables")
            return other
        return Poly.const(self.vars, other)

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for m, c in o.terms.items():
            t[m] = t.get(m, ZERO) + c
        return Poly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return Poly(self.vars)
            return Poly(self.vars, {m: c * other for m, c in self.terms.items()})
        o = self._lift(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = t.get(m, ZERO) + c1 * c2
        return Poly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(self.vars, ONE)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        return self == self._lift(other)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # queries ----------------------------------------------------------------
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def evaluate(self, point: Sequence):
        s = ZERO
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t = t * x**e
            s = s + t
        return s

    def diff(self, name: str) -> "Poly":
        i = self.vars.index(name)
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                t[tuple(mm)] = c * m[i]
        return Poly(self.vars, t)

    def coefficients(self):
        return self.terms.values()

    def map_coefficients(self, f) -> "Poly":
        return Poly(self.vars, {m: f(c) for m, c in self.terms.items()})

    def sorted_terms(self):
        # graded reverse order: higher total degree first, then lex descending
        return sorted(self.terms.items(), key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))

    def __repr__(self):
        return f"Poly({to_string(self)!r})"

    def __str__(self):
        return to_string(self)


def to_string(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        mono = "*".join(
            (v if e == 1 else f"{v}^{e}") for v, e in zip(p.vars, m) if e
        )
        c = mpq(c)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{rational_to_str(a)}*{mono}"
        else:
            body = rational_to_str(a)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()−]))"
)


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        val = m.group(kind)
        if val == "−":
            val = "-"
        toks.append((kind, val, m.start(kind)))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.vars = tuple(variables)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg):
        raise PolyParseError(msg, self.text, self.peek()[2])

    def parse(self) -> Poly:
        if not self.toks:
            self.error("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                p = p + t if val == "+" else p - t
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.factor()
            elif kind in ("var", "num") or (kind == "op" and val == "("):
                # implicit product, e.g. "2 x0"
                p = p * self.factor()
            else:
                return p

    def exponent(self) -> int:
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num" or "/" in val:
                raise PolyParseError("exponent must be a nonnegative integer", self.text, pos)
            return int(val)
        return 1

    def factor(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "num":
            base = Poly.const(self.vars, as_rational(val))
        elif kind == "var":
            if val not in self.vars:
                raise PolyParseError(f"unknown variable {val!r}", self.text, pos)
            base = Poly.var(self.vars, val)
        elif kind == "op" and val == "(":
            base = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                raise PolyParseError("missing ')'", self.text, p2)
        elif kind == "op" and val == "-":
            return -self.factor()
        else:
            raise PolyParseError(f"unexpected token {val!r}" if val else "unexpected end of input", self.text, pos)
        return base ** self.exponent()


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    return _Parser(text, variables).parse()


AMBIENT_VARS = tuple(f"x{i}" for i in range(9))


def ambient_vars(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n + 1))


def quadric_to_matrix(p: Poly) -> Matrix:
    """Symmetric Gram matrix of a quadratic form (off-diagonals split evenly)."""
    if p.terms and (not p.is_homogeneous() or p.degree() != 2):
        raise PolyParseError(f"not a homogeneous quadric: {to_string(p)}")
    n = len(p.vars)
    A = zeros(n, n)
    for m, c in p.terms.items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx
        if i == j:
            A[i][i] = A[i][i] + c
        else:
            half = c / 2
            A[i][j] = A[i][j] + half
            A[j][i] = A[j][i] + half
    return A


def matrix_to_quadric(A: Matrix, variables: Sequence[str] | None = None) -> Poly:
    n = len(A)
    variables = tuple(variables or ambient_vars(n - 1))
    t = {}
    for i in range(n):
        for j in range(i, n):
            c = A[i][j] if i == j else A[i][j] + A[j][i]
            if c:
                m = [0] * n
                m[i] += 1
                m[j] += 1
                t[tuple(m)] = c
    return Poly(variables, t)


def parse_quadric(text: str, n: int = 8, line: int | None = None) -> Matrix:
    try:
        return quadric_to_matrix(parse_poly(text, ambient_vars(n)))
    except PolyParseError as exc:
        if line is not None:
            raise PolyParseError(str(exc), line=line) from None
        raise
