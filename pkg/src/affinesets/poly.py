"""Sparse polynomials with Gaussian rational coefficients, and their text format."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .numbers import QI

Exponent = tuple[int, ...]


class ParseError(ValueError):
    """Malformed input text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


def grlex_key(e: Exponent):
    return (sum(e), e)


@dataclass(frozen=True)
class Term:
    coefficient: QI
    exponent: Exponent

    def __post_init__(self):
        if self.coefficient.is_zero():
            raise ValueError("term coefficient must be nonzero")


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables.

    Terms are kept in descending graded-lex order of their exponents.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, QI] | Iterable[tuple[Exponent, QI]] = ()):
        acc: dict[Exponent, QI] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
            acc[e] = acc.get(e, QI(0)) + QI.coerce(c)
        self.nvars = nvars
        self.terms = tuple(Term(acc[e], e) for e in sorted(acc, key=grlex_key, reverse=True)
                           if not acc[e].is_zero())
        self._hash = None

    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls(nvars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient=1) -> Polynomial:
        return cls(len(exponent), [(tuple(exponent), coefficient)])

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[Exponent]:
        return {t.exponent for t in self.terms}

    def as_dict(self) -> dict[Exponent, QI]:
        return {t.exponent: t.coefficient for t in self.terms}

    def variables(self) -> set[int]:
        return {k for t in self.terms for k, a in enumerate(t.exponent) if a}

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.terms))
        return self._hash

    def __add__(self, other: Polynomial) -> Polynomial:
        return Polynomial(self.nvars, [(t.exponent, t.coefficient) for t in self.terms + other.terms])

    def __neg__(self):
        return Polynomial(self.nvars, [(t.exponent, -t.coefficient) for t in self.terms])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def set_zero(self, zero: Iterable[int]) -> Polynomial:
        """Substitute 0 for the given variables."""
        zero = set(zero)
        return Polynomial(self.nvars, [(t.exponent, t.coefficient) for t in self.terms
                                       if not any(t.exponent[k] for k in zero)])

    def monomial_content(self) -> Exponent:
        """Componentwise minimum exponent over the terms."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*(t.exponent for t in self.terms)))

    def divide_monomial(self, e: Exponent) -> Polynomial:
        return Polynomial(self.nvars, [(tuple(a - b for a, b in zip(t.exponent, e)), t.coefficient)
                                       for t in self.terms])

    def substitute(self, values: Mapping[int, QI]) -> Polynomial:
        """Replace the given variables by Gaussian rational values."""
        out: dict[Exponent, QI] = {}
        for t in self.terms:
            c = t.coefficient
            e = list(t.exponent)
            for k, v in values.items():
                if e[k]:
                    c = c * QI.coerce(v) ** e[k]
                    e[k] = 0
            e = tuple(e)
            out[e] = out.get(e, QI(0)) + c
        return Polynomial(self.nvars, out)

    def __repr__(self):
        names = [f"x{k + 1}" for k in range(self.nvars)]
        return f"Polynomial({format_polynomial(self, names)})"


class System:
    """Named variables together with a sequence of polynomials."""

    __slots__ = ("variables", "polynomials")

    def __init__(self, variables: Sequence[str], polynomials: Sequence[Polynomial] = ()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable name")
        for p in polynomials:
            if p.nvars != len(variables):
                raise ValueError("polynomial variable count does not match the system")
        self.variables = variables
        self.polynomials = tuple(polynomials)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __len__(self):
        return len(self.polynomials)

    def __iter__(self):
        return iter(self.polynomials)

    def __getitem__(self, k):
        return self.polynomials[k]

    def __eq__(self, other):
        if not isinstance(other, System):
            return NotImplemented
        return self.variables == other.variables and self.polynomials == other.polynomials

    def __hash__(self):
        return hash((self.variables, self.polynomials))

    def __repr__(self):
        return f"System({len(self.variables)} variables, {len(self.polynomials)} polynomials)"


def support(p: Polynomial) -> set[Exponent]:
    return p.support()


def is_binomial_system(s: System) -> bool:
    return all(len(p) == 2 for p in s.polynomials)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^;])
""", re.VERBOSE)


def _tokenize(text: str):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            yield kind, m.group(), line, pos - line_start + 1
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    yield "eof", "", line, pos - line_start + 1


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], tok[3])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def header(self) -> list[str]:
        names = []
        while self.peek()[0] == "name":
            tok = self.take()
            if tok[1] == "i":
                self.fail("'i' is reserved for the imaginary unit", tok)
            if tok[1] in names:
                self.fail(f"duplicate variable name {tok[1]!r}", tok)
            names.append(tok[1])
        self.expect(";")
        return names

    def polynomial(self, index: dict[str, int]) -> Polynomial:
        n = len(index)
        terms = []
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            terms.append(self.term(index, sign))
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1 if tok[1] == "-" else 1
                continue
            break
        self.expect(";")
        return Polynomial(n, terms)

    def term(self, index, sign):
        coef = QI(sign)
        exp = [0] * len(index)
        while True:
            tok = self.take()
            if tok[0] == "num":
                coef = coef * Fraction(tok[1])
            elif tok[0] == "name" and tok[1] == "i":
                coef = coef * QI(0, 1)
            elif tok[0] == "name":
                if tok[1] not in index:
                    self.fail(f"undeclared variable {tok[1]!r}", tok)
                power = 1
                if self.peek()[1] == "^":
                    self.take()
                    nxt = self.take()
                    if nxt[1] == "-":
                        self.fail("negative exponent in input", nxt)
                    if nxt[0] != "num" or "/" in nxt[1]:
                        self.fail("expected a positive integer exponent", nxt)
                    power = int(nxt[1])
                exp[index[tok[1]]] += power
            else:
                self.fail(f"unexpected {tok[1] or 'end of input'!r}", tok)
            if self.peek()[1] == "*":
                self.take()
                continue
            return tuple(exp), coef

    def system(self) -> System:
        names = self.header()
        index = {v: k for k, v in enumerate(names)}
        polys = []
        while self.peek()[0] != "eof":
            polys.append(self.polynomial(index))
        return System(names, polys)


def parse_system(text: str) -> System:
    """Parse ``v1 v2 ... vn;`` followed by ``;``-terminated polynomials."""
    return _Parser(text).system()


# -- serialization ------------------------------------------------------------

def _monomial_str(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for k, a in enumerate(e):
        if a == 1:
            parts.append(names[k])
        elif a:
            parts.append(f"{names[k]}^{a}")
    return "*".join(parts)


def _scaled(c: Fraction, unit: str, mono: str) -> tuple[bool, str]:
    neg = c < 0
    c = abs(c)
    factors = []
    if c != 1 or (not unit and not mono):
        factors.append(str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}")
    if unit:
        factors.append(unit)
    if mono:
        factors.append(mono)
    return neg, "*".join(factors)


def format_polynomial(p: Polynomial, names: Sequence[str]) -> str:
    pieces: list[tuple[bool, str]] = []
    for t in p.terms:
        mono = _monomial_str(t.exponent, names)
        if t.coefficient.re:
            pieces.append(_scaled(t.coefficient.re, "", mono))
        if t.coefficient.im:
            pieces.append(_scaled(t.coefficient.im, "i", mono))
    if not pieces:
        return "0"
    out = []
    for k, (neg, s) in enumerate(pieces):
        if k == 0:
            out.append(("-" if neg else "") + s)
        else:
            out.append(("- " if neg else "+ ") + s)
    return " ".join(out)


def format_system(s: System) -> str:
    lines = [" ".join(s.variables) + ";"]
    lines.extend(format_polynomial(p, s.variables) + ";" for p in s.polynomials)
    return "\n".join(lines) + "\n"


serialize = format_system
