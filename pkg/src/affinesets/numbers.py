"""Exact scalar types.

``QI`` is a Gaussian rational, the coefficient field of input polynomials.
``Radical`` is the multiplicative group those numbers generate once roots are
allowed: a root of unity times a product of rational powers of Gaussian
primes.  Every value has exactly one representation, so equality is exact.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from sympy import factorint
from sympy.ntheory import sqrt_mod


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class QI:
    """Gaussian rational ``re + im*i`` with ``Fraction`` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> QI:
        if isinstance(value, QI):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        raise TypeError(f"cannot convert {value!r} to QI")

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = QI.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __add__(self, other):
        other = QI.coerce(other)
        return QI(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = QI.coerce(other)
        return QI(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QI.coerce(other) - self

    def __mul__(self, other):
        other = QI.coerce(other)
        return QI(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self):
        return QI(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        other = QI.coerce(other)
        n = other.norm()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * other.conjugate()
        return QI(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return QI.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return QI(1) / (self ** -k)
        result, base = QI(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QI({self})"

    def __str__(self):
        if not self.im:
            return _frac_str(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{_frac_str(self.im)}*i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"{_frac_str(self.re)}{sign}{im}"


# -- Gaussian integer factorization -------------------------------------------

_UNIT_TURN = {(1, 0): Fraction(0), (0, 1): Fraction(1, 4),
              (-1, 0): Fraction(1, 2), (0, -1): Fraction(3, 4)}
_TURN_UNIT = {v: QI(*k) for k, v in _UNIT_TURN.items()}


@lru_cache(maxsize=None)
def _two_squares(p: int) -> tuple[int, int]:
    """Return (a, b), a > b > 0, with a*a + b*b == p for a prime p = 1 mod 4."""
    r0, r1 = p, int(sqrt_mod(-1, p))
    while r1 * r1 > p:
        r0, r1 = r1, r0 % r1
    a = r1
    b = math.isqrt(p - a * a)
    assert a * a + b * b == p
    return (a, b) if a > b else (b, a)


def _divides(z: tuple[int, int], pi: tuple[int, int]):
    """Return z / pi if it is a Gaussian integer, else None."""
    x, y = z
    a, b = pi
    n = a * a + b * b
    re, im = x * a + y * b, y * a - x * b
    if re % n or im % n:
        return None
    return re // n, im // n


@lru_cache(maxsize=4096)
def _factor_gaussian_int(x: int, y: int) -> tuple[Fraction, tuple]:
    """Factor x + y*i into (unit turn, ((prime, exponent), ...))."""
    if x == 0 and y == 0:
        raise ZeroDivisionError("zero has no factorization")
    z = (x, y)
    exps: dict[tuple[int, int], int] = {}
    for p, e in sorted(factorint(x * x + y * y).items()):
        if p == 2:
            cands = [(1, 1)]
        elif p % 4 == 3:
            cands = [(p, 0)]
        else:
            a, b = _two_squares(p)
            cands = [(a, b), (b, a)]
        for pi in cands:
            while True:
                q = _divides(z, pi)
                if q is None:
                    break
                z = q
                exps[pi] = exps.get(pi, 0) + 1
    return _UNIT_TURN[z], tuple(sorted(exps.items()))


def _prime_value(pi: tuple[int, int]) -> QI:
    return QI(pi[0], pi[1])


class Radical:
    """Exact nonzero complex number ``exp(2*pi*i*turn) * prod(p**e)``.

    The product runs over normalized Gaussian primes ``p = a + b*i`` with
    ``a > 0, b >= 0`` and nonzero rational exponents ``e``; ``p**e`` means
    ``exp(e*Log(p))`` with the principal logarithm.  Unique factorization in
    Z[i] makes the representation canonical, so ``==`` decides equality of
    the complex values exactly.
    """

    __slots__ = ("turn", "factors", "_hash")

    def __init__(self, turn=0, factors=()):
        turn = Fraction(turn) % 1
        merged: dict[tuple[int, int], Fraction] = {}
        for p, e in factors:
            merged[p] = merged.get(p, Fraction(0)) + Fraction(e)
        self.turn = turn
        self.factors = tuple(sorted((p, e) for p, e in merged.items() if e))
        self._hash = None

    # construction
    @classmethod
    def one(cls) -> Radical:
        return cls()

    @classmethod
    def from_value(cls, value) -> Radical:
        if isinstance(value, Radical):
            return value
        q = QI.coerce(value)
        if q.is_zero():
            raise ZeroDivisionError("Radical values are nonzero")
        den = math.lcm(q.re.denominator, q.im.denominator)
        x, y = int(q.re * den), int(q.im * den)
        turn, num = _factor_gaussian_int(x, y)
        dturn, dfac = _factor_gaussian_int(den, 0)
        return cls(turn - dturn, list(num) + [(p, -e) for p, e in dfac])

    @classmethod
    def root_of_unity(cls, turn) -> Radical:
        return cls(turn)

    # group operations
    def __mul__(self, other):
        if not isinstance(other, Radical):
            try:
                other = Radical.from_value(other)
            except (TypeError, ZeroDivisionError):
                return NotImplemented
        return Radical(self.turn + other.turn, self.factors + other.factors)

    __rmul__ = __mul__

    def inverse(self) -> Radical:
        return Radical(-self.turn, [(p, -e) for p, e in self.factors])

    def __truediv__(self, other):
        if not isinstance(other, Radical):
            other = Radical.from_value(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Radical.from_value(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers are single valued")
        return Radical(self.turn * k, [(p, e * k) for p, e in self.factors])

    def __neg__(self):
        return Radical(self.turn + Fraction(1, 2), self.factors)

    def roots(self, k: int) -> list[Radical]:
        """All ``k`` solutions ``r`` of ``r**k == self``."""
        if k <= 0:
            raise ValueError("root index must be positive")
        base = [(p, e / k) for p, e in self.factors]
        return [Radical((self.turn + j) / k, base) for j in range(k)]

    # predicates
    def is_one(self) -> bool:
        return not self.turn and not self.factors

    def __eq__(self, other):
        if isinstance(other, Radical):
            return self.turn == other.turn and self.factors == other.factors
        try:
            return self == Radical.from_value(other)
        except (TypeError, ZeroDivisionError):
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.turn, self.factors))
        return self._hash

    def split(self) -> tuple[QI, Radical]:
        """Return ``(g, r)`` with ``self == g * r``, ``g`` Gaussian rational and
        ``r`` reduced: turn in [0, 1/4) and exponents in (0, 1)."""
        quarter = math.floor(self.turn * 4)
        g = _TURN_UNIT[Fraction(quarter, 4)]
        rest = []
        for p, e in self.factors:
            fl = math.floor(e)
            if fl:
                g = g * _prime_value(p) ** fl
            if e - fl:
                rest.append((p, e - fl))
        return g, Radical(self.turn - Fraction(quarter, 4), rest)

    def to_gaussian(self) -> QI | None:
        g, r = self.split()
        return g if r.is_one() else None

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi * float(self.turn))
        for (a, b), e in self.factors:
            z *= cmath.exp(float(e) * cmath.log(complex(a, b)))
        return z

    def __repr__(self):
        return f"Radical({self})"

    def __str__(self):
        g, r = self.split()
        if r.is_one():
            return str(g)
        parts = []
        if r.turn:
            parts.append(f"exp(2*pi*i*{_frac_str(r.turn)})")
        for (a, b), e in r.factors:
            base = str(a) if not b else f"({QI(a, b)})"
            parts.append(f"{base}^({_frac_str(e)})")
        body = "*".join(parts)
        if g == 1:
            return body
        if g == -1:
            return "-" + body
        gs = str(g)
        if not g.is_real() and g.re:
            gs = f"({gs})"
        return f"{gs}*{body}"


def exact_sum_is_zero(values: list[Radical]) -> bool:
    """Decide exactly whether a sum of Radicals vanishes.

    Terms are grouped by their reduced radical part; inside a group the
    Gaussian rational cofactors add exactly.  If more than one group survives
    and the numerical sum is small, sympy's minimal polynomial settles it.
    """
    groups: dict[Radical, QI] = {}
    for v in values:
        g, r = v.split()
        groups[r] = groups.get(r, QI(0)) + g
    live = [(r, g) for r, g in groups.items() if not g.is_zero()]
    if not live:
        return True
    if len(live) == 1:
        return False
    approx = sum(complex(g) * complex(r) for r, g in live)
    scale = sum(abs(complex(g) * complex(r)) for r, g in live)
    if abs(approx) > 1e-9 * max(scale, 1.0):
        return False
    return _sympy_is_zero([g * 1 for _, g in live], [r for r, _ in live])


def _sympy_is_zero(coefs, radicals) -> bool:
    import sympy

    total = 0
    for g, r in zip(coefs, radicals):
        term = sympy.Rational(g.re.numerator, g.re.denominator) + sympy.I * sympy.Rational(
            g.im.numerator, g.im.denominator)
        term *= sympy.exp(2 * sympy.pi * sympy.I * sympy.Rational(r.turn.numerator, r.turn.denominator))
        for (a, b), e in r.factors:
            term *= (a + b * sympy.I) ** sympy.Rational(e.numerator, e.denominator)
        total += term
    x = sympy.Symbol("x")
    return sympy.minimal_polynomial(total, x) == x
