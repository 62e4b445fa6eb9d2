"""Initial forms, normal cone intersections and candidate tuples for
general (non-binomial) sparse systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

from .binomial import AffineMonomialMap, normalize_binomial, toric_solve
from .enumeration import EnumerationOptions, ZeroSelection, enumerate_candidates
from .feasibility import simplex_interior
from .linalg import primitive
from .membership import contains
from .numbers import QI, Radical
from .poly import Polynomial, System, is_binomial_system
from .polytope import EdgeWithCone, newton_edges


class _Infinity:
    """Infinite weight.  Compares above every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __gt__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __ge__(self, other):
        return True

    def __le__(self, other):
        return other is self


INF = _Infinity()

Weight = tuple  # entries are Fraction or INF


def parse_weight(text: str) -> Weight:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok.lower() in ("inf", "infinity", "oo"):
            out.append(INF)
            continue
        try:
            out.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad weight entry {tok!r}") from None
    if all(x is INF for x in out):
        raise ValueError("weight needs at least one finite entry")
    return tuple(out)


def initial_form(p: Polynomial, w: Sequence) -> Polynomial:
    """Terms of ``p`` with minimal ``<a, w>``.  Terms using a variable of
    infinite weight have infinite value and drop out."""
    if len(w) != p.nvars:
        raise ValueError("weight length does not match the polynomial")
    best, keep = None, []
    for t in p.terms:
        if any(a and wk is INF for a, wk in zip(t.exponent, w)):
            continue
        val = sum((a * wk for a, wk in zip(t.exponent, w) if a), Fraction(0))
        if best is None or val < best:
            best, keep = val, [t]
        elif val == best:
            keep.append(t)
    return Polynomial(p.nvars, [(t.exponent, t.coefficient) for t in keep])


Cone = tuple  # (equalities, inequalities)


def _as_cone(c) -> Cone:
    if isinstance(c, EdgeWithCone):
        return c.equalities, c.inequalities
    return tuple(c[0]), tuple(c[1])


def cone_intersection(cones: Sequence, dim: int | None = None) -> tuple[Fraction, ...] | None:
    """A rational vector in the common interior of the cones, or None.

    A cone is ``(equalities, inequalities)`` meaning ``eq . v = 0`` and
    ``ineq . v > 0``; an EdgeWithCone is accepted directly.
    """
    cones = [_as_cone(c) for c in cones]
    lengths = {len(r) for eqs, ineqs in cones for r in list(eqs) + list(ineqs)}
    if dim is not None:
        lengths.add(dim)
    if len(lengths) > 1:
        raise ValueError("cones live in different dimensions")
    if not lengths:
        return None if dim is None else tuple(Fraction(0) for _ in range(dim))
    n = lengths.pop()
    E = [list(r) for eqs, _ in cones for r in eqs]
    G = [list(r) for _, ineqs in cones for r in ineqs]
    v = simplex_interior(E, G, n)
    return None if v is None else tuple(v)


def _weight_for(sel_zero: set[int], v: Sequence, nonzero: Sequence[int], n: int) -> Weight:
    w: list = [INF] * n
    for k, x in zip(nonzero, v):
        w[k] = Fraction(x)
    return tuple(w)


def check_specialization_commutes(s: System, sel: ZeroSelection, v: Sequence) -> bool:
    """Check ``in_v(f(z)) == (in_w f)(z)`` for every equation, where ``z``
    sets the selected variables to zero and ``w`` extends ``v`` by infinity
    on them.  ``v`` lists weights of the nonzero variables in index order."""
    zero = set(sel.variables)
    nonzero = [k for k in range(s.nvars) if k not in zero]
    if len(v) != len(nonzero):
        raise ValueError("weight must cover exactly the nonzero variables")
    w = _weight_for(zero, v, nonzero, s.nvars)
    wv = tuple(Fraction(0) if x is INF else x for x in w)
    for p in s.polynomials:
        lhs = initial_form(p.set_zero(zero), wv)
        rhs = initial_form(p, w).set_zero(zero)
        if lhs != rhs:
            return False
    return True


def _consistent_pattern(s: System, S: int):
    """Surviving supports per equation, or None if some equation keeps
    exactly one term."""
    pattern = []
    for p in s.polynomials:
        alive = tuple(t.exponent for t in p.terms
                      if not any(a and (S >> k) & 1 for k, a in enumerate(t.exponent)))
        if len(alive) == 1:
            return None
        pattern.append(alive)
    return tuple(pattern)


def iter_general_zero_sets(s: System, opts: EnumerationOptions = EnumerationOptions()) -> Iterator[ZeroSelection]:
    """Zero selections where each equation vanishes or keeps two terms.

    A selection is kept when it is inclusion-minimal among selections with
    the same surviving supports.
    """
    n = s.nvars
    top = n if opts.max_codim is None else min(n, opts.max_codim)
    kept: dict[tuple, list[int]] = {}
    for size in range(top + 1):
        for combo in combinations(range(n), size):
            S = sum(1 << k for k in combo)
            pattern = _consistent_pattern(s, S)
            if pattern is None:
                continue
            if any(T & S == T for T in kept.get(pattern, ())):
                continue
            killed = sum(1 for alive in pattern if not alive)
            if opts.pure_dimension and size != killed:
                continue
            kept.setdefault(pattern, []).append(S)
            skipped = frozenset(i for i, alive in enumerate(pattern) if alive)
            yield ZeroSelection(combo, skipped)


@dataclass(frozen=True)
class CandidateTuple:
    """Variable statuses (0 zero, -1 link, +1 free) and, per equation, the
    chosen edge of its specialized Newton polytope or None."""

    s: tuple[int, ...]
    e: tuple[EdgeWithCone | None, ...]
    selection: ZeroSelection
    weight: Weight

    def initial_forms(self, system: System) -> list[Polynomial]:
        zero = set(self.selection.variables)
        w = tuple(Fraction(0) if x is INF else x for x in self.weight)
        return [initial_form(p.set_zero(zero), w) for i, p in enumerate(system.polynomials)
                if self.e[i] is not None]


def _project(e, keep):
    return tuple(e[k] for k in keep)


def enumerate_tuples(s: System, opts: EnumerationOptions = EnumerationOptions()) -> list[CandidateTuple]:
    """Candidate tuples: a zero selection plus one edge per skipped equation
    such that the chosen edge cones share an interior point."""
    out = []
    for sel in enumerate_candidates(s, opts):
        zero = set(sel.variables)
        nonzero = [k for k in range(s.nvars) if k not in zero]
        choices = []
        for i, p in enumerate(s.polynomials):
            q = p.set_zero(zero)
            if q.is_zero():
                choices.append([None])
                continue
            pts = {_project(e, nonzero) for e in q.support()}
            choices.append(newton_edges(pts))
        for combo in product(*choices):
            chosen = [c for c in combo if c is not None]
            v = cone_intersection(chosen, len(nonzero)) if chosen else tuple(Fraction(0) for _ in nonzero)
            if v is None:
                continue
            linked = set()
            for c in chosen:
                for pt in c.endpoints:
                    linked.update(nonzero[j] for j, a in enumerate(pt) if a)
            status = tuple(0 if k in zero else -1 if k in linked else 1 for k in range(s.nvars))
            out.append(CandidateTuple(status, tuple(combo), sel, _weight_for(zero, v, nonzero, s.nvars)))
    return out


# -- solving the specialized systems ------------------------------------------

@dataclass(frozen=True)
class UnresolvedCurve:
    """Positive-dimensional piece whose equations are not binomial.

    ``leading`` pairs a primitive tropism with the initial form system it
    selects; these give the leading terms of Puiseux expansions.
    """

    zero: frozenset[int]
    assigned: tuple[tuple[int, QI], ...]
    equations: tuple[Polynomial, ...]
    leading: tuple[tuple[tuple[int, ...], tuple[Polynomial, ...]], ...]

    def contains_point(self, m: AffineMonomialMap) -> bool:
        if m.d or m.free or not self.zero <= m.zero:
            return False
        vals = {v: c.to_gaussian() for v, c, _ in m.link}
        if any(x is None for x in vals.values()):
            return False
        for k, x in self.assigned:
            if k not in m.zero and vals.get(k) != x:
                return False
        pt = {k: (QI(0) if k in m.zero else vals[k]) for k in range(m.nvars)}
        return all(p.substitute(pt).is_zero() for p in self.equations)


@dataclass(frozen=True)
class CaseSolution:
    selection: ZeroSelection
    maps: tuple[AffineMonomialMap, ...]
    curves: tuple[UnresolvedCurve, ...]


def _gaussian_roots(p: Polynomial, k: int) -> list[QI] | None:
    """Gaussian rational roots of a univariate polynomial in ``x_k``; None if
    some root is not Gaussian rational."""
    import sympy

    x = sympy.Symbol("x")
    expr = 0
    for t in p.terms:
        c = t.coefficient
        coef = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
            c.im.numerator, c.im.denominator)
        expr += coef * x ** t.exponent[k]
    _, factors = sympy.factor_list(sympy.expand(expr), x, gaussian=True)
    roots = []
    for f, _ in factors:
        fp = sympy.Poly(f, x)
        if fp.degree() > 1:
            return None
        a, b = fp.all_coeffs()
        r = sympy.nsimplify(-b / a)
        re, im = sympy.re(r), sympy.im(r)
        roots.append(QI(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))))
    return roots


def _leading_forms(polys: Sequence[Polynomial], active: Sequence[int]):
    """Primitive tropisms of common edge-cone interiors and their initial forms."""
    choices = []
    for q in polys:
        pts = {tuple(e[k] for k in active) for e in q.support()}
        choices.append(newton_edges(pts))
    out = []
    for combo in product(*choices):
        v = cone_intersection(combo, len(active))
        if v is None or not any(v):
            continue
        trop = tuple(primitive(v))
        w = [Fraction(0)] * polys[0].nvars
        for k, x in zip(active, trop):
            w[k] = Fraction(x)
        out.append((trop, tuple(initial_form(q, w) for q in polys)))
    return tuple(sorted(set(out), key=lambda item: item[0]))


def _torus_solve(polys: list[Polynomial], zero: frozenset[int], assigned: dict[int, QI],
                 variables: Sequence[str], maps: list, curves: list):
    n = len(variables)
    reduced = []
    for p in polys:
        if p.is_zero():
            continue
        q = p.divide_monomial(p.monomial_content())
        if len(q) == 1:
            return
        reduced.append(q)
    if all(len(q) == 2 for q in reduced):
        toric = toric_solve(normalize_binomial(System(variables, reduced)), n) if reduced else None
        base = toric.maps if toric is not None else (AffineMonomialMap(n, frozenset(), tuple(range(n)), (), 0),)
        for m in base:
            link = list(m.link)
            free = []
            for k in m.free:
                if k in zero:
                    continue
                if k in assigned:
                    link.append((k, Radical.from_value(assigned[k]), (0,) * m.d))
                else:
                    free.append(k)
            link.sort(key=lambda item: item[0])
            maps.append(AffineMonomialMap(n, zero, tuple(free), tuple(link), m.d, m.W))
        return
    for q in reduced:
        vs = q.variables()
        if len(vs) == 1:
            (k,) = vs
            roots = _gaussian_roots(q, k)
            if roots is None:
                break
            for r in roots:
                if r.is_zero():
                    continue
                sub = [p.substitute({k: r}) for p in reduced]
                _torus_solve(sub, zero, {**assigned, k: r}, variables, maps, curves)
            return
    active = sorted(set().union(*(q.variables() for q in reduced)))
    curves.append(UnresolvedCurve(zero, tuple(sorted(assigned.items())), tuple(reduced),
                                  _leading_forms(reduced, active)))


def solve_case(s: System, sel: ZeroSelection) -> CaseSolution:
    """All pieces of the solution set with at least the selected variables zero."""
    zero = frozenset(sel.variables)
    rest = [k for k in range(s.nvars) if k not in zero]
    maps: list[AffineMonomialMap] = []
    curves: list[UnresolvedCurve] = []
    for size in range(len(rest) + 1):
        for extra in combinations(rest, size):
            Z = zero | frozenset(extra)
            polys = [p.set_zero(Z) for p in s.polynomials]
            _torus_solve(polys, Z, {}, s.variables, maps, curves)
    ordered = sorted(maps, key=AffineMonomialMap.key)
    kept: list[AffineMonomialMap] = []
    for m in ordered:
        if any(contains(k, m) for k in kept):
            continue
        if any(c.contains_point(m) for c in curves):
            continue
        kept.append(m)
    return CaseSolution(sel, tuple(kept), tuple(curves))


def solve_general(s: System, opts: EnumerationOptions = EnumerationOptions()) -> list[CaseSolution]:
    """Solve the specialized system of every nonempty candidate zero selection."""
    return [solve_case(s, sel) for sel in enumerate_candidates(s, opts) if sel.variables]
