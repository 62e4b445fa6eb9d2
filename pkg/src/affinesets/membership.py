"""Defining equations of monomial maps, inclusion tests and pruning."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .binomial import AffineMonomialMap
from .feasibility import simplex_interior
from .linalg import left_kernel, rational_nullspace, transpose
from .numbers import Radical, exact_sum_is_zero
from .poly import Exponent, Polynomial

Circuit = tuple[int, ...]


def circuits(V: Sequence[Sequence[int]]) -> list[Circuit]:
    """Minimal-support integer dependencies ``sum u_k V[k] = 0`` among rows.

    Supports are searched by increasing size; a support is a circuit when its
    rows have a one-dimensional dependency space whose vector uses every row.
    One primitive representative per sign class, first nonzero entry positive.
    """
    rows = [list(r) for r in V]
    L = len(rows)
    if L == 0:
        return []
    d = len(rows[0])
    out = []
    for size in range(1, min(L, d + 1) + 1):
        for supp in combinations(range(L), size):
            if any(set(c).issubset(supp) for c in _supports(out)):
                continue
            cols = transpose([rows[k] for k in supp], d) if d else []
            ns = rational_nullspace(cols, size) if d else [[int(i == j) for i in range(size)] for j in range(size)]
            if len(ns) != 1 or not all(ns[0]):
                continue
            u = [0] * L
            for k, x in zip(supp, ns[0]):
                u[k] = x
            out.append(tuple(u))
    return out


def _supports(circs):
    return [tuple(k for k, x in enumerate(c) if x) for c in circs]


@dataclass(frozen=True)
class BinomialGenerator:
    """The binomial ``x^plus - gamma * x^minus``."""

    plus: Exponent
    minus: Exponent
    gamma: Radical

    def terms(self):
        return [(self.plus, Radical.one()), (self.minus, -self.gamma)]

    def polynomial(self) -> Polynomial | None:
        g = self.gamma.to_gaussian()
        if g is None:
            return None
        return Polynomial(len(self.plus), [(self.plus, 1), (self.minus, -g)])


@dataclass(frozen=True)
class DefiningEquations:
    monomial_generators: frozenset[int]
    binomial_generators: tuple[BinomialGenerator, ...]

    def __len__(self):
        return len(self.monomial_generators) + len(self.binomial_generators)


def defining_equations(c: AffineMonomialMap) -> DefiningEquations:
    """Zero variables plus one binomial per circuit of the link rows."""
    link = c.link
    gens = []
    for u in circuits([row for _, _, row in link]):
        plus, minus = [0] * c.nvars, [0] * c.nvars
        gamma = Radical.one()
        for (v, coef, _), x in zip(link, u):
            if x > 0:
                plus[v] = x
                gamma = gamma * coef ** x
            elif x < 0:
                minus[v] = -x
                gamma = gamma / coef ** (-x)
        gens.append(BinomialGenerator(tuple(plus), tuple(minus), gamma))
    return DefiningEquations(frozenset(c.zero), tuple(gens))


def vanishes_on(g, c: AffineMonomialMap) -> bool:
    """Exact test that ``g`` (a Polynomial, BinomialGenerator or variable
    index) vanishes identically on the map."""
    if isinstance(g, int):
        return g in c.zero
    if isinstance(g, BinomialGenerator):
        g = g.terms()
    return all(exact_sum_is_zero(vals) for vals in c.substitute(g).values())


def contains_by_generators(outer: AffineMonomialMap, inner: AffineMonomialMap) -> bool:
    """Containment through the defining equations of ``outer``."""
    eqs = defining_equations(outer)
    if not eqs.monomial_generators <= inner.zero:
        return False
    return all(vanishes_on(g, inner) for g in eqs.binomial_generators)


def contains(outer: AffineMonomialMap, inner: AffineMonomialMap) -> bool:
    """Decide whether the closure of ``outer`` contains ``inner``.

    The link variables of ``outer`` that vanish on ``inner`` must be exactly
    the ones sent to zero by some one-parameter limit, found as a strict
    feasibility problem.  The remaining link variables must satisfy the
    binomial relations of ``outer`` identically on ``inner``.
    """
    if not outer.zero <= inner.zero:
        return False
    F = [(v, coef, row) for v, coef, row in outer.link if v not in inner.zero]
    G = [row for v, _, row in outer.link if v in inner.zero]
    if G and simplex_interior([list(r) for _, _, r in F], [list(r) for r in G], outer.d) is None:
        return False
    if not F:
        return True
    inner_free = set(inner.free)
    for u in left_kernel([list(r) for _, _, r in F], outer.d):
        if any(x and v in inner_free for (v, _, _), x in zip(F, u)):
            return False
        exps = [0] * outer.nvars
        for (v, _, _), x in zip(F, u):
            exps[v] = x
        # x^u must be constant on inner and equal to c^u
        target = Radical.one()
        for (_, coef, _), x in zip(F, u):
            if x:
                target = target * coef ** x
        sub = inner.substitute([(tuple(exps), 1)])
        ((e, vals),) = sub.items()
        if any(e) or vals[0] != target:
            return False
    return True


def equivalent(a: AffineMonomialMap, b: AffineMonomialMap) -> bool:
    """Same zero and free variables, same lattice of link relations and the
    same coefficients on those relations."""
    if a.zero != b.zero or set(a.free) != set(b.free):
        return False
    if a.link_vars != b.link_vars or a.dimension != b.dimension:
        return False
    ka = left_kernel(a.link_matrix, a.d)
    kb = left_kernel(b.link_matrix, b.d)
    if ka != kb:
        return False
    ca = [c for _, c, _ in a.link]
    cb = [c for _, c, _ in b.link]
    for u in ka:
        ratio = Radical.one()
        for x, p, q in zip(u, ca, cb):
            if x:
                ratio = ratio * (q / p) ** x
        if not ratio.is_one():
            return False
    return True


def _zmask(c: AffineMonomialMap) -> int:
    m = 0
    for v in c.zero:
        m |= 1 << v
    return m


def prune_components(maps: Sequence[AffineMonomialMap]) -> list[AffineMonomialMap]:
    """Drop maps contained in another kept map; keep one per equal set.

    Maps are visited by decreasing dimension, so a map can only be contained
    in one already kept.  Output is in canonical order.
    """
    ordered = sorted(maps, key=AffineMonomialMap.key)
    kept: list[AffineMonomialMap] = []
    by_zero: dict[tuple[int, int], list[AffineMonomialMap]] = {}
    larger: list[tuple[int, int, AffineMonomialMap]] = []
    for c in ordered:
        zm = _zmask(c)
        dim = c.dimension
        if any(contains(k, c) for k in by_zero.get((dim, zm), ())):
            continue
        if any(kd > dim and km & ~zm == 0 and contains(k, c) for kd, km, k in larger):
            continue
        kept.append(c)
        by_zero.setdefault((dim, zm), []).append(c)
        larger.append((dim, zm, c))
    return sorted(kept, key=AffineMonomialMap.key)
