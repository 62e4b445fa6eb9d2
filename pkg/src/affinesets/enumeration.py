"""Incidence matrices and the recursive search for zero-variable selections.

Selections are bitmasks over variables while searching.  A row of the
incidence matrix is the set of variables occurring in one monomial; a set
of variables makes the row vanish when it meets the row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from operator import or_
from typing import Iterator, Sequence

from .binomial import AffineMonomialMap, solve_with_zeros
from .poly import Exponent, System, grlex_key, is_binomial_system


@dataclass(frozen=True)
class IncidenceRow:
    equation: int
    exponent: Exponent
    mask: int

    def variables(self) -> list[int]:
        return _bits(self.mask)


@dataclass(frozen=True)
class IncidenceMatrix:
    nvars: int
    rows: tuple[IncidenceRow, ...]
    dropped_variables: frozenset[int] = frozenset()
    monomial_pairing: dict[int, tuple[int, int]] = field(default_factory=dict, compare=False, hash=False)

    def as_lists(self) -> list[list[int]]:
        return [[(r.mask >> k) & 1 for k in range(self.nvars)] for r in self.rows]

    def frequencies(self) -> list[int]:
        return [sum((r.mask >> k) & 1 for r in self.rows) for k in range(self.nvars)]


@dataclass(frozen=True, order=True)
class ZeroSelection:
    variables: tuple[int, ...]
    skipped: frozenset[int] = frozenset()

    @property
    def mask(self) -> int:
        m = 0
        for v in self.variables:
            m |= 1 << v
        return m

    def sort_key(self):
        return (len(self.variables), self.variables, sorted(self.skipped))


@dataclass(frozen=True)
class EnumerationOptions:
    max_codim: int | None = None
    pure_dimension: bool = False
    greedy: bool = False

    def __post_init__(self):
        if self.max_codim is not None and self.max_codim < 0:
            raise ValueError("max_codim must be nonnegative")


def _bits(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def _mask(exponent: Sequence[int], dropped: int = 0) -> int:
    m = 0
    for k, a in enumerate(exponent):
        if a > 0:
            m |= 1 << k
    return m & ~dropped


def incidence_matrix(s: System) -> IncidenceMatrix:
    """One row per distinct variable pattern of each equation.

    Monomials of an equation with the same set of variables vanish together,
    so only the smallest of them is kept.  Variables with a negative exponent
    anywhere are dropped.
    """
    dropped = set()
    for p in s.polynomials:
        for t in p.terms:
            dropped.update(k for k, a in enumerate(t.exponent) if a < 0)
    dmask = sum(1 << k for k in dropped)
    rows: list[IncidenceRow] = []
    pairing = {}
    for i, p in enumerate(s.polynomials):
        best: dict[int, Exponent] = {}
        for t in sorted(p.terms, key=lambda t: grlex_key(t.exponent)):
            m = _mask(t.exponent, dmask)
            best.setdefault(m, t.exponent)
        start = len(rows)
        for m, e in best.items():
            rows.append(IncidenceRow(i, e, m))
        if len(p) == 2 and len(best) == 2:
            pairing[i] = (start, start + 1)
    return IncidenceMatrix(s.nvars, tuple(rows), frozenset(dropped), pairing)


def _var_order(freq: Sequence[int], greedy: bool):
    if greedy:
        return lambda v: (-freq[v], v)
    return lambda v: v


def iter_zero_sets(m: IncidenceMatrix, opts: EnumerationOptions = EnumerationOptions()) -> Iterator[ZeroSelection]:
    """Yield inclusion-minimal variable sets meeting every row, in discovery order."""
    masks = sorted({r.mask for r in m.rows})
    if any(mk == 0 for mk in masks):
        return
    freq = m.frequencies()
    key = _var_order(freq, opts.greedy)
    dropped = sum(1 << k for k in m.dropped_variables)
    containing = [[mk for mk in masks if (mk >> v) & 1] for v in range(m.nvars)]
    limit = opts.max_codim

    def private_ok(S: int) -> bool:
        for s in _bits(S):
            if not any(mk & S == 1 << s for mk in containing[s]):
                return False
        return True

    def first_row(S: int, forbidden: int):
        unhit = [mk for mk in masks if not mk & S]
        if not unhit:
            return None
        if opts.greedy:
            allowed = [v for v in range(m.nvars) if not (forbidden >> v) & 1 and any((mk >> v) & 1 for mk in unhit)]
            if not allowed:
                return unhit[0]
            top = min(allowed, key=key)
            rows = [mk for mk in unhit if (mk >> top) & 1]
            return min(rows, key=lambda mk: (bin(mk).count("1"), mk))
        return unhit[0]

    def rec(S: int, forbidden: int, size: int):
        row = first_row(S, forbidden)
        if row is None:
            yield S
            return
        if limit is not None and size >= limit:
            return
        cands = sorted((v for v in _bits(row & ~forbidden)), key=key)
        earlier = 0
        for v in cands:
            S2 = S | (1 << v)
            if private_ok(S2):
                yield from rec(S2, forbidden | earlier, size + 1)
            earlier |= 1 << v

    for S in rec(0, dropped, 0):
        yield ZeroSelection(tuple(_bits(S)))


def enumerate_zero_sets(m: IncidenceMatrix, opts: EnumerationOptions = EnumerationOptions()) -> list[ZeroSelection]:
    """All minimal zero selections that make every row vanish, sorted."""
    return sorted(set(iter_zero_sets(m, opts)), key=ZeroSelection.sort_key)


def iter_candidates(s: System, opts: EnumerationOptions = EnumerationOptions()) -> Iterator[ZeroSelection]:
    """Search zero selections of a binomial system, allowing skipped equations.

    Every equation is either killed (both monomials vanish) or skipped (none
    of its variables is ever selected).  A selection is kept when it is
    inclusion-minimal among those killing the same equations.  With
    ``pure_dimension`` the number of zero variables must equal the number of
    killed equations.
    """
    if not is_binomial_system(s):
        raise ValueError("skip search needs a binomial system")
    n, E = s.nvars, len(s)
    im = incidence_matrix(s)
    dropped = sum(1 << k for k in im.dropped_variables)
    eqs = [[_mask(t.exponent, dropped) for t in p.terms] for p in s.polynomials]
    eq_vars = [a | b for a, b in eqs]
    freq = [sum((mk >> v) & 1 for e in eqs for mk in e) for v in range(n)]
    key = _var_order(freq, opts.greedy)
    containing = [[mk for e in eqs for mk in e if (mk >> v) & 1] for v in range(n)]
    near = [reduce(or_, containing[v], 1 << v) for v in range(n)]
    limit = opts.max_codim
    pure = opts.pure_dimension

    def private_ok(S: int, v: int) -> bool:
        # only variables sharing a monomial with v can lose their private row
        rest = S & near[v]
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            for mk in containing[u]:
                if mk & S == low:
                    break
            else:
                return False
            rest ^= low
        return True

    def rec(S: int, forbidden: int, skipped: int, size: int):
        killed = 0
        touched = None
        untouched = []
        for i in range(E):
            if (skipped >> i) & 1:
                continue
            a, b = eqs[i]
            ha, hb = bool(a & S), bool(b & S)
            if ha and hb:
                killed += 1
            elif ha or hb:
                if touched is None:
                    touched = b if ha else a
            else:
                untouched.append(i)
        open_eqs = E - bin(skipped).count("1") - killed
        if pure and size > killed + open_eqs:
            return
        if touched is not None:
            yield from branch(S, forbidden, skipped, size, touched)
            return
        if not untouched:
            if not pure or size == killed:
                yield S, skipped
            return
        if opts.greedy:
            def score(i):
                allowed = [v for v in _bits(eq_vars[i] & ~forbidden)]
                return (min((key(v) for v in allowed), default=(0, n)), i)
            i = min(untouched, key=score)
            a, b = eqs[i]
            best = min(_bits(eq_vars[i] & ~forbidden), key=key, default=None)
            row = a if best is None or (a >> best) & 1 else b
        else:
            i = untouched[0]
            row = eqs[i][0]
        yield from branch(S, forbidden, skipped, size, row)
        yield from rec(S, forbidden | eq_vars[i], skipped | (1 << i), size)

    def branch(S, forbidden, skipped, size, row):
        if limit is not None and size >= limit:
            return
        earlier = 0
        for v in sorted(_bits(row & ~forbidden), key=key):
            S2 = S | (1 << v)
            if private_ok(S2, v):
                yield from rec(S2, forbidden | earlier, skipped, size + 1)
            earlier |= 1 << v

    seen = set()
    for S, skipped in rec(0, dropped, 0, 0):
        if S in seen:
            continue
        seen.add(S)
        yield ZeroSelection(tuple(_bits(S)), frozenset(_bits(skipped)))


def enumerate_candidates(s: System, opts: EnumerationOptions = EnumerationOptions()) -> list[ZeroSelection]:
    """Candidate zero selections, sorted by size then lexicographically.

    Binomial systems use the skip search.  Other systems keep a selection
    when every equation either vanishes or retains at least two terms.
    """
    if is_binomial_system(s):
        found = iter_candidates(s, opts)
    else:
        from .tropical import iter_general_zero_sets
        found = iter_general_zero_sets(s, opts)
    return sorted(set(found), key=ZeroSelection.sort_key)


def assemble_component(sel: ZeroSelection, s: System) -> list[AffineMonomialMap]:
    """Maps with the selected variables zero and the rest nonzero."""
    return solve_with_zeros(s, sel.variables, sel.skipped)
