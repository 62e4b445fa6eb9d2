"""Binomial systems ``x^A = c`` and their monomial parametrizations."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .linalg import (matmul, rational_nullspace, smith_normal_form, transpose,
                     unimodular_extension)
from .numbers import QI, Radical, exact_sum_is_zero
from .poly import Polynomial, System, is_binomial_system


@dataclass(frozen=True)
class NormalizedBinomialSystem:
    A: tuple[tuple[int, ...], ...]
    c: tuple[QI, ...]
    nvars: int

    def __post_init__(self):
        for row in self.A:
            if not any(row):
                raise ValueError("zero row in binomial system")
        for c in self.c:
            if QI.coerce(c).is_zero():
                raise ValueError("zero right-hand side")


def normalize_binomial(s: System) -> NormalizedBinomialSystem:
    """Rewrite each binomial as ``x^(a-b) = c`` with ``a`` the lex-larger
    exponent and ``c = -coef_b/coef_a``."""
    rows, rhs = [], []
    for k, p in enumerate(s.polynomials):
        if len(p) != 2:
            kind = "monomial" if len(p) == 1 else "non-binomial"
            raise ValueError(f"polynomial {k} is a {kind} equation")
        t1, t2 = sorted(p.terms, key=lambda t: t.exponent, reverse=True)
        rows.append(tuple(a - b for a, b in zip(t1.exponent, t2.exponent)))
        rhs.append(-t2.coefficient / t1.coefficient)
    return NormalizedBinomialSystem(tuple(rows), tuple(rhs), s.nvars)


@dataclass(frozen=True)
class AffineMonomialMap:
    """Affine monomial parametrization of a solution component.

    Zero variables vanish identically.  Each free variable is its own
    parameter.  Each link variable is ``coefficient * s^row`` for shared
    parameters ``s_1..s_d``; the denominators ``W`` record that
    ``t_j = s_j^W_j`` is the unimodular parameter.
    """

    nvars: int
    zero: frozenset[int]
    free: tuple[int, ...]
    link: tuple[tuple[int, Radical, tuple[int, ...]], ...]
    d: int
    W: tuple[int, ...] = ()
    skipped: frozenset[int] = field(default=frozenset())

    def __post_init__(self):
        for _, _, row in self.link:
            if len(row) != self.d:
                raise ValueError("link exponent row has wrong length")
        seen = set(self.zero) | set(self.free) | {v for v, _, _ in self.link}
        if len(seen) != self.nvars or len(self.zero) + len(self.free) + len(self.link) != self.nvars:
            raise ValueError("variable statuses must partition the variables")

    @property
    def dimension(self) -> int:
        return self.d + len(self.free)

    @property
    def link_vars(self) -> tuple[int, ...]:
        return tuple(v for v, _, _ in self.link)

    @property
    def link_matrix(self) -> list[list[int]]:
        return [list(row) for _, _, row in self.link]

    @property
    def coefficients(self) -> dict[int, Radical]:
        return {v: c for v, c, _ in self.link}

    def status(self, k: int) -> str:
        if k in self.zero:
            return "zero"
        if k in self.free:
            return "free"
        return "link"

    def key(self):
        """Canonical sort key: larger dimension first, then statuses."""
        return (-self.dimension, sorted(self.zero), self.free,
                [(v, row, not c.is_one(), str(c)) for v, c, row in self.link])

    def substitute(self, p) -> dict[tuple[int, ...], list[Radical]]:
        """Substitute the map into ``p``; returns parameter exponent ->
        coefficient summands (parameters: link ``s`` first, then free).

        ``p`` is a Polynomial or an iterable of ``(exponent, coefficient)``
        pairs whose coefficients may be Radicals.
        """
        coefs = {v: (c, row) for v, c, row in self.link}
        fpos = {v: self.d + k for k, v in enumerate(self.free)}
        out: dict[tuple[int, ...], list[Radical]] = {}
        width = self.d + len(self.free)
        pairs = [(t.exponent, t.coefficient) for t in p.terms] if isinstance(p, Polynomial) else p
        for exponent, coef in pairs:
            if any(exponent[k] for k in self.zero):
                continue
            c = Radical.from_value(coef)
            e = [0] * width
            for k, a in enumerate(exponent):
                if not a:
                    continue
                if k in fpos:
                    e[fpos[k]] += a
                else:
                    ck, row = coefs[k]
                    c = c * ck ** a
                    for j, r in enumerate(row):
                        e[j] += a * r
            out.setdefault(tuple(e), []).append(c)
        return out

    def vanishes(self, p: Polynomial) -> bool:
        return all(exact_sum_is_zero(vals) for vals in self.substitute(p).values())

    def describe(self, names: Sequence[str]) -> str:
        parts = []
        coefs = {v: (c, row) for v, c, row in self.link}
        fpar = {v: f"t{k + 1}" for k, v in enumerate(self.free)}
        for k in range(self.nvars):
            if k in self.zero:
                parts.append(f"{names[k]} = 0")
            elif k in fpar:
                parts.append(f"{names[k]} = {fpar[k]}")
            else:
                c, row = coefs[k]
                mono = "*".join(f"s{j + 1}" if e == 1 else f"s{j + 1}^{e}" if e > 0 else f"s{j + 1}^({e})"
                                for j, e in enumerate(row) if e)
                cs = str(c)
                if not mono:
                    parts.append(f"{names[k]} = {cs}")
                elif cs == "1":
                    parts.append(f"{names[k]} = {mono}")
                elif cs == "-1":
                    parts.append(f"{names[k]} = -{mono}")
                else:
                    parts.append(f"{names[k]} = ({cs})*{mono}")
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class ToricSolutionSet:
    maps: tuple[AffineMonomialMap, ...]
    V: tuple[tuple[int, ...], ...] = ()
    W: tuple[int, ...] = ()

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)


def _blocks(A: Sequence[Sequence[int]], n: int) -> list[tuple[list[int], list[int]]]:
    """Connected components of the row/variable incidence graph."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in A:
        vs = [k for k, a in enumerate(row) if a]
        for v in vs[1:]:
            parent[find(v)] = find(vs[0])
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for i, row in enumerate(A):
        root = find(next(k for k, a in enumerate(row) if a))
        groups.setdefault(root, ([], []))[0].append(i)
    for k in range(n):
        if find(k) in groups:
            groups[find(k)][1].append(k)
    return sorted(groups.values(), key=lambda g: g[1][0])


def _radical_power_product(values: Sequence[Radical], exps: Sequence[int]) -> Radical:
    r = Radical.one()
    for v, e in zip(values, exps):
        if e:
            r = r * v ** e
    return r


@lru_cache(maxsize=8192)
def _solve_block(A: tuple[tuple[int, ...], ...], c: tuple[QI, ...]):
    """Solve one connected block in local coordinates.

    Returns (K, W, coefficient vectors) where K holds the exponent rows of
    the block variables over d local parameters.
    """
    nb = len(A[0])
    kernel = rational_nullspace(A, nb)
    d = len(kernel)
    T = unimodular_extension(transpose(kernel, nb) if kernel else [[] for _ in range(nb)], nb)
    K = [[kernel[j][k] for j in range(d)] for k in range(nb)]
    # x = y^M with y_1..y_d the torus parameters; the rest solve y^B = c
    ext = [[int(T.M[k][j]) for j in range(d, nb)] for k in range(nb)]
    B = matmul(A, ext)
    r = nb - d
    sf = smith_normal_form(B, r)
    crad = [Radical.from_value(x) for x in c]
    rhs = [_radical_power_product(crad, urow) for urow in sf.U]
    diag = sf.diagonal
    for l in range(r, len(rhs)):
        if not rhs[l].is_one():
            return K, T.W, ()
    choices = [rhs[l].roots(diag[l]) for l in range(r)]
    sols = []
    for z in product(*choices):
        y = [_radical_power_product(z, vrow) for vrow in sf.V]
        sols.append(tuple(_radical_power_product(y, erow) for erow in ext))
    return K, T.W, tuple(sols)


def toric_solve(nbs: NormalizedBinomialSystem, n: int | None = None) -> ToricSolutionSet:
    """All toric components of ``x^A = c`` as monomial maps.

    Variables absent from every row are free.  Connected blocks are solved
    independently and combined as products.
    """
    n = nbs.nvars if n is None else n
    A = [list(row) for row in nbs.A]
    blocks = _blocks(A, n)
    used = {k for _, vs in blocks for k in vs}
    free = [k for k in range(n) if k not in used]
    rows_out: dict[int, list[int]] = {}
    W: list[int] = []
    per_block = []
    d = 0
    layouts = []
    for ridx, vs in blocks:
        sub = tuple(tuple(A[i][k] for k in vs) for i in ridx)
        K, Wb, sols = _solve_block(sub, tuple(nbs.c[i] for i in ridx))
        if not sols:
            return ToricSolutionSet(())
        layouts.append((vs, K, d))
        d += len(Wb)
        W.extend(Wb)
        per_block.append(sols)
    for vs, K, off in layouts:
        for k, row in zip(vs, K):
            full = [0] * d
            full[off:off + len(row)] = row
            rows_out[k] = full
    # a unit row whose parameter is private to it is a free variable
    col_users = [[k for k, row in rows_out.items() if row[j]] for j in range(d)]
    drop = []
    for j, users in enumerate(col_users):
        if len(users) == 1 and rows_out[users[0]][j] == 1 and sum(map(abs, rows_out[users[0]])) == 1:
            drop.append((j, users[0]))
    drop_cols = {j for j, _ in drop}
    freed = {k for _, k in drop}
    keep = [j for j in range(d) if j not in drop_cols]
    free = sorted(free + list(freed))
    V = {k: tuple(row[j] for j in keep) for k, row in rows_out.items() if k not in freed}
    Wk = tuple(W[j] for j in keep)
    maps = []
    for combo in product(*per_block):
        coef: dict[int, Radical] = {}
        for (vs, _, _), sol in zip(layouts, combo):
            coef.update(zip(vs, sol))
        link = tuple((k, coef[k], V[k]) for k in sorted(V))
        maps.append(AffineMonomialMap(n, frozenset(), tuple(free), link, len(keep), Wk))
    return ToricSolutionSet(tuple(maps), tuple(V[k] for k in sorted(V)), Wk)


def _reduced_binomials(s: System, zero: Iterable[int]) -> list[Polynomial] | None:
    """Set ``zero`` to 0; None if some equation becomes a nonzero monomial."""
    out = []
    for p in s.polynomials:
        q = p.set_zero(zero)
        if q.is_zero():
            continue
        if len(q) == 1:
            return None
        out.append(q)
    return out


def solve_with_zeros(s: System, zero: Iterable[int], skipped: Iterable[int] = ()) -> list[AffineMonomialMap]:
    """Maps with the given variables zero and all other variables nonzero."""
    zero = frozenset(zero)
    reduced = _reduced_binomials(s, zero)
    if reduced is None:
        return []
    if any(len(p) != 2 for p in reduced):
        raise ValueError("reduced system is not binomial")
    nbs = normalize_binomial(System(s.variables, reduced))
    # zero variables no longer occur, so toric_solve marks them free
    maps = []
    for m in toric_solve(nbs, s.nvars):
        free = tuple(k for k in m.free if k not in zero)
        maps.append(AffineMonomialMap(m.nvars, zero, free, m.link, m.d, m.W, frozenset(skipped)))
    return maps


__all__ = ["NormalizedBinomialSystem", "AffineMonomialMap", "ToricSolutionSet",
           "normalize_binomial", "toric_solve", "solve_with_zeros", "is_binomial_system"]
