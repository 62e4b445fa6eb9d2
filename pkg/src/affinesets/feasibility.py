"""Exact rational feasibility for homogeneous cone systems.

Both solvers look for ``v`` with ``E v = 0`` and ``G v > 0`` componentwise.
Fourier-Motzkin is simple and fine for the small edge problems; the simplex
variant scales better and backs the cone intersection routine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import rational_nullspace

Vector = list[Fraction]


def _reduce_equalities(E: Sequence[Sequence[int]], G: Sequence[Sequence[int]], n: int):
    """Parametrize ``E v = 0`` as ``v = N z``; return N (n x k) and G*N."""
    if E:
        basis = rational_nullspace(E, n)
    else:
        basis = [[int(i == j) for i in range(n)] for j in range(n)]
    k = len(basis)
    GN = [[sum(Fraction(g[i]) * basis[j][i] for i in range(n)) for j in range(k)] for g in G]
    return basis, GN


def _lift(basis, z, n) -> Vector:
    return [sum((Fraction(b[i]) * zj for b, zj in zip(basis, z)), Fraction(0)) for i in range(n)]


def _trivial_answer(basis, n) -> Vector:
    # no inequalities: prefer a nonzero point of the subspace
    if basis:
        return [Fraction(x) for x in basis[0]]
    return [Fraction(0)] * n


def fourier_motzkin(E: Sequence[Sequence[int]], G: Sequence[Sequence[int]], n: int) -> Vector | None:
    """Witness of ``E v = 0, G v > 0`` by Fourier-Motzkin elimination, or None."""
    basis, GN = _reduce_equalities(E, G, n)
    k = len(basis)
    if not G:
        return _trivial_answer(basis, n)
    # constraints: (coefficients, strict) meaning coef . z > 0 (or >= 0)
    system = [(row, True) for row in GN]
    history = []
    for var in range(k):
        pos, neg, rest = [], [], []
        for row, strict in system:
            (pos if row[var] > 0 else neg if row[var] < 0 else rest).append((row, strict))
        history.append((pos, neg))
        combined = list(rest)
        seen = set()
        for p, sp in pos:
            for q, sq in neg:
                a, b = p[var], -q[var]
                row = [b * x + a * y for x, y in zip(p, q)]
                key = (tuple(_normalize(row)), sp or sq)
                if key not in seen:
                    seen.add(key)
                    combined.append((row, sp or sq))
        system = combined
    for row, strict in system:
        if strict:
            return None
    z: list[Fraction] = [Fraction(0)] * k
    for var in reversed(range(k)):
        pos, neg = history[var]
        lo, lo_strict, hi, hi_strict = None, False, None, False
        for row, strict in pos:
            # row[var]*z_var + rest > 0  =>  z_var > -rest/row[var]
            bound = -sum(row[j] * z[j] for j in range(var + 1, k)) / row[var]
            if lo is None or bound > lo or (bound == lo and strict):
                lo, lo_strict = bound, strict
        for row, strict in neg:
            bound = -sum(row[j] * z[j] for j in range(var + 1, k)) / row[var]
            if hi is None or bound < hi or (bound == hi and strict):
                hi, hi_strict = bound, strict
        if lo is None and hi is None:
            z[var] = Fraction(0)
        elif lo is None:
            z[var] = hi - 1
        elif hi is None:
            z[var] = lo + 1
        else:
            z[var] = (lo + hi) / 2
    v = _lift(basis, z, n)
    assert all(sum(Fraction(g[i]) * v[i] for i in range(n)) > 0 for g in G)
    return v


def _normalize(row):
    nz = [abs(x) for x in row if x]
    if not nz:
        return row
    m = min(nz)
    return [x / m for x in row]


def simplex_interior(E: Sequence[Sequence[int]], G: Sequence[Sequence[int]], n: int) -> Vector | None:
    """Witness of ``E v = 0, G v > 0`` by maximizing a slack, or None.

    Solves ``max tau`` subject to ``G N z >= tau``, ``tau <= 1`` with an
    exact tableau simplex and Bland's rule.
    """
    basis, GN = _reduce_equalities(E, G, n)
    k = len(basis)
    if not G:
        return _trivial_answer(basis, n)
    m = len(GN)
    # columns: z+ (k), z- (k), tau, s (m), r
    ncol = 2 * k + 1 + m + 1
    tau = 2 * k
    rows = []
    for i, g in enumerate(GN):
        row = [Fraction(0)] * (ncol + 1)
        for j in range(k):
            row[j] = -g[j]
            row[k + j] = g[j]
        row[tau] = Fraction(1)
        row[tau + 1 + i] = Fraction(1)
        rows.append(row)
    last = [Fraction(0)] * (ncol + 1)
    last[tau] = Fraction(1)
    last[ncol - 1] = Fraction(1)
    last[ncol] = Fraction(1)
    rows.append(last)
    basic = [tau + 1 + i for i in range(m)] + [ncol - 1]
    obj = [Fraction(0)] * (ncol + 1)
    obj[tau] = Fraction(-1)  # reduced costs of max tau
    while True:
        enter = next((j for j in range(ncol) if obj[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[ncol] / row[enter]
                if best is None or ratio < best or (ratio == best and basic[i] < basic[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise AssertionError("slack objective cannot be unbounded")
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i, row in enumerate(rows):
            if i != leave and row[enter]:
                f = row[enter]
                rows[i] = [a - f * b for a, b in zip(row, rows[leave])]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, rows[leave])]
        basic[leave] = enter
    value = obj[ncol]
    if value <= 0:
        return None
    x = [Fraction(0)] * ncol
    for i, b in enumerate(basic):
        x[b] = rows[i][ncol]
    z = [x[j] - x[k + j] for j in range(k)]
    v = _lift(basis, z, n)
    assert all(sum(Fraction(g[i]) * v[i] for i in range(n)) > 0 for g in G)
    return v
