"""Exact integer and rational matrix algebra.

Matrices are lists of rows.  Integer entries are Python ints, rational ones
``Fraction``.  Functions never mutate their arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _eliminator(a: int, b: int) -> tuple[int, int, int, int]:
    """Unimodular 2x2 ``[[x, y], [p, q]]`` sending ``(a, b)`` to ``(g, 0)``."""
    if a and b % a == 0:
        return 1, 0, -b // a, 1
    g, x, y = xgcd(a, b)
    return x, y, -b // g, a // g


def determinant(A: Sequence[Sequence]) -> Fraction | int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) for row in A for x in row):
        den = math.lcm(*(Fraction(x).denominator for row in A for x in row))
        scaled = [[int(Fraction(x) * den) for x in row] for row in A]
        return Fraction(determinant(scaled), den ** n)
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rref(A: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M[0]) if M else (ncols or 0)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    return len(rref(A)[1]) if A else 0


def primitive(v: Sequence) -> list[int]:
    """Scale a nonzero rational vector to a primitive integer vector."""
    den = math.lcm(*(Fraction(x).denominator for x in v))
    w = [int(Fraction(x) * den) for x in v]
    g = math.gcd(*w)
    return [x // g for x in w] if g else w


def rational_nullspace(A: Sequence[Sequence], ncols: int) -> list[list[int]]:
    """Primitive integer basis of the rational null space, one vector per
    free column of the RREF, first nonzero entry positive."""
    R, pivots = rref(A, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        w = primitive(v)
        if next(x for x in w if x) < 0:
            w = [-x for x in w]
        basis.append(w)
    return basis


@dataclass(frozen=True)
class HermiteForm:
    H: Matrix
    U: Matrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def hermite_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> HermiteForm:
    """Row-style HNF: ``U*A == H`` with U unimodular, H echelon, positive
    pivots and entries above each pivot reduced into ``[0, pivot)``."""
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    H = [list(map(int, row)) for row in A]
    U = identity(m)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if not b:
                continue
            x, y, p, q = _eliminator(H[r][c], b)
            for M in (H, U):
                ra, rb = M[r], M[i]
                M[r] = [x * u + y * v for u, v in zip(ra, rb)]
                M[i] = [p * u + q * v for u, v in zip(ra, rb)]
        if not H[r][c]:
            continue
        if H[r][c] < 0:
            H[r] = [-v for v in H[r]]
            U[r] = [-v for v in U[r]]
        piv = H[r][c]
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [u - f * v for u, v in zip(H[i], H[r])]
                U[i] = [u - f * v for u, v in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return HermiteForm(H, U, tuple(pivots))


@dataclass(frozen=True)
class SmithForm:
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[k][k] for k in range(min(len(self.S), len(self.V)))]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """``U*A*V == S`` with S diagonal, nonnegative, each entry dividing the next."""
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    S = [list(map(int, row)) for row in A]
    U, V = identity(m), identity(n)

    def row_op(i, j, x, y, p, q):
        # rows (i, j) <- (x*ri + y*rj, p*ri + q*rj)
        for M in (S, U):
            ri, rj = M[i], M[j]
            M[i] = [x * a + y * b for a, b in zip(ri, rj)]
            M[j] = [p * a + q * b for a, b in zip(ri, rj)]

    def col_op(i, j, x, y, p, q):
        for M in (S, V):
            for row in M:
                a, b = row[i], row[j]
                row[i], row[j] = x * a + y * b, p * a + q * b

    for t in range(min(m, n)):
        entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        if i0 != t:
            row_op(t, i0, 0, 1, 1, 0)
        if j0 != t:
            col_op(t, j0, 0, 1, 1, 0)
        while True:
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    row_op(t, i, *_eliminator(S[t][t], S[i][t]))
                    clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    col_op(t, j, *_eliminator(S[t][t], S[t][j]))
                    clean = False
            if not clean:
                continue
            piv = S[t][t]
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv), None)
            if bad is None:
                break
            row_op(t, bad, 1, 1, 0, 1)
        if S[t][t] < 0:
            for M in (S, U):
                M[t] = [-v for v in M[t]]
    return SmithForm(U, S, V)


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Saturated integer kernel of A as an ``ncols x k`` matrix whose columns
    form an HNF-reduced lattice basis."""
    n = len(A[0]) if A else (ncols or 0)
    if A:
        hf = hermite_normal_form(transpose(A))
        basis = hf.U[hf.rank:]
    else:
        basis = identity(n)
    if not basis:
        return [[] for _ in range(n)]
    return transpose(hermite_normal_form(basis).H)


def left_kernel(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Saturated HNF-reduced basis (as rows) of ``{u : u*A == 0}``."""
    m = len(A)
    if m == 0:
        return []
    if ncols == 0:
        return identity(m)
    K = integer_kernel(transpose(A), m)
    return transpose(K) if K[0] else []


@dataclass(frozen=True)
class UnimodularTransform:
    M: list[list[Fraction]]
    W: list[int]
    d: int
    kernel: Matrix  # primitive integer columns, n x d


def unimodular_extension(V: Sequence[Sequence], n: int) -> UnimodularTransform:
    """Extend the ``n x d`` matrix V (independent columns) to M with det 1.

    Columns of V are made primitive, divided by the Hermite pivots of their
    span, and completed with unit vectors at the non-pivot coordinates.
    """
    d = len(V[0]) if V and V[0] else 0
    cols = [primitive(col) for col in transpose(V)] if d else []
    hf = hermite_normal_form(cols, n)
    if hf.rank != d:
        raise ValueError("columns of V are linearly dependent")
    W = [hf.H[k][c] for k, c in enumerate(hf.pivots)]
    rest = [c for c in range(n) if c not in hf.pivots]
    Mcols = [[Fraction(x, w) for x in col] for col, w in zip(cols, W)]
    Mcols += [[Fraction(int(i == c)) for i in range(n)] for c in rest]
    M = transpose(Mcols, n)
    det = determinant(M)
    if det == -1:
        M = [row[:-1] + [-row[-1]] for row in M]
    elif det != 1:
        raise AssertionError(f"extension has determinant {det}")
    return UnimodularTransform(M, W, d, transpose(cols, n) if cols else [[] for _ in range(n)])
