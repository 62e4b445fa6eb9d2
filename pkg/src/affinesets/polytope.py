"""Lattice polytopes: normalized volumes, map degrees and Newton polytope edges."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .binomial import AffineMonomialMap
from .feasibility import fourier_motzkin
from .linalg import determinant, hermite_normal_form, rank

Point = tuple[int, ...]


def _orient(facet: Sequence[Point], p: Point) -> int:
    return determinant([[a - b for a, b in zip(f, p)] for f in facet])


@lru_cache(maxsize=4096)
def _volume(points: tuple[Point, ...]) -> int:
    D = len(points[0])
    # initial simplex by incremental rank
    chosen = [0]
    base = points[0]
    diffs: list[list[int]] = []
    for k in range(1, len(points)):
        cand = diffs + [[a - b for a, b in zip(points[k], base)]]
        if rank(cand) == len(cand):
            diffs = cand
            chosen.append(k)
            if len(chosen) == D + 1:
                break
    if len(chosen) < D + 1:
        return 0
    verts = [points[k] for k in chosen]
    volume = abs(determinant(diffs))
    facets: dict[int, tuple[tuple[int, ...], Point]] = {}
    ridges: dict[frozenset, set[int]] = {}
    counter = 0

    def add_facet(vs: tuple[int, ...], ref: Point):
        nonlocal counter
        fid = counter
        counter += 1
        facets[fid] = (vs, ref)
        for r in combinations(vs, D - 1):
            ridges.setdefault(frozenset(r), set()).add(fid)

    def remove_facet(fid: int):
        vs, _ = facets.pop(fid)
        for r in combinations(vs, D - 1):
            key = frozenset(r)
            ridges[key].discard(fid)
            if not ridges[key]:
                del ridges[key]

    pts = list(points)
    for k, idx in enumerate(chosen):
        rest = tuple(c for c in chosen if c != idx)
        add_facet(rest, pts[idx])
    skip = set(chosen)
    for k, p in enumerate(pts):
        if k in skip:
            continue
        visible = []
        for fid, (vs, ref) in facets.items():
            fpts = [pts[v] for v in vs]
            o = _orient(fpts, p)
            if o and (o > 0) != (_orient(fpts, ref) > 0):
                visible.append(fid)
                volume += abs(o)
        if not visible:
            continue
        vis = set(visible)
        new = []
        for fid in visible:
            vs, _ = facets[fid]
            for drop in vs:
                ridge = tuple(v for v in vs if v != drop)
                owners = ridges[frozenset(ridge)]
                if any(o not in vis for o in owners):
                    new.append((ridge, pts[drop]))
        for fid in visible:
            remove_facet(fid)
        for ridge, ref in new:
            add_facet(ridge + (k,), ref)
    return volume


def normalized_volume(points: Iterable[Sequence[int]]) -> int:
    """``D!`` times the Euclidean volume of the convex hull, exactly.

    Placing triangulation: each point is coned to the boundary facets it
    sees.  Lower-dimensional hulls have volume 0.
    """
    pts = tuple(dict.fromkeys(tuple(int(x) for x in p) for p in points))
    if not pts:
        return 0
    if len(pts[0]) == 0:
        return 1
    return _volume(tuple(sorted(pts)))


def lattice_index(rows: Sequence[Sequence[int]], dim: int) -> int:
    """Index of the lattice spanned by ``rows`` in ``Z^dim`` (0 if not full rank)."""
    if dim == 0:
        return 1
    hf = hermite_normal_form([list(r) for r in rows], dim)
    if hf.rank < dim:
        return 0
    out = 1
    for k, c in enumerate(hf.pivots):
        out *= hf.H[k][c]
    return out


def _param_blocks(rows: Sequence[Sequence[int]], d: int) -> list[list[int]]:
    """Group parameters that occur together in some row."""
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        nz = [j for j, e in enumerate(row) if e]
        for j in nz[1:]:
            parent[find(j)] = find(nz[0])
    groups: dict[int, list[int]] = {}
    for j in range(d):
        groups.setdefault(find(j), []).append(j)
    return list(groups.values())


@lru_cache(maxsize=4096)
def _block_degree(rows: tuple[Point, ...]) -> Fraction:
    dim = len(rows[0])
    vol = normalized_volume(((0,) * dim,) + rows)
    return Fraction(vol, lattice_index(rows, dim))


def degree_of_map(c: AffineMonomialMap) -> int:
    """Degree of the closure of the map's image.

    Free variables add pyramid directions of height one and leave the
    normalized volume unchanged.  The link part contributes the normalized
    volume of the origin and the link exponent rows, divided by the index
    of the lattice those rows span.  Parameter blocks that share no row
    multiply.
    """
    rows = c.link_matrix
    if c.d == 0:
        return 1
    deg = Fraction(1)
    for block in _param_blocks(rows, c.d):
        sub = tuple(sorted({tuple(r[j] for j in block) for r in rows if any(r[j] for j in block)}))
        deg *= _block_degree(sub)
    if deg.denominator != 1 or deg <= 0:
        raise ArithmeticError(f"degree {deg} is not a positive integer")
    return int(deg)


@dataclass(frozen=True)
class EdgeWithCone:
    """Edge of a Newton polytope and its inner normal cone
    ``{v : eq . v = 0, ineq . v > 0 for each ineq}``."""

    endpoints: tuple[Point, Point]
    equalities: tuple[Point, ...]
    inequalities: tuple[Point, ...]
    witness: tuple[Fraction, ...]


def newton_edges(support: Iterable[Sequence[int]]) -> list[EdgeWithCone]:
    """Edges of the convex hull of ``support`` with exact normal cones."""
    pts = sorted({tuple(int(x) for x in p) for p in support})
    if len(pts) < 2:
        raise ValueError("need at least two distinct points")
    n = len(pts[0])
    edges = []
    for a, b in combinations(pts, 2):
        ab = [y - x for x, y in zip(a, b)]
        eq, ineq, ok = [tuple(ab)], [], True
        for c in pts:
            if c in (a, b):
                continue
            ac = [y - x for x, y in zip(a, c)]
            if rank([ab, ac]) == 1:
                # collinear points must lie between a and b
                t = Fraction(sum(x * y for x, y in zip(ab, ac)), sum(x * x for x in ab))
                if not 0 <= t <= 1:
                    ok = False
                    break
                continue
            ineq.append(tuple(ac))
        if not ok:
            continue
        v = fourier_motzkin([list(e) for e in eq], [list(g) for g in ineq], n)
        if v is None:
            continue
        edges.append(EdgeWithCone((a, b), tuple(eq), tuple(ineq), tuple(v)))
    return edges
