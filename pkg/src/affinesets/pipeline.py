"""Decomposition pipeline, reports and the adjacent-minors benchmark family."""

from __future__ import annotations

import gc
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .binomial import AffineMonomialMap
from .enumeration import EnumerationOptions, ZeroSelection, assemble_component, enumerate_candidates
from .membership import prune_components
from .poly import System, format_polynomial, is_binomial_system, parse_system
from .polytope import degree_of_map


def _var_name(i: int, j: int, m: int, n: int) -> str:
    if m <= 9 and n <= 9:
        return f"x{i}{j}"
    return f"x{i}_{j}"


def gen_adjacent_minors(m: int, n: int) -> System:
    """The (m-1)(n-1) adjacent 2x2 minors of an m x n matrix of variables."""
    if m < 2 or n < 2:
        raise ValueError("adjacent minors need at least 2 rows and 2 columns")
    names = [_var_name(i, j, m, n) for i in range(1, m + 1) for j in range(1, n + 1)]
    lines = [" ".join(names) + ";"]
    for i in range(1, m):
        for j in range(1, n):
            a, b = _var_name(i, j, m, n), _var_name(i + 1, j + 1, m, n)
            c, d = _var_name(i + 1, j, m, n), _var_name(i, j + 1, m, n)
            lines.append(f"{a}*{b} - {c}*{d};")
    return parse_system("\n".join(lines))


def _plural(k: int, word: str) -> str:
    return f"{k} {word}" if k == 1 else f"{k} {word}s"


@dataclass(frozen=True)
class Component:
    map: AffineMonomialMap
    dimension: int
    degree: int

    @property
    def zero(self) -> frozenset[int]:
        return self.map.zero

    @property
    def skipped(self) -> frozenset[int]:
        return self.map.skipped


@dataclass
class DecompositionReport:
    system: System
    components: list[Component]
    timing: dict[str, float] = field(default_factory=dict)
    candidates: list[ZeroSelection] = field(default_factory=list)

    @property
    def totals(self) -> dict:
        by_dim: dict[int, dict[str, int]] = {}
        for c in self.components:
            entry = by_dim.setdefault(c.dimension, {"components": 0, "degree": 0})
            entry["components"] += 1
            entry["degree"] += c.degree
        return {
            "components": len(self.components),
            "degree": sum(c.degree for c in self.components),
            "by_dimension": {str(d): by_dim[d] for d in sorted(by_dim, reverse=True)},
        }

    def degree_sum(self, dimension: int | None = None) -> int:
        return sum(c.degree for c in self.components if dimension is None or c.dimension == dimension)

    def count(self, dimension: int | None = None) -> int:
        return sum(1 for c in self.components if dimension is None or c.dimension == dimension)

    def to_dict(self, timing: bool = True) -> dict:
        names = self.system.variables
        comps = []
        for c in self.components:
            m = c.map
            comps.append({
                "dimension": c.dimension,
                "degree": c.degree,
                "zero": [names[k] for k in sorted(m.zero)],
                "free": [names[k] for k in m.free],
                "link": [{"variable": names[v], "coefficient": str(coef), "exponents": list(row)}
                         for v, coef, row in m.link],
                "denominators": list(m.W),
                "skipped": sorted(m.skipped),
            })
        out = {
            "system": {
                "variables": list(names),
                "equations": [format_polynomial(p, names) for p in self.system.polynomials],
            },
            "components": comps,
            "totals": self.totals,
        }
        if timing:
            out["timing_seconds"] = {k: round(v, 6) for k, v in self.timing.items()}
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def to_text(self) -> str:
        names = self.system.variables
        lines = []
        for k, c in enumerate(self.components, 1):
            lines.append(f"component {k}: dimension {c.dimension}, degree {c.degree}")
            lines.append("  " + c.map.describe(names))
            if any(w != 1 for w in c.map.W):
                lines.append(f"  denominators {list(c.map.W)}")
        t = self.totals
        lines.append(f"{_plural(t['components'], 'component')}, total degree {t['degree']}")
        for d, entry in t["by_dimension"].items():
            lines.append(f"  dimension {d}: {_plural(entry['components'], 'component')}, degree {entry['degree']}")
        return "\n".join(lines)


def decompose(s: System, opts: EnumerationOptions = EnumerationOptions(), threads: int = 1) -> DecompositionReport:
    """Enumerate, assemble, prune and measure the components of a binomial system."""
    if not is_binomial_system(s):
        raise ValueError("full decomposition needs a binomial system")
    timing = {}
    t0 = time.perf_counter()
    cands = enumerate_candidates(s, opts)
    timing["enumerate"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            groups = list(pool.map(lambda c: assemble_component(c, s), cands))
    else:
        groups = [assemble_component(c, s) for c in cands]
    maps = [m for g in groups for m in g]
    timing["assemble"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    pruned = prune_components(maps)
    timing["prune"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    comps = [Component(m, m.dimension, degree_of_map(m)) for m in pruned]
    timing["degree"] = time.perf_counter() - t0
    timing["total"] = sum(timing.values())
    return DecompositionReport(s, comps, timing, cands)


@dataclass(frozen=True)
class ScalingRow:
    n: int
    components: int
    degree: int
    search_seconds: float
    total_seconds: float


def clear_caches() -> None:
    """Reset memoized block solutions, volumes and factorizations."""
    from . import binomial, numbers, polytope
    for f in (binomial._solve_block, numbers._two_squares, numbers._factor_gaussian_int,
              polytope._volume, polytope._block_degree):
        f.cache_clear()


def bench_scaling(n_max: int, n_min: int = 3, threads: int = 1) -> list[ScalingRow]:
    """Pure-dimension decomposition of the 2 x n adjacent minors.

    ``search_seconds`` is the time of the combinatorial search alone;
    ``total_seconds`` adds assembly, pruning and degrees.  Caches are
    cleared before each size so every row starts cold.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    rows = []
    opts = EnumerationOptions(pure_dimension=True)
    for n in range(max(3, n_min), n_max + 1):
        s = gen_adjacent_minors(2, n)
        clear_caches()
        gc.collect()
        t0 = time.perf_counter()
        rep = decompose(s, opts, threads)
        total = time.perf_counter() - t0
        rows.append(ScalingRow(n, len(rep.components), rep.degree_sum(), rep.timing["enumerate"], total))
    return rows


def format_scaling(rows: Sequence[ScalingRow]) -> str:
    out = [f"{'n':>3} {'maps':>7} {'degree':>9} {'search s':>10} {'total s':>10}"]
    out += [f"{r.n:>3} {r.components:>7} {r.degree:>9} {r.search_seconds:>10.3f} {r.total_seconds:>10.3f}"
            for r in rows]
    return "\n".join(out)
