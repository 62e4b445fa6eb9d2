"""Affine solution sets of sparse polynomial systems as monomial maps."""

from .binomial import (AffineMonomialMap, NormalizedBinomialSystem, ToricSolutionSet, normalize_binomial,
                       solve_with_zeros, toric_solve)
from .enumeration import (EnumerationOptions, IncidenceMatrix, ZeroSelection, assemble_component,
                          enumerate_candidates, enumerate_zero_sets, incidence_matrix)
from .feasibility import fourier_motzkin, simplex_interior
from .linalg import (determinant, hermite_normal_form, integer_kernel, left_kernel, smith_normal_form,
                     unimodular_extension)
from .membership import (BinomialGenerator, DefiningEquations, circuits, contains, contains_by_generators,
                         defining_equations, equivalent, prune_components, vanishes_on)
from .numbers import QI, Radical
from .pipeline import (Component, DecompositionReport, ScalingRow, bench_scaling, decompose,
                       format_scaling, gen_adjacent_minors)
from .poly import (ParseError, Polynomial, System, format_polynomial, format_system, is_binomial_system,
                   parse_system, serialize, support)
from .polytope import degree_of_map, lattice_index, newton_edges, normalized_volume
from .tropical import (INF, CandidateTuple, CaseSolution, UnresolvedCurve, check_specialization_commutes,
                       cone_intersection, enumerate_tuples, initial_form, parse_weight, solve_case,
                       solve_general)

__version__ = "0.1.0"
