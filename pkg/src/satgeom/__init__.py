"""Saturating and (1, mu)-saturating sets in finite projective planes and spaces."""

from .bounds import (BoundValue, D_closed, D_sequence, R_wq, T_count, comparison_bounds, delta,
                     lambda_upper, pi_exact, pi_float, pi_mu_closed, pi_mu_exact, pi_mu_float,
                     pi_upper, space_bounds, theorem1_bound, theorem2_bound, threshold_scan)
from .codes import (ParityCheckMatrix, check_mcf, export_parity_check, length_function_table,
                    load_matrix, dump_matrix)
from .geometry import (IncidencePlane, ProjectiveSpace, build_pg2, build_space, dump_plane,
                       line_points, line_through, load_plane)
from .gf import FieldElement, FieldSpec, arith, field_new, field_of_order
from .oracle import (EnumerationBudget, brute_covering_radius, brute_min_saturating, brute_pi,
                     brute_T)
from .randomized import (ConstructionResult, ConstructorParams, construct_mu_direct,
                         construct_mu_iterative, construct_saturating, extend_mu, monte_carlo,
                         sample_subset)
from .saturation import (CoverageProfile, PointSet, coverage_profile, is_mu_saturating,
                         is_saturating, is_saturating_space)

__version__ = "0.1.0"
