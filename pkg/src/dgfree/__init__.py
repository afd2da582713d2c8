"""Exact computations with connected cochain DG free algebras.

Crisscross matrix tuples and their induced differentials, degree-wise
cohomology with canonical representatives, semi-free module resolutions,
Ext-algebras with Frobenius forms, automorphism groups of truncated
polynomial algebras, and the derived Picard comparison of the two bundled
algebras.  All arithmetic is exact (rationals or prime fields).
"""

from .exact import Echelon, GF, Matrix, QQ, rank_and_kernel, solve
from .freealg import (GradedElement, degree_basis, from_vector, parse,
                      render, to_vector, word_at, word_index)
from .dg import (CheckResult, CrisscrossTuple, DgFreeAlgebra,
                 algebra_preset_names, apply_differential, crisscross_check,
                 d_squared_on_generators, generator_image, load_algebra,
                 load_tuple, preset_algebra, preset_tuple, tuple_from_json,
                 tuple_to_json)
from .cohomology import (CohomologyClass, DEFAULT_MAX_DEGREE,
                         RingPresentation, boundary_matrix, boundary_rank,
                         canonical_class, class_product, cohomology_basis,
                         cohomology_dim, cohomology_report, is_coboundary,
                         max_degree_cap, preset_presentation,
                         ring_presentation_check)
from .semifree import (MaurerCartanResult, ModuleElement, SemifreeModule,
                       homology_dims, koszul_certificate, load_module,
                       maurer_cartan_check, minimality_check,
                       module_differential, module_from_json,
                       module_preset_names, preset_module)
from .ext import (StructureConstantAlgebra, commutant_constraints,
                  degree_zero_endomorphism_basis, ext_report,
                  ext_structure_constants, frobenius_form, frobenius_gram,
                  truncated_polynomial_algebra,
                  truncated_polynomial_recognize)
from .laurent import (LaurentContext, LaurentPoly, laurent_context,
                      matrix_identity_check, matrix_identity_spot_check,
                      sym_det, sym_matmul)
from .autgroup import (AutConstraintSystem, AutFamily, aut_constraints,
                       brute_force_aut, family_closure_check,
                       family_compose_params, family_inverse_check,
                       family_inverse_params, family_matches_brute_force,
                       family_membership_check, family_symbolic_checks,
                       group_axiom_check, is_automorphism_matrix,
                       truncated_polynomial_aut_family)
from .picard import (DPicDescriptor, G1Element, G2Element, SubgroupCensus,
                     abelianization, commutator, commutator_witness,
                     commutator_subgroup_brute_force, conjugation_action,
                     expected_g2_subgroups, g1_identity, g2_identity,
                     invariant_subgroup_census, inverse, kernel_membership,
                     mul, non_isomorphism_certificate,
                     symbolic_group_checks)

__version__ = "0.1.0"
