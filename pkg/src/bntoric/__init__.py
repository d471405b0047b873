"""Algebraic analysis of finite Bayesian networks.

Builds the event tree and homogenized monomial-style parametrization of
a network, decides separation statements, generates conditional
independence minors, computes graded kernel components by exact linear
algebra, and produces witness polynomials with rank certificates.
"""

from .dag import (CiStatement, DagModel, Limits, d_separated, global_markov,
                  induced_cycles_gt3, is_perfect, load_graph, ordered_markov,
                  toric_criterion, trail_separation_oracle, validate_dag)
from .errors import GuardExceeded, InputError, PreconditionError
from .ideal import (GradedBasis, GlobalGenerators, WitnessReport,
                    ci_generators, degree2_span_check, degree4_witness,
                    degree_component_of_ideal, detm_witness, expand_poly,
                    global_generators, graded_kernel, in_kernel,
                    marginal_embedding, phi_bar, plus_indices, rho_projection)
from .kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .poly import (Poly, QuotientContext, THETA_RING, X_RING, expand_plus,
                   label_var, normal_form, x_variable)
from .staged_tree import (StagedTree, build_staged_tree, check_cut_condition,
                          check_stage_axioms, leaf_monomial, random_assignment,
                          validate_assignment)
from .toric import (MonomialParam, PencilRankReport, QuadFormMatrix,
                    binomial_fibers, pairwise_rank_poly, plus_basis,
                    quad_form_rank)

__version__ = "0.1.0"

__all__ = [
    "CiStatement", "DagModel", "GradedBasis", "GlobalGenerators",
    "GuardExceeded", "InputError", "KERNEL_IMPLEMENTATION", "Limits",
    "MonomialParam", "PencilRankReport", "Poly", "PreconditionError",
    "QuadFormMatrix", "QuotientContext", "StagedTree", "THETA_RING",
    "WitnessReport", "X_RING", "binomial_fibers", "build_staged_tree",
    "check_cut_condition", "check_stage_axioms", "ci_generators",
    "d_separated", "degree2_span_check", "degree4_witness",
    "degree_component_of_ideal", "detm_witness", "expand_plus",
    "expand_poly", "global_generators", "global_markov", "graded_kernel",
    "in_kernel", "induced_cycles_gt3", "is_perfect", "label_var",
    "leaf_monomial", "load_graph", "marginal_embedding", "normal_form",
    "ordered_markov", "pairwise_rank_poly", "phi_bar", "plus_basis",
    "plus_indices", "quad_form_rank", "random_assignment", "rho_projection",
    "toric_criterion", "trail_separation_oracle", "validate_assignment",
    "validate_dag", "x_variable",
]
