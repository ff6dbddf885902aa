"""Groebner-free binomiality detection for polynomial ideals."""

from .scalars import Fraction, ParamPoly, RatFun, param, ratfun_reduce, set_gcd_reduction
from .polynomial import PolyRing, Polynomial, PolySystem, homogenize, dehomogenize
from .parsing import ParseError, parse_system, load_system
from .linalg import linearize, pkb_test, prune_redundant_generators, rref, sparse_vector_in_rowspace
from .quotient import QuotientStructure, enumerate_classes, reduce_to_classes
from .certificates import Certificate, Presentation, certify_file
from .detector import DetectionResult, detect_binomial_homogeneous, extend_with_monomial_multiples
from .heuristics import (PipelineReport, RecipeOptions, RewriteRule, homogenize_and_detect, linear_pass,
                         run_recipe, substitute, substitution_search)
from .crn import ReactionNetwork, load_network, parse_network, steady_state_system
from .groebner import GuardExceeded, buchberger, is_binomial_ideal_oracle, quotient_dimension_oracle

__all__ = [
    "Certificate",
    "DetectionResult",
    "Fraction",
    "GuardExceeded",
    "ParamPoly",
    "ParseError",
    "PipelineReport",
    "PolyRing",
    "PolySystem",
    "Polynomial",
    "Presentation",
    "QuotientStructure",
    "RatFun",
    "ReactionNetwork",
    "RecipeOptions",
    "RewriteRule",
    "buchberger",
    "certify_file",
    "dehomogenize",
    "detect_binomial_homogeneous",
    "enumerate_classes",
    "extend_with_monomial_multiples",
    "homogenize",
    "homogenize_and_detect",
    "is_binomial_ideal_oracle",
    "linear_pass",
    "linearize",
    "load_network",
    "load_system",
    "param",
    "parse_network",
    "parse_system",
    "pkb_test",
    "prune_redundant_generators",
    "quotient_dimension_oracle",
    "ratfun_reduce",
    "reduce_to_classes",
    "rref",
    "run_recipe",
    "set_gcd_reduction",
    "sparse_vector_in_rowspace",
    "steady_state_system",
    "substitute",
    "substitution_search",
]
