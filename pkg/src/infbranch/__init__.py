"""Infinity branches of plane algebraic curves and comparison of their
asymptotic behavior via Newton–Puiseux expansion."""

from .branches import (InfinityBranch, InfinityPoint, Leaf, branch_degree,
                       infinity_branches, infinity_points, nonnegative_part,
                       prepare_pair, sample_leaf)
from .compare import (BehaviorReport, ConvergenceWitness, approach_profile,
                      branches_convergent, hausdorff_estimate, leaves_convergent,
                      same_asymptotic_behavior)
from .config import Config
from .parser import parse_polynomial
from .polynomial import (BivariatePolynomial, apply_shear, homogenize, leading_form,
                         restrict_chart, shift_y, square_free_part)
from .puiseux import (PuiseuxSeries, canonical_representative, conjugates,
                      evaluate_series, expand_at_origin)
from .roots import find_roots, resolve_fiber

__version__ = "0.1.0"

__all__ = [
    "BehaviorReport", "BivariatePolynomial", "Config", "ConvergenceWitness",
    "InfinityBranch", "InfinityPoint", "Leaf", "PuiseuxSeries", "apply_shear",
    "approach_profile", "branch_degree", "branches_convergent",
    "canonical_representative", "conjugates", "evaluate_series", "expand_at_origin",
    "find_roots", "hausdorff_estimate", "homogenize", "infinity_branches",
    "infinity_points", "leading_form", "leaves_convergent", "nonnegative_part",
    "parse_polynomial", "prepare_pair", "resolve_fiber", "restrict_chart",
    "same_asymptotic_behavior", "sample_leaf", "shift_y", "square_free_part",
]
