"""Critical sets of arrangement master functions and their phase-space geometry.

The package is organised around one object, :class:`ArrangementSpec`: a
generic family of n hyperplanes in C^k whose constant terms z translate the
family.  From it everything else is derived:

* ``relations`` — the Laurent-polynomial generators cutting out the closure
  of the conormal-type variety swept by critical points, plus the exact
  Poisson-bracket suite showing the generators are in involution;
* ``quotient`` — the finite-dimensional algebra of functions on the critical
  set at a fixed translation, its multiplication operators, and the special
  vector map onto the singular part of a symmetric tensor power;
* ``spectrum`` — two independent routes to the critical points (simultaneous
  diagonalisation and multistart Newton) and the Hessian/Jacobian formulas
  that tie them together;
* ``lagrangian`` — rational charts on the variety, its generating function,
  transition and projection Jacobians, and the commuting flows.
"""

from .arrangement import (
    ArrangementSpec,
    k_subsets,
    parse_rat,
    random_generic,
    rat_str,
    sample_z,
)
from .errors import CritvarError, DomainError, GenerationError, NumericError, UsageError
from .lagrangian import (
    chart_complete,
    chart_coords,
    chart_vector,
    flow_f,
    flow_g,
    generating_fd_residual,
    generating_map,
    projection_jacobian,
    projection_jacobian_fd,
    psi_value,
    sample_chart_point,
    scale_action,
    transition_expected,
    transition_jacobian_fd,
)
from .laurent import LaurentPoly, poisson
from .quotient import QuotientAlgebra, eliminate_first_kind
from .relations import (
    RelationSet,
    build_relations,
    euler_relation,
    first_kind,
    g_comb,
    g_single,
    involution_suite,
    second_kind,
)
from .spectrum import (
    CriticalPoint,
    SpectrumResult,
    hessian_direct,
    hessian_formula,
    jacobian_formula,
    joint_spectrum,
    match_point_sets,
    newton_multistart,
    poly_roots,
    smoothness_witness,
)

__all__ = [
    "ArrangementSpec",
    "CritvarError",
    "CriticalPoint",
    "DomainError",
    "GenerationError",
    "LaurentPoly",
    "NumericError",
    "QuotientAlgebra",
    "RelationSet",
    "SpectrumResult",
    "UsageError",
    "build_relations",
    "chart_complete",
    "chart_coords",
    "chart_vector",
    "eliminate_first_kind",
    "euler_relation",
    "first_kind",
    "flow_f",
    "flow_g",
    "g_comb",
    "g_single",
    "generating_fd_residual",
    "generating_map",
    "hessian_direct",
    "hessian_formula",
    "involution_suite",
    "jacobian_formula",
    "joint_spectrum",
    "k_subsets",
    "match_point_sets",
    "newton_multistart",
    "parse_rat",
    "poisson",
    "poly_roots",
    "projection_jacobian",
    "projection_jacobian_fd",
    "psi_value",
    "random_generic",
    "rat_str",
    "sample_chart_point",
    "sample_z",
    "scale_action",
    "second_kind",
    "smoothness_witness",
    "transition_expected",
    "transition_jacobian_fd",
]
