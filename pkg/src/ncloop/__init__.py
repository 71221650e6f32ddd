"""Exact computations in the loop of power series ``t + a_1 t^2 + ...`` under substitution,
with coefficients in a noncommutative algebra over Q."""

from .algebra import (
    AlgElt,
    Algebra,
    algebra_from_structure_constants,
    builtin,
    check_s_comm_ideal,
    free_truncated_algebra,
)
from .errors import NCLoopError
from .lie import (
    CoeffPoly,
    check_st_identity,
    jacobi_check,
    sabinin_axioms_check,
    standard_identity,
    wronskian_bracket,
)
from .loopcalc import (
    DeviationExpr,
    check_group,
    filtration_bracket,
    klopsch_witness,
    loop_associator,
    loop_commutator,
    n_sequence_check,
    p_nm,
)
from .series import (
    Series,
    associator_defect,
    bullet,
    compose,
    depth,
    left_divide,
    linearized_composition,
    right_divide,
    star,
    star_left_divide,
    star_right_divide,
    unit,
)
from .su import GradedElt, multioperator_phi, sabinin_binary, sabinin_closed, su_bracket, su_p
from .textio import parse_series

__version__ = "0.1.0"
