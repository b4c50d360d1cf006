"""Class groups, canonical classes and Frobenius pushforwards of toric varieties,
and class-group data of invariant rings under diagonal abelian actions."""

__version__ = "0.1.0"

from .divisors import (
    TorusDivisor,
    canonical_divisor,
    class_group,
    class_of,
    div_matrix,
    gorenstein_report,
    is_cartier,
    is_principal,
    multisection_class_group,
)
from .fan import Fan, is_smooth, load_fan, rays_span_dual, validate_fan
from .frobenius import ffrt_class_set, frobenius_decompose, pn_multiplicity_oracle
from .graded import (
    DiagonalAction,
    MonomialIdealData,
    WeightedPolyRing,
    a_invariant,
    degree_ideal,
    invariant_ring_class_group,
    is_n_small,
    monomial_ideal_height,
    quasi_gorenstein_invariants,
    sl_n_smallness_check,
    surjective_grading_check,
    veronese_report,
)
from .lattice import (
    FgAbelianGroup,
    GroupElement,
    IntegerMatrix,
    SmithDecomposition,
    cokernel,
    element_of,
    generates_whole_group,
    smith_normal_form,
    solve_integral,
    subgroup_generated,
)
