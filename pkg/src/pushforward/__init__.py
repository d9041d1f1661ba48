"""Presentation matrices of pushforward modules for finite map germs,
Fitting ideals, multiple-point schemes and derived singularity invariants,
all over exact rational arithmetic."""

from .errors import (
    ContextMismatchError,
    DegreeCapError,
    ExactDivisionError,
    NotFiniteMapError,
    PolynomialParseError,
    ProblemFileError,
    PushforwardError,
    TimeLimitError,
    UnsupportedConfigurationError,
)
from .ring import (
    EQ,
    GT,
    LT,
    MonomialOrdering,
    Polynomial,
    QQ,
    RingContext,
    RingMap,
    compare,
    parse_polynomial,
    render_polynomial,
)
from .stdbasis import (
    INFINITE,
    Ideal,
    QuotientBasis,
    eliminate,
    ideal_contains,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    kbase,
    normal_form,
    standard_basis,
    vdim,
)
from .presentation import (
    AnsatzRow,
    GeneratorSet,
    MapGermProblem,
    PresentationMatrix,
    ansatz_row,
    build_row_system,
    presentation_matrix,
    pullback_generators,
    solve_exact,
    verify_row_relations,
    verify_y_structure,
)
from .fitting import (
    FittingChain,
    InvariantReport,
    fitting_chain,
    fitting_ideal,
    milnor_number,
    minors,
    multiple_point_scheme,
    plane_map_invariants,
    triple_point_count,
)
from .geometry import (
    DividedDifferenceMatrix,
    divided_differences,
    double_point_ideal,
    doubled_context,
    jacobian_determinant,
    singular_restriction,
    source_double_points,
    swap_map,
)

__all__ = [name for name in dir() if not name.startswith("_")]
