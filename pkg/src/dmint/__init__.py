"""Exact ODE-coefficient composition and D-transformation integral acceleration."""

from .symseries import (
    AsymptoticProfile,
    GeneralizedPolynomial,
    GeneralizedRational,
    RationalParseError,
    compose_poly,
    parse_rational,
    profile,
    to_text,
)
from .bell import PartitionIndex, bell_eval, enumerate_indices, l_matrix
from .compose import (
    B1Report,
    CompositionResult,
    OdeCoefficients,
    OrderBounds,
    compose_ode,
    order_bounds,
    rho_bounds,
    verify_b1_membership,
)
from .exprtaylor import (
    ExprDomainError,
    ExprSyntaxError,
    Jet,
    derivatives,
    evaluate,
    parse,
)
from .quad import (
    CumulativeIntegrals,
    QuadratureError,
    SampleGrid,
    cumulative,
    gauss_nodes,
    grid_from_descriptor,
    panel_integrate,
)
from .dtransform import (
    DSystemSpec,
    ExtrapolationTable,
    SampleRow,
    SingularSystemError,
    TableEntry,
    build_system,
    d_sequence,
    friendly_exponents,
    solve,
    solve_vector,
)

__version__ = "0.1.0"
