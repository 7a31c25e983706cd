"""Choquet-Bochner integrals of real functions on finite ground sets."""

from .capacity import (
    Capacity,
    GroundSet,
    SetFunction,
    additive_measure,
    capacity_violations,
    distort,
    dual,
    inner_lower_variation,
    inner_upper_variation,
    is_submodular,
    is_supermodular,
    jordan_decomposition,
    set_function_from,
    unanimity,
    validate_capacity,
    variation,
)
from .errors import ChoquetError
from .integral import (
    GroundFunction,
    choquet_quadrature,
    choquet_sorted,
    is_comonotone,
    quadrature_error_bound,
    random_comonotone_pair,
)
from .operators import (
    GridLattice,
    OperatorHandle,
    builtin_operator,
    cb_operator,
    check_axioms,
    check_decomposition,
    decompose,
    extract_capacity,
    grid_variation,
    urysohn_sequence,
    verify_representation,
)
from .ordered_values import OrderedValue, ValueKind, jacobi_eigh, leq, modulus, norm
from .reports import PropertyReport

__version__ = "0.1.0"
