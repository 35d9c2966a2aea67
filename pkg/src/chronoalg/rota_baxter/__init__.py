"""Rota–Baxter algebras: instances, derived products and Spitzer-type identities."""
from .carriers import GE, Matrix, Monomial, Seq, TPoly, laurent, poly_var
from .free import (
    compositions,
    descent_coordinates,
    descent_to_free,
    exact_descent_image,
    elementary_sequence,
    free_rb_generators,
    generator_coproduct_check,
    iota,
    iota_time_ordered,
    iterated_R,
    quasi_shuffle_lift_check,
    spitzer_algebra_checks,
    symbolic_sequence,
    time_ordered,
    word_lift,
)
from .instances import (
    INSTANCE_NAMES,
    RBInstance,
    free_rb,
    get_instance,
    is_zero,
    laurent_minimal_subtraction,
    polynomial_integration,
    sequence_of_variables,
    sequence_summation,
    triangular_projector,
    validate,
)
from .series import (
    BOHNENBLUST_CAP,
    MAGNUS_CAP,
    CycleDecomposition,
    bernoulli_form_coefficients,
    bohnenblust_lhs,
    bohnenblust_lhs_direct,
    bohnenblust_partitions,
    bohnenblust_rhs,
    bohnenblust_rhs_scaled,
    bohnenblust_spitzer,
    canonical_cycles,
    cycle_term,
    log_series_coefficients,
    magnus_checks,
    parse_cycles,
    prelie_magnus,
    prelie_magnus_generic,
    spitzer_check,
    spitzer_sides,
)
from .structures import (
    atkinson_checks,
    atkinson_inverses,
    atkinson_solve,
    bogoliubov,
    bogoliubov_checks,
    double_product,
    double_product_checks,
    half_products,
    literal_derived_bracket_jacobi,
    modified_map,
    modified_map_checks,
    nonzero,
    postlie_checks,
    postlie_products,
    prelie_checks,
    prelie_product,
    quasi_shuffle_axioms,
    rb_check,
    shuffle_axioms,
)

__all__ = [
    "BOHNENBLUST_CAP",
    "CycleDecomposition",
    "GE",
    "INSTANCE_NAMES",
    "MAGNUS_CAP",
    "Matrix",
    "Monomial",
    "RBInstance",
    "Seq",
    "TPoly",
    "atkinson_checks",
    "atkinson_inverses",
    "atkinson_solve",
    "bernoulli_form_coefficients",
    "bogoliubov",
    "bogoliubov_checks",
    "bohnenblust_lhs",
    "bohnenblust_lhs_direct",
    "bohnenblust_partitions",
    "bohnenblust_rhs",
    "bohnenblust_rhs_scaled",
    "bohnenblust_spitzer",
    "canonical_cycles",
    "compositions",
    "cycle_term",
    "descent_coordinates",
    "descent_to_free",
    "double_product",
    "double_product_checks",
    "elementary_sequence",
    "exact_descent_image",
    "free_rb",
    "free_rb_generators",
    "generator_coproduct_check",
    "get_instance",
    "half_products",
    "iota",
    "iota_time_ordered",
    "is_zero",
    "iterated_R",
    "laurent",
    "laurent_minimal_subtraction",
    "literal_derived_bracket_jacobi",
    "log_series_coefficients",
    "magnus_checks",
    "modified_map",
    "modified_map_checks",
    "nonzero",
    "parse_cycles",
    "poly_var",
    "polynomial_integration",
    "postlie_checks",
    "postlie_products",
    "prelie_checks",
    "prelie_magnus",
    "prelie_magnus_generic",
    "prelie_product",
    "quasi_shuffle_axioms",
    "quasi_shuffle_lift_check",
    "rb_check",
    "sequence_of_variables",
    "sequence_summation",
    "shuffle_axioms",
    "spitzer_algebra_checks",
    "spitzer_check",
    "spitzer_sides",
    "symbolic_sequence",
    "time_ordered",
    "triangular_projector",
    "validate",
    "word_lift",
]
