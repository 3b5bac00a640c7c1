"""Exact invariants of orders in products of number fields and the analytic
class number formula for them."""

from .algebra import EtaleAlgebra, FieldSpec, MaximalFieldData, build_algebra, build_field
from .errors import (
    ACNFError,
    InconsistencyError,
    InputError,
    InvalidOrderError,
    UnsupportedTargetError,
)
from .finite import (
    FiniteQuotientRing,
    global_unit_index,
    local_unit_index,
    quotient_ring,
    roots_of_unity,
    unit_count_brute,
)
from .invariants import (
    LeadingTerm,
    OrderInvariants,
    class_number,
    leading_term_lhs,
    leading_term_rhs,
    maximal_invariants,
    order_invariants,
    regulator,
    verify_acnf,
    zeta_correction,
    zeta_partial,
)
from .oracle import LogEmbedding, direct_regulator, fiber_product_order, form_class_number
from .order import (
    ConductorIdeal,
    OrderLattice,
    SingularPrimeData,
    conductor,
    discriminant,
    maximal_order,
    order_from_generators,
    singular_primes,
)

__version__ = "0.1.0"

__all__ = [
    "ACNFError", "ConductorIdeal", "EtaleAlgebra", "FieldSpec", "FiniteQuotientRing",
    "InconsistencyError", "InputError", "InvalidOrderError", "LeadingTerm", "LogEmbedding",
    "MaximalFieldData", "OrderInvariants", "OrderLattice", "SingularPrimeData",
    "UnsupportedTargetError", "build_algebra", "build_field", "class_number", "conductor",
    "direct_regulator", "discriminant", "fiber_product_order", "form_class_number",
    "global_unit_index", "leading_term_lhs", "leading_term_rhs", "local_unit_index",
    "maximal_invariants", "maximal_order", "order_from_generators", "order_invariants",
    "quotient_ring", "regulator", "roots_of_unity", "singular_primes", "unit_count_brute",
    "verify_acnf", "zeta_correction", "zeta_partial",
]
