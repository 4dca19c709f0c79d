"""Rigorous enclosures for Euler-product constants of radical and division fields.

Everything numeric is exact: values are rational enclosures (pairs of
Fractions bracketing the target), never floats, and every truncation carries
a proven bound.
"""

from .arith import (
    Enclosure,
    Factorization,
    enclosure_product,
    euler_phi,
    factorize,
    fraction_product,
    is_prime,
    log_integral,
    mobius,
    multiplicative_order,
    pow_bounds,
    primes_up_to,
    squarefree_kernel,
)
from .closedforms import (
    TitchmarshResult,
    a_sf,
    artin_A,
    artin_E,
    artin_E_product_form,
    artin_delta,
    titchmarsh_closed,
    universal_constant,
)
from .engine import (
    NOT_CORRECTABLE,
    NOT_DEFINED,
    ConstantResult,
    GFamily,
    GrowthBound,
    LocalSum,
    Vanishing,
    builtin_family,
    correction_factor,
    evaluate_constant,
    family_from_json,
    local_sum,
    mobius_inverse_family,
    vanishing_check,
)
from .errors import (
    DomainError,
    FamilyError,
    FactorizationTimeout,
    IntegrityError,
    PrecisionNotReached,
    ResourceLimit,
    VerificationFailure,
)
from .kummer import (
    Case,
    EntanglementProfile,
    KummerDecomposition,
    card_A,
    card_A_n,
    decompose,
    entanglement_profile,
    k_prime,
    kummer_degree,
)
from .oracle import (
    GroupElement,
    GroupReport,
    PartialSum,
    ScanResult,
    enumerate_A,
    group_identity,
    group_inverse,
    group_mul,
    partial_sum,
    prime_scan,
    residual_index,
    serre_partial_sum,
    verify_group,
)
from .serre import (
    SerreInput,
    card_aut,
    gl2_order,
    serre_constant,
    serre_degree,
    serre_profile,
    weierstrass_discriminant,
)

__version__ = "0.1.0"
