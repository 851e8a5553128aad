"""Binary quadratic forms ax^2 + 2bxy + cy^2: reduction, composition, factoring."""

from .composition import (
    BilinearSubstitution,
    class_multiples,
    compose_general,
    compose_prime_power,
    compose_same_det,
)
from .factorizer import (
    FactorConfig,
    FactorReport,
    HarvestResult,
    WitnessedResidue,
    combine,
    factor,
    harvest_from_class_multiples,
    harvest_from_period,
    harvest_square_representations,
    seed_form,
    sieve_candidates,
    witnessed_residue,
)
from .forms import (
    QuadraticForm,
    Representation,
    UnimodularMap,
    form_from_representation,
    is_contiguous,
    product_representation,
    representation_value,
    transform,
)
from .genus import (
    CharacterProfile,
    FormSqrtValue,
    character,
    characteristic_numbers,
    is_characteristic_number,
    same_genus,
    sqrt_of_form,
)
from .numtheory import (
    DomainError,
    Factorization,
    SmoothnessError,
    abs_min_residue,
    bezout_chain,
    ext_gcd,
    full_factor,
    iroot,
    is_prime,
    is_smooth,
    isqrt,
    jacobi,
    primes_upto,
    sqrt_mod,
    squarefree_part,
    trial_factor,
)
from .reduction import (
    Period,
    ReductionTrace,
    enumerate_reduced_negative,
    enumerate_reduced_positive,
    is_reduced_negative,
    is_reduced_positive,
    neighbor,
    period,
    properly_equivalent,
    reduce_negative,
    reduce_positive,
)

__all__ = [
    "BilinearSubstitution",
    "CharacterProfile",
    "DomainError",
    "FactorConfig",
    "FactorReport",
    "Factorization",
    "FormSqrtValue",
    "HarvestResult",
    "Period",
    "QuadraticForm",
    "ReductionTrace",
    "Representation",
    "SmoothnessError",
    "UnimodularMap",
    "WitnessedResidue",
    "abs_min_residue",
    "bezout_chain",
    "character",
    "characteristic_numbers",
    "class_multiples",
    "combine",
    "compose_general",
    "compose_prime_power",
    "compose_same_det",
    "enumerate_reduced_negative",
    "enumerate_reduced_positive",
    "ext_gcd",
    "factor",
    "form_from_representation",
    "full_factor",
    "harvest_from_class_multiples",
    "harvest_from_period",
    "harvest_square_representations",
    "iroot",
    "is_characteristic_number",
    "is_contiguous",
    "is_prime",
    "is_reduced_negative",
    "is_reduced_positive",
    "is_smooth",
    "isqrt",
    "jacobi",
    "neighbor",
    "period",
    "primes_upto",
    "product_representation",
    "properly_equivalent",
    "reduce_negative",
    "reduce_positive",
    "representation_value",
    "same_genus",
    "seed_form",
    "sieve_candidates",
    "sqrt_mod",
    "sqrt_of_form",
    "squarefree_part",
    "transform",
    "trial_factor",
    "witnessed_residue",
]

__version__ = "0.1.0"
