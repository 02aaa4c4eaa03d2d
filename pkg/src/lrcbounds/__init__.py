"""Distance bounds and an optimal construction for locally repairable codes."""
from .params import CodeParams, InvalidParameters, OutOfScope, ScaleError, split_n
from .field import (
    BinaryField,
    BitMatrix,
    FieldElement,
    LinearizedPolynomial,
    PrimeField,
    default_modulus,
    gf2_rank,
    gfq_rank,
    lp_eval,
    lp_interpolate,
)
from .codes import LinearCode, locality, min_distance, phi_oracle, phi_values, rho_bound
from .cover import Cover, CoverError, components_profile, reduce_cover, validate_cover
from .bounds import (
    explicit_bound,
    gopalan_bound,
    ip_bound,
    prakash_bound,
    psi_closed,
    psi_exhaustive,
)
from .construct import build_lrc, encode, repair, verify_theorem4

__version__ = "0.1.0"
