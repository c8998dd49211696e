"""Bent Boolean functions, weight-parity balancedness and the parity-based
Maiorana-McFarland extension."""

from .core import (
    AffineFunctionSpec,
    AnfPolynomial,
    BooleanFunction,
    add_affine,
    affine_eval,
    anf_to_truth_table,
    evaluate,
    hamming_weight,
    parse_anf,
    parse_truth_table,
    format_anf,
    format_truth_table,
    truth_table_to_anf,
)
from .construct import (
    LinearOffset,
    build_chain,
    extend,
    extend_with_offset,
    lift_even,
    lift_odd,
    seed_bent,
)
from .restricted import (
    AffineSubspace,
    partition,
    restricted_balance,
    restricted_nonlinearity,
    restricted_walsh,
    is_restricted_bent,
)
from .walsh import WalshSpectrum, is_bent, nonlinearity, walsh_spectrum

__version__ = "0.1.0"
