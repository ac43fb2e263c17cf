"""ramsmooth: exact arithmetic for Ramanujan sums and smooth expansions.

The library computes Ramanujan sums by several independent exact routes,
manipulates arithmetic functions through their divisor (Eratosthenes)
transforms, builds Wintner and Carmichael coefficient tables in global and
P-smooth flavors, and verifies the orthogonal decompositions and local
expansions that tie them together.  All identity-level computations run on
arbitrary-precision rationals.
"""

from .arith import (
    SmoothContext,
    count_sifted,
    divisors,
    enumerate_smooth,
    enumerate_smooth_squarefree,
    enumerate_sifted,
    factorize,
    kernel,
    mobius,
    smooth_context,
    smooth_part,
    smooth_power_series,
    smooth_rough_split,
    totient,
)
from .ramanujan import (
    csum_definition,
    csum_kluyver,
    csum_nonvanishing,
    orthogonality_divisor_indicator,
    ramanujan_sum,
    rvl_moduli,
    smooth_twisted_orthogonality,
    squarefree_modulus_ignores_powers,
)
from .transforms import (
    ArithFn,
    CoefficientTable,
    coefficient_difference_diagnostic,
    carmichael_coefficient,
    coefficient_table,
    eratosthenes_transform,
    finite_support,
    ippification_formula,
    ippify,
    mobius_switch_sum,
    restrict_smooth,
    restrict_smooth_squarefree,
    smooth_carmichael_coefficient,
    smooth_carmichael_series,
    smooth_wintner_coefficient,
    squarefree_multiply_transform,
    squarefree_smooth_wintner_coefficient,
    wa_check,
    wintner_coefficient,
)
from .decomp import (
    decompose_function,
    decompose_transform,
    characterization_table,
    explicit_formula_verdicts,
    irregular_series,
    null_expansion,
    null_expansion_product,
    regular_irregular_parts,
    smooth_expansion_trace,
    wintner_average_decomposition,
    wintner_support_probe,
)
from .expansions import (
    classic_partial_sums,
    evaluate_series,
    ipp_weighted_average_suite,
    local_expansion_flat,
    local_expansion_smooth,
    totient_ratio_identity,
    uniqueness_check,
)
from .funclib import builtin, builtin_names, from_table, load_table, mu2_id_over_phi
from .series import Partial, doubling_cutoffs

__version__ = "0.1.0"
