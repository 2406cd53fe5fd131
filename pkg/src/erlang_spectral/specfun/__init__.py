"""Special-function kernel: parabolic cylinder, Airy, Gamma, Hermite.

All operations are pure functions; the extended-precision tier is selected
per call via ``precision="extended"`` rather than any ambient state.
"""

from .airyfn import airy_ai, airy_zero
from .gammafn import gamma_fn, ln_abs_gamma, rgamma
from .hermite import hermite_he
from .pcf import (
    EXTENDED_DPS,
    PcfEval,
    pcf_d,
    pcf_d_complex_index,
    pcf_d_dp,
    pcf_d_dp_mp,
    pcf_d_dp_scaled,
    pcf_d_dz,
    pcf_d_dz_dp,
    pcf_d_dz_mp,
    pcf_d_dz_scaled,
    pcf_d_dzdp_scaled,
    pcf_d_mp,
    pcf_d_scaled,
    pcf_dp_pair_scaled,
    pcf_eval,
    pcf_pair_scaled,
    pcf_uniform_airy,
)

__all__ = [
    "EXTENDED_DPS",
    "PcfEval",
    "airy_ai",
    "airy_zero",
    "gamma_fn",
    "hermite_he",
    "ln_abs_gamma",
    "pcf_d",
    "pcf_d_complex_index",
    "pcf_d_dp",
    "pcf_d_dp_mp",
    "pcf_d_dp_scaled",
    "pcf_d_dz",
    "pcf_d_dz_dp",
    "pcf_d_dz_mp",
    "pcf_d_dz_scaled",
    "pcf_d_dzdp_scaled",
    "pcf_d_mp",
    "pcf_d_scaled",
    "pcf_dp_pair_scaled",
    "pcf_pair_scaled",
    "pcf_eval",
    "pcf_uniform_airy",
]
