"""Decay rates and Green's tensors near a perfectly conducting wedge."""

from ._core import (
    ConfigError,
    TabulatedGamma,
    Wedge,
    cooperative_rate,
    corner_gamma_map,
    decay_rate,
    im_g_free,
    im_g_full,
    im_p_zz,
    run_scan,
    spot_size,
)

__all__ = [
    "ConfigError",
    "TabulatedGamma",
    "Wedge",
    "cooperative_rate",
    "corner_gamma_map",
    "decay_rate",
    "im_g_free",
    "im_g_full",
    "im_p_zz",
    "run_scan",
    "spot_size",
]
