"""Quadrature kernels and special functions; no physics lives here."""

from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    QuadResult,
    integrate_1d,
    integrate_1d_full,
    integrate_2d_iterated,
)
from .roots import newton_bisect
from .special import (
    abs_beta_imag_sq,
    abs_gamma_imag_sq,
    bessel_k1_sq,
    bessel_k_batch_scaled,
    bessel_k_complex_order,
    bessel_k_complex_order_scaled,
    incomplete_gamma_zero,
    log_abs_beta_imag_sq,
    log_abs_gamma_imag_sq,
    log_bessel_k1_sq,
    log_sinh,
    planck,
    sinh_exp,
    sinhc,
)

__all__ = [
    "DEFAULT_CONFIG",
    "QuadratureConfig",
    "QuadResult",
    "abs_beta_imag_sq",
    "abs_gamma_imag_sq",
    "bessel_k1_sq",
    "bessel_k_batch_scaled",
    "bessel_k_complex_order",
    "bessel_k_complex_order_scaled",
    "incomplete_gamma_zero",
    "integrate_1d",
    "integrate_1d_full",
    "integrate_2d_iterated",
    "log_abs_beta_imag_sq",
    "log_abs_gamma_imag_sq",
    "log_bessel_k1_sq",
    "log_sinh",
    "newton_bisect",
    "planck",
    "sinh_exp",
    "sinhc",
]
