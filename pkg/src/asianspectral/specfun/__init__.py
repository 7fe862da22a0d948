"""Special functions: complex gamma, Kummer M / Tricomi U, Whittaker W,
K_{ip}, conical and parabolic cylinder functions, classical polynomials."""

from .bessel import bessel_k_half, bessel_k_imag, bessel_k_imag_scaled, bessel_k_real
from .conical import conical_p
from .gamma import gamma_abs_sq, is_pole, log_gamma_abs_sq_vec, log_gamma_complex, loggamma_vec
from .hypergeometric import Scaled, kummer_m, tricomi_u, u_scaled
from .parabolic import parabolic_d
from .polynomials import PolynomialSpec, bessel_poly, hermite_poly, laguerre_poly
from .whittaker import (
    WhittakerIndex,
    whittaker_w,
    whittaker_w_imag_vec,
    whittaker_w_log_mag,
    whittaker_w_scaled,
)

__all__ = [
    "PolynomialSpec", "Scaled", "WhittakerIndex",
    "bessel_k_half", "bessel_k_imag", "bessel_k_imag_scaled", "bessel_k_real",
    "bessel_poly", "conical_p", "gamma_abs_sq", "hermite_poly", "is_pole",
    "kummer_m", "laguerre_poly", "log_gamma_abs_sq_vec", "log_gamma_complex",
    "loggamma_vec", "parabolic_d", "tricomi_u", "u_scaled", "whittaker_w",
    "whittaker_w_imag_vec", "whittaker_w_log_mag", "whittaker_w_scaled",
]
