"""Complex log-gamma by the Lanczos approximation.

The scalar entry points validate arguments and raise on poles; the ``*_vec``
variants work on numpy arrays and are used inside vectorised integrands.
"""

import math

import numpy as np

from ..errors import PoleError

# g = 7, n = 9 coefficient set (Godfrey). Relative accuracy ~1e-15 for Re z >= 0.5.
_G = 7.0
_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)


def _lanczos(z):
    # valid for Re z >= 0.5
    zm = z - 1.0
    x = np.full_like(zm, _COEF[0])
    for i in range(1, 9):
        x = x + _COEF[i] / (zm + i)
    t = zm + (_G + 0.5)
    return _LOG_SQRT_2PI + (zm + 0.5) * np.log(t) - t + np.log(x)


def log_sin_pi_vec(z):
    """log(sin(pi z)) for complex arrays, without overflow at large |Im z|."""
    z = np.asarray(z, dtype=complex)
    # fold to Im z >= 0 and use conjugate symmetry at the end
    flip = z.imag < 0
    w = np.where(flip, np.conj(z), z)
    # sin(pi w) = exp(-i pi w) (exp(2 i pi w) - 1) / (2i), |exp(2 i pi w)| <= 1
    e = np.exp(2j * np.pi * w)
    out = -1j * np.pi * w + np.log(e - 1.0) - np.log(2j)
    return np.where(flip, np.conj(out), out)


def _wrap(im):
    return np.arctan2(np.sin(im), np.cos(im))


def loggamma_vec(z):
    """Vectorised log Gamma(z) with the imaginary part wrapped to (-pi, pi].

    Poles produce inf/nan entries; callers that care must screen them first.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    right = z.real >= 0.5
    if np.any(right):
        out[right] = _lanczos(z[right])
    if np.any(~right):
        zl = z[~right]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[~right] = LOG_PI - log_sin_pi_vec(zl) - _lanczos(1.0 - zl)
    return out.real + 1j * _wrap(out.imag)


def is_pole(z, atol=0.0):
    """True when z is a nonpositive integer on the real axis."""
    z = complex(z)
    if z.imag != 0.0 or z.real > 0.0:
        return False
    return abs(z.real - round(z.real)) <= atol


def log_gamma_complex(z):
    """Principal-branch log Gamma(z) for complex z.

    Raises PoleError at nonpositive integers.
    """
    z = complex(z)
    if is_pole(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    return complex(loggamma_vec(np.array([z]))[0])


def log_rgamma(z):
    """log(1/Gamma(z)), or None where 1/Gamma vanishes (the poles of Gamma)."""
    if is_pole(z):
        return None
    return -log_gamma_complex(z)


def gamma_abs_sq(sigma, p):
    """|Gamma(sigma + i p)|^2 via exp(2 Re log Gamma)."""
    lg = log_gamma_complex(complex(sigma, p))
    return math.exp(2.0 * lg.real)


def log_gamma_abs_sq_vec(sigma, p):
    """2 Re log Gamma(sigma + i p) for array p; used by the spectral integrands."""
    z = np.asarray(sigma, dtype=float) + 1j * np.asarray(p, dtype=float)
    return 2.0 * loggamma_vec(z).real
