"""Whittaker W_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} U(mu - kappa + 1/2, 1 + 2 mu, z)."""

import cmath
import math
from typing import NamedTuple

import numpy as np

from ..errors import DomainError, PrecisionLossError
from .hypergeometric import Scaled, u_connection_vec, u_scaled


class WhittakerIndex(NamedTuple):
    kappa: float
    mu: complex


def _idx(kappa, mu):
    if isinstance(kappa, WhittakerIndex):
        return float(kappa.kappa), complex(kappa.mu)
    return float(kappa), complex(mu)


def whittaker_w_scaled(kappa, mu, z, method="auto"):
    """W as a Scaled triple (mantissa, log-scale, relative error estimate)."""
    if not z > 0:
        raise DomainError("W_{kappa,mu}(z) is evaluated for z > 0 only")
    u = u_scaled(mu - kappa + 0.5, 1 + 2 * mu, z, method)
    lpre = -0.5 * z + (mu + 0.5) * math.log(z)
    return Scaled(u.mant * cmath.exp(1j * lpre.imag), u.scale + lpre.real, u.err)


def whittaker_w(kappa, mu=None, z=None, method="auto", max_rel_error=1e-8):
    """Whittaker function W_{kappa,mu}(z) for real kappa, complex mu, z > 0.

    Accepts either ``whittaker_w(kappa, mu, z)`` or
    ``whittaker_w(WhittakerIndex(kappa, mu), z)``. For purely imaginary mu the
    value is real up to rounding; the complex result is returned as computed.
    """
    if isinstance(kappa, WhittakerIndex):
        z = mu
    kappa, mu = _idx(kappa, mu)
    r = whittaker_w_scaled(kappa, mu, float(z), method)
    if r.err > max_rel_error:
        raise PrecisionLossError(f"W_{{{kappa},{mu}}}({z}) relative error estimate {r.err:.1e}")
    return r.value()


def whittaker_w_log_mag(kappa, mu=None, z=None, method="auto"):
    """(log|W|, phase) for log-space assembly; phase is arg W in (-pi, pi]."""
    if isinstance(kappa, WhittakerIndex):
        z = mu
    kappa, mu = _idx(kappa, mu)
    r = whittaker_w_scaled(kappa, mu, float(z), method)
    L = r.log()
    return L.real, L.imag


def whittaker_w_imag_vec(kappa, mu_im, z):
    """W_{kappa, i*mu_im}(z) over an array of mu_im > 0, via the connection formula.

    Returns (mant, scale, err) with W = mant * exp(scale) and err the
    absolute error estimate of mant at each point.
    """
    mu = 1j * np.asarray(mu_im, dtype=float)
    mant, scale, err = u_connection_vec(mu - kappa + 0.5, 1 + 2 * mu, z)
    lpre = -0.5 * z + (mu + 0.5) * math.log(z)
    return mant * np.exp(1j * lpre.imag), scale + lpre.real, err


def whittaker_w_imag_real(kappa, p, z, rel_to_max=1e-14):
    """Re W_{kappa, ip}(z) over an array of p > 0.

    Uses the vectorised connection formula and redoes, with the scalar
    evaluator, any point whose error estimate exceeds ``rel_to_max`` times
    the largest |W| in the batch.
    """
    p = np.asarray(p, dtype=float)
    mant, scale, err = whittaker_w_imag_vec(kappa, p, z)
    vals = (mant * np.exp(scale)).real
    abs_err = err * np.exp(scale)
    ref = np.max(np.abs(vals), initial=0.0)
    for i in np.nonzero(~(abs_err <= rel_to_max * max(ref, 1e-300)))[0]:
        vals[i] = whittaker_w_scaled(kappa, 1j * p[i], z).value().real
    return vals
