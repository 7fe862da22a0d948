"""Modified Bessel functions K_{ip}(x) of imaginary order and K_nu(x) of real order.

Two routes for K_{ip}(x):

* for |p| < x, the integral K_{ip}(x) = int_0^inf e^{-x cosh t} cos(pt) dt
  moved onto the saddle line and summed by the trapezoid rule (the
  integrand is entire and decays doubly exponentially, so the rule
  converges geometrically in the step);
* for |p| >= max(x, x^2/40), the series K_{ip} = -pi Im I_{ip}(x) / sinh(pi p).

Between the two (x > 200 and p > 5x) the contour shift is capped and
relative accuracy degrades to roughly e^{2p/x} ulps.
"""

import math
import warnings

import numpy as np

from ..errors import DomainError, NonConvergenceError, UnderflowWarning
from .gamma import loggamma_vec

def _k_imag_contour(p, x):
    """e^{x cos(a) + p a} K_{ip}(x) for 0 <= p < x, and the exponent x cos(a) + p a.

    The line t -> s + i a with sin(a) = p/x passes through the saddle of
    e^{-x cosh t + i p t}, so the integrand Re f(s + i a) carries no
    cancellation. Near p = x the shift is capped so the line keeps
    x cos(a) >= 2 of decay.
    """
    sa = min(p / x, 1.0)
    alpha = math.asin(sa)
    xc = x * math.cos(alpha)
    if xc < 2.0:
        ca = min(2.0 / x, 1.0)
        alpha = math.acos(ca)
        sa = math.sin(alpha)
        xc = x * ca
    smax = math.acosh(1.0 + 42.0 / xc)
    # the phase p s - x sin(a) sinh s speeds up towards smax; resolve it
    fmax = abs(p - x * sa * math.cosh(smax))
    h = min(0.2, 0.6 / math.sqrt(xc), math.pi ** 2 / (45.0 + math.pi * p), 0.5 / max(fmax, 1e-300))
    s = h * np.arange(int(math.ceil(smax / h)) + 1)
    f = np.exp(-xc * (np.cosh(s) - 1.0)) * np.cos(p * s - x * sa * np.sinh(s))
    return h * (0.5 * f[0] + f[1:].sum()), xc + p * alpha


def _series_from(x):
    # below this the I_{ip} series cancels; above it the contour cap costs digits
    return max(x, x * x / 40.0)


def _k_imag_series_scaled(p, x, cap=2000):
    """e^{pi p/2} K_{ip}(x) from the I_{ip} series (p > 0)."""
    p = np.asarray(p, dtype=float)
    q = 0.25 * x * x
    # t0 = (x/2)^{ip} / Gamma(1+ip) * e^{-pi p/2}
    logt = 1j * p * math.log(0.5 * x) - loggamma_vec(1 + 1j * p) - 0.5 * np.pi * p
    t = np.exp(logt)
    s = t.copy()
    for k in range(1, cap):
        t = t * q / (k * (k + 1j * p))
        s = s + t
        if np.all(np.abs(t) <= 1e-17 * np.abs(s)) and k > q ** 0.5:
            break
    else:
        raise NonConvergenceError("I_{ip} series did not converge")
    return -2.0 * np.pi * s.imag / (-np.expm1(-2.0 * np.pi * p))


def bessel_k_imag_scaled(p, x):
    """e^{pi|p|/2} K_{ip}(x), vectorised over p; avoids underflow at large |p|."""
    if not x > 0:
        raise DomainError("K_{ip}(x) needs x > 0")
    p = np.abs(np.asarray(p, dtype=float))
    out = np.empty(p.shape)
    flat = p.ravel()
    res = out.ravel()
    ser = flat >= _series_from(x)
    if np.any(ser):
        res[ser] = _k_imag_series_scaled(flat[ser], x)
    for i in np.nonzero(~ser)[0]:
        v, e = _k_imag_contour(flat[i], x)
        res[i] = v * math.exp(0.5 * math.pi * flat[i] - e)
    return res.reshape(p.shape) if p.shape else float(res[0])


def bessel_k_imag(p, x):
    """K_{ip}(x) for real p and x > 0 (real-valued, even in p).

    Underflow to zero at large x or |p| is permitted and flagged with an
    UnderflowWarning.
    """
    if not x > 0:
        raise DomainError("K_{ip}(x) needs x > 0")
    p = abs(float(p))
    if p < _series_from(x):
        v, e = _k_imag_contour(p, x)
        v *= math.exp(-e)
    else:
        v = float(_k_imag_series_scaled(np.array([p]), x)[0]) * math.exp(-0.5 * math.pi * p)
    if v == 0.0:
        warnings.warn(f"K_i{p}({x}) underflowed to 0", UnderflowWarning, stacklevel=2)
    return v


def bessel_k_real(nu, x):
    """K_nu(x) for real order via int_0^inf e^{-x cosh t} cosh(nu t) dt."""
    if not x > 0:
        raise DomainError("K_nu(x) needs x > 0")
    nu = abs(float(nu))
    # integrand peaks where x sinh t = nu; extend the range past it
    tpeak = math.asinh(nu / x) if nu > 0 else 0.0
    tmax = tpeak + math.acosh(max(760.0 / x, 1.0) + 1.0) + 1.0
    h = min(0.1, 0.6 / math.sqrt(x + nu))
    n = int(math.ceil(tmax / h))
    t = h * np.arange(n + 1)
    logf = -x * np.cosh(t) + nu * t
    top = logf.max()
    f = np.exp(logf - top) * 0.5 * (1.0 + np.exp(-2.0 * nu * t))
    v = h * (0.5 * f[0] + f[1:].sum())
    if top > 709.0:
        raise NonConvergenceError("K_nu(x) overflows")
    v *= math.exp(top)
    if v == 0.0:
        warnings.warn(f"K_{nu}({x}) underflowed to 0", UnderflowWarning, stacklevel=2)
    return v


def bessel_k_half(x):
    """Closed form K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}."""
    if not x > 0:
        raise DomainError("K_{1/2}(x) needs x > 0")
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
