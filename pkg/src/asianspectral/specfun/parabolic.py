"""Parabolic cylinder function D_nu(z) through the Whittaker relation."""

import math

from ..errors import DomainError
from .gamma import log_rgamma
from .whittaker import whittaker_w_scaled


def parabolic_d(nu, z):
    """D_nu(z) = 2^{nu/2} (z^2/2)^{-1/4} W_{nu/2+1/4, 1/4}(z^2/2) for real nu.

    z > 0 is the main domain. z = 0 uses D_nu(0) = 2^{nu/2} sqrt(pi)/Gamma((1-nu)/2);
    z < 0 is accepted for integer nu >= 0 through D_n(-z) = (-1)^n D_n(z).
    """
    nu, z = float(nu), float(z)
    if z == 0.0:
        lr = log_rgamma(0.5 * (1.0 - nu))
        if lr is None:
            return 0.0
        return math.exp(0.5 * nu * math.log(2.0) + 0.5 * math.log(math.pi) + lr.real) \
            * math.cos(lr.imag)
    if z < 0.0:
        if nu != round(nu) or nu < 0:
            raise DomainError("D_nu(z) for z < 0 is only available at integer nu >= 0")
        return (-1.0) ** int(round(nu)) * parabolic_d(nu, -z)
    x = 0.5 * z * z
    w = whittaker_w_scaled(0.5 * nu + 0.25, 0.25, x)
    return (w.mant * math.exp(w.scale + 0.5 * nu * math.log(2.0) - 0.25 * math.log(x))).real
