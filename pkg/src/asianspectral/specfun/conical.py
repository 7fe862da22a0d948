"""Conical (Mehler-Fock) functions P^mu_{-1/2+ip}(z), z > 1, real mu < 1.

Three hypergeometric forms, picked by where each is free of cancellation:

* Gauss:  P = ((z+1)/(z-1))^{mu/2}/Gamma(1-mu) F(1/2-ip, 1/2+ip; 1-mu; (1-z)/2),
  real terms; used for z < 3 when p*sqrt(z-1) is modest.
* Large argument: P = 2 Re[2^nu Gamma(ip)/(sqrt(pi) Gamma(1/2-mu+ip))
  z^{nu-mu} (z^2-1)^{mu/2} F((mu+1/2-ip)/2, (mu+3/2-ip)/2; 1-ip; 1/z^2)],
  nu = -1/2+ip; used for larger p or z.
* Pfaff: the Gauss form after F(a,b;c;w) = (1-w)^{-a} F(a,c-b;c;w/(w-1)),
  argument (z-1)/(z+1) in (0,1) for every z > 1; used at tiny p and z >= 3,
  where Gamma(ip) in the large-argument form would cancel.
"""

import cmath
import math

from ..errors import DomainError, NonConvergenceError
from .gamma import log_gamma_complex

_CAP = 20000


def _f21(a, b, c, w, tol=1e-17):
    s = t = 1.0 + 0j
    small = 0
    for k in range(_CAP):
        t *= (a + k) * (b + k) / ((c + k) * (k + 1)) * w
        s += t
        if abs(t) <= tol * abs(s):
            small += 1
            if small >= 3:
                return s
        else:
            small = 0
    raise NonConvergenceError(f"2F1({a},{b};{c};{w}) did not converge in {_CAP} terms")


def _gauss(mu, p, z):
    a = complex(0.5, -p)
    f = _f21(a, a.conjugate(), 1.0 - mu, 0.5 * (1.0 - z)).real
    return f * math.exp(0.5 * mu * math.log((z + 1.0) / (z - 1.0)) - math.lgamma(1.0 - mu))


def _pfaff(mu, p, z):
    a = complex(0.5, -p)
    f = _f21(a, complex(0.5 - mu, -p), 1.0 - mu, (z - 1.0) / (z + 1.0))
    pre = cmath.exp(0.5 * mu * math.log((z + 1.0) / (z - 1.0)) - math.lgamma(1.0 - mu)
                    + complex(-0.5, p) * math.log(0.5 * (1.0 + z)))
    return (pre * f).real


def _large(mu, p, z):
    nu = complex(-0.5, p)
    f = _f21(0.5 * (mu + 0.5 - 1j * p), 0.5 * (mu + 1.5 - 1j * p), complex(1.0, -p), 1.0 / (z * z))
    lt = (nu * math.log(2.0) - 0.5 * math.log(math.pi)
          + log_gamma_complex(complex(0.0, p)) - log_gamma_complex(complex(0.5 - mu, p))
          + (nu - mu) * math.log(z) + 0.5 * mu * math.log(z * z - 1.0))
    return 2.0 * (cmath.exp(lt) * f).real


def conical_p(mu, p, z, method="auto"):
    """P^mu_{-1/2+ip}(z) for real mu < 1, real p and z > 1.

    ``method`` is "auto", "gauss" (z < 3 only), "large" (p != 0) or "pfaff".
    Even in p. At z = 1 the value is 1 for mu = 0 and 0 for mu < 0.
    """
    mu, p, z = float(mu), abs(float(p)), float(z)
    if not mu < 1.0:
        raise DomainError("conical_p needs mu < 1")
    if z == 1.0:
        if mu == 0.0:
            return 1.0
        if mu < 0.0:
            return 0.0
        raise DomainError("P^mu(1) is infinite for 0 < mu < 1")
    if not z > 1.0 or not math.isfinite(z):
        raise DomainError("conical_p needs z > 1")
    if method == "auto":
        if z < 3.0 and 2.0 * p * math.sqrt(0.5 * (z - 1.0)) <= 4.0:
            method = "gauss"
        elif p >= 0.05:
            method = "large"
        else:
            method = "pfaff"
    if method == "gauss":
        if not z < 3.0:
            raise DomainError("the Gauss series needs 1 < z < 3")
        return _gauss(mu, p, z)
    if method == "large":
        if p == 0.0:
            raise DomainError("the large-argument form needs p != 0")
        return _large(mu, p, z)
    if method == "pfaff":
        return _pfaff(mu, p, z)
    raise ValueError(f"unknown method {method!r}")
