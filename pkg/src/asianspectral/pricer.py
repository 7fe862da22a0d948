"""Fixed-strike arithmetic Asian options by the spectral (Whittaker) expansion.

With nu = 2r/sigma^2 - 1, tau = T sigma^2/4, k = tau K/S0 and kappa = -(nu+3)/2,
the normalized put P(k, tau) = E[(k - A_tau)^+] is

    P = int_0^inf g(p) dp + D,

    g(p) = e^{-(nu^2+p^2) tau/2} (2k)^{-kappa} e^{-1/(4k)} / (8 pi^2)
           * W_{kappa, ip/2}(1/(2k)) |Gamma((nu+ip)/2)|^2 sinh(pi p) p,

and D is the bound-state part, present only for nu < 0. The market put is
e^{-rT} 4 S0/(sigma^2 T) P and the call follows from parity.
"""

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import DomainError, PrecisionLossError, RangeOverflowError
from .quadrature import (
    gauss_laguerre_rule,
    integrate_gauss_legendre,
    integrate_laguerre,
    integrate_trapezoid,
)
from .specfun.gamma import log_gamma_abs_sq_vec
from .specfun.polynomials import laguerre_poly
from .specfun.whittaker import whittaker_w_imag_vec, whittaker_w_scaled

METHODS = ("laguerre", "trapezoid")
TRAPEZOID_PANELS = 20000
BOUND_SLACK = 1e-9
_LOG_8PI2 = math.log(8.0 * math.pi ** 2)
# a node is recomputed with the scalar W once its estimated absolute error
# exceeds this fraction of the largest integrand value in the same batch
_FALLBACK_ABS = 1e-13


@dataclass(frozen=True)
class MarketParams:
    r: float
    sigma: float
    T: float
    S0: float
    K: float

    def __post_init__(self):
        for name in ("r", "sigma", "T", "S0", "K"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise DomainError(f"{name} must be a finite number, got {v!r}")
        for name in ("sigma", "T", "S0", "K"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")


@dataclass(frozen=True)
class NormalizedParams:
    nu: float
    tau: float
    k: float
    kappa: float


@dataclass(frozen=True)
class PriceResult:
    put: float
    call: float
    normalized_put: float
    method: str
    nodes_used: int
    discrete_term: float
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


def normalize(market):
    s2 = market.sigma ** 2
    nu = 2.0 * market.r / s2 - 1.0
    tau = market.T * s2 / 4.0
    k = tau * market.K / market.S0
    return NormalizedParams(nu, tau, k, -(nu + 3.0) / 2.0)


def _discount_factor_avg(rT):
    # (1 - e^{-rT})/(rT), with the removable singularity at rT = 0
    if abs(rT) < 1e-8:
        return 1.0 - 0.5 * rT + rT * rT / 6.0
    return -math.expm1(-rT) / rT


def parity_gap(market):
    """call - put = (1 - e^{-rT}) S0/(rT) - e^{-rT} K."""
    rT = market.r * market.T
    return _discount_factor_avg(rT) * market.S0 - math.exp(-rT) * market.K


def _log_parts(p, npar):
    """log of every factor of g except the Whittaker function, for p > 0."""
    nu, tau, k = npar.nu, npar.tau, npar.k
    lsinh = math.pi * p - math.log(2.0) + np.log1p(-np.exp(-2.0 * math.pi * p))
    return (-(nu * nu + p * p) * tau / 2.0 - npar.kappa * math.log(2.0 * k) - 0.25 / k - _LOG_8PI2
            + log_gamma_abs_sq_vec(nu / 2.0, p / 2.0) + lsinh + np.log(p))


def _gamma_pole_at_zero(nu):
    return nu <= 0 and float(nu / 2.0).is_integer()


def _integrand_vec(p, npar, stats=None):
    p = np.asarray(p, dtype=float)
    out = np.zeros(p.shape)
    pos = p > 0
    if _gamma_pole_at_zero(npar.nu):
        # |Gamma(nu/2 + ip/2)|^2 ~ 4/p^2 cancels p sinh(pi p); take the limit
        p = np.where(p > 0, p, 1e-6)
        pos = np.ones(p.shape, dtype=bool)
    if not np.any(pos):
        return out
    q = p[pos]
    z = 0.5 / npar.k
    mant, wscale, werr = whittaker_w_imag_vec(npar.kappa, q / 2.0, z)
    lp = _log_parts(q, npar)
    L = wscale + lp
    with np.errstate(divide="ignore"):
        logmag = L + np.log(np.abs(mant))
    if np.any(logmag > 709.0):
        raise RangeOverflowError("spectral integrand exceeds double range for these parameters")
    vals = (mant * np.exp(L)).real
    # redo only the points whose error is visible at the integrand's own scale
    abs_err = werr * np.exp(L)
    ref = np.max(np.abs(vals), initial=0.0)
    redo = ~(abs_err <= _FALLBACK_ABS * max(ref, 1e-300))
    for i in np.nonzero(redo)[0]:
        w = whittaker_w_scaled(npar.kappa, 0.5j * q[i], z)
        with np.errstate(over="ignore"):
            # an inf here is caught by the quadrature's finiteness check
            vals[i] = (w.mant * np.exp(w.scale + lp[i])).real
    if stats is not None:
        stats["scalar_w_nodes"] = stats.get("scalar_w_nodes", 0) + int(redo.sum())
    out[pos] = vals
    return out


def continuous_integrand(p, npar):
    """g(p) for scalar or array p >= 0, assembled in log space."""
    if np.ndim(p) == 0:
        return float(_integrand_vec(np.array([float(p)]), npar)[0])
    return _integrand_vec(p, npar)


def _discrete_density_terms(npar):
    a = abs(npar.nu)
    n = 0
    while 2 * n < a:
        c = math.exp(-2.0 * n * (a - n) * npar.tau - math.lgamma(1.0 + a - n)) * (-1) ** n * 2.0 * (a - 2 * n)
        yield n, c, a
        n += 1


def discrete_correction(npar):
    """Bound-state contribution E[(k - A)^+] from the poles present when nu < 0.

    Each term n (2n < |nu|) has density
    c_n (2y)^{n-1-|nu|} e^{-1/(2y)} L_n^{(|nu|-2n)}(1/(2y)) on y > 0 and enters
    as int_0^k (k - y) density dy. With g = 1/(2y) this is
    c_n/2 int_{1/(2k)}^inf (k - 1/(2g)) g^{|nu|-1-n} e^{-g} L_n(g) dg.
    """
    if not npar.nu < 0:
        return 0.0
    k = npar.k
    g0 = 0.5 / k
    total = 0.0
    for n, c, a in _discrete_density_terms(npar):
        if g0 >= 2.0:
            # shift to t = g - g0 and use the Laguerre weight e^{-t}
            def h(t, n=n, a=a):
                g = g0 + t
                return (k - 0.5 / g) * np.exp((a - 1 - n) * np.log(g) - t) * laguerre_poly(n, a - 2 * n, g)
            v = math.exp(-g0) * integrate_laguerre(h, 64).value
        else:
            def h(y, n=n, a=a):
                y = np.asarray(y, dtype=float)
                g = 0.5 / y
                return (k - y) * np.exp((n - 1 - a) * np.log(2 * y) - g) * laguerre_poly(n, a - 2 * n, g)
            v = 2.0 * integrate_gauss_legendre(h, 0.0, k, panels=16, order=24).value
        total += 0.5 * c * v
    return total


def default_nodes(npar):
    return 64 if npar.tau >= 0.02 else 200


def trapezoid_pmax(npar, decades=41.0, cap=500.0):
    """Upper limit for the trapezoid: where the integrand's envelope has fallen
    `decades` below its peak, capped at `cap`.

    The Gaussian factor alone, sqrt(2 decades ln10 / tau), is the floor; the
    remaining factors grow like e^{pi p/2} at small tau and push the mass out.
    """
    gauss = math.sqrt(2.0 * decades * math.log(10.0) / npar.tau)
    p = np.linspace(0.5, cap, 2000)
    mant, wscale, werr = whittaker_w_imag_vec(npar.kappa, p / 2.0, 0.5 / npar.k)
    with np.errstate(divide="ignore"):
        env = wscale + _log_parts(p, npar) + np.log(np.abs(mant) + werr)
    keep = p[env >= env.max() - decades * math.log(10.0)]
    return min(max(gauss, float(keep[-1]) if keep.size else 0.0), cap)


def _continuous(npar, method, n, stats):
    f = lambda p: _integrand_vec(p, npar, stats)  # noqa: E731
    if method == "laguerre":
        gauss_laguerre_rule(n)
        return integrate_laguerre(f, n)
    if method == "trapezoid":
        return integrate_trapezoid(f, 0.0, trapezoid_pmax(npar), n)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def price_put_normalized(npar, method="laguerre", n=None):
    """Continuous integral by the chosen rule plus the discrete correction."""
    return _price_normalized(npar, method, n)[0]


def _price_normalized(npar, method, n):
    if n is None:
        n = default_nodes(npar) if method == "laguerre" else TRAPEZOID_PANELS
    if n < 4:
        raise ValueError("quadrature order must be at least 4")
    stats = {}
    res = _continuous(npar, method, int(n), stats)
    d = discrete_correction(npar)
    diag = {"continuous": res.value, "est_error": res.est_error, "evaluations": res.evaluations,
            "discrete_included": npar.nu < 0, **stats}
    if method == "trapezoid":
        diag["p_max"] = trapezoid_pmax(npar)
    return res.value + d, d, int(n), diag


def _check_bounds(market, put, call):
    # 0 <= put <= e^{-rT} K and call >= 0 hold for any average; a spectral
    # sum that breaks them has lost its digits to cancellation
    tol = BOUND_SLACK * max(market.S0, market.K)
    hi = math.exp(-market.r * market.T) * market.K
    if not (put >= -tol and call >= -tol and put <= hi + tol):
        raise PrecisionLossError(
            f"spectral sum outside no-arbitrage bounds (put={put:.6g}, call={call:.6g}); "
            "tau = T sigma^2/4 is too small relative to k for double precision")


def price(market, method="laguerre", n=None, check=True):
    """Put and call for a fixed-strike arithmetic Asian option.

    With check=True a result outside the no-arbitrage bounds raises
    PrecisionLossError instead of being returned.
    """
    t0 = time.perf_counter()
    npar = normalize(market)
    P, d, n_used, diag = _price_normalized(npar, method, n)
    rT = market.r * market.T
    put = math.exp(-rT) * 4.0 * market.S0 / (market.sigma ** 2 * market.T) * P
    call = put + parity_gap(market)
    if check:
        _check_bounds(market, put, call)
    diag.update({"nu": npar.nu, "tau": npar.tau, "k": npar.k, "kappa": npar.kappa,
                 "seconds": time.perf_counter() - t0})
    return PriceResult(put, call, P, method, n_used, d, diag)


def convergence_scan(market, n_values, method="laguerre"):
    """[(n, put, call)] for each requested order, in the order given."""
    if not n_values:
        raise ValueError("n_values must not be empty")
    rows = []
    for n in n_values:
        # low orders are allowed to be wrong here; that is what the scan shows
        r = price(market, method, int(n), check=False)
        rows.append((int(n), r.put, r.call))
    return rows
