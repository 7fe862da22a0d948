"""Confluent hypergeometric functions M(a, b, z) and U(a, b, z) for real z.

Values are carried internally as a ``Scaled`` triple: a complex mantissa, a
real log-scale and a relative error estimate, so that e.g. M(a, b, 200) or a
Whittaker function of size e^-300 never leave the double range before the
final assembly.

U has several evaluation paths:

* ``asymptotic``: large-z expansion, used whenever it converges to roundoff;
* ``connection``: the two-M connection formula, evaluated in log space;
* ``integral``: the Laplace integral for Re a > 0, by the trapezoid rule in
  log t (the integrand is analytic in a strip, so the rule converges
  geometrically);
* ``recurrence``: downward recurrence in a from a + m where Re(a + m) > 0;
* ``polynomial``: the terminating case a = 0, -1, -2, ...

``tricomi_u`` picks the first path whose error estimate meets the budget.
"""

import cmath
import math
from typing import NamedTuple

import numpy as np

from ..errors import DomainError, NonConvergenceError, PoleError, PrecisionLossError, RangeOverflowError
from .gamma import LOG_PI, is_pole, log_gamma_complex, log_rgamma, log_sin_pi_vec, loggamma_vec

EPS = 2.220446049250313e-16
_RESCALE = 1e200
_LOG_RESCALE = math.log(_RESCALE)
SERIES_CAP = 10_000


class Scaled(NamedTuple):
    """mant * exp(scale), with a relative error estimate."""

    mant: complex
    scale: float
    err: float

    def value(self):
        if self.mant == 0:
            return 0j
        lm = math.log(abs(self.mant)) + self.scale
        if lm > 709.0:
            raise RangeOverflowError(f"value e^{lm:.1f} overflows double precision")
        return self.mant * math.exp(self.scale)

    def log(self):
        """Complex log of the value (log-magnitude + i*phase)."""
        if self.mant == 0:
            return complex(-math.inf, 0.0)
        return cmath.log(self.mant) + self.scale


def _from_log(logv, err=0.0):
    return Scaled(cmath.exp(1j * logv.imag), logv.real, err)


def _is_int(x, tol=0.0):
    x = complex(x)
    return x.imag == 0.0 and abs(x.real - round(x.real)) <= tol


# --------------------------------------------------------------------------
# Kummer M
# --------------------------------------------------------------------------

def _m_series(a, b, z, tol=1e-17, cap=SERIES_CAP):
    """Power series for M(a, b, z); returns (Scaled, cancellation ratio)."""
    a = complex(a)
    b = complex(b)
    s = 1 + 0j
    t = 1 + 0j
    absum = 1.0
    scale = 0.0
    quiet = 0
    az = abs(z)
    for n in range(cap):
        ratio = (a + n) / (b + n) * (z / (n + 1))
        t *= ratio
        s += t
        at = abs(t)
        absum += at
        if at > _RESCALE:
            s /= _RESCALE
            t /= _RESCALE
            absum /= _RESCALE
            scale += _LOG_RESCALE
            at /= _RESCALE
        if at <= tol * abs(s) and abs(ratio) < 1.0 and n + 1 > 0.5 * az:
            quiet += 1
            if quiet >= 3:
                cond = absum / abs(s) if s != 0 else math.inf
                return Scaled(s, scale, EPS * (cond + n)), cond
        else:
            quiet = 0
    raise NonConvergenceError(f"Kummer series did not converge in {cap} terms (a={a}, b={b}, z={z})")


def _m_scaled(a, b, z):
    a = complex(a)
    b = complex(b)
    if is_pole(b) and not (is_pole(a) and a.real > b.real):
        raise PoleError("M(a, b, z) undefined for b a nonpositive integer")
    if z == 0:
        return Scaled(1 + 0j, 0.0, 0.0)
    direct, cond = _m_series(a, b, z)
    if z > 0 and cond < 10.0:
        return direct
    # Kummer transformation M(a,b,z) = e^z M(b-a, b, -z)
    other, cond2 = _m_series(b - a, b, -z)
    other = Scaled(other.mant, other.scale + z, other.err)
    return other if other.err < direct.err else direct


def kummer_m(a, b, z):
    """Confluent hypergeometric M(a, b, z) for complex a, b and real z."""
    return _m_scaled(a, b, float(z)).value()


def _m_series_vec(a, b, z, tol=1e-17, cap=SERIES_CAP):
    """Vectorised power series for M over arrays a, b at a common real z.

    Returns (mant, scale, cond) arrays.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a, b = np.broadcast_arrays(a, b)
    shape = a.shape
    a = a.ravel().copy()
    b = b.ravel().copy()
    s = np.ones_like(a)
    t = np.ones_like(a)
    absum = np.ones(a.shape)
    scale = np.zeros(a.shape)
    quiet = np.zeros(a.shape, dtype=int)
    active = np.ones(a.shape, dtype=bool)
    az = abs(z)
    for n in range(cap):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        ratio = (a[idx] + n) / (b[idx] + n) * (z / (n + 1))
        tt = t[idx] * ratio
        ss = s[idx] + tt
        at = np.abs(tt)
        ab = absum[idx] + at
        big = at > _RESCALE
        if np.any(big):
            tt[big] /= _RESCALE
            ss[big] /= _RESCALE
            ab[big] /= _RESCALE
            at[big] /= _RESCALE
            sc = scale[idx]
            sc[big] += _LOG_RESCALE
            scale[idx] = sc
        t[idx] = tt
        s[idx] = ss
        absum[idx] = ab
        small = (at <= tol * np.abs(ss)) & (np.abs(ratio) < 1.0) & (n + 1 > 0.5 * az)
        q = np.where(small, quiet[idx] + 1, 0)
        quiet[idx] = q
        done = q >= 3
        active[idx[done]] = False
    else:
        raise NonConvergenceError(f"Kummer series did not converge in {cap} terms")
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = absum / np.abs(s)
    return s.reshape(shape), scale.reshape(shape), cond.reshape(shape)


# --------------------------------------------------------------------------
# Tricomi U: individual paths
# --------------------------------------------------------------------------

def _combine(terms):
    """Sum of exp(L_i) * (1 +- e_i); terms are (complex log, relative error)."""
    terms = [(L, e) for L, e in terms if L is not None]
    top = max(L.real for L, _ in terms)
    mant = 0j
    noise = 0.0
    for L, e in terms:
        v = cmath.exp(L - top)
        mant += v
        noise += abs(v) * e
    err = noise / abs(mant) if mant != 0 else math.inf
    return Scaled(mant, top, err)


def _gamma_err(*args):
    # rough relative error of a product of Lanczos gammas at these arguments
    return 1e-15 * (1.0 + 0.05 * sum(abs(x) for x in args))


def u_connection(a, b, z):
    """U via the connection formula; None when b is an integer."""
    a = complex(a)
    b = complex(b)
    if _is_int(b):
        return None
    lz = math.log(z)
    lsin = complex(log_sin_pi_vec(np.array([b]))[0])
    c = 1 + a - b
    terms = []
    r1 = log_rgamma(c)
    if r1 is not None:
        m1 = _m_scaled(a, b, z)
        L1 = LOG_PI - lsin + r1 - log_gamma_complex(b) + m1.log()
        terms.append((L1, m1.err + _gamma_err(a, b)))
    r2 = log_rgamma(a)
    if r2 is not None:
        m2 = _m_scaled(c, 2 - b, z)
        L2 = LOG_PI - lsin + (1 - b) * lz + r2 - log_gamma_complex(2 - b) + m2.log() + 1j * math.pi
        terms.append((L2, m2.err + _gamma_err(a, b)))
    return _combine(terms)


def u_asymptotic(a, b, z, cap=400):
    """Large-z expansion z^-a sum (a)_n (a-b+1)_n / n! (-z)^-n.

    Returns None when the smallest term is not below roundoff.
    """
    a = complex(a)
    b = complex(b)
    c = a - b + 1
    s = 1 + 0j
    t = 1 + 0j
    absum = 1.0
    err = math.inf
    for n in range(cap):
        tn = t * (a + n) * (c + n) / ((n + 1) * (-z))
        if tn == 0:
            err = 0.0
            break
        if abs(tn) > abs(t) and n > 0:
            err = abs(t) / abs(s) if s != 0 else math.inf
            break
        t = tn
        s += t
        absum += abs(t)
        if abs(t) < EPS * 1e-2 * abs(s):
            err = 0.0
            break
    if s == 0:
        return None
    err += EPS * (absum / abs(s) + 2)
    if err > 1e-13:
        return None
    L = -a * math.log(z) + cmath.log(s)
    return _from_log(L, err)


def _u_integral_ray(a, b, z, theta):
    """Trapezoid in s along t = e^{s + i theta}; returns (log value, rel error) or None."""
    rot = cmath.exp(1j * theta)
    # strip of analyticity left after rotating: |Im s + theta| < pi/2
    d = 0.5 * math.pi - abs(theta)
    growth = d * (abs(a.imag) + abs((b - a).imag)) + 40.0
    h = min(2.0 * math.pi * d / growth, 0.25)

    def logf(s):
        t = np.exp(s) * rot
        return -z * t + a * (s + 1j * theta) + (b - a - 1) * np.log1p(t)

    # locate the peak of Re logf on a coarse grid, then expand both tails
    coarse = np.linspace(-60.0 / min(a.real, 1.0) - 5, math.log(800.0 / (z * math.cos(theta)) + 1.0) + 2, 400)
    lr = logf(coarse).real
    s0 = coarse[np.argmax(lr)]
    peak = lr.max()
    lo = s0 - 1.0
    while logf(np.array([lo]))[0].real > peak - 45.0:
        lo -= max(1.0, 0.5 * (s0 - lo))
    hi = s0 + 1.0
    while logf(np.array([hi]))[0].real > peak - 45.0:
        hi += 1.0
    n = int(math.ceil((hi - lo) / h))
    sg = lo + 0.5 * h * np.arange(2 * n + 1)
    lf = logf(sg)
    top = lf.real.max()
    v = np.exp(lf - top)
    fine = 0.5 * h * v.sum()
    coarse_sum = h * v[::2].sum()
    if fine == 0:
        return None
    cond = float(np.abs(v).sum() * 0.5 * h / abs(fine))
    # the fine rule is far more accurate than its difference to the coarse one
    disc = abs(fine - coarse_sum) / abs(fine)
    err = EPS * cond * (10.0 + math.sqrt(2 * n)) + min(disc, 1.0) * 1e-3 + _gamma_err(a)
    L = cmath.log(fine) + top - log_gamma_complex(a)
    return L, err


INTEGRAL_ANGLES = (0.0, 0.15, 0.3, 0.45, 0.6, 0.75, 0.85, 0.92, 0.96, 0.985)  # fractions of pi/2


def u_integral(a, b, z):
    """U = (1/Gamma(a)) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt, Re a > 0.

    Trapezoid in s = log t, which converges geometrically since the
    integrand is analytic in a strip. When the imaginary parts are large the
    ray is rotated, t = e^{s + i theta}, |theta| < pi/2 (nothing is crossed
    and e^{-zt} still decays); the ray with the smallest error estimate wins.
    """
    a = complex(a)
    b = complex(b)
    if a.real <= 0:
        return None
    # rotating towards Im a > 0 damps t^{i Im a}; the other side only adds growth
    sgn = 1.0 if (a.imag + (b - a).imag) >= 0 else -1.0
    best = None
    for frac in INTEGRAL_ANGLES:
        r = _u_integral_ray(a, b, z, sgn * frac * 0.5 * math.pi)
        if r is not None and (best is None or r[1] < best[1]):
            best = r
        if best is not None and best[1] < 1e-14:
            break
    if best is None:
        return None
    return _from_log(*best)


def u_polynomial(a, b, z):
    """Terminating case a = -m: U(-m, b, z) = (-1)^m (b)_m M(-m, b, z)."""
    m = int(round(complex(a).real))
    m = -m
    b = complex(b)
    poch = 1 + 0j
    for j in range(m):
        poch *= b + j
    t = 1 + 0j
    s = 1 + 0j
    absum = 1.0
    for n in range(m):
        t *= (-m + n) / (b + n) * (z / (n + 1))
        s += t
        absum += abs(t)
    val = (-1) ** m * poch * s
    if val == 0:
        return Scaled(0j, 0.0, math.inf)
    err = EPS * (absum / abs(s) + m)
    return _from_log(cmath.log(val), err)


def u_recurrence(a, b, z, base):
    """Downward recurrence in a, seeded at a+m and a+m+1 with Re(a+m) >= 1.

    U(a-1) = -(b - 2a - z) U(a) - a (a - b + 1) U(a+1).
    """
    a = complex(a)
    b = complex(b)
    m = int(math.ceil(1.0 - a.real))
    if m <= 0 or is_pole(a):
        return None
    top_a = a + m
    u1 = base(top_a, b, z)         # U(top_a)
    u2 = base(top_a + 1, b, z)     # U(top_a + 1)
    if u1 is None or u2 is None:
        return None
    scale = max(u1.scale, u2.scale)
    x1 = u1.mant * math.exp(u1.scale - scale)
    x2 = u2.mant * math.exp(u2.scale - scale)
    err = max(u1.err, u2.err)
    cur_a = top_a
    for _ in range(m):
        p1 = -(b - 2 * cur_a - z) * x1
        p2 = -cur_a * (cur_a - b + 1) * x2
        x0 = p1 + p2
        if x0 == 0:
            return None
        err = err * (abs(p1) + abs(p2)) / abs(x0) + EPS
        x2, x1 = x1, x0
        cur_a -= 1
        mag = abs(x1)
        if mag > _RESCALE or (0 < mag < 1 / _RESCALE):
            lm = math.log(mag)
            x1 /= math.exp(lm)
            x2 /= math.exp(lm)
            scale += lm
    return Scaled(x1, scale, err)


# --------------------------------------------------------------------------
# Tricomi U: path selection
# --------------------------------------------------------------------------

PATHS = ("auto", "connection", "integral", "asymptotic", "recurrence", "polynomial")


def _u_direct(a, b, z, budget=1e-12):
    """Best non-recursive path for U; returns a Scaled or None."""
    if is_pole(a):
        return u_polynomial(a, b, z)
    cands = []
    r = u_asymptotic(a, b, z)
    if r is not None:
        return r
    r = u_connection(a, b, z)
    if r is not None:
        if r.err <= budget:
            return r
        cands.append(r)
    r = u_integral(a, b, z)
    if r is not None:
        if r.err <= budget:
            return r
        cands.append(r)
    if not cands:
        return None
    return min(cands, key=lambda c: c.err)


def u_scaled(a, b, z, method="auto"):
    """U(a, b, z) as a Scaled triple; never raises on precision loss."""
    if not z > 0:
        raise DomainError("U(a, b, z) is evaluated for z > 0 only")
    a = complex(a)
    b = complex(b)
    z = float(z)
    if method == "auto":
        best = _u_direct(a, b, z)
        if best is not None and best.err <= 1e-12:
            return best
        if complex(a).real <= 0 and not is_pole(a):
            r = u_recurrence(a, b, z, _u_direct)
            if r is not None and (best is None or r.err < best.err):
                best = r
        if best is None:
            raise PrecisionLossError(f"no evaluation path for U({a}, {b}, {z})")
        return best
    if method == "connection":
        r = u_connection(a, b, z)
        if r is None:
            raise DomainError("connection formula needs non-integer b")
        return r
    if method == "integral":
        r = u_integral(a, b, z)
        if r is None:
            raise DomainError("integral representation needs Re(a) > 0")
        return r
    if method == "asymptotic":
        r = u_asymptotic(a, b, z)
        if r is None:
            raise PrecisionLossError("asymptotic expansion does not reach roundoff here")
        return r
    if method == "recurrence":
        r = u_recurrence(a, b, z, _u_direct)
        if r is None:
            raise DomainError("recurrence path needs Re(a) <= 0")
        return r
    if method == "polynomial":
        if not is_pole(a):
            raise DomainError("polynomial path needs a = 0, -1, -2, ...")
        return u_polynomial(a, b, z)
    raise ValueError(f"unknown method {method!r}; expected one of {PATHS}")


def tricomi_u(a, b, z, method="auto", max_rel_error=1e-8):
    """Tricomi confluent hypergeometric U(a, b, z) for complex a, b and z > 0.

    Raises PrecisionLossError when the estimated relative error of the chosen
    path exceeds ``max_rel_error``.
    """
    r = u_scaled(a, b, z, method)
    if r.err > max_rel_error:
        raise PrecisionLossError(
            f"U({complex(a)}, {complex(b)}, {z}) estimated relative error {r.err:.2e} "
            f"exceeds budget {max_rel_error:.1e}"
        )
    return r.value()


def u_connection_vec(a, b, z):
    """Vectorised connection formula over arrays a, b (no integer b, no poles).

    Returns (mant, scale, err) arrays with U = mant * exp(scale) and err an
    absolute error estimate for mant (same exp(scale) units), dominated by
    the cancellation between the two M terms. There is no fallback here;
    callers decide what to do where err is large.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a, b = np.broadcast_arrays(a, b)
    c = 1 + a - b
    lsin = log_sin_pi_vec(b)
    m1, s1, c1 = _m_series_vec(a, b, z)
    m2, s2, c2 = _m_series_vec(c, 2 - b, z)
    L1 = LOG_PI - lsin - loggamma_vec(c) - loggamma_vec(b) + np.log(m1) + s1
    L2 = (LOG_PI - lsin + (1 - b) * math.log(z) - loggamma_vec(a) - loggamma_vec(2 - b)
          + np.log(m2) + s2 + 1j * math.pi)
    top = np.maximum(L1.real, L2.real)
    e1 = np.exp(L1 - top)
    e2 = np.exp(L2 - top)
    mant = e1 + e2
    gerr = 1e-15 * (1.0 + 0.05 * (np.abs(a) + np.abs(b)))
    err = (EPS * c1 + gerr) * np.abs(e1) + (EPS * c2 + gerr) * np.abs(e2)
    return mant, top, err
