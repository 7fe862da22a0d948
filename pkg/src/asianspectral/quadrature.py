"""Gauss-Laguerre rules and the integrators used by the pricer and identity checks."""

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import MaxDepthError, NonConvergenceError, NonFiniteError

MAX_ORDER = 512


@dataclass(frozen=True)
class QuadratureRule:
    """n-point Gauss-Laguerre rule for weight e^{-x} on [0, inf).

    ``weights`` underflow to 0 for the outermost nodes once n is in the
    hundreds; ``log_weights`` and ``scaled_weights`` (w_i e^{x_i}) stay exact.
    """

    n: int
    nodes: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray
    scaled_weights: np.ndarray


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    est_error: float
    evaluations: int


def _laguerre_pair(n, x):
    """(L_n(x)/L_{n-1}(x), log|L_n(x) e^{-x/2}|, L_{n-1}/L_n scaled the same) by recurrence.

    Runs on e^{-x/2}-scaled values with a running log scale so that n = 512
    at x ~ 2000 stays in range.
    """
    p0 = 1.0
    p1 = 1.0 - x
    logscale = 0.0
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1 - x) * p1 - k * p0) / (k + 1)
        m = abs(p1)
        if m > 1e150:
            p0 /= m
            p1 /= m
            logscale += math.log(m)
    return p1, p0, logscale


def _newton_root(n, z):
    prev = math.inf
    for _ in range(100):
        ln, lm1, _ = _laguerre_pair(n, z)
        # L_n' = n (L_n - L_{n-1}) / x
        dz = ln * z / (n * (ln - lm1))
        # once the step stops shrinking we are at the noise floor of the recurrence
        if abs(dz) >= prev and abs(dz) < 1e-9 * z:
            return z
        z -= dz
        if abs(dz) <= 1e-16 * z:
            return z
        prev = abs(dz)
    raise NonConvergenceError(f"Laguerre root search for n={n} exceeded 100 Newton steps")


# double-double helpers (error-free transformations), vectorised over arrays
_SPLIT = 134217729.0  # 2^27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _laguerre_dd(n, x):
    """L_n(x) and L_{n-1}(x) in double-double as (hi, lo, hi, lo, log scale).

    The plain recurrence loses ~n ulps near the small roots, which is enough
    to cost the weights 1e-11; this keeps the roots and weights at full
    double precision for n up to MAX_ORDER.
    """
    x = np.asarray(x, dtype=float)
    p0h, p0l = np.ones_like(x), np.zeros_like(x)
    p1h, p1l = _two_sum(np.ones_like(x), -x)
    logscale = np.zeros_like(x)
    for k in range(1, n):
        ch, cl = _two_sum(np.full_like(x, 2.0 * k + 1.0), -x)
        # (c * p1) in dd
        ah, al = _two_prod(ch, p1h)
        al = al + (ch * p1l + cl * p1h)
        ah, al = _quick_two_sum(ah, al)
        # k * p0 in dd
        bh, bl = _two_prod(np.full_like(x, float(k)), p0h)
        bl = bl + k * p0l
        # difference
        sh, sl = _two_sum(ah, -bh)
        sl = sl + (al - bl)
        sh, sl = _quick_two_sum(sh, sl)
        # divide by k + 1
        q = sh / (k + 1)
        ph, pl = _two_prod(q, np.full_like(x, float(k + 1)))
        r = ((sh - ph) - pl + sl) / (k + 1)
        p0h, p0l = p1h, p1l
        p1h, p1l = _quick_two_sum(q, r)
        big = np.abs(p1h) > 1e150
        if np.any(big):
            # rescale by an exact power of two
            e = np.where(big, -np.frexp(p1h)[1], 0)
            p0h, p0l, p1h, p1l = (np.ldexp(v, e) for v in (p0h, p0l, p1h, p1l))
            logscale = logscale - e * math.log(2.0)
    return p1h, p1l, p0h, p0l, logscale


@functools.lru_cache(maxsize=64)
def gauss_laguerre_rule(n):
    """Nodes are the roots of L_n, weights w_i = x_i / ((n+1)^2 L_{n+1}(x_i)^2)."""
    if int(n) != n or not 1 <= n <= MAX_ORDER:
        raise ValueError(f"rule order must be an integer in [1, {MAX_ORDER}], got {n}")
    n = int(n)
    x = np.empty(n)
    for i in range(n):
        # Stroud-Secrest style starting values
        if i == 0:
            z = 3.0 / (1.0 + 2.4 * n)
        elif i == 1:
            z = x[0] + 15.0 / (1.0 + 2.5 * n)
        else:
            ai = i - 1
            z = x[i - 1] + (1.0 + 2.55 * ai) / (1.9 * ai) * (x[i - 1] - x[i - 2])
        x[i] = _newton_root(n, z)
    if np.any(np.diff(x) <= 0):
        raise NonConvergenceError(f"Laguerre root search for n={n} lost a root")
    # polish in double-double: L_n(x) is then accurate well below one ulp of x
    for _ in range(2):
        lh, ll, mh, ml, _ = _laguerre_dd(n, x)
        x = x - (lh + ll) * x / (n * ((lh + ll) - (mh + ml)))
    ln1h, ln1l, _, _, ls = _laguerre_dd(n + 1, x)
    logw = np.log(x) - 2.0 * math.log(n + 1) - 2.0 * (np.log(np.abs(ln1h + ln1l)) + ls)
    nodes = x
    for arr in (nodes, logw):
        arr.setflags(write=False)
    weights = np.exp(logw)
    scaled = np.exp(logw + nodes)
    weights.setflags(write=False)
    scaled.setflags(write=False)
    return QuadratureRule(n, nodes, weights, logw, scaled)


def _eval(f, x):
    """f over an array of points; uses one vector call when f supports it."""
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape == x.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([float(f(float(t))) for t in x])


def _finite(y, where):
    if not np.all(np.isfinite(y)):
        raise NonFiniteError(f"integrand returned a non-finite value in {where}")
    return y


def _laguerre_sum(f, n, scale):
    rule = gauss_laguerre_rule(n)
    y = _finite(_eval(f, scale * rule.nodes), "integrate_laguerre")
    return scale * float(np.dot(rule.scaled_weights, y))


def integrate_laguerre(f, n, scale=1.0):
    """int_0^inf f(x) dx ~ s sum w_i e^{x_i} f(s x_i).

    est_error compares against the ceil(3n/4)-point rule and is a diagnostic only.
    """
    if not scale > 0:
        raise ValueError("scale must be positive")
    v = _laguerre_sum(f, n, scale)
    m = max(1, -(-3 * n // 4))
    evals = n
    if m != n:
        err = abs(v - _laguerre_sum(f, m, scale))
        evals += m
    else:
        err = math.inf
    return IntegrationResult(v, err, evals)


def integrate_trapezoid(f, a, b, n):
    """Composite trapezoid with n panels on [a, b]; est_error from the n/2-panel rule."""
    if not a < b:
        raise ValueError("need a < b")
    n = int(n)
    if n < 1:
        raise ValueError("need at least one panel")
    x = np.linspace(a, b, n + 1)
    y = _finite(_eval(f, x), "integrate_trapezoid")
    h = (b - a) / n
    v = h * (0.5 * y[0] + y[1:-1].sum() + 0.5 * y[-1])
    if n % 2 == 0:
        yc = y[::2]
        vc = 2 * h * (0.5 * yc[0] + yc[1:-1].sum() + 0.5 * yc[-1])
        err = abs(v - vc) / 3.0
    else:
        err = math.inf
    return IntegrationResult(float(v), float(err), n + 1)


def _try(f, x):
    try:
        return f(x)
    except (ZeroDivisionError, OverflowError, ValueError):
        return math.nan


def _safe_endpoint(f, x, toward):
    y = _try(f, x)
    while not math.isfinite(y):
        x = math.nextafter(x, toward)
        if x == toward:
            raise NonFiniteError("integrand is non-finite across the whole interval")
        y = _try(f, x)
    return y


def integrate_adaptive(f, a, b, tol=1e-10, max_depth=60):
    """Adaptive Simpson with Richardson correction.

    An interval [l, r] is accepted once |S2 - S1| <= 15 tol max((r-l)/(b-a), 2^-10).
    Non-finite values at the endpoints (integrable singularities) are
    sidestepped by moving to the next representable point inwards.
    """
    if not a < b:
        raise ValueError("need a < b")
    if not tol > 0:
        raise ValueError("tol must be positive")
    f = _scalar(f)
    L = b - a
    fa = _safe_endpoint(f, a, b)
    fb = _safe_endpoint(f, b, a)
    m = 0.5 * (a + b)
    fm = f(m)
    evals = 3
    whole = (b - a) / 6.0 * (fa + 4 * fm + fb)
    total = 0.0
    err_total = 0.0
    stack = [(a, b, fa, fm, fb, whole, 0)]
    while stack:
        l, r, fl, fmid, fr, s, depth = stack.pop()
        mid = 0.5 * (l + r)
        lm = 0.5 * (l + mid)
        rm = 0.5 * (mid + r)
        flm = f(lm)
        frm = f(rm)
        evals += 2
        if not (math.isfinite(flm) and math.isfinite(frm)):
            raise NonFiniteError(f"integrand non-finite near x={lm:g}")
        sl = (mid - l) / 6.0 * (fl + 4 * flm + fmid)
        sr = (r - mid) / 6.0 * (fmid + 4 * frm + fr)
        diff = sl + sr - s
        if abs(diff) <= 15.0 * tol * max((r - l) / L, 2.0 ** -10) or (r - l) <= 4 * math.ulp(mid):
            total += sl + sr + diff / 15.0
            err_total += abs(diff) / 15.0
            continue
        if depth + 1 >= max_depth:
            raise MaxDepthError(f"adaptive Simpson reached depth {max_depth} near x={mid:g}")
        stack.append((mid, r, fmid, frm, fr, sr, depth + 1))
        stack.append((l, mid, fl, flm, fmid, sl, depth + 1))
    return IntegrationResult(total, err_total, evals)


def _scalar(f):
    def g(x):
        return float(f(x))
    return g


@functools.lru_cache(maxsize=16)
def _legendre(order):
    # node/weight generation is infrastructure; numpy's Golub-Welsch is used as is
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def integrate_gauss_legendre(f, a, b, panels=32, order=16):
    """Composite Gauss-Legendre on [a, b]; f is called once on the full node array.

    est_error compares against the same panels with order - 4 points.
    """
    if not a < b:
        raise ValueError("need a < b")
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])

    def run(o):
        x, w = _legendre(o)
        pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        y = _finite(_eval(f, pts), "integrate_gauss_legendre").reshape(panels, o)
        return float(np.sum(half[:, None] * w[None, :] * y)), pts.size

    v, n1 = run(order)
    vc, n2 = run(max(order - 4, 2))
    return IntegrationResult(v, abs(v - vc), n1 + n2)
