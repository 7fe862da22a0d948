"""Numerical checks of the transform and kernel identities behind the pricer.

Every ``check_*`` function returns an :class:`IdentityReport` holding the
largest relative residual over its parameter grid. The ``run_suite`` helper
groups them the way the ``verify`` command does.
"""

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import _legendre, gauss_laguerre_rule, integrate_gauss_legendre
from .specfun.bessel import bessel_k_imag_scaled, bessel_k_real
from .specfun.conical import conical_p
from .specfun.gamma import gamma_abs_sq, log_gamma_abs_sq_vec, log_gamma_complex
from .specfun.hypergeometric import _m_series
from .specfun.parabolic import parabolic_d
from .specfun.polynomials import bessel_poly, hermite_poly
from .specfun.whittaker import whittaker_w, whittaker_w_imag_real

SQRT_PI3_2 = math.sqrt(math.pi ** 3 / 2.0)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    grid: list
    max_rel_residual: float
    tolerance: float
    passed: bool

    def to_dict(self):
        return {"grid": [list(g) for g in self.grid], "max_rel_residual": self.max_rel_residual,
                "name": self.name, "passed": self.passed, "tolerance": self.tolerance}


def _report(name, grid, residuals, tol):
    r = max(residuals) if residuals else 0.0
    if not math.isfinite(r):
        r = math.inf
    return IdentityReport(name, [tuple(g) for g in grid], float(r), float(tol), bool(r <= tol))


def _rel(a, b):
    return abs(a - b) / abs(b)


# ---- quadrature helpers ----------------------------------------------------

def _gl_nodes(a, b, panels, order):
    x, w = _legendre(order)
    edges = np.linspace(a, b, panels + 1)
    h = 0.5 * np.diff(edges)
    m = 0.5 * (edges[1:] + edges[:-1])
    return (m[:, None] + h[:, None] * x).ravel(), (h[:, None] * w).ravel()


def _graded_nodes(a, b, levels=48, order=16, split=2, inner=True):
    """Nodes and weights on [a, b], graded dyadically towards a.

    Each dyadic piece [a + L 2^-(k+1), a + L 2^-k] gets ``split`` Gauss panels
    and, with ``inner``, the last piece [a, a + L 2^-levels] one more; which handles integrable
    algebraic or log-oscillating behaviour at a.
    """
    L = b - a
    xs, ws = [], []
    for k in range(levels):
        lo, hi = a + L * 2.0 ** -(k + 1), a + L * 2.0 ** -k
        x, w = _gl_nodes(lo, hi, split, order)
        xs.append(x)
        ws.append(w)
    if inner:
        # Gauss nodes never touch the endpoint itself
        x, w = _gl_nodes(a, a + L * 2.0 ** -levels, 1, order)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def _index_integral(f, p_max=200.0, step=1.0, order=20, rel=1e-16, p_min=4.0):
    """int_0^inf f(p) dp, panel by panel until a panel's peak |f| drops below
    ``rel`` times the running maximum (or p reaches ``p_max``)."""
    # the first unit is graded towards 0, where |Gamma(lambda + ip)|^2 can peak sharply
    x, w = _graded_nodes(0.0, 1.0, levels=24, order=order, split=1)
    y = np.asarray(f(x), dtype=float)
    total = float(np.dot(w, y))
    peak = float(np.max(np.abs(y)))
    a = 1.0
    while a < p_max:
        b = min(a + step, p_max)
        x, w = _gl_nodes(a, b, 1, order)
        y = np.asarray(f(x), dtype=float)
        total += float(np.dot(w, y))
        m = float(np.max(np.abs(y)))
        peak = max(peak, m)
        a = b
        if a >= p_min and m <= rel * peak:
            break
    return total


def _wynn(s):
    """Wynn epsilon extrapolation of the partial-sum sequence s."""
    e_prev = np.zeros(len(s) + 1)
    e_cur = np.asarray(s, dtype=float).copy()
    best = e_cur[-1]
    for j in range(1, len(s)):
        d = e_cur[1:] - e_cur[:-1]
        with np.errstate(divide="ignore"):
            nxt = e_prev[1:len(e_cur)] + 1.0 / d
        e_prev, e_cur = e_cur, nxt
        if j % 2 == 0 and np.all(np.isfinite(e_cur)) and e_cur.size:
            best = e_cur[-1]
        if e_cur.size < 2 or not np.all(np.isfinite(e_cur)):
            break
    return float(best)


def _log_sinh_pi(p):
    return math.pi * p - math.log(2.0) + np.log1p(-np.exp(-2.0 * math.pi * p))


# ---- special-function invariants --------------------------------------------

def check_gamma_identity(tol=1e-12):
    p = np.arange(0.0, 10.0 + 1e-12, 0.25)
    res = [abs(gamma_abs_sq(0.5, q) * math.cosh(math.pi * q) - math.pi) / math.pi for q in p]
    return _report("gamma_identity", [(float(q),) for q in p], res, tol)


def check_gamma_recurrence(tol=1e-12):
    grid, res = [], []
    for re in (0.2, 0.7, 1.5, 3.0, 5.0):
        for im in (-5.0, -1.3, 0.0, 0.4, 2.0, 5.0):
            z = complex(re, im)
            v = complex(np.exp(log_gamma_complex(z + 1) - log_gamma_complex(z)))
            grid.append((re, im))
            res.append(abs(v - z) / abs(z))
    return _report("gamma_recurrence", grid, res, tol)


def check_kummer_transformation(tol=1e-10):
    grid, res = [], []
    for a, b in ((0.5 + 0.7j, 1.2 + 0.4j), (1.5, 2.5), (-0.3 + 2j, 0.8 - 1j)):
        for z in (-5.0, 0.5, 3.0, 8.0):
            lhs = _m_series(a, b, z)[0].value()
            rhs = math.exp(z) * _m_series(b - a, b, -z)[0].value()
            grid.append((str(a), str(b), z))
            res.append(abs(lhs - rhs) / abs(lhs))
    return _report("kummer_transformation", grid, res, tol)


def check_whittaker_reality(tol=1e-10):
    grid, res = [], []
    for kappa in (-3.0, -1.2, 0.0, 0.5, 1.0):
        for p in (0.05, 1.0, 3.0, 6.0):
            for z in (0.5, 2.0, 10.0, 50.0):
                w = whittaker_w(kappa, 1j * p, z)
                grid.append((kappa, p, z))
                res.append(abs(w.imag) / abs(w.real))
    return _report("whittaker_reality", grid, res, tol)


def check_whittaker_bessel_bridge(tol=1e-8):
    grid, res = [], []
    for p in (0.5, 1.0, 2.0):
        for x in (0.5, 1.0, 4.0):
            w = whittaker_w(0.0, 1j * p, 2.0 * x).real
            k = math.sqrt(2.0 * x / math.pi) * bessel_k_imag_scaled(p, x) * math.exp(-0.5 * math.pi * p)
            grid.append((p, x))
            res.append(_rel(w, k))
    return _report("whittaker_bessel_bridge", grid, res, tol)


def check_whittaker_pde(tol=1e-5, zs=(1.0, 2.0, 5.0)):
    """Residual of f'' + (-1/4 + k/z + (1/4 + p^2)/z^2) f with a five-point
    central difference for f''."""
    grid, res = [], []
    for kappa in (-2.0, 0.0, 0.9):
        for p in (0.3, 1.0, 4.0):
            f = lambda z: whittaker_w(kappa, 1j * p, z).real  # noqa: E731
            vals = {z: f(z) for z in zs}
            scale = max(abs(v) for v in vals.values())
            worst = 0.0
            for z in zs:
                h = 2e-3 * z
                d2 = (-f(z + 2 * h) + 16.0 * f(z + h) - 30.0 * vals[z] + 16.0 * f(z - h)
                      - f(z - 2 * h)) / (12.0 * h * h)
                q = -0.25 + kappa / z + (0.25 + p * p) / (z * z)
                worst = max(worst, abs(d2 + q * vals[z]) / scale)
            grid.append((kappa, p))
            res.append(worst)
    return _report("whittaker_pde", grid, res, tol)


def _laplace_bridge_residual(mu, p, x):
    f = lambda v: np.exp(-x * v) * (v * v - 1.0) ** (-mu / 2.0) * np.array(  # noqa: E731
        [conical_p(mu, p, t) for t in v])
    # near v = 1 the integrand behaves like (v-1)^{-mu}; v - 1 = s^q makes it bounded.
    # Below w_c = v - 1 the first two terms of the hypergeometric series are integrated
    # in closed form: e^{-xv} w^{-mu} (1 - c w) / Gamma(1 - mu).
    q = 1.0 / (1.0 - max(mu, 0.0))
    levels = max(1, round(20.0 / q))
    wc = 2.0 ** (-levels * q)
    c1 = -x - (0.25 + p * p) / (2.0 * (1.0 - mu))
    left = math.exp(-x) / math.gamma(1.0 - mu) * (wc ** (1 - mu) / (1 - mu) + c1 * wc ** (2 - mu) / (2 - mu))
    ss, ws = _graded_nodes(0.0, 1.0, levels=levels, order=16, split=1, inner=False)
    left += float(np.dot(ws * q * ss ** (q - 1.0), f(1.0 + ss ** q)))
    left += integrate_gauss_legendre(f, 2.0, 2.0 + 40.0 / x, panels=16, order=16).value
    right = math.sqrt(2.0 / math.pi) * x ** (mu - 0.5) * bessel_k_imag_scaled(p, x) * math.exp(-0.5 * math.pi * p)
    return _rel(left, right)


def check_conical_laplace_bridge(tol=1e-7):
    grid, res = [], []
    for mu in (-0.5, 0.25, 0.75):
        for p in (0.3, 0.8, 2.0):
            for x in (1.0, 2.0):
                grid.append((mu, p, x))
                res.append(_laplace_bridge_residual(mu, p, x))
    return _report("conical_laplace_bridge", grid, res, tol)


def check_parabolic_hermite_bridge(tol=1e-10):
    """D_n(sqrt2 x) against 2^{-n/2} e^{-x^2/2} H_n(x), residual scaled by the
    largest right-hand side over the x grid."""
    xs = np.linspace(-2.0, 2.0, 17)
    grid, res = [], []
    for n in range(7):
        rhs = 2.0 ** (-n / 2.0) * np.exp(-xs * xs / 2.0) * hermite_poly(n, xs)
        lhs = np.array([parabolic_d(float(n), math.sqrt(2.0) * x) for x in xs])
        grid.append((n,))
        res.append(float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs))))
    return _report("parabolic_hermite_bridge", grid, res, tol)


def bessel_poly_norm(a, b, n):
    """Squared norm of y_n(.; a, b) under the weight x^{a-2} e^{-b/x}."""
    return math.factorial(n) * b ** (a - 1.0) * math.gamma(2.0 - n - a) / (1.0 - a - 2.0 * n)


def bessel_poly_inner(a, b, m, n):
    """int_0^inf x^{a-2} e^{-b/x} y_m(x) y_n(x) dx.

    With t = b/x and then t = s^2 the integrand is smooth on [0, inf).
    """
    if not 2 * max(m, n) < 1 - a:
        raise ValueError("need 2 max(m, n) < 1 - a for the moments to exist")
    s, w = _gl_nodes(0.0, 9.0, 48, 20)
    t = s * s
    x = b / t
    y = t ** (-a) * np.exp(-t) * bessel_poly(m, a, b, x) * bessel_poly(n, a, b, x)
    return b ** (a - 1.0) * float(np.dot(w, 2.0 * s * y))


def check_bessel_poly_orthogonality(a=-8.0, b=1.0, m=None, n=None, tol=1e-8):
    """Orthogonality of generalized Bessel polynomials, residual scaled by
    sqrt(norm_m norm_n). With m, n left as None every pair up to degree 4
    allowed by the moment condition is checked."""
    top = [d for d in range(5) if 2 * d < 1 - a]
    pairs = [(m, n)] if m is not None else [(i, j) for i in top for j in top if i <= j]
    grid, res = [], []
    for i, j in pairs:
        v = bessel_poly_inner(a, b, i, j)
        exact = bessel_poly_norm(a, b, i) if i == j else 0.0
        scale = math.sqrt(bessel_poly_norm(a, b, i) * bessel_poly_norm(a, b, j))
        grid.append((a, b, i, j))
        res.append(abs(v - exact) / scale)
    return _report("bessel_poly_orthogonality", grid, res, tol)


# ---- kernel identities ------------------------------------------------------

def mehler_closed(t, x, y):
    return (2.0 * math.pi * math.sinh(t)) ** -0.5 * math.exp(
        x * y / math.sinh(t) - (x * x + y * y) / (2.0 * math.tanh(t)))


def mehler_sum(t, x, y, n_terms):
    tot = 0.0
    for n in range(n_terms):
        c2 = 1.0 / (math.sqrt(math.pi) * 2.0 ** n * math.factorial(n))
        tot += math.exp(-(n + 0.5) * t) * c2 * hermite_poly(n, x) * hermite_poly(n, y)
    return tot * math.exp(-(x * x + y * y) / 2.0)


def check_mehler_kernel(t, x, y, n_terms, tol=1e-10):
    if not t > 0 or n_terms < 1:
        raise ValueError("need t > 0 and n_terms >= 1")
    r = _rel(mehler_sum(t, x, y, n_terms), mehler_closed(t, x, y))
    return _report("mehler_kernel", [(t, x, y, n_terms)], [r], tol)


def yor_phi(zeta, p, u):
    alpha = 0.75 - zeta / 2.0
    return math.exp(0.25 / u) * u ** alpha * whittaker_w(alpha, 0.5j * p, 0.5 / u).real


def yor_energy(zeta, p):
    return 0.5 * zeta * (1.0 - zeta) - p * p / 2.0 - 0.125


def check_yor_eigenfunction(zeta, p, u_points, tol=1e-4, scale=1.0):
    """2u^2 phi'' + ((2 zeta + 1) u + 1) phi' - E phi by central differences (h = 1e-4 u)."""
    E = yor_energy(zeta, p)
    res = []
    for u in u_points:
        if not u > 0:
            raise ValueError("u points must be positive")
        h = 1e-4 * u
        f0, fp, fm = (scale * yor_phi(zeta, p, v) for v in (u, u + h, u - h))
        d1 = (fp - fm) / (2 * h)
        d2 = (fp - 2 * f0 + fm) / (h * h)
        lhs = 2 * u * u * d2 + ((2 * zeta + 1) * u + 1) * d1
        res.append(abs(lhs - E * f0) / (abs(E * f0) + 1e-300))
    return _report("yor_eigenfunction", [(zeta, p, u) for u in u_points], res, tol)


# ---- index transforms --------------------------------------------------------

KL_TEST_FUNCTIONS = {
    "exp_decay": (lambda x: np.exp(-x), 36.0),
    "gauss": (lambda x: x * np.exp(-x * x), 6.5),
}


def kl_forward_scaled(F, x_max, p):
    """e^{pi p/2} int_0^inf K_{ip}(x) F(x) dx for an array of p."""
    xs, ws = _graded_nodes(0.0, x_max, levels=50, order=16, split=2)
    wf = ws * F(xs)
    out = np.zeros(np.shape(p))
    for xi, wi in zip(xs, wf):
        if wi != 0.0:
            out += wi * bessel_k_imag_scaled(p, xi)
    return out


def kl_roundtrip(test_fn, x_points, p_max=20.0, c=1.0):
    F, x_max = KL_TEST_FUNCTIONS[test_fn]
    Fc = lambda x: c * F(x)  # noqa: E731
    p, w = _gl_nodes(0.0, p_max, max(8, int(math.ceil(2 * p_max))), 16)
    f_s = kl_forward_scaled(Fc, x_max, p)
    # K_{ip}(x) f(p) p sinh(pi p) = Ks fs p sinh(pi p) e^{-pi p}
    weight = w * f_s * p * np.exp(_log_sinh_pi(p) - math.pi * p)
    out = []
    for x in x_points:
        out.append(2.0 / (math.pi ** 2 * x) * float(np.dot(weight, bessel_k_imag_scaled(p, x))))
    return out


def check_kl_roundtrip(test_fn="exp_decay", p_max=20.0, tol=1e-5, x_points=(0.5, 1.0, 2.0)):
    if test_fn not in KL_TEST_FUNCTIONS:
        raise ValueError(f"test_fn must be one of {sorted(KL_TEST_FUNCTIONS)}")
    F = KL_TEST_FUNCTIONS[test_fn][0]
    rec = kl_roundtrip(test_fn, x_points, p_max)
    res = [_rel(v, float(F(x))) for v, x in zip(rec, x_points)]
    return _report(f"kl_roundtrip[{test_fn}]", [(test_fn, p_max, x) for x in x_points], res, tol)


def _k_imag(p, x):
    return bessel_k_imag_scaled(p, x) * np.exp(-0.5 * math.pi * p)


def mixed_kp_left(mu, a, y):
    def f(p):
        lg = log_gamma_abs_sq_vec(0.5 - mu, p)
        P = np.array([conical_p(mu, q, y) for q in p])
        return p * np.exp(_log_sinh_pi(p) + lg - 0.5 * math.pi * p) * bessel_k_imag_scaled(p, a) * P
    return _index_integral(f)


def mixed_kp_right(mu, a, y):
    return SQRT_PI3_2 * a ** (0.5 - mu) * math.exp(-a * y) * (y * y - 1.0) ** (-mu / 2.0)


def check_mixed_kp_integral(mu, a, y, tol=1e-6):
    r = _rel(mixed_kp_left(mu, a, y), mixed_kp_right(mu, a, y))
    return _report("mixed_kp_integral", [(mu, a, y)], [r], tol)


def mixed_wk_left(mu, x, y, via="whittaker"):
    def f(p):
        lg = log_gamma_abs_sq_vec(0.5 - mu, p)
        if via == "bessel":
            if mu != 0:
                raise ValueError("the Bessel route exists only for mu = 0")
            w = math.sqrt(2.0 * x / math.pi) * _k_imag(p, x)
        else:
            w = whittaker_w_imag_real(mu, p, 2.0 * x)
        return p * np.exp(_log_sinh_pi(p) + lg) * w * _k_imag(p, y)
    return _index_integral(f)


def mixed_wk_right(mu, x, y):
    return (SQRT_PI3_2 * x * y ** (0.5 - mu) * math.exp(-(x + y)) * (x + y) ** (mu - 1.0)
            * math.gamma(1.0 - mu))


def check_mixed_wk_integral(mu, x, y, tol=1e-5):
    if mu > 0.5:
        raise ValueError("mixed W.K integral is checked for mu <= 1/2")
    right = mixed_wk_right(mu, x, y)
    res = [_rel(mixed_wk_left(mu, x, y), right)]
    if mu == 0:
        res.append(_rel(mixed_wk_left(mu, x, y, via="bessel"), right))
    return _report("mixed_wk_integral", [(mu, x, y)], res, tol)


def addition_left(mu, a, b, via="whittaker"):
    def f(p):
        lg = log_gamma_abs_sq_vec(0.5 - mu, p)
        if via == "bessel":
            if mu != 0:
                raise ValueError("the Bessel route exists only for mu = 0")
            wa = math.sqrt(2.0 * a / math.pi) * _k_imag(p, a)
            wb = math.sqrt(2.0 * b / math.pi) * _k_imag(p, b)
        else:
            wa = whittaker_w_imag_real(mu, p, 2.0 * a)
            wb = whittaker_w_imag_real(mu, p, 2.0 * b)
        return p * np.exp(_log_sinh_pi(p) + lg) * (wa / a) * (wb / b)
    return 2.0 / math.pi ** 2 * _index_integral(f)


def addition_right(mu, a, b):
    return 2.0 * math.gamma(1.0 - mu) / (math.pi * (a + b)) * whittaker_w(mu, 0.5, 2.0 * (a + b)).real


def check_whittaker_addition(mu, a, b, tol=1e-5):
    """For mu > 1/2 the index integral alone no longer reproduces the left side
    (bound states appear), so the check is limited to mu <= 1/2."""
    if mu > 0.5:
        raise ValueError("the addition formula is checked for mu <= 1/2")
    right = addition_right(mu, a, b)
    res = [_rel(addition_left(mu, a, b), right)]
    if mu == 0:
        res.append(_rel(addition_left(mu, a, b, via="bessel"), right))
    return _report("whittaker_addition", [(mu, a, b)], res, tol)


def cosine_left(mu, u, y, p_max=40.0):
    # W_{mu,ip}(2u) decays like e^{-pi p/2}, so the range is cut where it is negligible
    f = lambda p: whittaker_w_imag_real(mu, p, 2.0 * u) * np.cos(p * y)  # noqa: E731
    return _index_integral(f, p_max=p_max, step=0.5)


def cosine_right(mu, u, y):
    c = math.cosh(y / 2.0)
    return (math.sqrt(math.pi * u / 2.0) * 2.0 ** (-mu) * math.exp(-u * math.sinh(y / 2.0) ** 2)
            * parabolic_d(2.0 * mu, 2.0 * c * math.sqrt(u)))


def check_cosine_transform(mu, u, y, p_max=40.0, tol=1e-4):
    r = _rel(cosine_left(mu, u, y, p_max), cosine_right(mu, u, y))
    return _report("cosine_transform", [(mu, u, y, p_max)], [r], tol)


def macdonald_left(lam, a, b):
    def f(v):
        lg = log_gamma_abs_sq_vec(lam, v)
        return v * np.exp(_log_sinh_pi(v) + lg - math.pi * v) * bessel_k_imag_scaled(v, a) * bessel_k_imag_scaled(v, b)
    return _index_integral(f)


def macdonald_right(lam, a, b):
    return (math.pi ** 1.5 * math.gamma(lam + 0.5) / 2.0 * ((a + b) / (2.0 * a * b)) ** (-lam)
            * bessel_k_real(lam, a + b))


def check_macdonald_product(lam, a, b, tol=1e-6):
    if not (lam > 0 and a > 0 and b > 0):
        raise ValueError("need lambda, a, b > 0")
    r = _rel(macdonald_left(lam, a, b), macdonald_right(lam, a, b))
    return _report("macdonald_product", [(lam, a, b)], [r], tol)


def _power_integrand(pe, x):
    def f(u):
        lg = log_gamma_abs_sq_vec(-pe / 2.0, u / 2.0)
        return u * np.exp(_log_sinh_pi(u) + lg - 0.5 * math.pi * u) * bessel_k_imag_scaled(u, x)
    return f


def power_expansion_parts(pe, x, pieces=60):
    """(continuous part, discrete part) of the expansion of x^{-pe}.

    K_{iu}(x) oscillates like sin(u ln(2u/x) - u + pi/4) for u >> x, so the
    integrand decays only like u^{-pe-1/2}. Past u0 the integral is split at
    half periods of that phase and the partial sums are Wynn-extrapolated.
    """
    f = _power_integrand(pe, x)
    u0 = max(30.0, 4.0 * x)
    head = integrate_gauss_legendre(f, 0.0, u0, panels=int(4 * u0), order=16).value
    phase = lambda u: u * math.log(2.0 * u / x) - u  # noqa: E731
    edges = [u0]
    for n in range(1, pieces + 1):
        target = phase(u0) + n * math.pi
        u = edges[-1] + 1.0
        for _ in range(50):
            du = (phase(u) - target) / math.log(2.0 * u / x)
            u -= du
            if abs(du) < 1e-13 * u:
                break
        edges.append(u)
    sums = [head]
    x16, w16 = _legendre(16)
    for lo, hi in zip(edges[:-1], edges[1:]):
        m, h = 0.5 * (lo + hi), 0.5 * (hi - lo)
        sums.append(sums[-1] + h * float(np.dot(w16, f(m + h * x16))))
    cont = 2.0 ** -pe / (2.0 * math.pi ** 2) * _wynn(sums)
    disc = 2.0 ** (1 - pe) * sum((pe - 2 * k) / (math.factorial(k) * math.factorial(pe - k))
                                 * bessel_k_real(float(pe - 2 * k), x) for k in range(pe // 2 + 1))
    return cont, disc


def check_power_expansion(p_exp, x, tol=1e-5):
    if p_exp not in (1, 2, 3) or not x > 0:
        raise ValueError("need p_exp in {1, 2, 3} and x > 0")
    cont, disc = power_expansion_parts(p_exp, x)
    r = abs((cont + disc) * x ** p_exp - 1.0)
    return _report("power_expansion", [(p_exp, x)], [r], tol)


# ---- pricing-level checks ---------------------------------------------------

def check_put_call_parity(tol=1e-12):
    from .cases import CASES
    from .pricer import parity_gap, price
    grid, res = [], []
    for c, m in CASES.items():
        r = price(m, n=200 if c == 1 else None)
        grid.append((c,))
        res.append(abs(r.call - r.put - parity_gap(m)))
    return _report("put_call_parity", grid, res, tol)


def laguerre_moment_errors(n):
    """Relative errors of sum w_i x_i^j against j! for j <= 2n - 1."""
    rule = gauss_laguerre_rule(n)
    lx = np.log(rule.nodes)
    out = []
    for j in range(2 * n):
        v = float(np.sum(np.exp(rule.log_weights + j * lx)))
        out.append(abs(v / math.exp(math.lgamma(j + 1)) - 1.0))
    return out


def check_laguerre_exactness(tol=1e-11, orders=(4, 8, 16, 32, 64)):
    res = [max(laguerre_moment_errors(n)) for n in orders]
    return _report("laguerre_exactness", [(n,) for n in orders], res, tol)


def check_method_agreement(tol=1e-7, cases=(2, 3, 4, 5, 6, 7)):
    from .cases import CASES
    from .pricer import price
    res = []
    for c in cases:
        a = price(CASES[c], "laguerre", 128).call
        b = price(CASES[c], "trapezoid").call
        res.append(abs(a - b) / abs(b))
    return _report("method_agreement", [(c,) for c in cases], res, tol)


# ---- suites -----------------------------------------------------------------

def _specfun(s):
    yield check_gamma_identity(1e-12 * s)
    yield check_gamma_recurrence(1e-12 * s)
    yield check_kummer_transformation(1e-10 * s)
    yield check_whittaker_reality(1e-10 * s)
    yield check_whittaker_bessel_bridge(1e-8 * s)
    yield check_whittaker_pde(1e-5 * s)
    yield check_conical_laplace_bridge(1e-7 * s)
    yield check_parabolic_hermite_bridge(1e-10 * s)
    for a, b in ((-8.0, 1.0), (-8.0, 2.0), (-6.5, 1.5)):
        yield check_bessel_poly_orthogonality(a, b, tol=1e-8 * s)


def _kernel(s):
    for t, x, y, n in ((1.0, 0.0, 0.0, 40), (2.0, 0.7, -0.4, 60), (0.5, 1.2, 1.0, 90)):
        yield check_mehler_kernel(t, x, y, n, 1e-10 * s)
    for zeta, p, us in ((1.0, 1.0, (0.5, 1.0, 2.0)), (0.0, 0.5, (1.0,)), (2.5, 3.0, (0.2, 1.0, 4.0))):
        yield check_yor_eigenfunction(zeta, p, us, 1e-4 * s)


def _transforms(s):
    for fn in ("exp_decay", "gauss"):
        yield check_kl_roundtrip(fn, 20.0, 1e-5 * s)
    for mu, a, y in ((0.0, 1.0, 1.5), (0.25, 2.0, 2.0), (-0.5, 1.0, 1.05), (0.0, 0.5, 1.001)):
        yield check_mixed_kp_integral(mu, a, y, 1e-6 * s)
    for mu, x, y in ((0.0, 1.0, 1.0), (0.3, 0.8, 1.2), (0.5, 1.0, 1.0), (-0.7, 0.6, 1.4)):
        yield check_mixed_wk_integral(mu, x, y, 1e-5 * s)
    for mu, a, b in ((0.0, 1.0, 1.0), (0.25, 0.5, 1.5), (0.5, 1.0, 2.0), (-1.5, 0.7, 0.9)):
        yield check_whittaker_addition(mu, a, b, 1e-5 * s)
    for mu, u, y in ((0.0, 1.0, 0.0), (0.0, 1.0, 1.0), (0.2, 2.0, 0.5), (0.25, 1.5, 2.0)):
        yield check_cosine_transform(mu, u, y, 40.0, 1e-4 * s)
    for lam, a, b in ((0.5, 1.0, 1.0), (1.0, 0.7, 1.3), (0.05, 0.5, 2.0)):
        yield check_macdonald_product(lam, a, b, 1e-6 * s)
    for pe, x in ((1, 1.0), (2, 1.5), (3, 1.0)):
        yield check_power_expansion(pe, x, 1e-5 * s)
    yield check_power_expansion(1, 20.0, 1e-4 * s)


def _pricing(s):
    yield check_put_call_parity(1e-12 * s)
    yield check_laguerre_exactness(1e-11 * s)
    yield check_method_agreement(1e-7 * s)


SUITES = {"specfun": _specfun, "kernel": _kernel, "transforms": _transforms, "pricing": _pricing}
SUITE_NAMES = ("all",) + tuple(SUITES)


def run_suite(name="all", tol_scale=1.0):
    """Yield IdentityReports for the named suite, tolerances multiplied by tol_scale."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    if not tol_scale > 0:
        raise ValueError("tol_scale must be positive")
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        yield from SUITES[n](tol_scale)
