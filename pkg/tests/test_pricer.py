import math

import mpmath as mp
import numpy as np
import pytest

from asianspectral.cases import CASES, REFERENCE_CALL, REFERENCE_PUT
from asianspectral.errors import DomainError, NumericalError, PrecisionLossError
from asianspectral.pricer import (
    MarketParams,
    NormalizedParams,
    _integrand_vec,
    continuous_integrand,
    convergence_scan,
    default_nodes,
    discrete_correction,
    normalize,
    parity_gap,
    price,
    price_put_normalized,
    trapezoid_pmax,
)


def market_for(nu, tau, k):
    # sigma = 1, S0 = 1 realises any (nu, tau, k)
    return MarketParams((nu + 1) / 2, 1.0, 4 * tau, 1.0, k / tau)


def put_scale(m):
    return math.exp(-m.r * m.T) * 4 * m.S0 / (m.sigma ** 2 * m.T)


def test_normalize_case1():
    n = normalize(CASES[1])
    assert n.nu == pytest.approx(3.0, abs=1e-12)
    assert n.tau == pytest.approx(0.0025, abs=1e-15)
    assert n.k == pytest.approx(0.0025, abs=1e-15)
    assert n.kappa == -(n.nu + 3) / 2


def test_normalize_case7():
    n = normalize(CASES[7])
    assert n.nu == pytest.approx(-0.6, abs=1e-12)
    assert n.tau == pytest.approx(0.125, abs=1e-15)
    assert n.k == pytest.approx(0.125, abs=1e-15)


def test_normalize_nu_zero_when_r_is_half_variance():
    s = 0.37
    assert normalize(MarketParams(s * s / 2, s, 1.3, 1.0, 1.1)).nu == pytest.approx(0.0, abs=1e-15)


def test_normalize_case5_k():
    # the tabulated value 0.625 is a slip; the mapping gives 0.0625
    assert normalize(CASES[5]).k == pytest.approx(0.0625, abs=1e-15)


@pytest.mark.parametrize("bad", [
    dict(sigma=0.0), dict(T=-1.0), dict(S0=0.0), dict(K=-2.0), dict(r=math.nan), dict(sigma=math.inf),
])
def test_market_validation(bad):
    kw = dict(r=0.05, sigma=0.3, T=1.0, S0=2.0, K=2.0)
    kw.update(bad)
    with pytest.raises(DomainError):
        MarketParams(**kw)


def test_integrand_zero_at_origin():
    assert continuous_integrand(0.0, normalize(CASES[2])) == 0.0


def test_integrand_scalar_and_vector_agree():
    npar = normalize(CASES[5])
    p = np.array([0.5, 2.0, 7.5])
    v = continuous_integrand(p, npar)
    for pi, vi in zip(p, v):
        assert continuous_integrand(float(pi), npar) == vi


def test_case2_integrand_positive_unimodal_and_negligible_by_60():
    # fails: the integrand oscillates (peak near p = 31.7, negative at 40)
    # and is still 8e-5 of its peak at p = 60
    npar = normalize(CASES[2])
    p = np.linspace(1e-3, 40.0, 4001)
    g = continuous_integrand(p, npar)
    peak = np.abs(g).max()
    assert np.all(g > 0)
    d = np.sign(np.diff(g))
    assert np.count_nonzero(np.diff(d[d != 0])) <= 1
    assert abs(continuous_integrand(60.0, npar)) < 1e-16 * peak


def test_case2_integrand_shape_as_measured():
    npar = normalize(CASES[2])
    p = np.linspace(1e-3, 120.0, 12001)
    g = continuous_integrand(p, npar)
    i = int(np.argmax(np.abs(g)))
    assert 30 < p[i] < 33 and g[i] > 0
    assert continuous_integrand(40.0, npar) < 0
    assert np.all(np.abs(g[p >= 95]) < 1e-16 * g[i])


def _naive_integrand(p, npar):
    mp.mp.dps = 30
    nu, tau, k, kap = (mp.mpf(v) for v in (npar.nu, npar.tau, npar.k, npar.kappa))
    p = mp.mpf(p)
    w = mp.whitw(kap, 1j * p / 2, 1 / (2 * k))
    val = (mp.exp(-(nu ** 2 + p ** 2) * tau / 2) * (2 * k) ** (-kap) * mp.exp(-1 / (4 * k))
           / (8 * mp.pi ** 2) * w * abs(mp.gamma((nu + 1j * p) / 2)) ** 2 * mp.sinh(mp.pi * p) * p)
    return float(mp.re(val))


@pytest.mark.parametrize("p", [0.3, 2.0, 9.0])
def test_log_space_matches_direct_product_case5(p):
    npar = normalize(CASES[5])
    assert continuous_integrand(p, npar) == pytest.approx(_naive_integrand(p, npar), rel=1e-12)


def test_log_space_matches_direct_product_case1_large_p():
    npar = normalize(CASES[1])
    assert continuous_integrand(120.0, npar) == pytest.approx(_naive_integrand(120.0, npar), rel=1e-10)


def test_discrete_term_absent_for_positive_nu():
    assert discrete_correction(normalize(CASES[2])) == 0.0
    assert discrete_correction(NormalizedParams(0.0, 0.1, 0.1, -1.5)) == 0.0


def _discrete_oracle(npar):
    # independent mpmath integral of the bound-state density against (k - y)^+
    mp.mp.dps = 30
    a = abs(npar.nu)
    k = mp.mpf(npar.k)
    total = mp.mpf(0)
    n = 0
    while 2 * n < a:
        c = mp.exp(-2 * n * (a - n) * npar.tau) / mp.gamma(1 + a - n) * (-1) ** n * 2 * (a - 2 * n)

        def dens(y, n=n, c=c):
            return c * (2 * y) ** (n - 1 - a) * mp.exp(-1 / (2 * y)) * mp.laguerre(n, a - 2 * n, 1 / (2 * y))

        total += mp.quad(lambda y: (k - y) * dens(y), [0, k / 4, k])
        n += 1
    return float(total)


@pytest.mark.parametrize("case", [3, 7])
def test_discrete_term_against_mpmath(case):
    npar = normalize(CASES[case])
    assert discrete_correction(npar) == pytest.approx(_discrete_oracle(npar), rel=1e-10, abs=1e-18)


def test_discrete_term_two_terms_for_nu_below_minus_two():
    npar = NormalizedParams(-2.6, 0.1, 0.3, -0.2)
    assert discrete_correction(npar) == pytest.approx(_discrete_oracle(npar), rel=1e-10)


def test_discrete_term_case7_size():
    # the gap between the reference Laguerre call and ours, in normalized units
    m = CASES[7]
    d = discrete_correction(normalize(m)) * put_scale(m)
    assert d == pytest.approx(0.0019560718, abs=1e-9)


@pytest.mark.parametrize("case", [2, 3])
def test_reference_puts(case):
    assert abs(price(CASES[case]).put - REFERENCE_PUT[case]) < 1e-6


def test_case2_normalized_put_rescales_to_reference_put():
    m = CASES[2]
    P = price_put_normalized(normalize(m))
    assert abs(P * put_scale(m) - 0.0585969851) < 1e-9


def test_case2_call_n64():
    r = price(CASES[2], "laguerre", 64)
    assert abs(r.call - REFERENCE_CALL[2]) < 1e-6
    assert r.nodes_used == 64 and r.method == "laguerre"


def test_case1_n200():
    r = price(CASES[1], "laguerre", 200)
    assert abs(r.call - 0.0559968559) < 5e-4
    assert r.nodes_used == 200


# mpmath at 30 digits: whitw/gamma integrand, quad over [140, 620] where all
# the mass sits, rescaled to a call
CASE1_CALL_ORACLE = 0.0559860415


def test_case1_trapezoid_matches_high_precision_oracle():
    assert abs(price(CASES[1], "trapezoid").call - CASE1_CALL_ORACLE) < 2e-7


def test_case1_converges_to_trapezoid_value_with_more_nodes():
    a = price(CASES[1], "laguerre", 400).call
    b = price(CASES[1], "laguerre", 512).call
    t = price(CASES[1], "trapezoid").call
    assert abs(a - b) < 1e-7 and abs(b - t) < 1e-6


def test_small_strike_put_vanishes():
    m = CASES[2]
    npar = normalize(MarketParams(m.r, m.sigma, m.T, m.S0, 0.2))
    assert abs(price_put_normalized(npar)) < 1e-12


def test_parity_gap_case2():
    gap = (1 - math.exp(-0.18)) * 2 / 0.18 - 2 * math.exp(-0.18)
    assert parity_gap(CASES[2]) == pytest.approx(gap, abs=1e-15)
    # the reference call and put values satisfy the same gap
    assert abs(gap - (REFERENCE_CALL[2] - REFERENCE_PUT[2])) < 1e-9


@pytest.mark.parametrize("case", list(CASES))
def test_parity_by_construction(case):
    r = price(CASES[case], n=200 if case == 1 else None)
    assert abs(r.call - r.put - parity_gap(CASES[case])) < 1e-12


def test_parity_at_zero_rate():
    m = MarketParams(0.0, 0.4, 1.5, 2.0, 2.1)
    assert parity_gap(m) == pytest.approx(2.0 - 2.1, abs=1e-15)
    r = price(m)
    assert abs(r.call - r.put - (2.0 - 2.1)) < 1e-12


def test_parity_gap_series_branch_is_continuous():
    a = parity_gap(MarketParams(1e-10, 0.3, 1.0, 2.0, 2.0))
    b = parity_gap(MarketParams(1e-7, 0.3, 1.0, 2.0, 2.0))
    assert abs(a - b) < 1e-7


@pytest.mark.parametrize("base", [4, 5, 6])
def test_strike_monotonicity(base):
    m = CASES[base]
    rs = [price(MarketParams(m.r, m.sigma, m.T, m.S0, K)) for K in (1.8, 2.0, 2.2)]
    calls = [r.call for r in rs]
    puts = [r.put for r in rs]
    assert calls[0] > calls[1] > calls[2]
    assert puts[0] < puts[1] < puts[2]


@pytest.mark.parametrize("case", [2, 3, 4, 5, 6, 7])
def test_methods_agree(case):
    a = price(CASES[case], "laguerre", 128).call
    b = price(CASES[case], "trapezoid").call
    assert abs(a - b) < 1e-7 * abs(a)


def test_trapezoid_pmax_policy():
    npar = normalize(CASES[2])
    gauss = math.sqrt(2 * 41 * math.log(10) / npar.tau)
    assert gauss <= trapezoid_pmax(npar) <= 500
    assert trapezoid_pmax(normalize(CASES[1])) == 500


def test_default_nodes_policy():
    assert default_nodes(normalize(CASES[1])) == 200
    assert default_nodes(normalize(CASES[2])) == 64


def test_even_nonpositive_nu_has_finite_integrand():
    npar = NormalizedParams(-2.0, 0.1, 0.1, -0.5)
    g = _integrand_vec(np.array([0.0, 1e-9, 0.5]), npar)
    assert np.all(np.isfinite(g))


def test_order_validation():
    with pytest.raises(ValueError):
        price(CASES[2], "laguerre", 3)
    with pytest.raises(ValueError):
        price(CASES[2], "simpson")


def test_price_result_dict_round_trip():
    d = price(CASES[3]).to_dict()
    assert set(d) == {"put", "call", "normalized_put", "method", "nodes_used", "discrete_term", "diagnostics"}
    assert d["diagnostics"]["discrete_included"] is True


def test_convergence_scan_repeated_orders_identical():
    rows = convergence_scan(CASES[2], [32, 32, 64])
    assert rows[0] == rows[1]
    assert [r[0] for r in rows] == [32, 32, 64]


def test_convergence_scan_case2_deltas_decrease():
    rows = convergence_scan(CASES[2], [16, 32, 64, 128])
    d = [abs(b[2] - a[2]) for a, b in zip(rows, rows[1:])]
    assert d[0] > d[1] > d[2]


def test_convergence_scan_case1_stabilises():
    rows = convergence_scan(CASES[1], [50, 100, 200, 400])
    assert abs(rows[2][2] - 0.05600) < 5e-5
    assert abs(rows[3][2] - rows[2][2]) < 5e-5


def test_convergence_scan_rejects_empty():
    with pytest.raises(ValueError):
        convergence_scan(CASES[2], [])


def test_guard_raises_instead_of_returning_garbage():
    with pytest.raises(PrecisionLossError):
        price(market_for(-1.0, 0.005, 0.2))


def test_guard_can_be_disabled():
    r = price(market_for(-1.0, 0.005, 0.2), check=False)
    assert not (0 <= r.put <= 1e3)


@pytest.mark.parametrize("case", list(CASES))
def test_reference_cases_inside_bounds(case):
    r = price(CASES[case], n=200 if case == 1 else None)
    m = CASES[case]
    assert -1e-9 <= r.put <= math.exp(-m.r * m.T) * m.K and r.call >= -1e-9


@pytest.mark.parametrize("nu", [-1.0, -0.6, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0])
@pytest.mark.parametrize("tau", [0.02, 0.05, 0.2])
@pytest.mark.parametrize("k", [0.002, 0.01])
def test_nonnegative_where_resolved(nu, tau, k):
    r = price(market_for(nu, tau, k))
    assert r.put >= -1e-9 and r.call >= -1e-9


def test_nonnegativity_on_full_grid():
    # fails: the default float64 policy cannot price small tau with large k/tau
    failures = []
    for nu in (-1.0, -0.6, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0):
        for tau in (0.002, 0.005, 0.02, 0.05, 0.2):
            for k in (0.002, 0.01, 0.05, 0.2):
                try:
                    r = price(market_for(nu, tau, k))
                except NumericalError:
                    failures.append((nu, tau, k))
                    continue
                if r.put < -1e-9 or r.call < -1e-9:
                    failures.append((nu, tau, k))
    assert not failures, f"{len(failures)} of 160 grid points: {failures}"
