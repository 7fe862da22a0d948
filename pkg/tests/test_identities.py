import json
import math

import mpmath as mp
import numpy as np
import pytest

from asianspectral import identities as ids
from asianspectral.specfun import bessel_poly


def test_report_dict_is_sorted_and_json_ready():
    rep = ids.check_gamma_identity()
    d = rep.to_dict()
    assert list(d) == sorted(d)
    json.dumps(d)


# ---- specfun ---------------------------------------------------------------

@pytest.mark.parametrize("check", [
    ids.check_gamma_identity, ids.check_gamma_recurrence, ids.check_kummer_transformation,
    ids.check_whittaker_reality, ids.check_whittaker_bessel_bridge, ids.check_whittaker_pde,
    ids.check_conical_laplace_bridge, ids.check_parabolic_hermite_bridge,
])
def test_specfun_checks_pass(check):
    rep = check()
    assert rep.passed, rep
    assert len(rep.grid) >= 3


@pytest.mark.parametrize("a,b", [(-8.0, 1.0), (-8.0, 2.0), (-6.5, 1.5)])
def test_bessel_poly_orthogonality(a, b):
    rep = ids.check_bessel_poly_orthogonality(a, b)
    assert rep.passed, rep


@pytest.mark.parametrize("a,b,n", [(-8.0, 1.0, 2), (-6.5, 1.5, 3), (0.5, 2.0, 0)])
def test_bessel_poly_norm_against_mpmath(a, b, n):
    mp.mp.dps = 30

    def f(x):
        y = bessel_poly(n, a, b, float(x))
        return x ** (a - 2) * mp.exp(-b / x) * y * y
    ref = mp.quad(f, [0, 0.5, 2, 10, mp.inf])
    assert ids.bessel_poly_norm(a, b, n) == pytest.approx(float(ref), rel=1e-9)


def test_bessel_poly_moment_condition_enforced():
    with pytest.raises(ValueError):
        ids.bessel_poly_inner(0.5, 1.0, 1, 2)


def test_laguerre_type_weight_does_not_orthogonalise_bessel_polys():
    # the Laguerre-type weight (x/b)^{1-a} e^{-x/b} at (a, b) = (0.5, 1) gives <y1, y1> far from sqrt(pi)
    mp.mp.dps = 20
    y1 = lambda x: bessel_poly(1, 0.5, 1.0, float(x))  # noqa: E731
    v = mp.quad(lambda x: x ** 0.5 * mp.exp(-x) * y1(x) ** 2, [0, 1, mp.inf])
    assert abs(float(v) - math.sqrt(math.pi)) > 1.0


# ---- kernel ------------------------------------------------------------------

def test_mehler_origin():
    assert ids.check_mehler_kernel(1.0, 0.0, 0.0, 40, tol=1e-12).passed


def test_mehler_off_diagonal():
    assert ids.check_mehler_kernel(2.0, 0.7, -0.4, 60, tol=1e-10).passed


def test_mehler_ground_state_limit():
    t, x = 12.0, 0.5
    ground = math.exp(-t / 2) / math.sqrt(math.pi) * math.exp(-x * x)
    assert ids._rel(ground, ids.mehler_closed(t, x, x)) < math.exp(-t)
    assert ids.mehler_sum(t, x, x, 1) == pytest.approx(ground, rel=1e-14)


def test_mehler_validation():
    with pytest.raises(ValueError):
        ids.check_mehler_kernel(0.0, 0.0, 0.0, 10)


@pytest.mark.parametrize("zeta,p,us", [(1.0, 1.0, (0.5, 1.0, 2.0)), (0.0, 0.5, (1.0,))])
def test_yor_examples(zeta, p, us):
    assert ids.check_yor_eigenfunction(zeta, p, us).passed


def test_yor_scaling_invariance():
    a = ids.check_yor_eigenfunction(1.0, 1.0, (0.5, 1.0, 2.0))
    # a power of two scales every rounding error too
    b = ids.check_yor_eigenfunction(1.0, 1.0, (0.5, 1.0, 2.0), scale=8.0)
    assert b.max_rel_residual == a.max_rel_residual
    assert ids.check_yor_eigenfunction(1.0, 1.0, (0.5, 1.0, 2.0), scale=7.3).passed


def test_yor_energy_formula():
    assert ids.yor_energy(1.0, 1.0) == pytest.approx(-0.625)


def test_yor_wrong_energy_fails():
    # the residual really does measure the eigenvalue
    E = ids.yor_energy(1.0, 1.0)
    u, h = 1.0, 1e-4
    f0, fp, fm = (ids.yor_phi(1.0, 1.0, v) for v in (u, u + h, u - h))
    lhs = 2 * u * u * (fp - 2 * f0 + fm) / h ** 2 + (3 * u + 1) * (fp - fm) / (2 * h)
    assert abs(lhs - (E + 0.1) * f0) > 1e-2 * abs(E * f0)


# ---- transforms ----------------------------------------------------------------

def test_kl_roundtrip_exp_decay_at_one():
    rep = ids.check_kl_roundtrip("exp_decay", 20.0, 1e-5, x_points=(1.0,))
    assert rep.passed, rep


def test_kl_roundtrip_gauss():
    assert ids.check_kl_roundtrip("gauss", 20.0, 1e-5).passed


def test_kl_roundtrip_linear_in_scale():
    a = ids.kl_roundtrip("exp_decay", (0.5, 1.0), c=1.0)
    b = ids.kl_roundtrip("exp_decay", (0.5, 1.0), c=3.0)
    for u, v in zip(a, b):
        assert v == pytest.approx(3 * u, rel=1e-12)


def test_kl_truncation_grows_when_pmax_halved():
    r20 = ids.check_kl_roundtrip("exp_decay", 20.0).max_rel_residual
    r10 = ids.check_kl_roundtrip("exp_decay", 10.0).max_rel_residual
    assert r10 > r20


def test_kl_forward_exp_decay_closed_form():
    # int_0^inf K_{ip}(x) e^{-x} dx = pi p / sinh(pi p)
    p = np.array([0.5, 1.0, 3.0])
    F, xmax = ids.KL_TEST_FUNCTIONS["exp_decay"]
    got = ids.kl_forward_scaled(F, xmax, p) * np.exp(-0.5 * math.pi * p)
    want = math.pi * p / np.sinh(math.pi * p)
    np.testing.assert_allclose(got, want, rtol=1e-9)


def test_kl_forward_against_mpmath():
    F, xmax = ids.KL_TEST_FUNCTIONS["gauss"]
    got = ids.kl_forward_scaled(F, xmax, np.array([2.0]))[0] * math.exp(-math.pi)
    mp.mp.dps = 20
    ref = mp.quad(lambda x: mp.besselk(2j, x).real * x * mp.exp(-x * x), [0, 1, 3, 7])
    assert got == pytest.approx(float(ref), rel=1e-8)


def test_kl_unknown_function():
    with pytest.raises(ValueError):
        ids.check_kl_roundtrip("sine")


@pytest.mark.parametrize("mu,a,y", [(0.0, 1.0, 1.5), (0.25, 2.0, 2.0), (0.0, 0.5, 1.001)])
def test_mixed_kp(mu, a, y):
    assert ids.check_mixed_kp_integral(mu, a, y).passed


def test_mixed_kp_right_at_y_one():
    assert ids.mixed_kp_right(0.0, 1.3, 1.0 + 1e-13) == pytest.approx(
        math.sqrt(math.pi ** 3 / 2) * math.sqrt(1.3) * math.exp(-1.3), rel=1e-12)


@pytest.mark.parametrize("mu,x,y", [(0.0, 1.0, 1.0), (0.3, 0.8, 1.2), (0.5, 1.0, 1.0)])
def test_mixed_wk(mu, x, y):
    assert ids.check_mixed_wk_integral(mu, x, y).passed


def test_mixed_wk_dual_route_at_mu_zero():
    a = ids.mixed_wk_left(0.0, 1.0, 1.0, via="whittaker")
    b = ids.mixed_wk_left(0.0, 1.0, 1.0, via="bessel")
    assert a == pytest.approx(b, rel=1e-8)
    assert len(ids.check_mixed_wk_integral(0.0, 1.0, 1.0).grid) == 1


def test_mixed_wk_rejects_large_mu():
    with pytest.raises(ValueError):
        ids.check_mixed_wk_integral(0.7, 1.0, 1.0)


@pytest.mark.parametrize("mu,a,b", [(0.0, 1.0, 1.0), (0.25, 0.5, 1.5), (0.5, 1.0, 2.0)])
def test_addition(mu, a, b):
    assert ids.check_whittaker_addition(mu, a, b).passed


def test_addition_symmetry():
    l1, l2 = ids.addition_left(0.25, 0.5, 1.5), ids.addition_left(0.25, 1.5, 0.5)
    assert abs(l1 - l2) < 1e-14 * abs(l1)
    assert ids.addition_right(0.25, 0.5, 1.5) == ids.addition_right(0.25, 1.5, 0.5)


def test_addition_dual_route():
    a = ids.addition_left(0.0, 1.0, 1.0)
    b = ids.addition_left(0.0, 1.0, 1.0, via="bessel")
    assert a == pytest.approx(b, rel=1e-8)


def test_addition_rejects_mu_above_half():
    with pytest.raises(ValueError):
        ids.check_whittaker_addition(0.9, 1.0, 1.0)


def test_cosine_y_zero_closed_form():
    # left side is sqrt(2/pi) int K_{ip}(1) dp = sqrt(pi/2) e^{-1}
    assert ids.cosine_right(0.0, 1.0, 0.0) == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-1), rel=1e-13)
    assert ids.cosine_left(0.0, 1.0, 0.0) == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-1), rel=1e-9)


@pytest.mark.parametrize("mu,u,y", [(0.0, 1.0, 1.0), (0.2, 2.0, 0.5)])
def test_cosine_examples(mu, u, y):
    assert ids.check_cosine_transform(mu, u, y, 40.0).passed


def test_macdonald_half_order_closed_form():
    right = ids.macdonald_right(0.5, 1.0, 1.0)
    k_half = math.sqrt(math.pi / 4) * math.exp(-2)
    assert right == pytest.approx(math.pi ** 1.5 * math.gamma(1.0) / 2 * k_half, rel=1e-13)
    assert ids.check_macdonald_product(0.5, 1.0, 1.0).passed


def test_macdonald_example_and_symmetry():
    assert ids.check_macdonald_product(1.0, 0.7, 1.3).passed
    l1, l2 = ids.macdonald_left(1.0, 0.7, 1.3), ids.macdonald_left(1.0, 1.3, 0.7)
    assert abs(l1 - l2) < 1e-14 * abs(l1)
    assert ids.macdonald_right(1.0, 0.7, 1.3) == pytest.approx(ids.macdonald_right(1.0, 1.3, 0.7), rel=1e-15)


def test_power_expansion_discrete_part_p1():
    _, disc = ids.power_expansion_parts(1, 1.0)
    assert disc == pytest.approx(float(mp.besselk(1, 1)), rel=1e-13)


@pytest.mark.parametrize("pe,x,tol", [(1, 1.0, 1e-5), (2, 1.5, 1e-5), (3, 1.0, 1e-5), (1, 20.0, 1e-4)])
def test_power_expansion(pe, x, tol):
    assert ids.check_power_expansion(pe, x, tol).passed


def test_power_expansion_validation():
    with pytest.raises(ValueError):
        ids.check_power_expansion(4, 1.0)


# ---- pricing and suites ------------------------------------------------------------

def test_pricing_checks():
    assert ids.check_put_call_parity().passed
    assert ids.check_laguerre_exactness().passed
    assert ids.check_method_agreement().passed


def test_laguerre_moment_errors_length():
    assert len(ids.laguerre_moment_errors(4)) == 8


def test_run_suite_validation():
    with pytest.raises(ValueError):
        list(ids.run_suite("bogus"))
    with pytest.raises(ValueError):
        list(ids.run_suite("kernel", 0.0))


def test_run_suite_deterministic():
    a = [r.to_dict() for r in ids.run_suite("kernel")]
    b = [r.to_dict() for r in ids.run_suite("kernel")]
    assert a == b and all(r["passed"] for r in a)


def test_tol_scale_is_monotone():
    a = list(ids.run_suite("kernel", 1.0))
    b = list(ids.run_suite("kernel", 10.0))
    for x, y in zip(a, b):
        assert y.tolerance == pytest.approx(10 * x.tolerance)
        assert y.passed or not x.passed
