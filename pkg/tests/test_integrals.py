"""Fourier-type closed forms and the adaptive quadrature that checks them."""

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate as si

from reflectionless import DomainError, NonConvergence, PotentialParams, QuadratureSpec
from reflectionless import integrals as ig

kappas = st.floats(0.2, 5.0)


def test_ft_sech2_limit(p1):
    assert ig.ft_sech2(0.0, p1) == 2.0
    assert ig.ft_sech2(0.0, PotentialParams(kappa=4.0)) == 0.5


def test_ft_sech2_at_one(p1):
    assert ig.ft_sech2(1.0, p1) == pytest.approx(1.36513890066171554307912668571, rel=1e-14)


def test_ft_sech2_quadrature_at_2p5(p1, spec):
    val, _ = ig.quadrature_ft_sech2(2.5, p1, spec)
    assert abs(val - ig.ft_sech2(2.5, p1)) < 1e-8
    # mpmath quadrature, 30 digits
    assert val == pytest.approx(0.309612197593926280479716590952, abs=1e-10)


@pytest.mark.parametrize("kappa", [0.5, 1.0, 3.0])
def test_ft_sech2_sweep_against_scipy(kappa):
    p = PotentialParams(kappa=kappa)
    for k in np.geomspace(0.05, 20, 20) * kappa:
        ref, _ = si.quad(lambda x: 2 / np.cosh(kappa * x) ** 2, 0, np.inf, weight="cos", wvar=k)
        assert abs(ig.ft_sech2(k, p) - ref) < 1e-8


@pytest.mark.parametrize("kappa", [0.5, 1.0, 3.0])
def test_series_branch_seam(kappa):
    # both branches agree at the seam to 1e-12 relative
    p = PotentialParams(kappa=kappa)
    seam = p.k_eps * kappa
    inside = ig.ft_sech2(seam * (1 - 1e-9), p)
    outside = ig.ft_sech2(seam * (1 + 1e-9), p)
    assert abs(inside - outside) / outside < 1e-12


def test_ft_sech2_large_k_no_overflow(p1):
    v = ig.ft_sech2(np.array([500.0, 1e4]), p1)
    assert np.all(np.isfinite(v)) and np.all(v >= 0)


@given(k=st.floats(-50, 50), kappa=kappas)
def test_ft_sech2_even_positive(k, kappa):
    p = PotentialParams(kappa=kappa)
    assert ig.ft_sech2(k, p) == ig.ft_sech2(-k, p)
    assert ig.ft_sech2(k, p) > 0


def test_ft_symmetry_sweep(p1):
    k = np.linspace(-20, 20, 100)
    assert np.array_equal(ig.ft_sech2(k, p1), ig.ft_sech2(-k, p1))
    assert np.array_equal(ig.ft_tanh(k, p1), -ig.ft_tanh(-k, p1))


def test_ft_tanh_at_one(p1):
    assert ig.ft_tanh(1.0, p1) == pytest.approx(1.36513890066171554307912668571j, rel=1e-14)


def test_ft_tanh_singular(p1):
    with pytest.raises(DomainError):
        ig.ft_tanh(0.0, p1)


def test_ft_identity_unit_kappa(p1, rng):
    k = rng.uniform(-20, 20, 50)
    assert np.max(np.abs(-1j * k * ig.ft_tanh(k, p1) - ig.ft_sech2(k, p1))) < 1e-14


@pytest.mark.parametrize("kappa", [0.5, 2.0, 3.0])
def test_ft_identity_general_kappa(kappa, rng):
    # I1 = -(ik/kappa) I2 for general kappa
    p = PotentialParams(kappa=kappa)
    k = rng.uniform(0.1, 20, 50) * kappa
    assert np.max(np.abs(-1j * k / kappa * ig.ft_tanh(k, p) - ig.ft_sech2(k, p))) < 1e-14


def test_ft_tanh_from_integration_by_parts(p1):
    # split tanh = sgn + (tanh - sgn): the sgn part gives 2i/k in the Abel sense,
    # the remainder decays like e^{-2|x|} and goes to ordinary quadrature
    k = 1.7
    body, _ = si.quad(lambda x: (np.tanh(x) - 1) * np.sin(k * x), 0, 60, limit=400)
    pv = 2j * (body + 1 / k)
    assert ig.ft_tanh(k, p1) == pytest.approx(pv, abs=1e-9)


# Lorentzian transforms

def test_lorentzian_values(p1):
    assert ig.lorentzian_ft(0.0, p1) == 0.5
    assert ig.lorentzian_ft(1.0, p1) == pytest.approx(0.183939720585721160797761885081, rel=1e-15)


def test_lorentzian_quadrature(p1, spec):
    g = lambda k: 1 / (k * k + 1)
    val, _ = ig.fourier_quadrature(g, 0.5, 200.0, spec)
    assert abs(val - ig.lorentzian_ft(0.5, p1)) < 1e-6


def test_lorentzian_derivative_sign(p1):
    # sign fixed by quadrature, see test below
    assert ig.lorentzian_ft_derivative(1.0, p1) == pytest.approx(-np.exp(-1) / 2, rel=1e-15)
    assert ig.lorentzian_ft_derivative(-1.0, p1) == pytest.approx(np.exp(-1) / 2, rel=1e-15)


def test_lorentzian_derivative_quadrature(p1, spec):
    g = lambda k: 1j * k / (k * k + 1)
    val, _ = ig.fourier_quadrature(g, 0.3, 200.0, spec)
    assert abs(val - ig.lorentzian_ft_derivative(0.3, p1)) < 1e-6
    # independent reference: scipy's Fourier-weighted quad on the half line
    ref, _ = si.quad(lambda k: k / (k * k + 1), 0, np.inf, weight="sin", wvar=0.3)
    assert abs(-ref / np.pi - ig.lorentzian_ft_derivative(0.3, p1)) < 1e-8


@given(d=st.floats(0.01, 10), kappa=kappas)
def test_lorentzian_derivative_is_d_derivative(d, kappa):
    p = PotentialParams(kappa=kappa)
    for s in (d, -d):
        h = 1e-6 * max(1.0, abs(s))
        fd = (ig.lorentzian_ft(s + h, p) - ig.lorentzian_ft(s - h, p)) / (2 * h)
        assert abs(fd - ig.lorentzian_ft_derivative(s, p)) < 1e-6


def test_lorentzian_derivative_jump(p1):
    with pytest.raises(DomainError):
        ig.lorentzian_ft_derivative(0.0, p1)


@pytest.mark.parametrize("d", [0.4, -1.2, 2.0])
def test_halfline_transforms(d, p1):
    cos_ref, _ = si.quad(lambda k: 1 / (k * k + 1), 0, np.inf, weight="cos", wvar=abs(d))
    sin_ref, _ = si.quad(lambda k: k / (k * k + 1), 0, np.inf, weight="sin", wvar=abs(d))
    assert ig.lorentzian_cosine_halfline(d, p1) == pytest.approx(cos_ref, abs=1e-8)
    assert ig.lorentzian_sine_halfline(d, p1) == pytest.approx(np.sign(d) * sin_ref, abs=1e-8)


def test_fourier_quadrature_rejects_zero_shift():
    with pytest.raises(DomainError):
        ig.fourier_quadrature(lambda k: 1 / (1 + k * k), 0.0, 10.0)


# integrator

@pytest.mark.parametrize("f, exact", [
    (lambda x: ig.sech_sq(x), 2.0),
    (lambda x: np.exp(-x * x), np.sqrt(np.pi)),
    (lambda x: ig.sech_sq(x) * np.cos(5 * x), float(ig.ft_sech2(5.0, PotentialParams()))),
])
def test_integrate_real_line_examples(f, exact):
    spec = QuadratureSpec(abs_tol=1e-10, rel_tol=1e-12)
    val, err = ig.integrate_real_line(f, spec)
    assert abs(val - exact) <= spec.abs_tol
    assert err <= spec.abs_tol


@pytest.mark.parametrize("f, a, b, exact", [
    (np.sin, 0.0, np.pi, 2.0),
    (lambda x: np.sqrt(x), 0.0, 1.0, 2.0 / 3.0),
    (lambda x: 1 / (1 + 25 * x * x), -1.0, 1.0, 0.4 * np.arctan(5.0)),
    (lambda x: np.abs(x - 0.3), -1.0, 1.0, 0.5 * (1.3**2 + 0.7**2)),
    (lambda x: np.exp(3j * x), 0.0, 1.0, (np.exp(3j) - 1) / 3j),
])
def test_error_estimate_honest(f, a, b, exact):
    spec = QuadratureSpec(abs_tol=1e-9, rel_tol=1e-9)
    val, err = ig.integrate(f, a, b, spec)
    assert abs(val - exact) <= 10 * max(err, 1e-15)
    assert abs(val - exact) < 1e-8


def test_integrate_vector_output():
    ks = np.array([0.5, 1.0, 2.0])
    val, _ = ig.integrate(lambda x: np.cos(np.outer(x, ks)), 0.0, 1.0)
    assert np.allclose(val, np.sin(ks) / ks, atol=1e-12)


def test_integrate_nonconvergence_carries_estimate():
    spec = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=16)
    with pytest.raises(NonConvergence) as info:
        ig.integrate(lambda x: np.sin(1 / x), 1e-6, 1.0, spec)
    assert info.value.value is not None and info.value.err_estimate > 0


def test_integrate_rejects_bad_window():
    with pytest.raises(DomainError):
        ig.integrate(np.sin, 1.0, 0.0)
    with pytest.raises(DomainError):
        ig.integrate(np.sin, 0.0, np.inf)


def test_envelope_cutoff_bounds_tail():
    rate, amp, tol = 2.0, 4.0, 1e-10
    c = ig.envelope_cutoff(rate, amp, tol)
    tail = 2 * amp * np.exp(-rate * c) / rate
    assert tail <= tol / 50
