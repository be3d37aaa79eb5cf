"""Closed-form eigenstates of H = -d^2/dx^2 - 2 kappa^2 sech^2(kappa x).

Everything here is a pure function of its arguments and broadcasts over numpy
arrays of positions. Wavefunction values are always returned as complex
arrays (or complex scalars for scalar input), including the real ground state.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .params import DomainError, PotentialParams

SQRT_2PI = np.sqrt(2.0 * np.pi)
SQRT_PI = np.sqrt(np.pi)


def sech(z):
    """Overflow-free hyperbolic secant."""
    a = np.exp(-np.abs(z))
    return 2.0 * a / (1.0 + a * a)


def _as_out(x, value):
    # scalar in, scalar out
    if np.ndim(x) == 0 and np.ndim(value) == 0:
        return value[()] if isinstance(value, np.ndarray) else value
    return value


def _nonzero_k(k):
    if np.any(np.asarray(k) == 0):
        raise DomainError("continuum states are labelled by nonzero k; got k = 0")


def _positive_k(k):
    if np.any(np.asarray(k) <= 0):
        raise DomainError("parity states use the half-line labelling k > 0")


def potential_v(x, p: PotentialParams):
    """V(x) = -2 kappa^2 sech^2(kappa x)."""
    kap = p.kappa
    return -2.0 * kap**2 * sech(kap * np.asarray(x, dtype=float)) ** 2


def bound_energy(p: PotentialParams) -> float:
    return -p.kappa**2


def psi0(x, p: PotentialParams):
    """Normalized, nodeless ground state sqrt(kappa/2) sech(kappa x)."""
    kap = p.kappa
    val = np.sqrt(kap / 2.0) * sech(kap * np.asarray(x, dtype=float))
    return _as_out(x, val.astype(complex))


def psi0_dx(x, p: PotentialParams):
    kap = p.kappa
    z = kap * np.asarray(x, dtype=float)
    val = -kap * np.sqrt(kap / 2.0) * sech(z) * np.tanh(z)
    return _as_out(x, val.astype(complex))


def phi_unnormalized(k, x, p: PotentialParams):
    """a-dagger applied to the plane wave: e^{ikx} (k + i kappa tanh(kappa x)) / sqrt(2 pi)."""
    _nonzero_k(k)
    kap = p.kappa
    x = np.asarray(x, dtype=float)
    val = np.exp(1j * k * x) * (k + 1j * kap * np.tanh(kap * x)) / SQRT_2PI
    return _as_out(x, val)


def phi_unnormalized_dx(k, x, p: PotentialParams):
    _nonzero_k(k)
    kap = p.kappa
    x = np.asarray(x, dtype=float)
    t = np.tanh(kap * x)
    val = np.exp(1j * k * x) * (1j * k * (k + 1j * kap * t) + 1j * kap**2 * (1.0 - t * t))
    return _as_out(x, val / SQRT_2PI)


def psi_k(k, x, p: PotentialParams):
    """Delta-normalized continuum state phi_k / (kappa + i k)."""
    return phi_unnormalized(k, x, p) / (p.kappa + 1j * k)


def psi_k_dx(k, x, p: PotentialParams):
    return phi_unnormalized_dx(k, x, p) / (p.kappa + 1j * k)


def psi_k_d2x(k, x, p: PotentialParams):
    """Analytic second derivative of psi_k in x."""
    _nonzero_k(k)
    kap = p.kappa
    x = np.asarray(x, dtype=float)
    t = np.tanh(kap * x)
    dt = kap * (1.0 - t * t)
    d2t = -2.0 * kap * t * dt
    bracket = -(k**2) * (k + 1j * kap * t) - 2.0 * k * kap * dt + 1j * kap * d2t
    val = np.exp(1j * k * x) * bracket / (SQRT_2PI * (kap + 1j * k))
    return _as_out(x, val)


def transmission_amplitude(k, p: PotentialParams):
    """Ratio of the x -> +inf to x -> -inf plane-wave coefficients of psi_k."""
    _nonzero_k(k)
    kap = p.kappa
    return (k + 1j * kap) / (k - 1j * kap)


def parity_even(k, x, p: PotentialParams):
    _positive_k(k)
    kap = p.kappa
    x = np.asarray(x, dtype=float)
    val = (k * np.cos(k * x) - kap * np.sin(k * x) * np.tanh(kap * x)) / (SQRT_PI * (kap + 1j * k))
    return _as_out(x, val)


def parity_odd(k, x, p: PotentialParams):
    _positive_k(k)
    kap = p.kappa
    x = np.asarray(x, dtype=float)
    val = 1j * (k * np.sin(k * x) + kap * np.cos(k * x) * np.tanh(kap * x)) / (SQRT_PI * (kap + 1j * k))
    return _as_out(x, val)


def parity_even_dx(k, x, p: PotentialParams):
    _positive_k(k)
    kap = p.kappa
    x = np.asarray(x, dtype=float)
    t = np.tanh(kap * x)
    s, c = np.sin(k * x), np.cos(k * x)
    val = -(k**2 * s + kap * k * c * t + kap**2 * s * (1.0 - t * t)) / (SQRT_PI * (kap + 1j * k))
    return _as_out(x, val)


def parity_odd_dx(k, x, p: PotentialParams):
    _positive_k(k)
    kap = p.kappa
    x = np.asarray(x, dtype=float)
    t = np.tanh(kap * x)
    s, c = np.sin(k * x), np.cos(k * x)
    val = 1j * (k**2 * c - kap * k * s * t + kap**2 * c * (1.0 - t * t)) / (SQRT_PI * (kap + 1j * k))
    return _as_out(x, val)


@dataclass(frozen=True)
class DifferentiableFn:
    """A function handle carrying its own first derivative.

    Both callables take an array of positions and return complex arrays of the
    same shape. Calling the handle returns ``(value, derivative)``.
    """

    value: Callable
    derivative: Callable

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return (np.asarray(self.value(x), dtype=complex),
                np.asarray(self.derivative(x), dtype=complex))

    @classmethod
    def from_callable(cls, f):
        """Wrap a plain function, supplying a central-difference derivative.

        The step is eps**(1/3) * max(1, |x|), which balances truncation and
        rounding error for a second-order stencil.
        """
        h0 = np.finfo(float).eps ** (1.0 / 3.0)

        def deriv(x):
            x = np.asarray(x, dtype=float)
            h = h0 * np.maximum(1.0, np.abs(x))
            return (np.asarray(f(x + h), dtype=complex) - np.asarray(f(x - h), dtype=complex)) / (2.0 * h)

        return cls(f, deriv)


def psi0_fn(p: PotentialParams) -> DifferentiableFn:
    return DifferentiableFn(lambda x: psi0(x, p), lambda x: psi0_dx(x, p))


def psi_k_fn(k, p: PotentialParams) -> DifferentiableFn:
    _nonzero_k(k)
    return DifferentiableFn(lambda x: psi_k(k, x, p), lambda x: psi_k_dx(k, x, p))


def plane_wave_fn(k) -> DifferentiableFn:
    """Free-particle state e^{ikx} / sqrt(2 pi)."""
    return DifferentiableFn(lambda x: np.exp(1j * k * x) / SQRT_2PI,
                            lambda x: 1j * k * np.exp(1j * k * x) / SQRT_2PI)


def apply_a(f: DifferentiableFn, x, p: PotentialParams):
    """(a f)(x) = -i f'(x) - i kappa tanh(kappa x) f(x)."""
    val, der = f(x)
    t = np.tanh(p.kappa * np.asarray(x, dtype=float))
    return _as_out(x, -1j * der - 1j * p.kappa * t * val)


def apply_a_dagger(f: DifferentiableFn, x, p: PotentialParams):
    """(a^dagger f)(x) = -i f'(x) + i kappa tanh(kappa x) f(x)."""
    val, der = f(x)
    t = np.tanh(p.kappa * np.asarray(x, dtype=float))
    return _as_out(x, -1j * der + 1j * p.kappa * t * val)


def a_fn(f: DifferentiableFn, p: PotentialParams) -> DifferentiableFn:
    """The function a f as a new handle, derivative by central differences.

    Used to compose a^dagger a on user functions.
    """
    return DifferentiableFn.from_callable(lambda x: apply_a(f, x, p))
