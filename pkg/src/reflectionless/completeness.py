"""Orthonormality, completeness and bound-state extraction for the sech^2 well.

Distributional identities (delta-normalization, the delta term of the
completeness kernel, the delta term of the momentum matrix) are only ever
checked in smeared form: against wave packets in k or smooth test functions
in x.
"""

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import analytic as an
from .integrals import (envelope_cutoff, ft_sech2, integrate, integrate_real_line,
                        lorentzian_cosine_halfline, lorentzian_ft,
                        lorentzian_ft_derivative, lorentzian_sine_halfline)
from .params import DomainError, InternalInconsistency, PotentialParams, QuadratureSpec


# k-space grids and packets

@dataclass(frozen=True)
class KGrid:
    """Wavenumber nodes (strictly increasing, never 0) with quadrature weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or np.any(np.diff(nodes) <= 0):
            raise DomainError("k grid must be strictly increasing")
        if np.any(nodes == 0):
            raise DomainError("k grid must exclude k = 0")
        if np.shape(self.weights) != nodes.shape:
            raise DomainError("one weight per node required")

    @classmethod
    def trapezoid(cls, nodes):
        nodes = np.asarray(nodes, dtype=float)
        w = np.zeros_like(nodes)
        dk = np.diff(nodes)
        w[:-1] += dk / 2
        w[1:] += dk / 2
        return cls(nodes, w)


def symmetric_k_grid(k_max, n_points, k_min):
    """Uniform trapezoid grid on [-k_max, k_max] with the origin node split.

    The node at k = 0 is replaced by the pair +-k_min, each with half its
    weight, so the rule keeps the spectral accuracy of the uniform trapezoid
    for smooth decaying integrands while never touching k = 0. The returned
    grid has ``n_points + 1`` nodes (``n_points`` is rounded up to odd).
    """
    m = max(1, int(n_points) // 2)
    h = k_max / m
    if not 0 < k_min < h / 2:
        raise DomainError(f"k_min must lie in (0, {h / 2:g})")
    j = np.arange(-m, m + 1)
    k = j * h
    w = np.full(k.shape, h)
    w[0] = w[-1] = h / 2
    neg, pos = k[:m], k[m + 1:]
    nodes = np.concatenate([neg, [-k_min, k_min], pos])
    weights = np.concatenate([w[:m], [h / 2, h / 2], w[m + 1:]])
    return KGrid(nodes, weights)


@dataclass(frozen=True)
class PacketProfile:
    """Smooth weight g(k) concentrated within ``support_cutoff`` of ``center``."""

    weight: Callable
    center: float
    support_cutoff: float
    n_nodes: int = 257

    def grid(self, positive_only=False):
        lo, hi = self.center - self.support_cutoff, self.center + self.support_cutoff
        if positive_only:
            lo = max(lo, 0.0)
            if hi <= lo:
                raise DomainError("packet has no support on k > 0")
        k = np.linspace(lo, hi, self.n_nodes)
        if positive_only and k[0] == 0:
            k[0] = 1e-3 * (k[1] - k[0])
        elif np.any(k == 0):
            return _split_zero(k)
        return KGrid.trapezoid(k)

    def norm_sq(self, spec=QuadratureSpec()):
        lo, hi = self.center - self.support_cutoff, self.center + self.support_cutoff
        return integrate(lambda k: np.abs(self.weight(k)) ** 2, lo, hi, spec)[0]


def _split_zero(k):
    base = np.gradient(k) * 1.0
    base[0] /= 2
    base[-1] /= 2
    i = int(np.flatnonzero(k == 0)[0])
    eps = 1e-3 * min(np.diff(k))
    nodes = np.concatenate([k[:i], [-eps, eps], k[i + 1:]])
    weights = np.concatenate([base[:i], [base[i] / 2, base[i] / 2], base[i + 1:]])
    return KGrid(nodes, weights)


def gaussian_packet(center, width, n_nodes=257):
    """g(k) = exp(-(k - center)^2 / (2 width^2)), cut at 8.5 widths (g < 1e-15)."""
    return PacketProfile(lambda k: np.exp(-((np.asarray(k) - center) ** 2) / (2 * width**2)) + 0j,
                         center, 8.5 * width, n_nodes)


_BASES = {
    "scattering": (an.psi_k, an.psi_k_dx, False),
    "unnormalized": (an.phi_unnormalized, an.phi_unnormalized_dx, False),
    "even": (an.parity_even, an.parity_even_dx, True),
    "odd": (an.parity_odd, an.parity_odd_dx, True),
}


def packet(g: PacketProfile, p: PotentialParams, basis="scattering") -> an.DifferentiableFn:
    """Superposition x -> integral of g(k) state_k(x) dk over the chosen basis."""
    state, dstate, half_line = _BASES[basis]
    grid = g.grid(positive_only=half_line)
    amp = grid.weights * g.weight(grid.nodes)

    def value(x):
        x = np.atleast_1d(x)
        return state(grid.nodes[None, :], x[:, None], p) @ amp

    def deriv(x):
        x = np.atleast_1d(x)
        return dstate(grid.nodes[None, :], x[:, None], p) @ amp

    return an.DifferentiableFn(value, deriv)


def gaussian_probe(width, center=0.0, wavenumber=0.0) -> an.DifferentiableFn:
    """Unit-norm Gaussian exp(-(x-c)^2 / 2 w^2 + i q x) / (pi w^2)^(1/4)."""
    norm = (np.pi * width**2) ** -0.25

    def value(x):
        return norm * np.exp(-((x - center) ** 2) / (2 * width**2) + 1j * wavenumber * x)

    def deriv(x):
        return (1j * wavenumber - (x - center) / width**2) * value(x)

    return an.DifferentiableFn(value, deriv)


# Smeared inner products

def inner_product(f1: an.DifferentiableFn, f2: an.DifferentiableFn, spec=QuadratureSpec()):
    """<f1, f2> = integral of conj(f1) f2, antilinear in the first slot."""
    return integrate_real_line(lambda x: np.conj(f1(x)[0]) * f2(x)[0], spec)[0]


def momentum_inner_product(f1: an.DifferentiableFn, f2: an.DifferentiableFn, spec=QuadratureSpec()):
    """<f1, P f2> with P = -i d/dx."""
    return integrate_real_line(lambda x: np.conj(f1(x)[0]) * (-1j) * f2(x)[1], spec)[0]


def smeared_orthonormality(g1: PacketProfile, g2: PacketProfile, p: PotentialParams,
                           spec=QuadratureSpec(), basis="scattering"):
    """Inner product of two packets, computed by x-quadrature.

    For the delta-normalized basis this should equal the integral of
    conj(g1) g2 dk; for the unnormalized basis it picks up (k^2 + kappa^2).
    """
    return inner_product(packet(g1, p, basis), packet(g2, p, basis), spec)


# Expansion in the eigenbasis

@dataclass(frozen=True)
class ExpansionCoefficients:
    c0: complex
    k_grid: KGrid
    c: np.ndarray = field(repr=False)

    def parseval_sum(self):
        """|c0|^2 + integral of |c(k)|^2 dk."""
        return float(abs(self.c0) ** 2 + np.sum(self.k_grid.weights * np.abs(self.c) ** 2))


def expand(f: an.DifferentiableFn, p: PotentialParams, k_grid, spec=QuadratureSpec()):
    """Coefficients c0 = <psi0, f> and c(k) = <psi_k, f> on ``k_grid``.

    All nodes share one adaptive x-quadrature with vector output. ``k_grid``
    may be a :class:`KGrid` or a plain increasing array (trapezoid weights).
    """
    if not isinstance(k_grid, KGrid):
        k_grid = KGrid.trapezoid(k_grid)
    ks = k_grid.nodes

    def integrand(x):
        fx = f(x)[0]
        out = np.empty((len(x), len(ks) + 1), dtype=complex)
        out[:, 0] = np.conj(an.psi0(x, p)) * fx
        out[:, 1:] = np.conj(an.psi_k(ks[None, :], x[:, None], p)) * fx[:, None]
        return out

    a, b = -spec.decay_cutoff, spec.decay_cutoff
    chunk = max(1, 2**19 // (15 * (len(ks) + 1)))
    vals, _ = integrate(integrand, a, b, spec, initial_panels=64, chunk=chunk)
    return ExpansionCoefficients(complex(vals[0]), k_grid, vals[1:])


def reconstruct(coeffs: ExpansionCoefficients, x, p: PotentialParams, include_bound=True):
    """c0 psi0(x) + integral of c(k) psi_k(x) dk on the coefficient grid."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    ks = coeffs.k_grid.nodes
    cont = an.psi_k(ks[None, :], x[:, None], p) @ (coeffs.k_grid.weights * coeffs.c)
    if include_bound:
        cont = cont + coeffs.c0 * an.psi0(x, p)
    return cont


# Completeness defect

def one_minus_tanh_product(a, b):
    """1 - tanh(a) tanh(b) without cancellation when both tanh values near +-1."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    ta, tb = np.tanh(a), np.tanh(b)
    # 1 - |tanh z| = 2 e^{-2|z|} / (1 + e^{-2|z|})
    ea, eb = np.exp(-2.0 * np.abs(a)), np.exp(-2.0 * np.abs(b))
    ra, rb = 2.0 * ea / (1.0 + ea), 2.0 * eb / (1.0 + eb)
    same = np.sign(a) == np.sign(b)
    return np.where(same, ra + np.abs(ta) * rb, 1.0 - ta * tb)


def tanh_difference(a, b):
    """tanh(a) - tanh(b) without cancellation.

    Opposite signs: plain subtraction is exact enough. Same sign and close:
    sinh(a - b) sech(a) sech(b). Same sign and far apart: difference of the
    tails 1 - |tanh|, which then differ in magnitude by a large factor.
    """
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    direct = np.tanh(a) - np.tanh(b)
    ea, eb = np.exp(-2.0 * np.abs(a)), np.exp(-2.0 * np.abs(b))
    tails = np.sign(a) * (2.0 * eb / (1.0 + eb) - 2.0 * ea / (1.0 + ea))
    with np.errstate(over="ignore", invalid="ignore"):
        near = np.sinh(np.clip(a - b, -30.0, 30.0)) * an.sech(a) * an.sech(b)
    same = np.sign(a) * np.sign(b) > 0
    out = np.where(same, np.where(np.abs(a - b) < 30.0, near, tails), direct)
    return out[()] if out.ndim == 0 else out


class DefectSample(NamedTuple):
    x: np.ndarray
    value: np.ndarray


def continuum_defect_diagonal(x, p: PotentialParams) -> DefectSample:
    """Diagonal of delta(x - y) minus the continuum kernel.

    Assembled from the kernel decomposition at coincident points: the delta
    term drops, the i k Lorentzian term carries the factor tanh y - tanh x = 0,
    and what remains is kappa^2 (1 - tanh^2) times the Lorentzian transform at
    zero separation.
    """
    x = np.asarray(x, dtype=float)
    z = p.kappa * x
    return DefectSample(x, p.kappa**2 * one_minus_tanh_product(z, z) * lorentzian_ft(0.0, p))


def defect_closed_form(x, y, p: PotentialParams):
    """kappa / (2 cosh(kappa x) cosh(kappa y))."""
    return 0.5 * p.kappa * an.sech(p.kappa * np.asarray(x)) * an.sech(p.kappa * np.asarray(y))


def defect_offdiagonal(x, y, p: PotentialParams):
    """Off-diagonal defect kernel from the Lorentzian decomposition.

    Computes kappa^2 (1 - t_x t_y) L(d) - kappa (t_y - t_x) L'(d) with d = y - x,
    checks it against the unsimplified exponential-hyperbolic form and against
    kappa sech sech / 2, and returns it. Raises InternalInconsistency when the
    three disagree beyond rounding.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(x == y):
        raise DomainError("x == y: use continuum_defect_diagonal for the diagonal")
    kap = p.kappa
    d = y - x
    assembled = (kap**2 * one_minus_tanh_product(kap * x, kap * y) * lorentzian_ft(d, p)
                 - kap * tanh_difference(kap * y, kap * x) * lorentzian_ft_derivative(d, p))

    # e^{-kappa|d|} (cosh(kappa d) + sgn(d) sinh(kappa d)), each term scaled by the decay factor
    e2 = np.exp(-2.0 * kap * np.abs(d))
    bracket = 0.5 * (1.0 + e2) + np.sign(d) * np.sign(d) * 0.5 * (1.0 - e2)
    raw = 0.5 * kap * bracket * an.sech(kap * x) * an.sech(kap * y)
    closed = defect_closed_form(x, y, p)
    scale = np.maximum(np.abs(closed), np.finfo(float).tiny)
    if np.any(np.abs(assembled - closed) > 1e-10 * scale + 1e-300) or \
            np.any(np.abs(raw - closed) > 1e-10 * scale + 1e-300):
        raise InternalInconsistency("defect decomposition disagrees with its simplified form")
    return assembled[()] if assembled.ndim == 0 else assembled


def count_bound_states(p: PotentialParams, spec=QuadratureSpec()):
    """Trace of the defect: integral of its diagonal over the line."""
    c = envelope_cutoff(2.0 * p.kappa, 2.0 * p.kappa, spec.abs_tol)
    val, _ = integrate(lambda x: continuum_defect_diagonal(x, p).value, -c, c, spec)
    return float(val)


def extract_bound_state(xs, p: PotentialParams):
    """Positive square root of the defect diagonal.

    The defect fixes the bound state only up to a global phase; the nodeless
    positive branch is taken.
    """
    d = continuum_defect_diagonal(xs, p).value
    if np.any(d < -p.tol):
        raise InternalInconsistency(f"defect diagonal negative: min {d.min():.3g}")
    return np.sqrt(np.clip(d, 0.0, None))


# Parity route

def parity_defect(x, y, p: PotentialParams):
    """Non-delta part of the parity-basis kernel, negated, via half-line transforms."""
    kap = p.kappa
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    d = x - y
    kernel = (-kap**2 * one_minus_tanh_product(kap * x, kap * y) * lorentzian_cosine_halfline(d, p)
              + kap * tanh_difference(kap * y, kap * x) * lorentzian_sine_halfline(d, p)) / np.pi
    return -kernel


def parity_defect_diagonal(x, p: PotentialParams, spec=None):
    return parity_defect(x, x, p)


def smeared_parity_completeness(phi: an.DifferentiableFn, p: PotentialParams, k_cut=60.0,
                                spec=QuadratureSpec(), window=(-6.0, 6.0), n_x=600):
    """Continuum kernel from the parity basis, truncated at k_cut, smeared with phi.

    Returns ``(numeric, closed)``: the k-integral over (0, k_cut] of
    |<psi^e_k, phi>|^2 + |<psi^o_k, phi>|^2, and ||phi||^2 minus the double
    integral of conj(phi) D phi with D the parity-route defect kernel.
    Both x-integrals use Gauss-Legendre nodes on ``window``.
    """
    xg, wg = np.polynomial.legendre.leggauss(n_x)
    a, b = window
    x = 0.5 * (b - a) * xg + 0.5 * (a + b)
    w = 0.5 * (b - a) * wg
    fx = phi(x)[0]

    def spectral(k):
        ke = an.parity_even(k[:, None], x[None, :], p) @ (w * fx)
        ko = an.parity_odd(k[:, None], x[None, :], p) @ (w * fx)
        return np.abs(ke) ** 2 + np.abs(ko) ** 2

    # the state formulas are regular at k = 0, the left endpoint is never sampled
    numeric, _ = integrate(spectral, 0.0, k_cut, spec, initial_panels=32)
    norm = np.sum(w * np.abs(fx) ** 2)
    dmat = parity_defect(x[:, None], x[None, :], p)
    closed = norm - np.real(np.conj(w * fx) @ dmat @ (w * fx))
    return float(numeric), float(closed)


# Momentum between parity sectors

def momentum_matrix_element_regular(k_odd, k_even, p: PotentialParams):
    """Regular part of <psi^o_{k'} | P | psi^e_k>, k' = k_odd, k = k_even.

    The delta term k delta(k - k') is omitted. What remains is the overlap of
    psi^o_{k'} with the square-integrable remainder of P psi^e_k, written via
    the sech^2 transform I(q):

        kappa^2 / (pi (kappa - i k') (kappa + i k)) *
            [ k'/2 (I(k-k') - I(k+k')) + 1/4 ((k-k') I(k-k') + (k+k') I(k+k')) ]

    The k = k' limit is regular and handled by the small-argument series of I.
    """
    if np.any(np.asarray(k_odd) <= 0) or np.any(np.asarray(k_even) <= 0):
        raise DomainError("parity labels must be positive")
    kap = p.kappa
    kp, k = k_odd, k_even
    i_minus = ft_sech2(k - kp, p)
    i_plus = ft_sech2(k + kp, p)
    bracket = 0.5 * kp * (i_minus - i_plus) + 0.25 * ((k - kp) * i_minus + (k + kp) * i_plus)
    return kap**2 * bracket / (np.pi * (kap - 1j * kp) * (kap + 1j * k))


def momentum_on_even_decomposition(k, x, p: PotentialParams):
    """Split P psi^e_k into k psi^o_k and a square-integrable odd remainder."""
    if np.any(np.asarray(k) <= 0):
        raise DomainError("parity labels must be positive")
    kap = p.kappa
    x = np.asarray(x, dtype=float)
    skew = k * an.parity_odd(k, x, p)
    extra = 1j * kap**2 / (an.SQRT_PI * (kap + 1j * k)) * np.sin(k * x) * an.sech(kap * x) ** 2
    return skew, extra


def extra_overlap_quadrature(k_odd, k_even, p: PotentialParams, spec=QuadratureSpec()):
    """Direct x-quadrature of <psi^o_{k'}, remainder of P psi^e_k>."""
    c = envelope_cutoff(2.0 * p.kappa, 4.0 * p.kappa, spec.abs_tol)

    def f(x):
        return np.conj(an.parity_odd(k_odd, x, p)) * momentum_on_even_decomposition(k_even, x, p)[1]

    return integrate(f, -c, c, spec)
