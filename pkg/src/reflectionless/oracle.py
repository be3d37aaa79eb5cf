"""Finite-difference and scattering oracle that never touches the closed forms.

The Hamiltonian is discretized on a Dirichlet box with the three-point
stencil, diagonalized with an implicit-shift QL sweep written here, and the
scattering problem is integrated with fixed-step RK4. Hot loops are compiled
with numba.
"""

import logging
import math
from dataclasses import dataclass

import numba
import numpy as np

from .params import DomainError, NonConvergence, PotentialParams, StepSizeError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    """Dirichlet box [-half_width, half_width] with n interior points."""

    half_width: float = 20.0
    n: int = 2000

    def __post_init__(self):
        if self.n < 3:
            raise DomainError("need at least 3 interior points")
        if not self.half_width > 0:
            raise DomainError("half_width must be positive")

    @property
    def spacing(self):
        return 2.0 * self.half_width / (self.n + 1)

    @property
    def points(self):
        return -self.half_width + self.spacing * np.arange(1, self.n + 1)


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Symmetric tridiagonal matrix stored as its diagonal and one off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.offdiag) != max(len(self.diag) - 1, 0):
            raise DomainError("offdiag must have len(diag) - 1 entries")

    @property
    def n(self):
        return len(self.diag)

    def matvec(self, v):
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def norm(self):
        """Infinity norm (max absolute row sum)."""
        a = np.abs(self.diag).copy()
        a[:-1] += np.abs(self.offdiag)
        a[1:] += np.abs(self.offdiag)
        return float(a.max())

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def build_hamiltonian(g: GridSpec, p: PotentialParams, potential=None) -> TridiagonalMatrix:
    """-d^2/dx^2 + V on the box: diag 2/h^2 + V(x_i), offdiag -1/h^2.

    ``potential`` defaults to the sech^2 well and is evaluated here directly,
    not through the analytic module.
    """
    h = g.spacing
    x = g.points
    v = potential(x) if potential is not None else -2.0 * p.kappa**2 / np.cosh(p.kappa * x) ** 2
    return TridiagonalMatrix(2.0 / h**2 + v, np.full(g.n - 1, -1.0 / h**2))


@numba.njit(cache=True)
def _ql_implicit(d, e, z, want, max_iter):
    # e[i] couples rows i and i+1; e[n-1] is workspace.
    n = d.shape[0]
    eps = 2.220446049250313e-16
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if it == max_iter:
                return l
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want:
                    for k in range(n):
                        f = z[k, i + 1]
                        z[k, i + 1] = s * z[k, i] + c * f
                        z[k, i] = c * z[k, i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


@numba.njit(cache=True)
def _sturm_count(d, off2, x):
    # number of eigenvalues strictly below x (LDL^T inertia)
    count = 0
    q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, d.shape[0]):
        if q == 0.0:
            q = 1e-300
        q = d[i] - x - off2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


@numba.njit(cache=True)
def _thomas(diag, off, rhs):
    n = diag.shape[0]
    c = np.empty(n)
    y = np.empty(n)
    c[0] = off[0] / diag[0] if n > 1 else 0.0
    y[0] = rhs[0] / diag[0]
    for i in range(1, n):
        den = diag[i] - off[i - 1] * c[i - 1]
        if i < n - 1:
            c[i] = off[i] / den
        y[i] = (rhs[i] - off[i - 1] * y[i - 1]) / den
    for i in range(n - 2, -1, -1):
        y[i] -= c[i] * y[i + 1]
    return y


def eig_tridiagonal(m: TridiagonalMatrix, want_vectors=False, max_iter=60):
    """Eigenvalues (ascending) and optionally orthonormal eigenvectors (columns).

    Implicit-shift QL with Wilkinson-type shifts. Raises NonConvergence with
    the offending index if an eigenvalue needs more than ``max_iter`` sweeps.
    """
    n = m.n
    d = np.array(m.diag, dtype=float)
    e = np.zeros(n)
    e[:n - 1] = m.offdiag
    z = np.eye(n) if want_vectors else np.zeros((1, 1))
    info = _ql_implicit(d, e, z, want_vectors, max_iter)
    if info >= 0:
        raise NonConvergence(f"QL iteration cap hit at eigenvalue index {info}", index=info)
    order = np.argsort(d, kind="stable")
    if want_vectors:
        return d[order], z[:, order]
    return d[order], None


def sturm_count(m: TridiagonalMatrix, x):
    """Number of eigenvalues strictly below ``x``."""
    return int(_sturm_count(np.asarray(m.diag, float), np.asarray(m.offdiag, float) ** 2, float(x)))


def lowest_eigenvalue_bisection(m: TridiagonalMatrix, rtol=1e-15):
    """Lowest eigenvalue by Sturm-sequence bisection inside the Gershgorin interval."""
    r = np.zeros(m.n)
    r[:-1] += np.abs(m.offdiag)
    r[1:] += np.abs(m.offdiag)
    lo, hi = float(np.min(m.diag - r)), float(np.max(m.diag + r))
    off2 = np.asarray(m.offdiag, float) ** 2
    d = np.asarray(m.diag, float)
    scale = max(abs(lo), abs(hi))
    while hi - lo > rtol * scale:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _sturm_count(d, off2, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def lowest_eigenvalue(m: TridiagonalMatrix):
    try:
        return float(eig_tridiagonal(m)[0][0])
    except NonConvergence:
        log.warning("QL did not converge, falling back to bisection for the lowest eigenvalue")
        return lowest_eigenvalue_bisection(m)


def inverse_iteration(m: TridiagonalMatrix, eigenvalue, iterations=3):
    """Eigenvector for an isolated eigenvalue by shifted inverse iteration."""
    shift = eigenvalue - 1e-10 * max(1.0, m.norm())
    diag = np.asarray(m.diag, float) - shift
    off = np.asarray(m.offdiag, float)
    v = np.ones(m.n) / math.sqrt(m.n)
    for _ in range(iterations):
        v = _thomas(diag, off, v)
        v /= np.linalg.norm(v)
    return v


def count_nodes(v, rel_floor=1e-8):
    """Sign changes among components above rel_floor * max|v|."""
    big = v[np.abs(v) > rel_floor * np.abs(v).max()]
    return int(np.count_nonzero(np.diff(np.sign(big)) != 0))


def oracle_ground_state(g: GridSpec, p: PotentialParams):
    """Lowest box eigenpair; vector normalized to sum |v|^2 h = 1, sign fixed positive."""
    if g.half_width < 10.0 / p.kappa or g.spacing > 0.02 / p.kappa:
        log.warning("grid coarser than the 1e-3 accuracy regime (L >= 10/kappa, h <= 0.02/kappa)")
    m = build_hamiltonian(g, p)
    e0 = lowest_eigenvalue(m)
    v = inverse_iteration(m, e0)
    first = v[np.argmax(np.abs(v) > 1e-8 * np.abs(v).max())]
    v = v * np.sign(first) / math.sqrt(g.spacing)
    return e0, v


def count_negative_eigenvalues(g: GridSpec, p: PotentialParams, potential=None):
    return sturm_count(build_hamiltonian(g, p, potential), 0.0)


# Scattering

@numba.njit(cache=True)
def _rk4_backward(k, x0, h, nsteps, v_nodes, v_mid):
    # integrate u'' = (V - k^2) u from x0 down to x0 - nsteps*h, starting from e^{ikx}
    u = complex(math.cos(k * x0), math.sin(k * x0))
    du = 1j * k * u
    k2 = k * k
    hh = -h
    for j in range(nsteps):
        a0 = v_nodes[j] - k2
        am = v_mid[j] - k2
        a1 = v_nodes[j + 1] - k2
        k1u = du
        k1v = a0 * u
        k2u = du + 0.5 * hh * k1v
        k2v = am * (u + 0.5 * hh * k1u)
        k3u = du + 0.5 * hh * k2v
        k3v = am * (u + 0.5 * hh * k2u)
        k4u = du + hh * k3v
        k4v = a1 * (u + hh * k3u)
        u = u + hh / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        du = du + hh / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return u, du


def transfer_matrix_reflection(k, p: PotentialParams, g: GridSpec, potential=None):
    """Reflection and transmission amplitudes for a wave incident from the left.

    A pure transmitted wave e^{ikx} is propagated from x = L back to x = -L
    with RK4 and decomposed there into A e^{ikx} + B e^{-ikx}; then T = 1/A and
    R = B/A. The step is the grid spacing subdivided until (k h)^4 <= tol / 10.
    Raises StepSizeError if the grid spacing itself is outside RK4's stable
    range for this k.
    """
    if k <= 0:
        raise DomainError("scattering wavenumber must be positive")
    L = g.half_width
    h_grid = g.spacing
    if k * h_grid > 2.5:
        suggested = int(math.ceil(2.0 * L * k / 1.0))
        raise StepSizeError(f"k h = {k * h_grid:.3g} exceeds RK4 stability; use n >= {suggested}", suggested)
    sub = max(1, int(math.ceil(k * h_grid / (p.tol / 10.0) ** 0.25)))
    nsteps = (g.n + 1) * sub
    h = 2.0 * L / nsteps
    if potential is None:
        kap = p.kappa

        def potential(x):
            return -2.0 * kap**2 / np.cosh(kap * x) ** 2

    xs = L - h * np.arange(nsteps + 1)
    v_nodes = np.asarray(potential(xs), dtype=float)
    v_mid = np.asarray(potential(xs[:-1] - 0.5 * h), dtype=float)
    u, du = _rk4_backward(float(k), L, h, nsteps, v_nodes, v_mid)
    x = -L
    a = 0.5 * (u + du / (1j * k)) * np.exp(-1j * k * x)
    b = 0.5 * (u - du / (1j * k)) * np.exp(1j * k * x)
    return complex(b / a), complex(1.0 / a)


def square_well(depth, half_width):
    """V = -depth on |x| < half_width, zero outside."""
    def v(x):
        return np.where(np.abs(x) < half_width, -depth, 0.0)
    return v
