"""Fourier-type integrals of sech^2, tanh and the Lorentzian, plus the
adaptive quadrature used to check them.

The closed forms are the primary objects. The quadrature routines never call
them and serve as the independent numerical route.
"""

import numpy as np

from .params import DomainError, NonConvergence, PotentialParams, QuadratureSpec

# Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # 15 nodes, ascending
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[1:7:2] = _WG[:3]
_GAUSS[7] = _WG[3]
_GAUSS[9:15:2] = _WG[2::-1]



def _gk15(f, lo, hi, chunk=256):
    """Kronrod estimates and |K - G| error for a batch of panels."""
    centre = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    vals, errs = [], []
    for s in range(0, len(lo), chunk):
        c, h = centre[s:s + chunk], half[s:s + chunk]
        x = (c[:, None] + h[:, None] * _NODES[None, :]).ravel()
        fx = np.asarray(f(x))
        fx = fx.reshape((len(c), 15) + fx.shape[1:])
        k = np.tensordot(_KRONROD, fx, axes=([0], [1]))
        g = np.tensordot(_GAUSS, fx, axes=([0], [1]))
        scale = h.reshape((-1,) + (1,) * (k.ndim - 1))
        k = k * scale
        e = np.abs(k - g * scale)
        if e.ndim > 1:
            e = e.reshape(len(c), -1).max(axis=1)
        vals.append(k)
        errs.append(e)
    return np.concatenate(vals), np.concatenate(errs)


def integrate(f, a, b, spec: QuadratureSpec = QuadratureSpec(), initial_panels=16, chunk=256):
    """Adaptive Gauss-Kronrod quadrature of ``f`` over [a, b].

    ``f`` must be vectorized: given a 1-D array of n abscissae it returns either
    n values or an (n, m) array, in which case all m integrals are computed on
    a shared panel set and the error is the worst component. ``chunk`` caps
    how many panels are evaluated per call to ``f``.

    Returns ``(value, err_estimate)``. Raises NonConvergence carrying the best
    value once ``spec.max_subdivisions`` panels are in use.
    """
    if not (np.isfinite(a) and np.isfinite(b)) or b <= a:
        raise DomainError(f"need a finite window a < b, got [{a}, {b}]")
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    val, err = _gk15(f, lo, hi, chunk)

    while True:
        total = val.sum(axis=0)
        total_err = float(err.sum())
        target = max(spec.abs_tol, spec.rel_tol * float(np.max(np.abs(total))))
        if total_err <= target:
            return total, total_err
        n = len(lo)
        room = spec.max_subdivisions - n
        if room <= 0:
            raise NonConvergence(
                f"quadrature did not reach {target:.3g} with {n} panels "
                f"(estimate {total_err:.3g})", value=total, err_estimate=total_err)
        split = np.flatnonzero(err > target / n)
        if split.size == 0:
            split = np.array([int(np.argmax(err))])
        split = split[np.argsort(err[split])[::-1]][:room]
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_val, new_err = _gk15(f, new_lo, new_hi, chunk)
        keep = np.ones(n, dtype=bool)
        keep[split] = False
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])


def integrate_real_line(f, spec: QuadratureSpec = QuadratureSpec(), window=None):
    """Integrate over the real line, truncated to ``window`` or [-cutoff, cutoff]."""
    a, b = window if window is not None else (-spec.decay_cutoff, spec.decay_cutoff)
    return integrate(f, a, b, spec)


def envelope_cutoff(rate, amplitude, abs_tol):
    """Half-width beyond which amplitude * exp(-rate |x|) integrates to < abs_tol / 100."""
    return max(1.0, np.log(200.0 * amplitude / (rate * abs_tol)) / rate)


# Closed forms

def _k_over_sinh(k, kappa):
    # (pi k / kappa^2) / sinh(pi k / 2 kappa), overflow-free, k != 0
    u = np.pi * np.abs(k) / (2.0 * kappa)
    return (np.pi * np.abs(k) / kappa**2) * 2.0 * np.exp(-u) / (-np.expm1(-2.0 * u))


def ft_sech2(k, p: PotentialParams):
    """Integral of sech^2(kappa x) e^{ikx} over the real line.

    Equals (pi k / kappa^2) / sinh(pi k / 2 kappa), with the k -> 0 limit 2/kappa
    taken from a fourth-order series when |k| < k_eps * kappa.
    """
    kap = p.kappa
    k = np.asarray(k, dtype=float)
    small = np.abs(k) < p.k_eps * kap
    u = np.pi * k / (2.0 * kap)
    series = (2.0 / kap) * (1.0 - u**2 / 6.0 + 7.0 * u**4 / 360.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = _k_over_sinh(np.where(small, 1.0, k), kap)
    out = np.where(small, series, direct)
    return out[()] if out.ndim == 0 else out


def ft_tanh(k, p: PotentialParams):
    """Principal-value integral of tanh(kappa x) e^{ikx}: (pi i / kappa) / sinh(pi k / 2 kappa)."""
    k = np.asarray(k, dtype=float)
    if np.any(k == 0):
        raise DomainError("the tanh transform is singular at k = 0")
    kap = p.kappa
    out = np.asarray(1j * np.sign(k) * _k_over_sinh(k, kap) * kap / np.abs(k))
    return out[()] if out.ndim == 0 else out


def lorentzian_ft(d, p: PotentialParams):
    """Integral of e^{ikd} / (k^2 + kappa^2) dk / 2pi = e^{-kappa |d|} / (2 kappa)."""
    kap = p.kappa
    return np.exp(-kap * np.abs(d)) / (2.0 * kap)


def lorentzian_ft_derivative(d, p: PotentialParams):
    """Integral of i k e^{ikd} / (k^2 + kappa^2) dk / 2pi = -(sgn d / 2) e^{-kappa |d|}.

    This is d/dd of :func:`lorentzian_ft`; undefined at the jump d = 0.
    """
    d = np.asarray(d, dtype=float)
    if np.any(d == 0):
        raise DomainError("the sign function jumps at d = 0")
    out = np.asarray(-0.5 * np.sign(d) * np.exp(-p.kappa * np.abs(d)))
    return out[()] if out.ndim == 0 else out


def lorentzian_cosine_halfline(d, p: PotentialParams):
    """Integral over k > 0 of cos(kd) / (k^2 + kappa^2) = pi e^{-kappa |d|} / (2 kappa)."""
    return np.pi * lorentzian_ft(d, p)


def lorentzian_sine_halfline(d, p: PotentialParams):
    """Integral over k > 0 of k sin(kd) / (k^2 + kappa^2) = (pi/2) sgn(d) e^{-kappa |d|}.

    At d = 0 the integrand vanishes identically and 0 is returned.
    """
    d = np.asarray(d, dtype=float)
    out = np.asarray(0.5 * np.pi * np.sign(d) * np.exp(-p.kappa * np.abs(d)))
    return out[()] if out.ndim == 0 else out


# Quadrature routes

def quadrature_ft_sech2(k, p: PotentialParams, spec: QuadratureSpec = QuadratureSpec()):
    """Numerical sech^2(kappa x) e^{ikx} transform, truncated at the 4 e^{-2 kappa |x|} envelope."""
    kap = p.kappa
    c = envelope_cutoff(2.0 * kap, 4.0, spec.abs_tol)

    def f(x):
        return sech_sq(kap * x) * np.cos(k * x)

    return integrate(f, -c, c, spec)


def sech_sq(z):
    a = np.exp(-2.0 * np.abs(z))
    return 4.0 * a / (1.0 + a) ** 2


def fourier_quadrature(g, d, k_max, spec: QuadratureSpec = QuadratureSpec()):
    """Integral of g(k) e^{ikd} dk / 2pi for algebraically decaying g.

    The window [-k_max, k_max] is integrated adaptively and each tail is added
    from its integration-by-parts expansion, three terms deep, with the
    derivatives of g taken by central differences.
    """
    if d == 0:
        raise DomainError("tail expansion needs an oscillating kernel, d != 0")

    def f(k):
        return g(k) * np.exp(1j * k * d)

    body, err = integrate(f, -k_max, k_max, spec, initial_panels=max(16, int(k_max * abs(d))))
    h = 1e-2 * k_max

    def derivs(k0):
        gm, g0, gp = g(np.array([k0 - h, k0, k0 + h]))
        gmm, gpp = g(np.array([k0 - 2 * h, k0 + 2 * h]))
        return [g0, (gp - gm) / (2 * h), (gpp - 2 * g0 + gmm) / (4 * h * h)]

    s = 1j * d
    upper = -sum((-1) ** n * gn / s ** (n + 1) for n, gn in enumerate(derivs(k_max))) * np.exp(1j * k_max * d)
    lower = sum((-1) ** n * gn / s ** (n + 1) for n, gn in enumerate(derivs(-k_max))) * np.exp(-1j * k_max * d)
    return (body + upper + lower) / (2.0 * np.pi), err / (2.0 * np.pi)
