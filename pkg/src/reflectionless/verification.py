"""Named verification suites producing pass/fail report records.

Each suite is a list of checks; every check compares a computed quantity
against an independent expectation at a pinned tolerance. A check that
raises (non-convergence, unstable step, ...) becomes a failed record rather
than an exception.
"""

from dataclasses import asdict, dataclass

import numpy as np

from . import analytic as an
from . import completeness as cm
from . import integrals as ig
from . import oracle as orc
from .params import PotentialParams, QuadratureSpec


@dataclass(frozen=True)
class RunConfig:
    kappa: float = 1.0
    tolerance: float = 1e-6
    grid_half_width: float = 20.0
    grid_n: int = 2000
    k_max: float = 40.0
    k_points: int = 2001
    output_format: str = "csv"
    output_path: str = "-"
    seed: int = 42

    def __post_init__(self):
        for name in ("kappa", "tolerance", "grid_half_width", "grid_n", "k_max", "k_points"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.output_format not in ("csv", "json"):
            raise ValueError("output_format must be csv or json")

    def params(self):
        return PotentialParams(kappa=self.kappa)

    def quadrature(self):
        # integrator runs four orders tighter than the reporting tolerance
        t = self.tolerance * 1e-4
        return QuadratureSpec(abs_tol=t, rel_tol=t, decay_cutoff=40.0 / self.kappa)

    def grid(self):
        return orc.GridSpec(self.grid_half_width, self.grid_n)

    def to_dict(self):
        return asdict(self)


def render(v):
    """17-significant-digit text for real or complex values."""
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    v = complex(v) if np.iscomplexobj(v) else float(v)
    if isinstance(v, complex):
        return f"{v.real:.17g}{v.imag:+.17g}j"
    return f"{v:.17g}"


@dataclass(frozen=True)
class ReportRecord:
    check_name: str
    expected: str
    actual: str
    abs_error: float
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, name, expected, actual, tolerance, abs_error=None):
        if abs_error is None:
            abs_error = float(np.max(np.abs(np.asarray(actual) - np.asarray(expected))))
        abs_error = float(abs_error)
        return cls(name, render(expected), render(actual), abs_error, float(tolerance),
                   bool(abs_error <= tolerance))

    @classmethod
    def failure(cls, name, tolerance, exc):
        return cls(name, "", f"error: {type(exc).__name__}: {exc}", float("inf"), float(tolerance), False)


def _run(name, tolerance, fn):
    try:
        return fn()
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        return ReportRecord.failure(name, tolerance, exc)


def probe_functions(kappa=1.0):
    """Five Gaussian-family test functions: widths 0.5 to 4, shifted and modulated."""
    s = 1.0 / kappa
    return {
        "gauss_w0.5": cm.gaussian_probe(0.5 * s),
        "gauss_w1_shift1.5": cm.gaussian_probe(1.0 * s, 1.5 * s),
        "gauss_w2_mod1": cm.gaussian_probe(2.0 * s, 0.0, 1.0 * kappa),
        "gauss_w4_shift-3": cm.gaussian_probe(4.0 * s, -3.0 * s),
        "gauss_w0.7_shift0.5_mod3": cm.gaussian_probe(0.7 * s, 0.5 * s, 3.0 * kappa),
    }


def suite_transforms(cfg: RunConfig, rng):
    p, spec = cfg.params(), cfg.quadrature()
    kap = p.kappa
    out = []
    for k in np.geomspace(0.05, 20.0, 20) * kap:
        name = f"ft_sech2_quadrature[k={k:.6g}]"
        out.append(_run(name, 1e-8, lambda k=k, name=name: ReportRecord.compare(
            name, ig.ft_sech2(k, p), ig.quadrature_ft_sech2(k, p, spec)[0], 1e-8)))
    out.append(ReportRecord.compare("ft_sech2_limit_k0", 2.0 / kap, ig.ft_sech2(0.0, p), 1e-12))
    ks = rng.uniform(-20, 20, 50) * kap
    ks = ks[ks != 0]
    out.append(ReportRecord.compare("ft_identity_sech2_vs_tanh", 0.0,
                                    np.max(np.abs(-1j * ks / kap * ig.ft_tanh(ks, p) - ig.ft_sech2(ks, p))), 1e-14))

    def lorentz():
        g = lambda k: 1.0 / (k * k + kap**2)
        d = 0.5 / kap
        return ReportRecord.compare("lorentzian_ft_quadrature[d=0.5]", ig.lorentzian_ft(d, p),
                                    ig.fourier_quadrature(g, d, 200.0 * kap, spec)[0], cfg.tolerance)

    def lorentz_der():
        g = lambda k: 1j * k / (k * k + kap**2)
        d = 0.3 / kap
        return ReportRecord.compare("lorentzian_ft_derivative_quadrature[d=0.3]", ig.lorentzian_ft_derivative(d, p),
                                    ig.fourier_quadrature(g, d, 200.0 * kap, spec)[0], cfg.tolerance)

    out.append(_run("lorentzian_ft_quadrature[d=0.5]", cfg.tolerance, lorentz))
    out.append(_run("lorentzian_ft_derivative_quadrature[d=0.3]", cfg.tolerance, lorentz_der))
    return out


def suite_orthonormality(cfg: RunConfig, rng):
    p, spec = cfg.params(), cfg.quadrature()
    kap = p.kappa
    g1 = cm.gaussian_packet(2.0 * kap, 0.3 * kap)
    g2 = cm.gaussian_packet(-2.0 * kap, 0.3 * kap)
    out = []

    def norm():
        return ReportRecord.compare("packet_orthonormality[k0=2]", g1.norm_sq(spec),
                                    cm.smeared_orthonormality(g1, g1, p, spec), cfg.tolerance)

    def disjoint():
        return ReportRecord.compare("packet_orthogonality[k0=2,-2]", 0.0,
                                    cm.smeared_orthonormality(g1, g2, p, spec), 1e-8)

    def unnorm():
        lo, hi = g1.center - g1.support_cutoff, g1.center + g1.support_cutoff
        expected = ig.integrate(lambda k: (k * k + kap**2) * np.abs(g1.weight(k)) ** 2, lo, hi, spec)[0]
        actual = cm.smeared_orthonormality(g1, g1, p, spec, basis="unnormalized")
        return ReportRecord.compare("packet_unnormalized_weight[k0=2]", expected, actual,
                                    cfg.tolerance * max(1.0, abs(expected)))

    def psi0_norm():
        val = ig.integrate_real_line(lambda x: np.abs(an.psi0(x, p)) ** 2, spec)[0]
        return ReportRecord.compare("psi0_norm", 1.0, val, cfg.tolerance)

    for name, tol, fn in (("packet_orthonormality[k0=2]", cfg.tolerance, norm),
                          ("packet_orthogonality[k0=2,-2]", 1e-8, disjoint),
                          ("packet_unnormalized_weight[k0=2]", cfg.tolerance, unnorm),
                          ("psi0_norm", cfg.tolerance, psi0_norm)):
        out.append(_run(name, tol, fn))
    return out


def suite_completeness(cfg: RunConfig, rng):
    p, spec = cfg.params(), cfg.quadrature()
    kap = p.kappa
    out = [
        _run("count_bound_states", 1e-8,
             lambda: ReportRecord.compare("count_bound_states", 1.0, cm.count_bound_states(p, spec), 1e-8)),
    ]
    xs = np.linspace(-cfg.grid_half_width, cfg.grid_half_width, 401)
    out.append(_run("extract_bound_state_supnorm", 1e-10, lambda: ReportRecord.compare(
        "extract_bound_state_supnorm", 0.0,
        np.max(np.abs(cm.extract_bound_state(xs, p) - an.psi0(xs, p))), 1e-10)))

    grid1 = np.linspace(-3, 3, 20) / kap + 0.01 / kap
    X, Y = np.meshgrid(grid1, grid1)
    off = X != Y
    dd = cm.continuum_defect_diagonal(grid1, p).value
    lhs = cm.defect_offdiagonal(X[off], Y[off], p) ** 2
    rhs = np.outer(dd, dd)[off]
    out.append(ReportRecord.compare("defect_rank_one_factorization", 0.0, np.max(np.abs(lhs - rhs)), 1e-12))

    kgrid = cm.symmetric_k_grid(cfg.k_max * kap, cfg.k_points, 1e-3 * kap)
    probes_x = np.linspace(-3, 3, 21) / kap
    for name, f in probe_functions(kap).items():
        def run_probe(f=f, name=name):
            coeffs = cm.expand(f, p, kgrid, spec)
            fx = f(probes_x)[0]
            full = cm.reconstruct(coeffs, probes_x, p)
            cont = cm.reconstruct(coeffs, probes_x, p, include_bound=False)
            return [
                ReportRecord.compare(f"reconstruct[{name}]", 0.0, np.max(np.abs(full - fx)), 1e-5),
                ReportRecord.compare(f"continuum_residual[{name}]", 0.0,
                                     np.max(np.abs((fx - cont) - coeffs.c0 * an.psi0(probes_x, p))), 1e-5),
                ReportRecord.compare(f"parseval[{name}]", 1.0, coeffs.parseval_sum(), 1e-6),
            ]
        res = _run(f"reconstruct[{name}]", 1e-5, run_probe)
        out.extend(res if isinstance(res, list) else [res])
    return out


def suite_parity(cfg: RunConfig, rng):
    p, spec = cfg.params(), cfg.quadrature()
    kap = p.kappa
    xs = rng.uniform(-5, 5, 50) / kap
    out = [ReportRecord.compare("parity_defect_equals_continuum_defect", 0.0,
                                np.max(np.abs(cm.parity_defect_diagonal(xs, p) - cm.continuum_defect_diagonal(xs, p).value)),
                                1e-12)]
    k = rng.uniform(0.05, 10, 20) * kap
    x = rng.uniform(-5, 5, 20) / kap
    even = (an.psi_k(k, x, p) + an.psi_k(k, -x, p)) / np.sqrt(2)
    odd = (an.psi_k(k, x, p) - an.psi_k(k, -x, p)) / np.sqrt(2)
    out.append(ReportRecord.compare("parity_even_from_scattering_states", 0.0,
                                    np.max(np.abs(even - an.parity_even(k, x, p))), 1e-13))
    out.append(ReportRecord.compare("parity_odd_from_scattering_states", 0.0,
                                    np.max(np.abs(odd - an.parity_odd(k, x, p))), 1e-13))

    def smeared():
        numeric, closed = cm.smeared_parity_completeness(cm.gaussian_probe(0.2 / kap, 0.3 / kap), p, 60.0 * kap, spec)
        return ReportRecord.compare("parity_kernel_smeared[K=60]", closed, numeric, 1e-4)

    out.append(_run("parity_kernel_smeared[K=60]", 1e-4, smeared))
    return out


def suite_momentum(cfg: RunConfig, rng):
    p, spec = cfg.params(), cfg.quadrature()
    kap = p.kappa
    out = []
    for kp, k in momentum_pairs(kap):
        name = f"momentum_regular_vs_quadrature[k'={kp:g},k={k:g}]"
        out.append(_run(name, 1e-6, lambda kp=kp, k=k, name=name: ReportRecord.compare(
            name, _momentum_quadrature(kp, k, p, spec), cm.momentum_matrix_element_regular(kp, k, p), 1e-6)))
    k = rng.uniform(0.05, 10, 30) * kap
    x = rng.uniform(-5, 5, 30) / kap
    skew, extra = cm.momentum_on_even_decomposition(k, x, p)
    out.append(ReportRecord.compare("momentum_decomposition_vs_derivative", 0.0,
                                    np.max(np.abs(skew + extra + 1j * an.parity_even_dx(k, x, p))), 1e-12))

    ga = cm.gaussian_packet(1.5 * kap, 0.3 * kap)
    gb = cm.gaussian_packet(2.0 * kap, 0.4 * kap)

    def herm():
        fa, fb = cm.packet(ga, p), cm.packet(gb, p)
        ab = cm.momentum_inner_product(fa, fb, spec)
        ba = cm.momentum_inner_product(fb, fa, spec)
        return ReportRecord.compare("momentum_hermiticity_smeared", np.conj(ba), ab, 1e-8)

    def skew_block(basis):
        fa, fb = cm.packet(ga, p, basis), cm.packet(gb, p, basis)
        name = f"momentum_diagonal_block_vanishes[{basis}]"
        return ReportRecord.compare(name, 0.0, cm.momentum_inner_product(fa, fb, spec), 1e-8)

    out.append(_run("momentum_hermiticity_smeared", 1e-8, herm))
    for basis in ("even", "odd"):
        out.append(_run(f"momentum_diagonal_block_vanishes[{basis}]", 1e-8, lambda b=basis: skew_block(b)))
    return out


def momentum_pairs(kappa=1.0):
    """Ten (k', k) pairs with k' != k."""
    pairs = [(1.3, 0.7), (0.5, 1.0), (2.0, 0.3), (0.2, 3.0), (1.0, 1.1),
             (4.0, 2.5), (0.8, 5.0), (3.3, 3.0), (6.0, 1.0), (0.1, 0.4)]
    return [(a * kappa, b * kappa) for a, b in pairs]


def _momentum_quadrature(kp, k, p, spec):
    return cm.extra_overlap_quadrature(kp, k, p, spec)[0]


def square_well_reflection(k, depth, half_width):
    """|R| for a square well of the given depth on |x| < half_width (hbar = 2m = 1)."""
    q = np.sqrt(k * k + depth)
    s, c = np.sin(2 * q * half_width), np.cos(2 * q * half_width)
    return abs((q * q - k * k) * s) / abs(2 * k * q * c - 1j * (k * k + q * q) * s)


def suite_oracle(cfg: RunConfig, rng):
    p = cfg.params()
    kap = p.kappa
    g = cfg.grid()
    out = []

    def ground():
        e0, v = orc.oracle_ground_state(g, p)
        return [
            ReportRecord.compare("oracle_ground_energy", -kap**2, e0, 1e-3),
            ReportRecord.compare("oracle_ground_state_supnorm", 0.0,
                                 np.max(np.abs(v - np.sqrt(kap / 2) / np.cosh(kap * g.points))), 1e-3),
            ReportRecord.compare("oracle_ground_state_nodes", 0, orc.count_nodes(v), 0),
        ]

    res = _run("oracle_ground_energy", 1e-3, ground)
    out.extend(res if isinstance(res, list) else [res])
    out.append(_run("oracle_negative_eigenvalue_count", 0, lambda: ReportRecord.compare(
        "oracle_negative_eigenvalue_count", 1, orc.count_negative_eigenvalues(g, p), 0)))

    scatter_grid = orc.GridSpec(cfg.grid_half_width, cfg.grid_n)
    for k in np.array([0.25, 0.5, 1.0, 2.0, 5.0]) * kap:
        def refl(k=k):
            R, T = orc.transfer_matrix_reflection(k, p, scatter_grid)
            t_exact = an.transmission_amplitude(k, p)
            dphi = abs(np.angle(T / t_exact))
            return [
                ReportRecord.compare(f"reflection_vanishes[k={k:g}]", 0.0, abs(R), 1e-6),
                ReportRecord.compare(f"unitarity[k={k:g}]", 1.0, abs(R) ** 2 + abs(T) ** 2, 1e-8),
                ReportRecord.compare(f"transmission_phase[k={k:g}]", np.angle(t_exact), np.angle(T), 1e-4,
                                     abs_error=dphi),
            ]
        res = _run(f"reflection_vanishes[k={k:g}]", 1e-6, refl)
        out.extend(res if isinstance(res, list) else [res])

    def control():
        R, _ = orc.transfer_matrix_reflection(kap, p, scatter_grid, orc.square_well(2 * kap**2, 1.0 / kap))
        return ReportRecord.compare("square_well_control_reflection",
                                    square_well_reflection(kap, 2 * kap**2, 1.0 / kap), abs(R), 1e-2)

    out.append(_run("square_well_control_reflection", 1e-2, control))
    return out


SUITES = {
    "orthonormality": suite_orthonormality,
    "completeness": suite_completeness,
    "parity": suite_parity,
    "momentum": suite_momentum,
    "transforms": suite_transforms,
    "oracle": suite_oracle,
}


def run_suite(name, cfg: RunConfig):
    """Records for one suite (or ``all``), sorted by check name."""
    names = list(SUITES) if name == "all" else [name]
    records = []
    for n in names:
        rng = np.random.default_rng(cfg.seed)
        records.extend(SUITES[n](cfg, rng))
    return sorted(records, key=lambda r: r.check_name)
