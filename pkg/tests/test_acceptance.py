"""Acceptance criteria, each run at its stated tolerance and time budget.

Every test records a one-line verdict that the terminal summary prints under
"acceptance criteria", then asserts. numba kernels are compiled once in a
module fixture so the budgets measure the computation, not the JIT.
"""

import time

import numpy as np
import pytest

from reflectionless import PotentialParams
from reflectionless import analytic as an
from reflectionless import completeness as cm
from reflectionless import integrals as ig
from reflectionless import oracle as orc
from reflectionless.verification import RunConfig, momentum_pairs, probe_functions

from .conftest import ACCEPTANCE


@pytest.fixture(scope="module", autouse=True)
def warm_jit():
    p = PotentialParams()
    m = orc.build_hamiltonian(orc.GridSpec(5.0, 10), p)
    orc.oracle_ground_state(orc.GridSpec(5.0, 10), p)
    orc.sturm_count(m, 0.0)
    orc.transfer_matrix_reflection(1.0, p, orc.GridSpec(5.0, 10))


def verdict(num, title, checks, elapsed, budget):
    """checks: list of (label, value, limit, ok); limit may be a descriptive string."""
    ok_time = elapsed < budget
    ok = all(c[3] for c in checks) and ok_time
    worst = "; ".join(f"{label} {value:.3g} ({limit if isinstance(limit, str) else f'limit {limit:g}'})"
                      for label, value, limit, _ in checks)
    ACCEPTANCE[num] = (title, ok, f"{worst}; {elapsed:.3g}s of {budget:g}s")
    failed = [c[0] for c in checks if not c[3]] + ([] if ok_time else ["runtime"])
    assert ok, f"criterion {num} failed: {failed}"


def test_01_bound_state_energy():
    p = PotentialParams(kappa=1.0)
    t0 = time.perf_counter()
    e2000, _ = orc.oracle_ground_state(orc.GridSpec(20.0, 2000), p)
    e4000, _ = orc.oracle_ground_state(orc.GridSpec(20.0, 4000), p)
    elapsed = time.perf_counter() - t0
    err2000, err4000 = abs(e2000 + 1), abs(e4000 + 1)
    ratio = err2000 / err4000
    verdict(1, "bound-state energy", [
        ("|E0+1| n=2000", err2000, 1e-3, err2000 <= 1e-3),
        ("refinement ratio", ratio, "target 4 +- 0.8", abs(ratio - 4) <= 0.8),
    ], elapsed, 5.0)


def test_02_single_bound_state():
    t0 = time.perf_counter()
    worst, counts = 0.0, []
    for kappa in (0.5, 1.0, 3.0):
        p = PotentialParams(kappa=kappa)
        cfg = RunConfig(kappa=kappa)
        worst = max(worst, abs(cm.count_bound_states(p, cfg.quadrature()) - 1))
        counts.append(orc.count_negative_eigenvalues(orc.GridSpec(20.0 / kappa, 2000), p))
    elapsed = time.perf_counter() - t0
    verdict(2, "single bound state", [
        ("max |trace-1|", worst, 1e-8, worst <= 1e-8),
        ("negative eigenvalues (all kappa)", max(counts), 1, counts == [1, 1, 1]),
    ], elapsed, 2.0)


def test_03_bound_state_extraction():
    p = PotentialParams(kappa=1.0)
    x = np.linspace(-20, 20, 401)
    t0 = time.perf_counter()
    got = cm.extract_bound_state(x, p)
    elapsed = time.perf_counter() - t0
    err = float(np.max(np.abs(got - np.sqrt(0.5) / np.cosh(x))))
    verdict(3, "bound-state extraction", [("sup-norm", err, 1e-10, err <= 1e-10)], elapsed, 1.0)


@pytest.fixture(scope="module")
def expansions():
    cfg = RunConfig()
    p, spec = cfg.params(), cfg.quadrature()
    grid = cm.symmetric_k_grid(cfg.k_max, cfg.k_points, 1e-3)
    t0 = time.perf_counter()
    out = {name: (f, cm.expand(f, p, grid, spec)) for name, f in probe_functions(1.0).items()}
    return out, time.perf_counter() - t0, p, spec


def test_04_completeness_by_action(expansions):
    out, t_expand, p, spec = expansions
    x = np.linspace(-3, 3, 21)
    t0 = time.perf_counter()
    rec, res = 0.0, 0.0
    for f, coeffs in out.values():
        fx = f(x)[0]
        rec = max(rec, float(np.max(np.abs(cm.reconstruct(coeffs, x, p) - fx))))
        cont = cm.reconstruct(coeffs, x, p, include_bound=False)
        overlap = cm.inner_product(an.psi0_fn(p), f, spec)
        res = max(res, float(np.max(np.abs((fx - cont) - overlap * an.psi0(x, p)))))
    elapsed = t_expand + time.perf_counter() - t0
    verdict(4, "completeness by action", [
        ("reconstruct", rec, 1e-5, rec <= 1e-5),
        ("continuum-only residual", res, 1e-5, res <= 1e-5),
    ], elapsed, 30.0)


def test_05_parseval(expansions):
    out, t_expand, _, _ = expansions
    worst = max(abs(coeffs.parseval_sum() - 1) for _, coeffs in out.values())
    # runtime shares the expansion with criterion 4
    verdict(5, "Parseval", [("max |sum-1|", worst, 1e-6, worst <= 1e-6)], t_expand, 30.0)


def test_06_fourier_identities():
    p = PotentialParams(kappa=1.0)
    spec = RunConfig().quadrature()
    t0 = time.perf_counter()
    sweep = max(abs(ig.quadrature_ft_sech2(k, p, spec)[0] - ig.ft_sech2(k, p))
                for k in np.geomspace(0.05, 20, 20))
    limit = abs(ig.ft_sech2(0.0, p) - 2.0)
    k = np.random.default_rng(42).uniform(-20, 20, 50)
    ident = float(np.max(np.abs(ig.ft_sech2(k, p) - (-1j * k * ig.ft_tanh(k, p)))))
    elapsed = time.perf_counter() - t0
    verdict(6, "Fourier identities", [
        ("quadrature sweep", sweep, 1e-8, sweep <= 1e-8),
        ("k->0 limit", limit, 1e-12, limit <= 1e-12),
        ("I1 = -ik I2", ident, 1e-14, ident <= 1e-14),
    ], elapsed, 2.0)


def test_07_reflectionless():
    p = PotentialParams(kappa=1.0)
    g = orc.GridSpec(20.0, 2000)
    t0 = time.perf_counter()
    refl, unit, phase = 0.0, 0.0, 0.0
    for k in (0.25, 0.5, 1.0, 2.0, 5.0):
        R, T = orc.transfer_matrix_reflection(k, p, g)
        refl = max(refl, abs(R))
        unit = max(unit, abs(abs(R) ** 2 + abs(T) ** 2 - 1))
        phase = max(phase, abs(np.angle(T / ((k + 1j) / (k - 1j)))))
    R_well, _ = orc.transfer_matrix_reflection(1.0, p, g, orc.square_well(2.0, 1.0))
    elapsed = time.perf_counter() - t0
    verdict(7, "reflectionlessness", [
        ("max |R|", refl, 1e-6, refl <= 1e-6),
        ("square-well |R|", abs(R_well), 0.01, abs(R_well) > 0.01),
        ("unitarity", unit, 1e-8, unit <= 1e-8),
        ("arg T", phase, 1e-4, phase <= 1e-4),
    ], elapsed, 5.0)


def test_08_parity_route():
    p = PotentialParams(kappa=1.0)
    x = np.random.default_rng(42).uniform(-5, 5, 50)
    t0 = time.perf_counter()
    diff = float(np.max(np.abs(cm.parity_defect_diagonal(x, p) - cm.continuum_defect_diagonal(x, p).value)))
    elapsed = time.perf_counter() - t0
    verdict(8, "parity route", [("max difference", diff, 1e-12, diff <= 1e-12)], elapsed, 1.0)


def test_09_momentum_matrix_elements():
    p = PotentialParams(kappa=1.0)
    spec = RunConfig().quadrature()
    t0 = time.perf_counter()
    worst = max(abs(cm.momentum_matrix_element_regular(kp, k, p) - cm.extra_overlap_quadrature(kp, k, p, spec)[0])
                for kp, k in momentum_pairs(1.0))
    elapsed = time.perf_counter() - t0
    verdict(9, "momentum matrix elements", [("max |closed-quadrature|", worst, 1e-6, worst <= 1e-6)],
            elapsed, 10.0)


def test_10_ladder_algebra():
    # a f is differentiated by central differences with h = eps^(1/3), whose
    # truncation plus rounding error is about 1e-10 here; 1e-8 leaves headroom
    fd_tol = 1e-8
    t0 = time.perf_counter()
    x = np.linspace(-10, 10, 2001)
    p = PotentialParams(kappa=1.0)
    annih = float(np.max(np.abs(an.apply_a(an.psi0_fn(p), x, p))))
    xs = np.linspace(-4, 4, 81)
    fact = 0.0
    for kappa in (0.5, 1.0, 2.0):
        q = PotentialParams(kappa=kappa)
        for c, w, m in ((0.0, 1.0, 0.0), (0.5, 0.7, 2.0), (-1.0, 1.5, -1.0)):
            f = cm.gaussian_probe(w, c, m)
            g = f(xs)[0]
            d2 = (((xs - c) / w**2 - 1j * m) ** 2 - 1 / w**2) * g
            lhs = an.apply_a_dagger(an.a_fn(f, q), xs, q)
            rhs = -d2 + an.potential_v(xs, q) * g + kappa**2 * g
            fact = max(fact, float(np.max(np.abs(lhs - rhs))))
    elapsed = time.perf_counter() - t0
    verdict(10, "ladder algebra", [
        ("|a psi0|", annih, 1e-12, annih <= 1e-12),
        ("a'a - (H + kappa^2)", fact, fd_tol, fact <= fd_tol),
    ], elapsed, 2.0)
