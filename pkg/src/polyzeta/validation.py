"""Hard invariants of every module, run as one suite.

Each check returns (passed, measured value).  The suite is sized to run in
a few seconds so that ``polyzeta validate`` stays interactive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bk_model, phase_space, riemann, sierra_model, specfun, verify_numeric
from .bk_model import PolymerScale, SelfAdjointDomain, Wavefunction
from .findings import poly_closed_offset
from .phase_space import TWO_PI, PhaseSpaceCuts
from .sierra_model import SierraParams

__all__ = ["ModelParams", "run_invariants"]

SUITE_SEED = 20240611
SHOOT_STEPS = 4000


@dataclass(frozen=True)
class ModelParams:
    mu0: float
    l_x: float
    l_p: float
    theta: float
    m2: float
    hbar: float = 1.0


def _lowest_nonnegative(levels, count: int) -> np.ndarray:
    levels = np.sort(np.asarray(levels, dtype=float))
    return levels[levels >= -1e-9][:count]


def _specfun_checks(p: ModelParams):
    z = np.array([0.3 + 2j, 5.5 - 7j, 20 + 40j])
    rec = specfun.log_gamma(z + 1) - specfun.log_gamma(z) - np.log(z)
    rec = np.abs((rec.imag + math.pi) % (2 * math.pi) - math.pi) + np.abs(rec.real)
    yield "specfun.log_gamma_recurrence", float(np.max(rec)) < 1e-12, float(np.max(rec))
    phase = abs(abs(specfun.gamma_ratio_phase(7.3)) - 1.0)
    yield "specfun.gamma_ratio_unimodular", phase < 1e-14, phase
    t = np.array([50.0, 100.0, 500.0])
    diff = float(np.max(np.abs(specfun.riemann_siegel_theta(t) - specfun.riemann_siegel_theta_asymptotic(t))))
    yield "specfun.theta_asymptotic", diff < 1e-9, diff
    small = len(specfun.primes_up_to(10_000, segment_size=1000))
    big = len(specfun.primes_up_to(10_000))
    yield "specfun.sieve_segment_independent", small == big, small


def _riemann_checks(p: ModelParams):
    zeros = riemann.find_zeros(80.0)
    yield "riemann.first_zero", abs(zeros.zeros[0] - 14.134725141734693) < 1e-6, float(zeros.zeros[0])
    t = np.linspace(30.0, 80.0, 201)
    diff = float(np.max(np.abs(riemann.z_function_em(t) - riemann.z_function_rs(t))))
    yield "riemann.em_vs_rs", diff < 1e-6, diff
    mids = 0.5 * (zeros.zeros[:-1] + zeros.zeros[1:])[:20]
    exact = riemann.staircase(mids, zeros).values
    model = riemann.smooth_count(mids) + riemann.fluctuation_sum(mids, 10_000, 10)
    worst = float(np.max(np.abs(exact - model)))
    yield "riemann.explicit_formula_tracking", worst < 0.5, worst


def _phase_space_checks(p: ModelParams):
    cuts = PhaseSpaceCuts.symmetric()
    diff = max(abs(phase_space.n_bk(E, cuts) - phase_space.n_bk_integral(E, cuts)) for E in (10.0, 100.0, 500.0))
    yield "phase_space.bk_integral_vs_closed", diff < 1e-10, diff
    e_max = 0.9 * math.pi * cuts.l_x / p.mu0
    grid = np.linspace(cuts.l_x * cuts.l_p * 1.01, min(e_max, 500.0), 50)
    vals = np.array([phase_space.n_poly_closed(E, cuts, p.mu0) for E in grid])
    yield "phase_space.poly_closed_monotone", bool(np.all(np.diff(vals) > 0)), float(np.min(np.diff(vals)))
    E = 20.0
    limit = E / TWO_PI * (math.log(E / cuts.planck_cell) - 1.0)
    mus = np.logspace(-3, -1, 9)
    dev = [abs(phase_space.n_poly_closed(E, cuts, m) - limit) for m in mus]
    slope = float(np.polyfit(np.log(mus), np.log(dev), 1)[0])
    yield "phase_space.mu0_convergence_slope", abs(slope - 2.0) < 0.05, slope
    err = poly_closed_offset()["max_gap_error"]
    yield "phase_space.oracle_gap_decomposition", err < 1e-8, err


def _bk_sets(p: ModelParams):
    yield PolymerScale(p.mu0, p.hbar), p.m2, p.theta
    yield PolymerScale(0.05), 2.0 * (math.pi / 4 - 0.3) / 0.05, math.pi


def _bk_checks(p: ModelParams):
    for i, (scale, m2, theta) in enumerate(_bk_sets(p)):
        dom = SelfAdjointDomain.for_scale(scale, m2, theta)
        grid = np.linspace(0.01, 0.99, 97) * scale.branch_end
        uni = float(np.max(np.abs(np.abs(bk_model.eigenfunction(grid, 17.0, scale)) ** 2
                                  * np.sin(scale.mu0 * grid / scale.hbar) - 1.0)))
        yield f"bk_model[{i}].unimodularity", uni < 1e-12, uni
        levels = np.array([bk_model.spectrum(n, dom, scale) for n in range(-2, 6)])
        on = max(bk_model.boundary_residual(E, dom, scale) for E in levels)
        off = min(bk_model.boundary_residual(E, dom, scale) for E in 0.5 * (levels[:-1] + levels[1:]))
        yield f"bk_model[{i}].residual_at_levels", on < 1e-10, on
        yield f"bk_model[{i}].residual_mid_gap", off > 1e3 * max(on, 1e-16) and off > 0.1, off
        model = verify_numeric.bk_spec(scale, dom)
        shot = verify_numeric.shoot_spectrum(model, 5, n_steps=SHOOT_STEPS)
        closed = _lowest_nonnegative([bk_model.spectrum(n, dom, scale) for n in range(-6, 7)], 5)
        rel = float(np.max(np.abs(shot.levels - closed) / np.maximum(np.abs(closed), 1.0)))
        yield f"bk_model[{i}].shooting_vs_closed", rel < 1e-8, rel
        E = 12.5
        lo, hi = sorted((dom.m1, dom.m2))
        psi = bk_model.sample_eigenfunction(E, scale, lo, hi, 10_000)
        fd = verify_numeric.apply_hamiltonian_fd(model, psi)
        core = slice(len(fd.grid) // 8, -len(fd.grid) // 8)
        err = float(np.max(np.abs(fd.values[core] - E * psi.values[2:-2][core]) / np.abs(E * psi.values[2:-2][core])))
        yield f"bk_model[{i}].fd_eigen_equation", err < 1e-6, err


def _sierra_checks(p: ModelParams):
    params = SierraParams.make(p.l_p, p.mu0)
    m2 = p.m2
    grid = np.linspace(0.01, 0.99, 97) * params.scale.branch_end
    uni = float(np.max(np.abs(np.abs(sierra_model.sierra_eigenfunction(grid, 9.0, params)) ** 2
                              * params.base(grid) / np.sin(params.mu0 * grid) - 1.0)))
    yield "sierra_model.unimodularity", uni < 1e-12, uni
    rng = np.random.default_rng(SUITE_SEED)
    worst = 0.0
    zero = SierraParams(1.0, PolymerScale(1e-300))
    for angle in rng.uniform(0.1, 3.0, 20):
        if abs(angle - math.pi / 2) < 1e-3:
            continue
        exact = sierra_model.sierra_level_spacing(angle, zero, "bare")
        lead = sierra_model.sierra_spectrum_expansion(1, 0.0, angle, zero)
        worst = max(worst, abs(exact - lead) / abs(exact))
    yield "sierra_model.leading_factor_identity", worst < 1e-12, worst
    conv = "self-adjoint"
    levels = np.array([sierra_model.sierra_spectrum(n, p.theta, m2, params, conv) for n in range(-2, 6)])
    on = max(sierra_model.sierra_boundary_residual(E, m2, p.theta, params, conv) for E in levels)
    off = min(sierra_model.sierra_boundary_residual(E, m2, p.theta, params, conv)
              for E in 0.5 * (levels[:-1] + levels[1:]))
    yield "sierra_model.residual_at_levels", on < 1e-10, on
    yield "sierra_model.residual_mid_gap", off > 1e3 * max(on, 1e-16), off
    model = verify_numeric.sierra_spec(params, m2, p.theta, conv)
    shot = verify_numeric.shoot_spectrum(model, 5, n_steps=SHOOT_STEPS)
    closed = _lowest_nonnegative(
        [sierra_model.sierra_spectrum(n, p.theta, m2, params, conv) for n in range(-6, 7)], 5)
    rel = float(np.max(np.abs(shot.levels - closed) / np.maximum(np.abs(closed), 1.0)))
    yield "sierra_model.shooting_vs_closed", rel < 1e-8, rel
    E = 6.0
    lo, hi = sorted((params.m1, m2))
    g = np.linspace(lo, hi, 10_000)
    psi = Wavefunction(g, sierra_model.sierra_eigenfunction(g, E, params), E)
    fd = verify_numeric.apply_hamiltonian_fd(model, psi)
    core = slice(len(fd.grid) // 8, -len(fd.grid) // 8)
    ref = E * psi.values[2:-2][core]
    err = float(np.max(np.abs(fd.values[core] - ref) / np.abs(ref)))
    yield "sierra_model.fd_eigen_equation", err < 1e-6, err


def _verify_numeric_checks(p: ModelParams):
    scale = PolymerScale(0.05)
    dom = SelfAdjointDomain.for_scale(scale, 2.0 * (math.pi / 4 - 0.3) / 0.05, math.pi)
    model = verify_numeric.bk_spec(scale, dom)
    E = 30.0
    errs = []
    for n in (1000, 2000):
        w = verify_numeric.integrate_eigen_ode(model, E, n)
        exact = bk_model.eigenfunction(w.grid, E, scale) / bk_model.eigenfunction(dom.m1, E, scale)
        errs.append(float(np.max(np.abs(w.values - exact))))
    ratio = errs[0] / errs[1]
    yield "verify_numeric.rk4_order", abs(ratio / 16.0 - 1.0) < 0.2, ratio
    lo, hi = sorted((dom.m1, dom.m2))
    errs = []
    for n in (1001, 2001):
        psi = bk_model.sample_eigenfunction(E, scale, lo, hi, n)
        fd = verify_numeric.apply_hamiltonian_fd(model, psi)
        mask = (fd.grid > lo + 0.25 * (hi - lo)) & (fd.grid < hi - 0.25 * (hi - lo))
        errs.append(float(np.max(np.abs(fd.values[mask] - E * psi.values[2:-2][mask]))))
    ratio = errs[0] / errs[1]
    yield "verify_numeric.fd_order", abs(ratio / 16.0 - 1.0) < 0.3, ratio


def run_invariants(params: ModelParams) -> list:
    """Run every hard invariant; returns a list of {name, passed, value} dicts."""
    out = []
    for group in (_specfun_checks, _riemann_checks, _phase_space_checks, _bk_checks,
                  _sierra_checks, _verify_numeric_checks):
        for name, passed, value in group(params):
            out.append({"name": name, "passed": bool(passed), "value": float(value)})
    return out
