"""Acceptance gate: one test per criterion, one printed pass/fail line each.

Every tolerance is pinned here, not deferred.  Criterion 7 is implemented
exactly as stated (periodization truncated at Frobenius norm 25); its t = 2
rows fail because that ball only reaches hyperbolic radius acosh(312.5) ~ 6.4
while the heat mass at t = 2 extends well past it (measured defect ~3e-2
against a converged reference, versus the 1e-3 tolerance).  The companion
check right below runs the same comparison at norm bound 160, where all nine
combinations pass with two orders of margin, isolating the defect in the
pinned bound rather than in either computation.
"""

import math
import time

import numpy as np
import pytest

from autoheat.forms import EisensteinEvaluator, maass_laplacian_residual
from autoheat.heat import (
    euler_error,
    heat_coefficients,
    heat_equation_residual,
    initial_condition_gap,
    semigroup_apply,
    uniqueness_gap,
)
from autoheat.hyperbolic import HPoint, QuadSpec
from autoheat.oracle import periodized_oracle, periodized_oracle_basepoint
from autoheat.sobolev import (
    CoeffFn,
    analyze,
    apply_generator,
    apply_one_minus_laplacian,
    apply_resolvent,
    delta_coefficients,
    pairing_s,
    sobolev_norm,
)
from autoheat.special import bessel_k_imag
from autoheat.synthesis import evaluate_heat_kernel, smoothness_profile

ORACLE_GRID = [(t, z) for t in (0.5, 1.0, 2.0)
               for z in (HPoint(0.0, 1.0), HPoint(0.0, 2.0), HPoint(0.25, 1.3))]


def report(num: int, name: str, passed: bool, detail: str, t0: float) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"criterion {num:02d} [{status}] {name}: {detail} "
          f"({time.time() - t0:.2f}s)")


def rand_fn(grid, rng):
    return CoeffFn(grid, rng.standard_normal(grid.size)
                   + 1j * rng.standard_normal(grid.size))


def test_criterion_01_smoothing_shift_isometry(grid):
    t0 = time.time()
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(100):
        f = rand_fn(grid, rng)
        s = int(rng.integers(-4, 5))
        a = sobolev_norm(apply_one_minus_laplacian(f), s - 2)
        b = sobolev_norm(f, s)
        worst = max(worst, abs(a - b) / b)
    ok = worst <= 1e-12
    report(1, "norm isometry of the index-shift map", ok,
           f"max rel defect {worst:.2e} <= 1e-12", t0)
    assert ok


def test_criterion_02_generator_operator_suite(grid):
    t0 = time.time()
    rng = np.random.default_rng(2)
    sym = neg = bound = rt = 0.0
    for _ in range(50):
        f, g = rand_fn(grid, rng), rand_fn(grid, rng)
        s = int(rng.integers(-3, 4))
        lhs = pairing_s(apply_generator(f), g, s)
        rhs = pairing_s(f, apply_generator(g), s)
        sym = max(sym, abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0))
        neg = max(neg, pairing_s(apply_generator(f), f, s).real)
        for c in (0.5, 1.0, 3.0):
            rf = apply_resolvent(c, f)
            bound = max(bound, sobolev_norm(rf, s) * c / sobolev_norm(f, s) - 1.0)
            back = apply_generator(rf).values - c * rf.values
            rt = max(rt, float(np.max(np.abs(back - f.values))
                               / np.max(np.abs(f.values))))
    ok = sym <= 1e-13 and neg <= 1e-13 and bound <= 1e-13 and rt <= 1e-13
    report(2, "generator symmetry/negativity/resolvent", ok,
           f"sym {sym:.1e}, neg {neg:.1e}, bound excess {bound:.1e}, "
           f"roundtrip {rt:.1e}, all <= 1e-13", t0)
    assert ok


def test_criterion_03_semigroup_suite(grid):
    t0 = time.time()
    rng = np.random.default_rng(3)
    f = rand_fn(grid, rng)
    ident = float(np.max(np.abs(semigroup_apply(0.0, f).values - f.values)))
    law = 0.0
    contraction = -np.inf
    for _ in range(20):
        h = rand_fn(grid, rng)
        a = semigroup_apply(0.3, semigroup_apply(0.7, h))
        b = semigroup_apply(1.0, h)
        law = max(law, float(np.max(np.abs(a.values - b.values))
                             / np.max(np.abs(b.values))))
        for t in (0.1, 1.0, 10.0):
            for s in range(-4, 5):
                contraction = max(contraction,
                                  sobolev_norm(semigroup_apply(t, h), s)
                                  - sobolev_norm(h, s))
    gaps = []
    for t in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5):
        gt = semigroup_apply(t, f)
        gaps.append(sobolev_norm(gt.with_values(gt.values - f.values), -2))
    monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
    ok = ident == 0.0 and law <= 1e-13 and contraction <= 1e-13 \
        and monotone and gaps[-1] < 1e-3 * gaps[0]
    report(3, "semigroup identity/law/contraction/continuity", ok,
           f"identity {ident:.1e}, law {law:.1e}, contraction excess "
           f"{contraction:.1e}, gap {gaps[0]:.1e}->{gaps[-1]:.1e}", t0)
    assert ok


def test_criterion_04_heat_equation_residual(grid):
    t0 = time.time()
    r1 = heat_equation_residual(1.0, 1e-2, -4, grid)
    r2 = heat_equation_residual(1.0, 5e-3, -4, grid)
    ratio = r1 / r2
    scale = sobolev_norm(apply_generator(heat_coefficients(1.0, grid).coeffs), -4)
    small = heat_equation_residual(1.0, 1e-3, -4, grid)
    ok = 3.5 <= ratio <= 4.5 and small <= 1e-5 * scale
    report(4, "centered-difference heat-equation residual", ok,
           f"order ratio {ratio:.3f} in [3.5,4.5], residual/scale "
           f"{small / scale:.2e} <= 1e-5", t0)
    assert ok


def test_criterion_05_initial_condition(grid):
    t0 = time.time()
    ts = (1.0, 0.5, 0.1, 0.01, 1e-3, 1e-4)
    gaps = [initial_condition_gap(t, grid) for t in ts]
    decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
    bound = sobolev_norm(apply_generator(delta_coefficients(grid)), -2)
    bounded = all(g <= t * bound for g, t in zip(gaps, ts))
    ok = decreasing and bounded
    report(5, "initial-condition gap in the delta norm", ok,
           f"strictly decreasing over {ts}, max(gap/(t*bound)) = "
           f"{max(g / (t * bound) for g, t in zip(gaps, ts)):.3f} <= 1", t0)
    assert ok


def test_criterion_06_uniqueness_evidence(grid):
    t0 = time.time()
    rng = np.random.default_rng(6)
    excess = -np.inf
    for t in (0.1, 1.0, 10.0):
        for _ in range(100):
            f, g = rand_fn(grid, rng), rand_fn(grid, rng)
            init = sobolev_norm(f.with_values(f.values - g.values), -2)
            excess = max(excess, uniqueness_gap(f, g, t, -2) - init)
    e1 = euler_error(0.5, 1024, grid)
    e2 = euler_error(0.5, 2048, grid)
    ratio = e1 / e2
    ok = excess <= 1e-13 and 1.8 <= ratio <= 2.2
    report(6, "solution uniqueness by contraction + Euler order", ok,
           f"contraction excess {excess:.1e}, halving ratio {ratio:.3f} "
           f"in [1.8,2.2]", t0)
    assert ok


def test_criterion_07_oracle_agreement_at_spec_bound(grid):
    """Runs the criterion exactly as stated (norm bound 25).  The t = 2 rows
    fail: see the module docstring and the companion test below."""
    t0 = time.time()
    rows = []
    for t, z in ORACLE_GRID:
        spectral = evaluate_heat_kernel(t, z, grid).value.real
        reference = periodized_oracle(t, z, 25.0, shell_warning=False)
        rows.append((t, z, abs(spectral - reference) / abs(reference)))
    worst = max(r for *_, r in rows)
    ok = worst <= 1e-3
    detail = ", ".join(f"t={t} z=({z.x},{z.y}): {r:.1e}" for t, z, r in rows)
    report(7, "end-to-end oracle agreement at norm bound 25", ok, detail, t0)
    assert ok, ("truncated periodization at the pinned bound cannot reach "
                "1e-3 at t=2; see docstring and decisions ledger")


@pytest.mark.slow
def test_criterion_07_companion_convergent_bound(grid):
    """Same comparison with the truncation actually converged (bound 160):
    every row passes, so the implementation is sound and the failure above is
    the pinned bound."""
    t0 = time.time()
    rows = []
    for t, z in ORACLE_GRID:
        spectral = evaluate_heat_kernel(t, z, grid).value.real
        reference = periodized_oracle(t, z, 160.0, shell_warning=False)
        rows.append((t, z, abs(spectral - reference) / abs(reference)))
    worst = max(r for *_, r in rows)
    ok = worst <= 1e-3
    report(7, "companion: oracle agreement at norm bound 160", ok,
           f"worst rel disagreement {worst:.2e} <= 1e-3", t0)
    assert ok


@pytest.mark.slow
def test_criterion_08_long_time_limit(grid):
    t0 = time.time()
    target = 3.0 / math.pi
    spectral = evaluate_heat_kernel(8.0, HPoint(0.0, 1.0), grid).value.real
    oracle = periodized_oracle_basepoint(8.0, 6000.0)
    ok = abs(spectral - target) < 2e-2 and abs(oracle - target) < 2e-2
    report(8, "long-time limit 3/pi from both sides", ok,
           f"spectral {spectral:.6f}, periodized {oracle:.6f}, "
           f"target {target:.6f} +- 2e-2", t0)
    assert ok


def test_criterion_09_smoothness(grid, doubled_grid):
    t0 = time.time()
    prof = smoothness_profile(1.0, [0, 4, 8, 12, 16, 20], grid,
                              doubled_grid=doubled_grid)
    finite = all(np.isfinite(v) for _, v in prof.norms)
    at_zero = smoothness_profile(0.0, [0], grid, doubled_grid=doubled_grid)
    (_, a), = at_zero.norms
    (_, b), = at_zero.doubled_norms
    ok = finite and prof.tail_stable and b >= 1.10 * a
    report(9, "smoothness across the scale + delta divergence", ok,
           f"t=1 max rel change {prof.max_rel_change:.1e} <= 1e-6; "
           f"t=0 index-0 growth {(b / a - 1.0) * 100:.0f}% >= 10%", t0)
    assert ok


@pytest.mark.slow
def test_criterion_10_parseval(parseval_grid):
    t0 = time.time()

    def molly(v):
        out = np.zeros_like(v)
        m = np.abs(v) < 1.0
        out[m] = np.exp(-1.0 / (1.0 - v[m] ** 2))
        return out

    def bump(x, y):
        return molly(np.sqrt(x * x + (y - 1.49) ** 2) / 0.49)

    quad = QuadSpec(nx=120, y_panels=8, ny_per_panel=18, y_max=10.0)
    x, y, w = quad.nodes()
    physical = float(np.sum(w * bump(x, y) ** 2))
    coeffs = analyze(bump, parseval_grid, quad=quad)
    spectral = sobolev_norm(coeffs, 0) ** 2
    rel = abs(spectral - physical) / physical
    ok = rel <= 1e-2
    report(10, "Parseval for a smooth bump", ok,
           f"physical {physical:.8f}, spectral {spectral:.8f}, "
           f"rel defect {rel:.2e} <= 1e-2", t0)
    assert ok


def test_criterion_11_special_functions(dataset):
    t0 = time.time()
    k0 = abs(bessel_k_imag(0.0, 1.0) - 0.4210244382) <= 1e-10
    inv_worst = 0.0
    for r in (1.0, 5.0):
        ev = EisensteinEvaluator(r)
        for zc in (0.3 + 1.1j, 0.15 + 0.95j):
            w = -1.0 / zc
            # no reduction: inversion must hold through the raw expansion
            a = ev.unitary_value(HPoint(zc.real, zc.imag), reduce=False)
            b = ev.unitary_value(HPoint(w.real, w.imag), reduce=False)
            inv_worst = max(inv_worst, abs(a - b))
    first = dataset[0]
    res = maass_laplacian_residual(first, HPoint(0.21, 1.17))
    ok = k0 and inv_worst <= 1e-8 and res <= 1e-4
    report(11, "special-function cross-checks", ok,
           f"K0(1) frozen-oracle ok={k0}, inversion defect {inv_worst:.1e} "
           f"<= 1e-8, Maass residual {res:.1e} <= 1e-4", t0)
    assert ok
