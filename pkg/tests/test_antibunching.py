import cmath
import math

import numpy as np
import pytest

from fpqsim.antibunching import (
    SweepGrid,
    coefficients_at_zero,
    epsilon_threshold,
    hom_amplitude_degenerate,
    hom_amplitude_two_color,
    solve_degenerate_zero,
    solve_spdc,
    spdc_residual,
    sweep_degenerate,
    sweep_two_color,
)
from fpqsim.fp_core import DomainError, MirrorSpec, fp_reflection, fp_transmission

EPS0 = 0.9101797211244548


def test_threshold_value():
    assert epsilon_threshold() == pytest.approx(math.sqrt(2.0 * (math.sqrt(2.0) - 1.0)), abs=0.0)
    assert epsilon_threshold() == pytest.approx(EPS0, abs=1e-15)


def test_zero_roots_for_half_transmissive_mirror():
    x_plus, x_minus = solve_degenerate_zero(MirrorSpec(0.5))
    assert x_plus == pytest.approx(1.4259528297963369, abs=1e-15)
    assert x_minus == pytest.approx(math.pi - x_plus, abs=1e-14)
    assert 0.0 < x_plus < math.pi / 2.0 < x_minus < math.pi


def test_zero_roots_annihilate_coincidence():
    for e in (0.1, 0.5, 0.85, EPS0 - 1e-6):
        roots = solve_degenerate_zero(MirrorSpec(e))
        assert roots is not None
        for x in roots:
            assert hom_amplitude_degenerate(x, MirrorSpec(e)).p_hom < 1e-26


def test_no_roots_above_threshold_or_for_closed_mirror():
    assert solve_degenerate_zero(MirrorSpec(EPS0 + 1e-6)) is None
    assert solve_degenerate_zero(MirrorSpec(0.95)) is None
    assert solve_degenerate_zero(MirrorSpec(1.0)) is None
    # the formal pi/2 root at eps = 0 sits on a removable singularity where
    # the coincidence probability is actually 1, so it is not reported
    assert solve_degenerate_zero(MirrorSpec(0.0)) is None
    assert hom_amplitude_degenerate(math.pi / 2.0, MirrorSpec(0.0)).p_hom == pytest.approx(1.0)


def test_roots_collapse_to_cell_edges_at_threshold():
    roots = solve_degenerate_zero(MirrorSpec(epsilon_threshold()))
    assert roots is not None
    x_plus, x_minus = roots
    # arccos argument is exactly 1 here; allow sqrt(ulp) spread
    assert x_plus < 3e-8
    assert x_minus > math.pi - 3e-8


def test_coefficients_at_zero_are_balanced():
    for e in (0.2, 0.5, 0.8):
        spec = MirrorSpec(e)
        co_plus, co_minus = coefficients_at_zero(spec)
        for co, sign in ((co_plus, 1.0), (co_minus, -1.0)):
            assert abs(co.t_fp) ** 2 == pytest.approx(0.5, abs=1e-12)
            assert abs(co.r_fp) ** 2 == pytest.approx(0.5, abs=1e-12)
            assert co.r_fp == pytest.approx(sign * 1j * co.t_fp, abs=1e-12)
        # closed form: t_fp at the zero is (sqrt(1-eps^2) + e^{ix}) / 2
        s = math.sqrt(1.0 - e * e)
        assert co_plus.t_fp == pytest.approx((s + cmath.exp(1j * co_plus.x)) / 2.0, abs=1e-14)
        assert co_minus.t_fp == pytest.approx((cmath.exp(1j * co_minus.x) - s) / 2.0, abs=1e-14)


def test_coefficients_at_zero_reach_constants_only_for_weak_coupling():
    co_plus, co_minus = coefficients_at_zero(MirrorSpec(1e-3))
    assert co_plus.t_fp == pytest.approx((1.0 + 1j) / 2.0, abs=1e-10)
    assert co_plus.r_fp == pytest.approx((-1.0 + 1j) / 2.0, abs=1e-10)
    assert co_minus.t_fp == pytest.approx((-1.0 + 1j) / 2.0, abs=1e-10)
    assert co_minus.r_fp == pytest.approx((1.0 + 1j) / 2.0, abs=1e-10)
    # at eps = 0.5 the same constants are off by ~7e-3: the values drift with eps
    co_plus_half, _ = coefficients_at_zero(MirrorSpec(0.5))
    assert abs(co_plus_half.t_fp - (1.0 + 1j) / 2.0) > 1e-3


def test_coefficients_at_zero_rejects_above_threshold():
    with pytest.raises(DomainError):
        coefficients_at_zero(MirrorSpec(0.95))


def test_completeness_of_output_probabilities():
    rng = np.random.default_rng(21)
    for _ in range(200):
        e = float(rng.uniform(0.0, 1.0))
        x = float(rng.uniform(0.0, 2.0 * math.pi))
        spec = MirrorSpec(e)
        hom = hom_amplitude_degenerate(x, spec)
        t = fp_transmission(x, spec)
        r = fp_reflection(x, spec)
        # coincidence plus both bunched outcomes (2 x 2|tr|^2) exhausts the state
        assert hom.p_hom + 4.0 * abs(t * r) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_degenerate_coincidence_has_period_pi():
    spec = MirrorSpec(0.44)
    x = np.linspace(0.0, math.pi, 37)
    a = hom_amplitude_degenerate(x, spec)
    b = hom_amplitude_degenerate(x + math.pi, spec)
    assert np.max(np.abs(a.c_hom - b.c_hom)) < 1e-13


def test_two_color_amplitude_is_symmetric():
    # fused multiply-add can shift the two argument orders by an ulp
    spec = MirrorSpec(0.3)
    a = hom_amplitude_two_color(0.7, 2.1, spec)
    b = hom_amplitude_two_color(2.1, 0.7, spec)
    assert a.c_hom == pytest.approx(b.c_hom, rel=1e-15, abs=1e-15)
    assert a.p_hom == pytest.approx(b.p_hom, rel=1e-14)


def test_perfect_mirror_coincidence_is_certain():
    # t = 0, r = i for every frequency: c_hom = -1 exactly
    spec = MirrorSpec(0.0)
    res = hom_amplitude_two_color(0.3, 1.9, spec)
    assert res.c_hom == pytest.approx(-1.0, abs=0.0)
    assert res.p_hom == pytest.approx(1.0, abs=0.0)


def test_sweep_degenerate_grid_layout():
    eps = np.linspace(0.0, 1.0, 21)
    x = np.linspace(0.0, math.pi, 33)
    grid = sweep_degenerate(eps, x, 0.01)
    assert isinstance(grid, SweepGrid)
    assert grid.values.shape == (21, 33)
    assert grid.mask.dtype == bool
    # spot-check one cell against the scalar path
    i, j = 13, 7
    ref = hom_amplitude_degenerate(float(x[j]), MirrorSpec(float(eps[i]))).p_hom
    assert grid.values[i, j] == pytest.approx(ref, abs=1e-15)
    pts = grid.masked_points()
    assert pts.shape == (int(grid.mask.sum()), 3)
    assert np.all(pts[:, 2] < 0.01)


def test_sweep_threshold_validation():
    eps = np.linspace(0.1, 0.9, 5)
    for bad in (0.0, -0.5, math.nan, math.inf):
        with pytest.raises(DomainError):
            sweep_degenerate(eps, eps, bad)
    sweep_degenerate(eps, eps, 1.1)  # thresholds above 1 are allowed


def test_sweep_grid_validation():
    with pytest.raises(DomainError):
        sweep_degenerate(np.array([0.2, 0.1]), np.array([0.0, 1.0]), 0.01)
    with pytest.raises(DomainError):
        sweep_two_color(np.zeros((2, 2)), np.array([0.0, 1.0]), MirrorSpec(0.5), 0.01)


def test_two_color_sweep_is_bitwise_symmetric():
    x = np.linspace(0.0, 2.0 * math.pi, 257)
    grid = sweep_two_color(x, x, MirrorSpec(0.4), 0.01)
    assert np.array_equal(grid.values, grid.values.T)
    assert np.array_equal(grid.mask, grid.mask.T)
    assert grid.mask.any()


def test_two_color_masks_track_epsilon():
    x = np.linspace(0.0, 2.0 * math.pi, 301)
    m1 = sweep_two_color(x, x, MirrorSpec(0.1), 0.01).mask
    m7 = sweep_two_color(x, x, MirrorSpec(0.7), 0.01).mask
    assert m1.any() and m7.any()
    assert not np.array_equal(m1, m7)


def _roots_by_reference(x_p, eps):
    # independent quadratic solve in tan x_s, mapped into [0, pi)
    beta = eps ** 4 / (2.0 * (1.0 - eps * eps))
    coeffs = [beta, -2.0 * math.sin(x_p), beta - 2.0 * math.cos(x_p)]
    if beta == 0.0:
        coeffs = coeffs[1:]
    out = []
    for t in np.roots(coeffs):
        if abs(t.imag) < 1e-12:
            a = math.atan(t.real)
            out.append(a if a >= 0.0 else a + math.pi)
    return sorted(out)


def test_spdc_worked_example():
    sol = solve_spdc(math.pi / 2.0, MirrorSpec(0.5))
    assert sol.feasible
    assert sol.beta_eps == pytest.approx(1.0 / 24.0, abs=1e-16)
    assert len(sol.roots) == 2
    ref = _roots_by_reference(math.pi / 2.0, 0.5)
    assert sol.roots[0] == pytest.approx(ref[0], rel=1e-10)
    assert sol.roots[1] == pytest.approx(ref[1], rel=1e-12)
    for r in sol.roots:
        assert spdc_residual(r, math.pi / 2.0, MirrorSpec(0.5)) < 1e-14


def test_spdc_roots_lie_on_the_zero_curve():
    rng = np.random.default_rng(31)
    count = 0
    while count < 300:
        e = float(rng.uniform(0.05, EPS0))
        x_p = float(rng.uniform(0.0, 2.0 * math.pi))
        sol = solve_spdc(x_p, MirrorSpec(e))
        if not sol.roots:
            continue
        count += 1
        for x_s in sol.roots:
            assert spdc_residual(x_s, x_p, MirrorSpec(e)) < 1e-12
            # the implied idler pairs with the signal to kill the coincidence
            assert hom_amplitude_two_color(x_s, x_p - x_s, MirrorSpec(e)).p_hom < 1e-22


def test_spdc_feasibility_bound_is_exact():
    rng = np.random.default_rng(32)
    for _ in range(400):
        e = float(rng.uniform(0.05, 0.999))
        x_p = float(rng.uniform(0.0, 2.0 * math.pi))
        sol = solve_spdc(x_p, MirrorSpec(e))
        assert sol.feasible == (sol.beta_eps - 1.0 <= sol.alpha_p)
        assert (len(sol.roots) > 0) == sol.feasible


def test_spdc_above_threshold_never_feasible():
    # beta > 2 there, so beta - 1 > 1 >= alpha for every pump phase
    for x_p in np.linspace(0.0, 2.0 * math.pi, 17):
        sol = solve_spdc(float(x_p), MirrorSpec(0.95))
        assert not sol.feasible
        assert sol.roots == ()


def test_spdc_near_tangency_stays_consistent():
    # walk the pump phase onto the feasible side of the tangency by ulps;
    # the flag, the root list, and the curve must agree the whole way
    e = 0.7
    beta = e ** 4 / (2.0 * (1.0 - e * e))
    x_p = math.acos(beta - 1.0)
    while math.cos(x_p) < beta - 1.0:
        x_p = math.nextafter(x_p, 0.0)
    sol = solve_spdc(x_p, MirrorSpec(e))
    assert sol.feasible
    assert len(sol.roots) in (1, 2)
    for r in sol.roots:
        assert spdc_residual(r, x_p, MirrorSpec(e)) < 1e-10
    # a hair on the other side: infeasible, and no roots leak through
    x_bad = x_p
    while math.cos(x_bad) >= beta - 1.0:
        x_bad = math.nextafter(x_bad, 4.0)
    sol_bad = solve_spdc(x_bad, MirrorSpec(e))
    assert not sol_bad.feasible
    assert sol_bad.roots == ()


def test_spdc_exact_tangency_merges_roots():
    # feed the solver a pump phase whose cosine reproduces beta - 1 exactly,
    # if the rounding of acos/cos admits one near this eps; otherwise the
    # nearest representable case must still be consistent
    e = 0.7
    beta = e ** 4 / (2.0 * (1.0 - e * e))
    target = beta - 1.0
    x_p = math.acos(target)
    candidates = [x_p]
    for _ in range(3):
        candidates.append(math.nextafter(candidates[-1], 0.0))
        candidates.append(math.nextafter(candidates[0], 4.0))
    hit = [xp for xp in candidates if math.cos(xp) == target]
    for xp in hit:
        sol = solve_spdc(xp, MirrorSpec(e))
        assert sol.feasible
        assert len(sol.roots) == 1  # disc is exactly zero: double root
        assert spdc_residual(sol.roots[0], xp, MirrorSpec(e)) < 1e-10


def test_spdc_weak_coupling_branches():
    # tiny beta: one root hugs cos x_s = 0, the other solves the linear part
    e = 0.01
    x_p = 2.0
    sol = solve_spdc(x_p, MirrorSpec(e))
    assert len(sol.roots) == 2
    assert min(abs(r - math.pi / 2.0) for r in sol.roots) < 1e-4
    linear = math.atan(-math.cos(x_p) / math.sin(x_p))
    linear = linear if linear >= 0.0 else linear + math.pi
    assert min(abs(r - linear) for r in sol.roots) < 1e-3
    for r in sol.roots:
        assert spdc_residual(r, x_p, MirrorSpec(e)) < 1e-12


def test_spdc_axis_pump_phases():
    # x_p = 0: symmetric pair about pi/2; x_p = pi: infeasible for any eps > 0
    sol0 = solve_spdc(0.0, MirrorSpec(0.4))
    assert len(sol0.roots) == 2
    assert sol0.roots[0] + sol0.roots[1] == pytest.approx(math.pi, abs=1e-9)
    sol_pi = solve_spdc(math.pi, MirrorSpec(0.4))
    assert not sol_pi.feasible
    assert sol_pi.roots == ()


def test_spdc_rejects_degenerate_mirrors():
    with pytest.raises(DomainError):
        solve_spdc(1.0, MirrorSpec(0.0))
    with pytest.raises(DomainError):
        solve_spdc(1.0, MirrorSpec(1.0))
