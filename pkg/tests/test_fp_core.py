import math

import numpy as np
import pytest

from fpqsim.fp_core import (
    SPEED_OF_LIGHT,
    CavityGeometry,
    DomainError,
    MirrorSpec,
    cavity_coefficients,
    finesse,
    fp_reflection,
    fp_transmission,
    mirror_coefficients,
    reflection_probability,
    transmission_probability,
)


def test_mirror_spec_rejects_out_of_range():
    for bad in (-0.1, 1.0000001, 1.5, math.nan, math.inf):
        with pytest.raises(DomainError):
            MirrorSpec(bad)
    MirrorSpec(0.0)
    MirrorSpec(1.0)


def test_mirror_coefficients_unitary():
    for e in (0.0, 0.3, 0.7071067811865476, 1.0):
        t, r = mirror_coefficients(MirrorSpec(e))
        assert t == pytest.approx(e)
        assert r.real == 0.0
        assert abs(t) ** 2 + abs(r) ** 2 == pytest.approx(1.0, abs=1e-15)


def test_resonant_transmission_at_one_seventh():
    # eps = 0.5, x = 0: t_fp = 0.25 / (1 + 0.75) = 1/7
    spec = MirrorSpec(0.5)
    t = fp_transmission(0.0, spec)
    assert isinstance(t, complex)
    assert t == pytest.approx(1.0 / 7.0, abs=1e-15)
    assert transmission_probability(0.0, spec) == pytest.approx(1.0 / 49.0, abs=1e-16)


def test_peak_transmission_on_resonance():
    spec = MirrorSpec(0.5)
    assert transmission_probability(math.pi / 2.0, spec) == pytest.approx(1.0, abs=1e-15)
    assert reflection_probability(math.pi / 2.0, spec) == pytest.approx(0.0, abs=1e-15)


def test_finesse_value_and_limits():
    assert finesse(MirrorSpec(0.5)) == pytest.approx(6.928203230275509, abs=1e-14)
    assert finesse(MirrorSpec(1.0)) == 0.0
    with pytest.raises(DomainError):
        finesse(MirrorSpec(0.0))


def test_airy_profile_matches_direct_modulus():
    rng = np.random.default_rng(7)
    eps = rng.uniform(0.02, 1.0, 300)
    x = rng.uniform(-10.0, 10.0, 300)
    for e, xx in zip(eps, x):
        spec = MirrorSpec(float(e))
        direct = abs(fp_transmission(float(xx), spec)) ** 2
        stable = transmission_probability(float(xx), spec)
        f = finesse(spec)
        analytic = 1.0 / (1.0 + f * f * math.cos(xx) ** 2)
        assert stable == pytest.approx(direct, abs=1e-12)
        assert stable == pytest.approx(analytic, rel=1e-12)


def test_unitarity_over_random_draws():
    rng = np.random.default_rng(20240811)
    eps = rng.uniform(0.0, 1.0, 2000)
    x = rng.uniform(-20.0, 20.0, 2000)
    for e in eps[:50]:
        co = cavity_coefficients(x, MirrorSpec(float(e)))
        assert co.unitarity_error() < 1e-12
    # elementwise too, mixing each eps with its own phase
    worst = 0.0
    for e, xx in zip(eps, x):
        co = cavity_coefficients(float(xx), MirrorSpec(float(e)))
        worst = max(worst, co.unitarity_error())
    assert worst < 1e-12


def test_perfect_mirror_convention():
    # eps = 0: nothing enters the cavity, r_fp = i from the single-mirror phase
    spec = MirrorSpec(0.0)
    for x in (0.0, 0.3, math.pi / 2.0, math.pi, 7.1):
        assert fp_transmission(x, spec) == 0.0
        assert fp_reflection(x, spec) == 1j
        assert transmission_probability(x, spec) == 0.0
        assert reflection_probability(x, spec) == 1.0


def test_open_cavity_is_pure_delay():
    spec = MirrorSpec(1.0)
    x = np.linspace(-5.0, 5.0, 101)
    t = fp_transmission(x, spec)
    r = fp_reflection(x, spec)
    assert np.max(np.abs(t - np.exp(1j * x))) < 1e-15
    assert np.max(np.abs(r)) == 0.0
    assert np.all(transmission_probability(x, spec) == 1.0)


def test_scalar_and_array_returns():
    spec = MirrorSpec(0.4)
    assert isinstance(fp_transmission(1.0, spec), complex)
    assert isinstance(transmission_probability(1.0, spec), float)
    arr = fp_reflection(np.array([0.1, 0.2]), spec)
    assert arr.shape == (2,)
    co = cavity_coefficients(np.zeros((3, 4)), spec)
    assert co.t_prob.shape == (3, 4)


def test_geometry_phase_round_trip():
    with pytest.raises(DomainError):
        CavityGeometry(0.0)
    with pytest.raises(DomainError):
        CavityGeometry(-1e-9)
    geo = CavityGeometry.from_length(0.299792458)
    assert geo.t0 == pytest.approx(1e-9)
    omega = 2.0 * math.pi * 1e9
    assert geo.angular_frequency(geo.phase(omega)) == pytest.approx(omega)
    assert CavityGeometry.from_length(SPEED_OF_LIGHT).t0 == 1.0


def test_near_resonance_stability():
    # the stable quotient must not lose the peak for small eps
    spec = MirrorSpec(1e-3)
    p = transmission_probability(math.pi / 2.0, spec)
    assert p == pytest.approx(1.0, abs=1e-12)
    just_off = transmission_probability(math.pi / 2.0 + 1e-6, spec)
    assert 0.0 < just_off < 1.0
