"""Closed-form response of a lossless symmetric Fabry-Perot cavity.

A single thin mirror with amplitude transmissivity eps acts on a field mode
with the unitary pair

    T = eps,        R = i sqrt(1 - eps^2),

so |T|^2 + |R|^2 = 1 and T R* + T* R = 0. Two such mirrors separated by a
one-way travel time t0 respond, in the dimensionless phase x = omega t0, as

    t_fp(x) = eps^2 e^{ix} / (1 + (1 - eps^2) e^{2ix})
    r_fp(x) = i sqrt(1 - eps^2) (1 + e^{2ix}) / (1 + (1 - eps^2) e^{2ix})

which is again unitary at every x: the cavity is a beam splitter whose ratio
depends on frequency. Transmitted intensity follows the Airy profile

    |t_fp|^2 = 1 / (1 + F^2 cos^2 x),        F = 2 sqrt(1 - eps^2) / eps^2,

computed here in the equivalent form eps^4 / (eps^4 + 4 (1 - eps^2) cos^2 x),
which stays finite as F grows and is exact at eps = 1. The denominator
modulus |1 + (1 - eps^2) e^{2ix}|^2 equals eps^4 + 4 (1 - eps^2) cos^2 x,
so it never vanishes for eps > 0.

The eps = 0 cavity (perfect mirrors) is handled by continuity: t_fp = 0 and
r_fp = i everywhere, including the removable 0/0 at cos x = 0.

All phase arguments accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0  # m/s


class DomainError(ValueError):
    """A physical parameter is outside its admissible range."""


@dataclass(frozen=True)
class MirrorSpec:
    """Single-mirror amplitude transmissivity eps, 0 <= eps <= 1."""

    epsilon: float

    def __post_init__(self):
        e = self.epsilon
        if not (isinstance(e, (int, float)) and math.isfinite(e)):
            raise DomainError(f"mirror transmissivity must be a finite real, got {e!r}")
        if not 0.0 <= e <= 1.0:
            raise DomainError(f"mirror transmissivity must lie in [0, 1], got {e!r}")


@dataclass(frozen=True)
class CavityGeometry:
    """One-way travel time t0 between the mirrors, in seconds.

    The response depends on frequency only through the phase x = omega * t0,
    so this class exists purely to convert between the two. Build it directly
    from t0 or from the mirror spacing with from_length().
    """

    t0: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.t0) and self.t0 > 0.0):
            raise DomainError(f"travel time must be positive, got {self.t0!r}")

    @classmethod
    def from_length(cls, length: float) -> "CavityGeometry":
        if not (math.isfinite(length) and length > 0.0):
            raise DomainError(f"mirror spacing must be positive, got {length!r}")
        return cls(t0=length / SPEED_OF_LIGHT)

    def phase(self, omega):
        """Dimensionless phase x = omega * t0."""
        return omega * self.t0

    def angular_frequency(self, x):
        """Inverse of phase(): omega = x / t0."""
        return x / self.t0


@dataclass(frozen=True)
class FpCoefficients:
    """Transmission/reflection amplitude pair sampled at phase x.

    Fields hold scalars or broadcast arrays. The pair is unitary:
    |t_fp|^2 + |r_fp|^2 = 1 and t_fp r_fp* + t_fp* r_fp = 0.
    """

    x: object
    t_fp: object
    r_fp: object

    @property
    def t_prob(self):
        return np.abs(self.t_fp) ** 2

    @property
    def r_prob(self):
        return np.abs(self.r_fp) ** 2

    def unitarity_error(self) -> float:
        """Worst deviation from the two unitarity identities."""
        norm = np.abs(self.t_fp) ** 2 + np.abs(self.r_fp) ** 2 - 1.0
        cross = self.t_fp * np.conjugate(self.r_fp)
        ortho = 2.0 * np.real(cross)
        return float(max(np.max(np.abs(norm)), np.max(np.abs(ortho))))


def mirror_coefficients(spec: MirrorSpec):
    """Field coefficients (T, R) of one mirror: T = eps, R = i sqrt(1 - eps^2)."""
    e = spec.epsilon
    return complex(e), 1j * math.sqrt(1.0 - e * e)


def _t_amp(eps, x):
    # broadcasting kernel shared with the sweep paths; eps may be an array
    eps = np.asarray(eps, dtype=float)
    x = np.asarray(x, dtype=float)
    z = np.exp(1j * x)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = eps * eps * z / (1.0 + (1.0 - eps * eps) * z * z)
    # eps = 0 rows hit 0/0 at cos x = 0; the limit is 0 everywhere
    return np.where(eps == 0.0, 0.0 + 0.0j, t)


def _r_amp(eps, x):
    eps = np.asarray(eps, dtype=float)
    x = np.asarray(x, dtype=float)
    z2 = np.exp(2j * x)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = 1j * np.sqrt(1.0 - eps * eps) * (1.0 + z2) / (1.0 + (1.0 - eps * eps) * z2)
    # removable 0/0 for the perfect mirror: r_fp = i identically
    return np.where(eps == 0.0, 1j, r)


def fp_transmission(x, spec: MirrorSpec):
    """Cavity transmission amplitude t_fp at phase x (scalar or array)."""
    t = _t_amp(spec.epsilon, x)
    return complex(t) if np.ndim(x) == 0 else t


def fp_reflection(x, spec: MirrorSpec):
    """Cavity reflection amplitude r_fp at phase x (scalar or array)."""
    r = _r_amp(spec.epsilon, x)
    return complex(r) if np.ndim(x) == 0 else r


def cavity_coefficients(x, spec: MirrorSpec) -> FpCoefficients:
    """Bundle t_fp and r_fp at the given phases."""
    return FpCoefficients(x=x, t_fp=fp_transmission(x, spec), r_fp=fp_reflection(x, spec))


def _t_prob(eps, x):
    eps = np.asarray(eps, dtype=float)
    x = np.asarray(x, dtype=float)
    e2 = eps * eps
    c2 = np.cos(x) ** 2
    num = e2 * e2
    with np.errstate(divide="ignore", invalid="ignore"):
        p = num / (num + 4.0 * (1.0 - e2) * c2)
    # eps = 0 transmits nothing; value 0 also at cos x = 0 by the limit convention
    return np.where(eps == 0.0, 0.0, p)


def transmission_probability(x, spec: MirrorSpec):
    """Airy transmitted intensity |t_fp|^2 = 1 / (1 + F^2 cos^2 x)."""
    p = _t_prob(spec.epsilon, x)
    return float(p) if np.ndim(x) == 0 else p


def reflection_probability(x, spec: MirrorSpec):
    """Reflected intensity F^2 cos^2 x / (1 + F^2 cos^2 x), complement of transmission."""
    eps = spec.epsilon
    x_arr = np.asarray(x, dtype=float)
    e2 = eps * eps
    c2 = np.cos(x_arr) ** 2
    num = 4.0 * (1.0 - e2) * c2
    with np.errstate(divide="ignore", invalid="ignore"):
        p = num / (e2 * e2 + num)
    p = np.where(eps == 0.0, 1.0, p)
    return float(p) if np.ndim(x) == 0 else p


def finesse(spec: MirrorSpec) -> float:
    """Airy contrast parameter F = 2 sqrt(1 - eps^2) / eps^2.

    This is the sharpness constant appearing in the intensity profile above,
    not the conventional spectroscopic finesse pi sqrt(R) / (1 - R).
    Diverges at eps = 0, which is rejected; callers needing that limit use
    the probability functions' conventions instead.
    """
    e = spec.epsilon
    if e == 0.0:
        raise DomainError("finesse diverges for a perfectly reflecting mirror (eps = 0)")
    return 2.0 * math.sqrt(1.0 - e * e) / (e * e)
