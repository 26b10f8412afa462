"""Finite-bandwidth two-photon inputs and their output-time correlations.

A spectral amplitude zeta(x) on a uniform phase grid (x = omega t0, with all
times below in units of t0) is pushed through the cavity channel C in {T, R}
by the inverse transform

    zeta^C(t) = (1/sqrt(2 pi)) int dx e^{-i x t} C_fp(x) zeta(x),

evaluated by trapezoidal quadrature; unitarity of the coefficient pair makes
the two output envelopes share the input's unit energy (Parseval). The joint
detection density for a separable pair is

    G2(t, t+tau) = |zeta0^T(t) zeta1^T(t+tau) + zeta0^R(t+tau) zeta1^R(t)|^2

and for a general joint amplitude zeta(x, x')

    G2(t, t+tau) = |(1/2pi) int int dx dx' zeta(x, x')
                     (T(x) T(x') e^{-i x t - i x' (t+tau)}
                      + R(x) R(x') e^{-i x' t - i x (t+tau)})|^2,

whose reflection term carries the swapped time assignment; on separable input
this reduces exactly to the product form above. The time-integrated trace is
G2(tau) = int G2(t, t+tau) dt.

Output envelopes are bounce trains: each cavity round trip adds a copy of the
input envelope delayed by 2 and attenuated by 1 - eps^2, so time grids must
cover the ring-down, not just the input packet; suggest_time_grid sizes this.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .fp_core import DomainError, MirrorSpec, fp_reflection, fp_transmission

_trapz = getattr(np, "trapezoid", None) or np.trapz

GRID_CELL_CAP = 4096 * 4096
_CHUNK = 512


class AliasingError(ValueError):
    """Time grid too coarse for the spectral content."""


class GridCoverageError(ValueError):
    """Grid does not cover the packet support."""


class GridCapError(ValueError):
    """Requested product grid exceeds the size cap."""


def _uniform_spacing(grid, name):
    arr = np.asarray(grid, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise DomainError(f"{name} must be a 1-D grid with at least two samples")
    steps = np.diff(arr)
    if steps[0] <= 0.0 or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise DomainError(f"{name} must be uniform and strictly increasing")
    return arr, float(steps[0])


@dataclass(frozen=True)
class SpectralAmplitude:
    """Single-photon spectral amplitude on a uniform phase grid."""

    grid: np.ndarray
    values: np.ndarray
    label: str = "signal"

    def __post_init__(self):
        if self.label not in ("signal", "idler"):
            raise DomainError(f"label must be 'signal' or 'idler', got {self.label!r}")
        grid, _ = _uniform_spacing(self.grid, "frequency grid")
        if np.asarray(self.values).shape != grid.shape:
            raise DomainError("values and grid shapes differ")

    @property
    def spacing(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def norm(self) -> float:
        """Discrete normalization sum |zeta|^2 dx."""
        return float(np.sum(np.abs(self.values) ** 2) * self.spacing)

    def normalized(self) -> "SpectralAmplitude":
        n = self.norm()
        if n == 0.0:
            raise DomainError("cannot normalize an identically zero amplitude")
        return SpectralAmplitude(self.grid, self.values / math.sqrt(n), self.label)


@dataclass(frozen=True)
class BiphotonAmplitude:
    """Joint spectral amplitude: separable factor pair or a full 2-D table."""

    factors: tuple = None
    grid_s: np.ndarray = None
    grid_i: np.ndarray = None
    values: np.ndarray = None

    @classmethod
    def separable(cls, zeta0: SpectralAmplitude, zeta1: SpectralAmplitude):
        return cls(factors=(zeta0, zeta1))

    @classmethod
    def from_table(cls, grid_s, grid_i, values):
        gs, dxs = _uniform_spacing(grid_s, "signal grid")
        gi, dxi = _uniform_spacing(grid_i, "idler grid")
        vals = np.asarray(values, dtype=complex)
        if vals.shape != (gs.size, gi.size):
            raise DomainError("table shape must be (len(grid_s), len(grid_i))")
        total = np.sum(np.abs(vals) ** 2) * dxs * dxi
        if total == 0.0:
            raise DomainError("cannot normalize an identically zero amplitude")
        return cls(grid_s=gs, grid_i=gi, values=vals / math.sqrt(total))

    def is_separable(self) -> bool:
        return self.factors is not None

    def as_table(self):
        """(grid_s, grid_i, values) view, outer product for separable input."""
        if self.is_separable():
            z0, z1 = self.factors
            return z0.grid, z1.grid, np.outer(z0.values, z1.values)
        return self.grid_s, self.grid_i, self.values


@dataclass(frozen=True)
class TemporalEnvelope:
    """Filtered time-domain envelope of factor m in channel 'T' or 'R'."""

    t_grid: np.ndarray
    values: np.ndarray
    channel: str
    m: int

    def energy(self) -> float:
        dt = float(self.t_grid[1] - self.t_grid[0])
        return float(np.sum(np.abs(self.values) ** 2) * dt)


@dataclass(frozen=True)
class G2Surface:
    """G2(t, t+tau) samples; rows follow t_grid, columns tau_grid."""

    t_grid: np.ndarray
    tau_grid: np.ndarray
    values: np.ndarray


def make_gaussian(center_x: float, sigma_x: float, grid_spec, label: str = "signal") -> SpectralAmplitude:
    """Normalized Gaussian amplitude exp(-(x - center)^2 / (4 sigma^2)) on the grid.

    grid_spec is either an explicit uniform grid or a (x_min, x_max, n) tuple.
    The grid must cover center +- 6 sigma; +- 8 sigma is the recommended span.
    """
    if not (math.isfinite(sigma_x) and sigma_x > 0.0):
        raise DomainError(f"sigma_x must be positive, got {sigma_x!r}")
    if isinstance(grid_spec, tuple) and len(grid_spec) == 3:
        x_min, x_max, n = grid_spec
        grid = np.linspace(float(x_min), float(x_max), int(n))
    else:
        grid = np.asarray(grid_spec, dtype=float)
    grid, _ = _uniform_spacing(grid, "frequency grid")
    if grid[0] > center_x - 6.0 * sigma_x or grid[-1] < center_x + 6.0 * sigma_x:
        raise GridCoverageError(
            f"grid [{grid[0]:g}, {grid[-1]:g}] narrower than center +- 6 sigma "
            f"({center_x:g} +- {6.0 * sigma_x:g})"
        )
    values = np.exp(-((grid - center_x) ** 2) / (4.0 * sigma_x * sigma_x)).astype(complex)
    return SpectralAmplitude(grid, values, label).normalized()


def make_ridge(
    center_s: float,
    center_i: float,
    sigma_sum: float,
    sigma_diff: float,
    grid_s,
    grid_i,
) -> BiphotonAmplitude:
    """Normalized pump-locked joint Gaussian, narrow along x_s + x_i.

    zeta ~ exp(-(x_s + x_i - S)^2 / (4 sigma_sum^2)) *
           exp(-(x_s - x_i - D)^2 / (4 sigma_diff^2))
    with S, D fixed by the two centers. Rejects grids that visibly clip the
    ridge (boundary magnitude above 1e-8 of peak).
    """
    if sigma_sum <= 0.0 or sigma_diff <= 0.0:
        raise DomainError("ridge widths must be positive")
    gs, _ = _uniform_spacing(grid_s, "signal grid")
    gi, _ = _uniform_spacing(grid_i, "idler grid")
    s0 = center_s + center_i
    d0 = center_s - center_i
    xs = gs[:, None]
    xi = gi[None, :]
    raw = np.exp(
        -((xs + xi - s0) ** 2) / (4.0 * sigma_sum * sigma_sum)
        - ((xs - xi - d0) ** 2) / (4.0 * sigma_diff * sigma_diff)
    )
    peak = float(raw.max())
    edge = max(raw[0, :].max(), raw[-1, :].max(), raw[:, 0].max(), raw[:, -1].max())
    if peak == 0.0 or edge > 1e-8 * peak:
        raise GridCoverageError("grids clip the joint amplitude (boundary above 1e-8 of peak)")
    return BiphotonAmplitude.from_table(gs, gi, raw)


def _fourier_to_time(grid, weighted, t_grid):
    out = np.empty(t_grid.size, dtype=complex)
    for start in range(0, t_grid.size, _CHUNK):
        block = t_grid[start : start + _CHUNK]
        out[start : start + block.size] = np.exp(-1j * np.outer(block, grid)) @ weighted
    return out / math.sqrt(2.0 * math.pi)


def _trapezoid_weights(n: int, dx: float):
    w = np.full(n, dx)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def filtered_envelope(zeta: SpectralAmplitude, channel: str, spec: MirrorSpec, t_grid) -> TemporalEnvelope:
    """Inverse transform of C_fp(x) zeta(x) onto t_grid for channel C.

    Trapezoidal quadrature over the packet's grid; requires the time step to
    resolve the highest phase present, dt <= pi / max|x|.
    """
    if channel not in ("T", "R"):
        raise DomainError(f"channel must be 'T' or 'R', got {channel!r}")
    t_arr, dt = _uniform_spacing(t_grid, "time grid")
    x_top = float(np.max(np.abs(zeta.grid)))
    if x_top > 0.0 and dt > math.pi / x_top * (1.0 + 1e-12):
        raise AliasingError(
            f"time step {dt:g} exceeds the Nyquist limit pi/{x_top:g} = {math.pi / x_top:g}"
        )
    coef = fp_transmission(zeta.grid, spec) if channel == "T" else fp_reflection(zeta.grid, spec)
    weighted = coef * zeta.values * _trapezoid_weights(zeta.grid.size, zeta.spacing)
    values = _fourier_to_time(zeta.grid, weighted, t_arr)
    m = 0 if zeta.label == "signal" else 1
    return TemporalEnvelope(t_grid=t_arr, values=values, channel=channel, m=m)


def _tau_offsets(tau_grid, dt):
    tau = np.asarray(tau_grid, dtype=float)
    if tau.ndim != 1 or tau.size < 1:
        raise DomainError("tau_grid must be a 1-D array")
    if tau.size > 1 and not np.all(np.diff(tau) > 0.0):
        raise DomainError("tau_grid must be strictly increasing")
    k = np.rint(tau / dt).astype(int)
    if np.max(np.abs(tau - k * dt)) > 1e-9 * dt:
        raise DomainError("tau values must be integer multiples of the time step")
    return tau, k


def g2_separable(zeta0, zeta1, spec: MirrorSpec, t_grid, tau_grid) -> G2Surface:
    """Joint detection density for a separable pair on a (t, tau) grid.

    tau samples must sit on the t lattice (integer multiples of dt); the four
    envelopes are evaluated once on the union grid and combined as
    |zeta0^T(t) zeta1^T(t+tau) + zeta0^R(t+tau) zeta1^R(t)|^2.
    """
    for z in (zeta0, zeta1):
        if abs(z.norm() - 1.0) > 1e-6:
            raise DomainError("spectral amplitudes must be normalized")
    t_arr, dt = _uniform_spacing(t_grid, "time grid")
    tau, k = _tau_offsets(tau_grid, dt)
    k_lo = min(int(k.min()), 0)
    k_hi = max(int(k.max()), 0)
    n_t = t_arr.size
    ext = t_arr[0] + dt * np.arange(k_lo, n_t + k_hi)
    base = -k_lo + np.arange(n_t)

    e0t = filtered_envelope(zeta0, "T", spec, ext).values
    e0r = filtered_envelope(zeta0, "R", spec, ext).values
    e1t = filtered_envelope(zeta1, "T", spec, ext).values
    e1r = filtered_envelope(zeta1, "R", spec, ext).values

    shifted = base[:, None] + k[None, :]
    amp = e0t[base][:, None] * e1t[shifted] + e0r[shifted] * e1r[base][:, None]
    return G2Surface(t_grid=t_arr, tau_grid=tau, values=np.abs(amp) ** 2)


def g2_general(zeta: BiphotonAmplitude, spec: MirrorSpec, t: float, tau: float) -> float:
    """One G2(t, t+tau) sample from the full 2-D joint amplitude by quadrature."""
    grid_s, grid_i, table = zeta.as_table()
    if grid_s.size * grid_i.size > GRID_CELL_CAP:
        raise GridCapError(
            f"product grid {grid_s.size} x {grid_i.size} exceeds cap {GRID_CELL_CAP}"
        )
    w_s = _trapezoid_weights(grid_s.size, float(grid_s[1] - grid_s[0]))
    w_i = _trapezoid_weights(grid_i.size, float(grid_i[1] - grid_i[0]))
    t_s = fp_transmission(grid_s, spec)
    r_s = fp_reflection(grid_s, spec)
    t_i = fp_transmission(grid_i, spec)
    r_i = fp_reflection(grid_i, spec)

    early_s = np.exp(-1j * grid_s * t) * w_s
    late_s = np.exp(-1j * grid_s * (t + tau)) * w_s
    early_i = np.exp(-1j * grid_i * t) * w_i
    late_i = np.exp(-1j * grid_i * (t + tau)) * w_i

    term_t = (t_s * early_s) @ table @ (t_i * late_i)
    term_r = (r_s * late_s) @ table @ (r_i * early_i)
    amp = (term_t + term_r) / (2.0 * math.pi)
    return float(abs(amp) ** 2)


def g2_general_surface(zeta: BiphotonAmplitude, spec: MirrorSpec, t_grid, tau_grid) -> G2Surface:
    """Vectorized g2_general over a whole (t, tau) grid.

    Same quadrature as the scalar version, reorganized so the double integral
    is shared across all requested times. tau samples need not sit on the t
    lattice here; only monotonicity is required.
    """
    grid_s, grid_i, table = zeta.as_table()
    if grid_s.size * grid_i.size > GRID_CELL_CAP:
        raise GridCapError(
            f"product grid {grid_s.size} x {grid_i.size} exceeds cap {GRID_CELL_CAP}"
        )
    t_arr, _ = _uniform_spacing(t_grid, "time grid")
    tau = np.asarray(tau_grid, dtype=float)
    if tau.ndim != 1 or tau.size < 1:
        raise DomainError("tau_grid must be a 1-D array")
    if tau.size > 1 and not np.all(np.diff(tau) > 0.0):
        raise DomainError("tau_grid must be strictly increasing")

    w_s = _trapezoid_weights(grid_s.size, float(grid_s[1] - grid_s[0]))
    w_i = _trapezoid_weights(grid_i.size, float(grid_i[1] - grid_i[0]))
    t_s = fp_transmission(grid_s, spec)
    r_s = fp_reflection(grid_s, spec)
    t_i = fp_transmission(grid_i, spec)
    r_i = fp_reflection(grid_i, spec)
    c_tt = (t_s * w_s)[:, None] * table * (t_i * w_i)[None, :]
    c_rr = (r_s * w_s)[:, None] * table * (r_i * w_i)[None, :]

    # Phase factors in tau separate from those in t, so each chunk of t rows
    # costs two modest matmuls instead of one quadrature per (t, tau) pair.
    w_tau_i = np.exp(-1j * np.outer(grid_i, tau))
    w_tau_s = np.exp(-1j * np.outer(grid_s, tau))
    out = np.empty((t_arr.size, tau.size))
    for start in range(0, t_arr.size, _CHUNK):
        block = t_arr[start : start + _CHUNK]
        e_s = np.exp(-1j * np.outer(block, grid_s))
        e_i = np.exp(-1j * np.outer(block, grid_i))
        a_tt = ((e_s @ c_tt) * e_i) @ w_tau_i
        a_rr = ((e_i @ c_rr.T) * e_s) @ w_tau_s
        out[start : start + block.size] = np.abs((a_tt + a_rr) / (2.0 * math.pi)) ** 2
    return G2Surface(t_grid=t_arr, tau_grid=tau, values=out)


def marginal_amplitudes(zeta: BiphotonAmplitude):
    """Per-photon spectral densities of a joint amplitude, as amplitude pairs.

    Returns (signal, idler) SpectralAmplitude objects whose |values|^2 are the
    marginals of |zeta|^2; used for time-grid sizing, not as quantum states.
    """
    grid_s, grid_i, table = zeta.as_table()
    dens = np.abs(table) ** 2
    dxs = float(grid_s[1] - grid_s[0])
    dxi = float(grid_i[1] - grid_i[0])
    z_s = SpectralAmplitude(grid_s, np.sqrt(dens.sum(axis=1) * dxi), "signal")
    z_i = SpectralAmplitude(grid_i, np.sqrt(dens.sum(axis=0) * dxs), "idler")
    return z_s, z_i


def g2_time_integrated(surface: G2Surface):
    """Trace G2(tau) = int G2(t, t+tau) dt over the surface's t grid.

    Warns when the surface carries weight at the first or last t row above
    1e-6 of its peak, which signals truncated support.
    """
    values = surface.values
    peak = float(values.max()) if values.size else 0.0
    if peak > 0.0:
        edge = max(float(values[0].max()), float(values[-1].max()))
        if edge > 1e-6 * peak:
            warnings.warn(
                "G2 support appears truncated: boundary rows above 1e-6 of peak",
                RuntimeWarning,
                stacklevel=2,
            )
    return _trapz(values, x=surface.t_grid, axis=0)


def zero_delay_coincidence(zeta0, zeta1, spec: MirrorSpec, t_grid) -> float:
    """Time-integrated coincidence density at tau = 0 for a separable pair."""
    surface = g2_separable(zeta0, zeta1, spec, t_grid, np.array([0.0]))
    return float(g2_time_integrated(surface)[0])


def suggest_time_grid(zetas, spec: MirrorSpec, dt: float = None, energy_tol: float = 1e-7,
                      sigma_min: float = None):
    """Uniform time grid covering the packets' support plus cavity ring-down.

    The half-width follows the narrowest spectral width (widest time support),
    and the ring-down extends log(energy_tol) / (2 log(1 - eps^2)) round trips
    of 2 t0 each. dt defaults to a quarter of the Nyquist step. Pass sigma_min
    to override the moment-based width, e.g. with the pump-sum bandwidth of a
    joint amplitude, which is narrower than either marginal.
    """
    if isinstance(zetas, SpectralAmplitude):
        zetas = [zetas]
    x_top = 0.0
    sigma_moment = math.inf
    for z in zetas:
        w = np.abs(z.values) ** 2
        total = w.sum()
        if total <= 0.0:
            raise DomainError("cannot size a time grid for zero-bandwidth input")
        w = w / total
        mean = float(np.sum(w * z.grid))
        sigma = math.sqrt(float(np.sum(w * (z.grid - mean) ** 2)))
        sigma_moment = min(sigma_moment, sigma)
        x_top = max(x_top, float(np.max(np.abs(z.grid))))
    if sigma_min is None:
        sigma_min = sigma_moment
    if not (sigma_min > 0.0 and math.isfinite(sigma_min)):
        raise DomainError("cannot size a time grid for zero-bandwidth input")
    t_half = 8.0 / (2.0 * sigma_min)

    e = spec.epsilon
    if e >= 1.0:
        bounces = 0
    else:
        decay = 1.0 - e * e  # energy drops by decay^2 per extra round trip
        if decay <= 0.0 or e == 0.0:
            bounces = 1
        else:
            bounces = math.ceil(math.log(energy_tol) / (2.0 * math.log(decay)))
    ring = 2.0 * bounces + 2.0

    if dt is None:
        dt = math.pi / (4.0 * x_top) if x_top > 0.0 else t_half / 256.0
    start = -(t_half + 2.0)
    stop = t_half + ring + 2.0
    n = int(math.ceil((stop - start) / dt)) + 1
    return start + dt * np.arange(n)
