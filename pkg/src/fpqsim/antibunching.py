"""Coincidence zeros of the cavity beam splitter.

Two photons of the same color entering opposite ports coincide at the outputs
with amplitude c_hom = t_fp^2 + r_fp^2, which vanishes exactly when

    cos^2 x = eps^4 / (4 (1 - eps^2)),

solvable while eps <= eps0 = sqrt(2 (sqrt(2) - 1)) ~ 0.9101797. Distinct
signal/idler colors generalize the zero to the curve

    cos x_s cos x_i = eps^4 / (4 (1 - eps^2)),

and a monochromatic pump at x_p = x_s + x_i restricts that curve to the roots
of a quadratic in tan x_s, solved here in closed form.

At either degenerate root the coefficient pair is balanced, |t_fp| = |r_fp| =
1 / sqrt(2), with r_fp = +i t_fp at x_+ and r_fp = -i t_fp at x_-; the values
themselves drift with eps and approach (1 + i)/2 and (-1 + i)/2 only in the
small-eps limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fp_core import (
    DomainError,
    FpCoefficients,
    MirrorSpec,
    _r_amp,
    _t_amp,
    cavity_coefficients,
)


@dataclass(frozen=True)
class HomResult:
    """Coincidence amplitude and probability for one frequency pair."""

    c_hom: object
    p_hom: object
    x_s: object
    x_i: object


@dataclass(frozen=True)
class SpdcSolution:
    """Pump-constrained zero-curve roots.

    alpha_p = cos x_p, beta_eps = eps^4 / (2 (1 - eps^2)); roots are signal
    phases in [0, pi), ascending, with x_i = x_p - x_s implied. feasible
    mirrors the exact bound beta_eps - 1 <= alpha_p (the other bound
    alpha_p <= beta_eps + 1 always holds).
    """

    alpha_p: float
    beta_eps: float
    roots: tuple
    feasible: bool


@dataclass(frozen=True)
class SweepGrid:
    """p_hom sampled on a product grid with a sub-threshold mask."""

    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray
    threshold: float
    mask: np.ndarray = field(repr=False)

    def masked_points(self):
        """(axis1, axis2, p_hom) rows of every sub-threshold cell, row-major."""
        ii, jj = np.nonzero(self.mask)
        return np.column_stack([self.axis1[ii], self.axis2[jj], self.values[ii, jj]])


def epsilon_threshold() -> float:
    """Largest transmissivity that still admits a degenerate coincidence zero."""
    return math.sqrt(2.0 * (math.sqrt(2.0) - 1.0))


def hom_amplitude_degenerate(x, spec: MirrorSpec) -> HomResult:
    """Coincidence amplitude c_hom = t_fp^2 + r_fp^2 for same-color photons."""
    t = _t_amp(spec.epsilon, x)
    r = _r_amp(spec.epsilon, x)
    c = t * t + r * r
    p = np.abs(c) ** 2
    if np.ndim(x) == 0:
        return HomResult(c_hom=complex(c), p_hom=float(p), x_s=x, x_i=x)
    return HomResult(c_hom=c, p_hom=p, x_s=x, x_i=x)


def hom_amplitude_two_color(x_s, x_i, spec: MirrorSpec) -> HomResult:
    """c_hom = t_fp(x_s) t_fp(x_i) + r_fp(x_s) r_fp(x_i); symmetric in its arguments."""
    e = spec.epsilon
    c = _t_amp(e, x_s) * _t_amp(e, x_i) + _r_amp(e, x_s) * _r_amp(e, x_i)
    p = np.abs(c) ** 2
    if np.ndim(x_s) == 0 and np.ndim(x_i) == 0:
        return HomResult(c_hom=complex(c), p_hom=float(p), x_s=x_s, x_i=x_i)
    return HomResult(c_hom=c, p_hom=p, x_s=x_s, x_i=x_i)


def solve_degenerate_zero(spec: MirrorSpec):
    """Both phases in [0, pi] where same-color photons never coincide, or None.

    Roots x_+- = arccos(+-eps^2 / (2 sqrt(1 - eps^2))) exist for
    0 < eps <= eps0; at the threshold the arccos argument reaches 1 and the
    pair degenerates to (0, pi). For eps = 0 the formal root x = pi/2 lands on
    the removable singularity of the closed forms and is not a zero (p_hom = 1
    there), so None is returned.
    """
    e = spec.epsilon
    if e == 0.0 or e > epsilon_threshold():
        return None
    arg = e * e / (2.0 * math.sqrt(1.0 - e * e))
    arg = min(arg, 1.0)  # guards the half-ulp overshoot exactly at eps0
    return (math.acos(arg), math.acos(-arg))


def coefficients_at_zero(spec: MirrorSpec):
    """Coefficient pairs at the two degenerate-zero phases.

    At either root the splitter is balanced: |t_fp| = |r_fp| = 1/sqrt(2) and
    r_fp = +i t_fp at x_+, r_fp = -i t_fp at x_-. In closed form, with
    z = e^{i x_+}, t_fp(x_+) = (sqrt(1 - eps^2) + z) / 2, so the values are
    eps-dependent and tend to (1+i)/2 and (-1+i)/2 as eps -> 0.
    """
    roots = solve_degenerate_zero(spec)
    if roots is None:
        raise DomainError(
            f"no degenerate coincidence zero for eps = {spec.epsilon!r} "
            f"(threshold {epsilon_threshold():.10f}, eps = 0 excluded)"
        )
    x_plus, x_minus = roots
    return cavity_coefficients(x_plus, spec), cavity_coefficients(x_minus, spec)


def _validated_grid(grid, name):
    arr = np.asarray(grid, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise DomainError(f"{name} must be a 1-D grid")
    if arr.size > 1 and not np.all(np.diff(arr) > 0.0):
        raise DomainError(f"{name} must be strictly increasing")
    return arr


def _validated_threshold(threshold):
    t = float(threshold)
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"threshold must be positive and finite, got {threshold!r}")
    return t


def sweep_degenerate(eps_grid, x_grid, threshold: float) -> SweepGrid:
    """p_hom over an (eps, x) product grid with mask = values < threshold."""
    eps = _validated_grid(eps_grid, "eps_grid")
    x = _validated_grid(x_grid, "x_grid")
    thr = _validated_threshold(threshold)
    t = _t_amp(eps[:, None], x[None, :])
    r = _r_amp(eps[:, None], x[None, :])
    c = t * t + r * r
    values = np.abs(c) ** 2
    return SweepGrid(axis1=eps, axis2=x, values=values, threshold=thr, mask=values < thr)


def sweep_two_color(x_s_grid, x_i_grid, spec: MirrorSpec, threshold: float) -> SweepGrid:
    """p_hom over an (x_s, x_i) product grid at fixed eps.

    When both grids are the same, each unordered pair is evaluated once and
    mirrored, so the values matrix and mask come out exactly symmetric (the
    two orders of a complex product can differ by an ulp under fused
    multiply-add, which would be enough to split mask cells at the threshold).
    """
    xs = _validated_grid(x_s_grid, "x_s_grid")
    xi = _validated_grid(x_i_grid, "x_i_grid")
    thr = _validated_threshold(threshold)
    e = spec.epsilon
    t_s, r_s = _t_amp(e, xs), _r_amp(e, xs)
    t_i, r_i = _t_amp(e, xi), _r_amp(e, xi)
    c = t_s[:, None] * t_i[None, :] + r_s[:, None] * r_i[None, :]
    values = np.abs(c) ** 2
    if xs.size == xi.size and np.array_equal(xs, xi):
        values = np.triu(values) + np.triu(values, 1).T
    return SweepGrid(axis1=xs, axis2=xi, values=values, threshold=thr, mask=values < thr)


def _tan_root_to_cell(v: float) -> float:
    # principal arctangent, shifted into [0, pi)
    a = math.atan(v)
    return a if a >= 0.0 else a + math.pi


def solve_spdc(x_p: float, spec: MirrorSpec) -> SpdcSolution:
    """Zero-curve roots compatible with a monochromatic pump, x_s + x_i = x_p.

    Substituting x_i = x_p - x_s into cos x_s cos x_i = eps^4 / (4 (1-eps^2))
    and dividing by cos^2 x_s yields

        beta tan^2 x_s - 2 sin(x_p) tan x_s + beta - 2 alpha = 0,

    alpha = cos x_p, beta = eps^4 / (2 (1 - eps^2)). The discriminant
    simplifies to 1 - (alpha - beta)^2, so real roots exist exactly on the
    feasible side beta - 1 <= alpha; that inequality alone decides whether
    roots are reported, keeping the flag and the root list consistent at the
    tangency edge. Roots are extracted with the q-form of the quadratic
    formula (no cancellation for small beta) and reported ascending in
    [0, pi); a pair that lands within 1e-12 in angle collapses to a single
    double root.
    """
    e = spec.epsilon
    if not 0.0 < e < 1.0:
        raise DomainError(f"pump-constrained solve needs 0 < eps < 1, got {e!r}")
    alpha = math.cos(x_p)
    s_p = math.sin(x_p)
    beta = e ** 4 / (2.0 * (1.0 - e * e))
    feasible = beta - 1.0 <= alpha
    if not feasible:
        return SpdcSolution(alpha_p=alpha, beta_eps=beta, roots=(), feasible=False)

    d = alpha - beta
    # on the feasible side 1 + d >= 0 is exact (the near-cancellation
    # subtraction is itself exact), so the product below never rounds negative
    disc = (1.0 - d) * (1.0 + d)
    if disc < 0.0:
        disc = 0.0

    if beta == 0.0:
        # quadratic degenerates (underflowed eps^4); the surviving root solves
        # -2 sin(x_p) tan x_s - 2 alpha = 0, the other escapes to cos x_s = 0
        root = math.pi / 2.0 if s_p == 0.0 else _tan_root_to_cell(-alpha / s_p)
        return SpdcSolution(alpha_p=alpha, beta_eps=beta, roots=(root,), feasible=feasible)

    sq = math.sqrt(disc)
    q = s_p + math.copysign(sq, s_p) if s_p != 0.0 else sq
    if q == 0.0:
        # s_p = 0 and disc = 0: double root at tan x_s = 0
        return SpdcSolution(alpha_p=alpha, beta_eps=beta, roots=(0.0,), feasible=feasible)
    pair = sorted((_tan_root_to_cell(q / beta), _tan_root_to_cell((beta - 2.0 * alpha) / q)))
    roots = (pair[0],) if pair[1] - pair[0] < 1e-12 else tuple(pair)
    return SpdcSolution(alpha_p=alpha, beta_eps=beta, roots=roots, feasible=feasible)


def spdc_residual(x_s: float, x_p: float, spec: MirrorSpec) -> float:
    """Absolute defect of a candidate root in the pump-constrained zero condition."""
    e = spec.epsilon
    rhs = e ** 4 / (4.0 * (1.0 - e * e))
    return abs(math.cos(x_s) * math.cos(x_p - x_s) - rhs)
