"""Brute-force counterparts to the closed-form cavity response.

Nothing here uses the summed formulas of fp_core beyond comparing against
them. Three independent routes:

* bounce_series adds up the ray picture term by term; every extra round trip
  inside the cavity multiplies the amplitude by R^2 e^{2ix}.
* loop_reduction_check collapses the same ray graph with the loop factor
  1 / (1 - R^2 e^{2ix}) attached to the internal cycle.
* the Fock builders apply the splitter transformation to explicit two-photon
  inputs and keep every output monomial, so state normalization and the
  coincidence amplitude fall out of raw bookkeeping instead of trig identities.

Amplitudes of a_T^dag^n a_R^dag^m |0> are stored as plain monomial
coefficients; the Gram weight <0| a^n a^dag^n |0> = n! enters only when a
coefficient is turned into a probability. With that weight the degenerate
output reproduces total probability 4 |t_fp r_fp|^2 + |t_fp^2 + r_fp^2|^2 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fp_core import DomainError, MirrorSpec, fp_reflection, fp_transmission, mirror_coefficients


@dataclass(frozen=True)
class BounceSeries:
    """Truncated ray sums toward t_fp and r_fp with a geometric tail bound."""

    n_terms: int
    partial_t: complex
    partial_r: complex
    tail_bound: float


@dataclass(frozen=True)
class FockState2Mode:
    """Two-photon output amplitudes keyed by occupation (n_T, n_R), n_T + n_R = 2.

    Entries are raw monomial coefficients of a_T^dag^{n_T} a_R^dag^{n_R} |0>.
    """

    amplitudes: dict

    def probability(self, key) -> float:
        n_t, n_r = key
        amp = self.amplitudes.get(key, 0j)
        return abs(amp) ** 2 * math.factorial(n_t) * math.factorial(n_r)

    def total_probability(self) -> float:
        return sum(self.probability(k) for k in self.amplitudes)


@dataclass(frozen=True)
class TwoFrequencyState:
    """Output amplitudes for two photons of distinct colors.

    Keys are (signal channel, idler channel) pairs over {"T", "R"}; the four
    frequency-tagged modes are all distinct, so no occupation weights apply.
    """

    amplitudes: dict

    def total_probability(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def coincidence_amplitude(self) -> complex:
        """Coherent sum of the two one-photon-per-output assignments."""
        return self.amplitudes[("T", "R")] + self.amplitudes[("R", "T")]

    def coincidence_probability(self) -> float:
        return abs(self.coincidence_amplitude()) ** 2


def bounce_series(x: float, spec: MirrorSpec, n_terms: int) -> BounceSeries:
    """Sum the first n_terms ray contributions in each output channel.

    Transmission rays: T^2 e^{ix} (R^2 e^{2ix})^k for k = 0 .. n-1.
    Reflection rays: the direct bounce R, then R T^2 e^{2ix} (R^2 e^{2ix})^k
    for k = 0 .. n-2. Truncation error of either sum is bounded by
    |T|^2 |R|^{2n-1} / (1 - |R|^2).
    """
    if n_terms < 1:
        raise DomainError(f"need at least one ray, got n_terms={n_terms}")
    e = spec.epsilon
    if e == 0.0:
        raise DomainError("bounce series diverges for eps = 0 (|R| = 1)")
    big_t, big_r = mirror_coefficients(spec)
    q = big_r * big_r * complex(np.exp(2j * x))

    acc_t = 0j
    term = 1.0 + 0j
    for _ in range(n_terms):
        acc_t += term
        term *= q
    acc_r = 0j
    term = 1.0 + 0j
    for _ in range(n_terms - 1):
        acc_r += term
        term *= q

    partial_t = big_t * big_t * complex(np.exp(1j * x)) * acc_t
    partial_r = big_r * (1.0 + big_t * big_t * complex(np.exp(2j * x)) * acc_r)

    abs_r = abs(big_r)
    if abs_r == 0.0:
        tail = 0.0
    else:
        tail = abs(big_t) ** 2 * abs_r ** (2 * n_terms - 1) / (1.0 - abs_r * abs_r)
    return BounceSeries(n_terms=n_terms, partial_t=partial_t, partial_r=partial_r, tail_bound=tail)


def loop_reduction_check(x: float, spec: MirrorSpec):
    """Route-sum the cavity graph with a loop factor and return (t, r).

    The internal cycle contributes 1 / (1 - R^2 e^{2ix}) once instead of an
    explicit geometric sum. Transmission route: in, one traversal, out.
    Reflection routes: the direct bounce plus in-loop-out.
    """
    e = spec.epsilon
    if e == 0.0:
        raise DomainError("loop factor is singular for eps = 0")
    big_t, big_r = mirror_coefficients(spec)
    phase1 = complex(np.exp(1j * x))
    phase2 = complex(np.exp(2j * x))
    loop = 1.0 / (1.0 - big_r * big_r * phase2)
    t_route = big_t * big_t * phase1 * loop
    r_route = big_r + big_r * big_t * big_t * phase2 * loop
    return t_route, r_route


def fock_output_degenerate(x: float, spec: MirrorSpec) -> FockState2Mode:
    """Send one photon into each port at the same frequency and expand the output.

    Port bookkeeping: the left input maps to T a_T^dag + R a_R^dag, the right
    one to R a_T^dag + T a_R^dag, with T = t_fp(x), R = r_fp(x).
    """
    t = fp_transmission(x, spec)
    r = fp_reflection(x, spec)
    photon_left = {"T": t, "R": r}
    photon_right = {"T": r, "R": t}
    amps = {(2, 0): 0j, (1, 1): 0j, (0, 2): 0j}
    for mode_a, amp_a in photon_left.items():
        for mode_b, amp_b in photon_right.items():
            n_t = (mode_a == "T") + (mode_b == "T")
            amps[(n_t, 2 - n_t)] += amp_a * amp_b
    return FockState2Mode(amplitudes=amps)


def fock_output_two_color(x_s: float, x_i: float, spec: MirrorSpec) -> TwoFrequencyState:
    """Same expansion with distinguishable signal/idler frequencies.

    Frequency tags keep all four output modes distinct, so the four
    amplitudes are (T,T): t_s r_i, (T,R): t_s t_i, (R,T): r_s r_i,
    (R,R): r_s t_i, and the frequency-blind coincidence amplitude is the
    coherent cross-term sum t_s t_i + r_s r_i. Passing x_s = x_i is allowed
    and useful as a continuity check, but the tags then no longer describe
    distinguishable photons.
    """
    t_s = fp_transmission(x_s, spec)
    r_s = fp_reflection(x_s, spec)
    t_i = fp_transmission(x_i, spec)
    r_i = fp_reflection(x_i, spec)
    signal = {"T": t_s, "R": r_s}
    idler = {"T": r_i, "R": t_i}
    amps = {}
    for mode_s, amp_s in signal.items():
        for mode_i, amp_i in idler.items():
            amps[(mode_s, mode_i)] = amp_s * amp_i
    return TwoFrequencyState(amplitudes=amps)
