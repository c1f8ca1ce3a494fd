"""Explicit truncated Fock-space reference for the series engine.

States are stored as full amplitude vectors and every expectation is a direct
matrix-element sum, so the results depend only on ladder-operator algebra and
never on the series resummations they are used to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffTooSmallError, GuardBandError, NonlinearitySingularError
from .moments import FanStateSpec, phase_sum
from .nonlinearity import _chain_signed_log

#: Ample cutoff for |xi| <= 2 at the default tail tolerance.
DEFAULT_N_MAX = 80
DEFAULT_TAIL_TOL = 1e-14


@dataclass(frozen=True)
class TruncatedFockState:
    """Normalized amplitude vector over Fock levels 0..n_max.

    Amplitudes vanish exactly off the 2k level lattice (and on its odd sites,
    where the lobe phases cancel); real input amplitudes give real entries.
    `top_band_fraction` is the share of the norm sitting in the top 10% of
    levels, kept as a truncation diagnostic.
    """

    amplitudes: np.ndarray
    n_max: int
    k: int
    top_band_fraction: float


def _raw_amplitude(xi, level, weight, sign, chain_log):
    # exact factorial plus correctly rounded pow keeps low levels to a few
    # ulp; the log route takes over where the factorial leaves double range
    if level <= 170:
        try:
            den = math.sqrt(float(math.factorial(level))) * math.exp(chain_log)
            num = weight * xi ** level
            if den != 0.0 and not math.isinf(num) and not math.isinf(den):
                v = num / den
                if not math.isinf(v):
                    return sign * v
        except OverflowError:
            pass
    log_amp = (level * math.log(xi) + math.log(weight)
               - 0.5 * math.lgamma(level + 1) - chain_log)
    if log_amp < -745.0:
        return 0.0
    return sign * math.exp(log_amp)


def build_fan_state(spec: FanStateSpec, n_max: int = DEFAULT_N_MAX,
                    tail_tol: float = DEFAULT_TAIL_TOL) -> TruncatedFockState:
    """Materialize the fan state as an explicit normalized amplitude vector.

    Raises CutoffTooSmallError when more than tail_tol of the norm sits in
    the top 10% of levels, and NonlinearitySingularError when a nonlinearity
    chain vanishes on a populated level.
    """
    k = spec.k
    if n_max < 2 * k:
        raise ValueError("n_max must be at least 2k")
    raw = np.zeros(n_max + 1)
    if spec.xi == 0.0:
        raw[0] = 1.0
    else:
        for level in range(0, n_max + 1, 2 * k):
            weight = phase_sum(k, level // (2 * k))
            if weight == 0:
                continue
            sign, chain_log = _chain_signed_log(spec.model, level, k)
            if sign == 0:
                raise NonlinearitySingularError(
                    f"nonlinearity chain vanishes at populated level {level}"
                )
            raw[level] = _raw_amplitude(spec.xi, level, weight, sign, chain_log)
    norm = math.sqrt(math.fsum(v * v for v in raw))
    amps = (raw / norm).astype(complex)
    cut = n_max - max(1, n_max // 10)
    top_band = math.fsum(abs(amps[level]) ** 2 for level in range(cut + 1, n_max + 1))
    if top_band > tail_tol:
        raise CutoffTooSmallError(
            f"top-band norm fraction {top_band:.3e} exceeds {tail_tol:.1e}; "
            f"raise n_max above {n_max}"
        )
    return TruncatedFockState(amplitudes=amps, n_max=n_max, k=k,
                              top_band_fraction=top_band)


def ladder_moment(state: TruncatedFockState, l: int, m: int) -> float:
    """<adag^l a^m> by direct summation of matrix elements.

    Powers are limited to half the cutoff so truncation cannot leak into the
    reported value; the imaginary part must stay below 1e-12 for the real
    states built here.
    """
    if l < 0 or m < 0:
        raise ValueError("ladder powers must be non-negative")
    if 2 * l > state.n_max or 2 * m > state.n_max:
        raise GuardBandError(
            f"powers ({l}, {m}) violate the guard band for n_max={state.n_max}"
        )
    c = state.amplitudes
    re, im = [], []
    top = state.n_max - max(l - m, 0)
    for n in range(m, top + 1):
        b = n + l - m
        cn = c[n]
        cb = c[b]
        if cn == 0.0 or cb == 0.0:
            continue
        # sqrt(n!/(n-m)!) and sqrt(b!/(n-m)!) from exact integer products
        p1 = math.prod(range(n - m + 1, n + 1))
        p2 = math.prod(range(n - m + 1, b + 1))
        z = (cb.conjugate() * cn) * (math.sqrt(float(p1)) * math.sqrt(float(p2)))
        re.append(z.real)
        im.append(z.imag)
    real = math.fsum(re)
    imag = math.fsum(im)
    assert abs(imag) <= 1e-12 * max(1.0, abs(real)), \
        f"imaginary part {imag} leaked into a real-state moment"
    return real


def commutator_expectation(state: TruncatedFockState, n_power: int) -> float:
    """<[a^N, adag^N]> via its normal-ordered expansion over direct moments.

    Strictly positive; equals N! on the vacuum.
    """
    if n_power < 1:
        raise ValueError("n_power must be at least 1")
    parts = []
    for q in range(1, n_power + 1):
        coeff = math.comb(n_power, q) * math.perm(n_power, q)
        parts.append(coeff * ladder_moment(state, n_power - q, n_power - q))
    return math.fsum(parts)
