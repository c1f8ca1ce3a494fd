"""Series evaluation of fan-state normalization and ladder moments.

The fan state lives on Fock levels that are multiples of 2k, and half of
those drop out because the 2k lobe phases cancel on odd lattice sites.  Its
normally ordered moments therefore reduce to rapidly converging single series
over the surviving levels, which this module sums directly.  The explicit
Fock-vector reference in `fansqueeze.fock` provides an independent route to
the same numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NonConvergenceError, NonlinearitySingularError
from .nonlinearity import UNITY, NonlinearityModel, Unity, _chain_signed_log


@dataclass(frozen=True)
class FanStateSpec:
    """State configuration: fan order k, non-negative real amplitude xi, and
    the nonlinearity model.

    `phase` records the argument of an originally complex amplitude after it
    has been rotated onto the positive real axis; all moment arithmetic is
    done in that rotated frame.
    """

    k: int
    xi: float
    model: NonlinearityModel = UNITY
    phase: float = 0.0

    def __post_init__(self):
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValueError("k must be a positive integer")
        if not (math.isfinite(self.xi) and self.xi >= 0.0):
            raise ValueError("xi must be finite and non-negative")

    @classmethod
    def from_complex(cls, xi: complex, k: int,
                     model: NonlinearityModel = UNITY) -> "FanStateSpec":
        """Rotate a complex amplitude to the real axis, recording the phase."""
        z = complex(xi)
        return cls(k=k, xi=abs(z), model=model,
                   phase=cmath.phase(z) if z != 0 else 0.0)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation control: hard index cutoff, relative tail tolerance, and
    the number of consecutive small terms required before stopping.

    A streak is required because the series skips parity-forbidden terms, so
    a single small term is not evidence of a settled tail.
    """

    n_max: int = 400
    rel_tol: float = 1e-15
    consecutive_small: int = 3

    def __post_init__(self):
        if self.n_max < 4:
            raise ValueError("n_max must be at least 4")
        if not (0.0 < self.rel_tol < 1.0):
            raise ValueError("rel_tol must lie in (0, 1)")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be positive")


_DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class MomentValue:
    """A single expectation value with convergence metadata."""

    value: float
    terms_used: int
    converged: bool
    last_term_ratio: float


_EXACT_ZERO = MomentValue(0.0, 0, True, 0.0)


def phase_sum(k: int, m: int) -> int:
    """Sum of the 2k lobe phase factors exp(i pi n m) over n = 0..2k-1.

    All factors are +1 for even m and cancel pairwise for odd m, so the
    result is exactly 2k or 0 (and is defined for negative m as well).
    """
    return 2 * k if m % 2 == 0 else 0


def _series_term(xi, level, fact_arg, chain_log, sign, scale):
    # Plain floats first: the exact small factorial and correctly rounded pow
    # keep each term to a few ulp.  Switch to log arithmetic once any factor
    # leaves double range (large levels or extreme chains).
    if fact_arg <= 170:
        try:
            num = scale * xi ** (2 * level)
            den = float(math.factorial(fact_arg)) * math.exp(chain_log)
            if den != 0.0 and not math.isinf(num) and not math.isinf(den):
                t = num / den
                if not math.isinf(t):
                    return sign * t
        except OverflowError:
            pass
    if xi == 0.0:
        return scale if level == 0 else 0.0
    log_t = 2 * level * math.log(xi) - math.lgamma(fact_arg + 1) - chain_log
    if log_t > 700.0:
        return sign * math.inf
    return sign * scale * math.exp(log_t)


def _sum_even_terms(spec: FanStateSpec, l: int, m: int, ctrl: SeriesControl):
    """Sum over the even series index (n = 2j) of the general moment series,
    without the xi^(l-m) / D prefactor.

    Returns (value, terms_used, last_term_ratio).  Terms carry the signs of
    the two nonlinearity chains; magnitudes are factorially suppressed.
    """
    k = spec.k
    xi = spec.xi
    scale = float(4 * k * k)
    j_min = -(-m // (4 * k))  # smallest j with 4kj >= m
    terms = []
    running = 0.0
    streak = 0
    ratio = math.inf
    for j in range(j_min, ctrl.n_max // 2 + 1):
        level = 4 * k * j
        bra = level + l - m
        s1, g1 = _chain_signed_log(spec.model, level, k)
        s2, g2 = _chain_signed_log(spec.model, bra, k)
        if s1 == 0 or s2 == 0:
            bad = level if s1 == 0 else bra
            raise NonlinearitySingularError(
                f"nonlinearity chain vanishes at level {bad}"
            )
        t = _series_term(xi, level, level - m, g1 + g2, s1 * s2, scale)
        terms.append(t)
        running += t
        if running != 0.0:
            ratio = abs(t) / abs(running)
        else:
            ratio = 0.0 if t == 0.0 else math.inf
        if ratio <= ctrl.rel_tol:
            streak += 1
            if streak >= ctrl.consecutive_small:
                return math.fsum(terms), len(terms), ratio
        else:
            streak = 0
    raise NonConvergenceError(
        f"series for <adag^{l} a^{m}> (k={k}, xi={xi}) did not settle "
        f"within n_max={ctrl.n_max}"
    )


def norm_constant(spec: FanStateSpec, ctrl: SeriesControl | None = None) -> MomentValue:
    """Squared norm of the bare 2k-lobe superposition (the fan normalization
    constant).  Strictly positive; equals 4k^2 at xi = 0."""
    ctrl = ctrl or _DEFAULT_CONTROL
    value, terms, ratio = _sum_even_terms(spec, 0, 0, ctrl)
    return MomentValue(value=value, terms_used=terms, converged=True,
                       last_term_ratio=ratio)


def moment(spec: FanStateSpec, l: int, m: int,
           ctrl: SeriesControl | None = None) -> MomentValue:
    """Normally ordered expectation <adag^l a^m> on the fan state.

    Exactly zero when l - m is not a multiple of 2k, and also when the
    lattice offset (l - m) / 2k is odd, where the lobe phases cancel term by
    term.  Symmetric under l <-> m for the real amplitudes used here.
    """
    if l < 0 or m < 0:
        raise ValueError("ladder powers must be non-negative")
    ctrl = ctrl or _DEFAULT_CONTROL
    two_k = 2 * spec.k
    if (l - m) % two_k != 0:
        return _EXACT_ZERO
    if ((l - m) // two_k) % 2 != 0:
        return _EXACT_ZERO
    if spec.xi == 0.0:
        return MomentValue(1.0 if l == 0 and m == 0 else 0.0, 0, True, 0.0)
    num, terms, ratio = _sum_even_terms(spec, l, m, ctrl)
    if num == 0.0:
        # every term underflowed; the xi^(l-m) prefactor may be huge for
        # l < m but the product is still zero
        return MomentValue(0.0, terms, True, ratio)
    den = norm_constant(spec, ctrl)
    value = spec.xi ** (l - m) * (num / den.value)
    return MomentValue(value=value, terms_used=terms, converged=True,
                       last_term_ratio=ratio)


UNITY_MOMENT_KINDS = ("a_n", "a_2n", "adag_n_a_n")


def _unity_tail_sum(xi: float, k: int, power: int, ctrl: SeriesControl):
    """Sum of 4k^2 xi^(8kj) / (4kj - power)! over j with 4kj >= power.

    Deliberately coded apart from the general engine so the two routes can
    cross-check each other on the unity model.
    """
    scale = float(4 * k * k)
    j_min = -(-power // (4 * k))
    terms = []
    running = 0.0
    streak = 0
    ratio = math.inf
    for j in range(j_min, ctrl.n_max // 2 + 1):
        arg = 4 * k * j - power
        if arg <= 170:
            try:
                t = scale * xi ** (8 * k * j) / float(math.factorial(arg))
            except OverflowError:
                t = scale * math.exp(8 * k * j * math.log(xi) - math.lgamma(arg + 1))
        else:
            log_t = 8 * k * j * math.log(xi) - math.lgamma(arg + 1)
            t = scale * math.exp(log_t) if log_t < 700.0 else math.inf
        terms.append(t)
        running += t
        if running != 0.0:
            ratio = t / running
        else:
            ratio = 0.0 if t == 0.0 else math.inf
        if ratio <= ctrl.rel_tol:
            streak += 1
            if streak >= ctrl.consecutive_small:
                return math.fsum(terms), len(terms), ratio
        else:
            streak = 0
    raise NonConvergenceError(
        f"unity series (k={k}, xi={xi}, power={power}) did not settle "
        f"within n_max={ctrl.n_max}"
    )


def moment_unity(spec: FanStateSpec, kind: str, n_power: int,
                 ctrl: SeriesControl | None = None) -> MomentValue:
    """Specialized f = 1 series for <a^N> ("a_n"), <a^(2N)> ("a_2n") and
    <adag^N a^N> ("adag_n_a_n").

    A fast path and an independent cross-check of `moment`; only valid on the
    unity model.
    """
    if not isinstance(spec.model, Unity):
        raise ValueError("the unity fast path requires the unity model")
    if n_power < 1:
        raise ValueError("n_power must be at least 1")
    if kind not in UNITY_MOMENT_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    ctrl = ctrl or _DEFAULT_CONTROL
    two_k = 2 * spec.k
    xi = spec.xi
    if kind in ("a_n", "a_2n"):
        power = n_power if kind == "a_n" else 2 * n_power
        if power % two_k != 0:
            return _EXACT_ZERO
        if (power // two_k) % 2 != 0:
            return _EXACT_ZERO
        if xi == 0.0:
            return MomentValue(0.0, 0, True, 0.0)
        value, terms, ratio = _unity_tail_sum(xi, spec.k, power, ctrl)
        if value == 0.0:
            return MomentValue(0.0, terms, True, ratio)
        den = norm_constant(spec, ctrl)
        return MomentValue(xi ** (-power) * value / den.value, terms, True, ratio)
    if xi == 0.0:
        return MomentValue(0.0, 0, True, 0.0)
    value, terms, ratio = _unity_tail_sum(xi, spec.k, n_power, ctrl)
    den = norm_constant(spec, ctrl)
    return MomentValue(value / den.value, terms, True, ratio)
