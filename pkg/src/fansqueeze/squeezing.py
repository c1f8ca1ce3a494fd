"""Squeezing analysis for fan states.

Builds the power-N quadrature statistics from the series moments: the degree
of squeezing S along a direction phi, the quadrature variance against its
coherent-state reference circle, the two direction families and their
classifier, critical amplitudes, and the closed-form special cases for
(k=1, N=2) and (k=2, N=4).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .errors import BracketError
from .moments import FanStateSpec, SeriesControl, moment
from .nonlinearity import UNITY, NonlinearityModel

PHI1_FAMILY = "phi1-family"
PHI2_FAMILY = "phi2-family"
NO_FAMILY = "none"


@dataclass(frozen=True)
class QuadratureSpec:
    """Power-N quadrature probed along direction phi (radians)."""

    n_power: int
    phi: float

    def __post_init__(self):
        if self.n_power < 1:
            raise ValueError("n_power must be at least 1")


@dataclass(frozen=True)
class SqueezingReport:
    """Everything about one (N, phi) squeezing query.

    The variance satisfies variance = (f_n / 4) (1 + s_value) by
    construction, and s_value never drops below -1.
    """

    s_value: float
    variance: float
    f_n: float
    squeezed: bool
    admissible_power: bool
    direction_set: Tuple[float, ...]
    classification: str


@dataclass(frozen=True)
class VarianceValue:
    """Quadrature variance next to its coherent reference circle f_n / 4."""

    variance: float
    circle: float


@dataclass(frozen=True)
class CriticalAmplitude:
    """Bisection result for the amplitude where squeezing disappears."""

    xi_c: float
    iterations: int
    bracket_lo: float
    bracket_hi: float


@dataclass(frozen=True)
class _MomentBundle:
    n_power: int
    a_n: float
    a_2n: float
    adag_n_a_n: float
    f_n: float


def commutator_expectation(spec: FanStateSpec, n_power: int,
                           ctrl: Optional[SeriesControl] = None) -> float:
    """<[a^N, adag^N]> from the series moments; strictly positive."""
    if n_power < 1:
        raise ValueError("n_power must be at least 1")
    parts = []
    for q in range(1, n_power + 1):
        coeff = math.comb(n_power, q) * math.perm(n_power, q)
        parts.append(coeff * moment(spec, n_power - q, n_power - q, ctrl).value)
    return math.fsum(parts)


def _bundle(spec: FanStateSpec, n_power: int,
            ctrl: Optional[SeriesControl]) -> _MomentBundle:
    return _MomentBundle(
        n_power=n_power,
        a_n=moment(spec, 0, n_power, ctrl).value,
        a_2n=moment(spec, 0, 2 * n_power, ctrl).value,
        adag_n_a_n=moment(spec, n_power, n_power, ctrl).value,
        f_n=commutator_expectation(spec, n_power, ctrl),
    )


def _s_from_bundle(b: _MomentBundle, phi: float) -> float:
    centered = b.adag_n_a_n - b.a_n ** 2
    swing = b.a_2n - b.a_n ** 2
    return 2.0 * (centered + math.cos(2 * b.n_power * phi) * swing) / b.f_n


def _minima_of_bundle(b: _MomentBundle) -> Tuple[float, ...]:
    # S is affine in cos(2N phi), so its minima sit exactly where the cosine
    # hits -1 or +1, depending on the sign of the swing coefficient
    n = b.n_power
    swing = b.a_2n - b.a_n ** 2
    if swing > 0.0:
        return tuple((2 * j + 1) * math.pi / (2 * n) for j in range(n))
    if swing < 0.0:
        return tuple(j * math.pi / n for j in range(n))
    return ()


def _classify_bundle(b: _MomentBundle) -> str:
    sq = b.a_n ** 2
    if b.a_2n > max(sq, b.adag_n_a_n):
        return PHI1_FAMILY
    if b.a_2n < min(sq, 2.0 * sq - b.adag_n_a_n):
        return PHI2_FAMILY
    return NO_FAMILY


def squeezing_degree(spec: FanStateSpec, quad: QuadratureSpec,
                     ctrl: Optional[SeriesControl] = None) -> SqueezingReport:
    """Degree of squeezing S along quad.phi, with the full report.

    S < 0 marks squeezing and S = -1 is the ideal limit.  For powers that are
    not a multiple of 2k the odd-moment parity wipes out the phi dependence
    and S is non-negative.
    """
    b = _bundle(spec, quad.n_power, ctrl)
    s = _s_from_bundle(b, quad.phi)
    return SqueezingReport(
        s_value=s,
        variance=0.25 * b.f_n * (1.0 + s),
        f_n=b.f_n,
        squeezed=s < 0.0,
        admissible_power=quad.n_power % (2 * spec.k) == 0,
        direction_set=_minima_of_bundle(b),
        classification=_classify_bundle(b),
    )


def quadrature_variance(spec: FanStateSpec, quad: QuadratureSpec,
                        ctrl: Optional[SeriesControl] = None) -> VarianceValue:
    """Variance of the power-N quadrature along quad.phi, together with the
    coherent-state circle value f_n / 4 it is compared against."""
    report = squeezing_degree(spec, quad, ctrl)
    return VarianceValue(variance=report.variance, circle=0.25 * report.f_n)


def squeezing_profile(spec: FanStateSpec, n_power: int, phis: Iterable[float],
                      ctrl: Optional[SeriesControl] = None) -> list:
    """S across many directions with the moments computed only once."""
    b = _bundle(spec, n_power, ctrl)
    return [_s_from_bundle(b, phi) for phi in phis]


def direction_sets(k: int) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """The two 2k-member direction families: odd multiples of pi/(4k), and
    multiples of pi/(2k).  The families are rotated by pi/(4k) against each
    other."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    phi1 = tuple((2 * j + 1) * math.pi / (4 * k) for j in range(2 * k))
    phi2 = tuple(j * math.pi / (2 * k) for j in range(2 * k))
    return phi1, phi2


def classify_directions(spec: FanStateSpec, n_power: int,
                        ctrl: Optional[SeriesControl] = None) -> str:
    """Which direction family carries the squeezing, if any.

    "phi1-family" when <a^2N> exceeds both <a^N>^2 and <adag^N a^N>,
    "phi2-family" when <a^2N> lies below both <a^N>^2 and
    2 <a^N>^2 - <adag^N a^N>, and "none" otherwise.
    """
    if n_power % (2 * spec.k) != 0:
        raise ValueError("n_power must be a multiple of 2k")
    return _classify_bundle(_bundle(spec, n_power, ctrl))


def critical_amplitude(k: int, n_power: int,
                       model: NonlinearityModel = UNITY,
                       ctrl: Optional[SeriesControl] = None,
                       tol: float = 1e-6,
                       bracket: Tuple[float, float] = (1e-4, 4.0),
                       bracket_max: float = 8.0) -> CriticalAmplitude:
    """Smallest amplitude where best-direction squeezing stops being negative.

    S depends on phi only through cos(2N phi), so the best direction is read
    off analytically; the crossing is located by a coarse first-crossing scan
    (with geometric bracket expansion up to bracket_max) followed by
    bisection down to tol.
    """
    if n_power % (2 * k) != 0:
        raise ValueError("n_power must be a multiple of 2k")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    lo, hi = bracket
    if not (0.0 < lo < hi <= bracket_max):
        raise ValueError("bracket must satisfy 0 < lo < hi <= bracket_max")

    def best(x: float) -> float:
        b = _bundle(FanStateSpec(k=k, xi=x, model=model), n_power, ctrl)
        centered = b.adag_n_a_n - b.a_n ** 2
        swing = b.a_2n - b.a_n ** 2
        return 2.0 * (centered - abs(swing)) / b.f_n

    def moment_scale(x: float) -> float:
        b = _bundle(FanStateSpec(k=k, xi=x, model=model), n_power, ctrl)
        return 2.0 * (abs(b.adag_n_a_n) + abs(b.a_2n) + b.a_n ** 2) / b.f_n

    # a best value within cancellation noise of the moment scale is an exact
    # zero in disguise (degenerate eigenstate cases), not squeezing
    if best(lo) >= -1e-12 * moment_scale(lo):
        raise BracketError(f"no squeezing just above xi = {lo:g}")
    left = None
    right = None
    prev = lo
    scan_from, scan_to = lo, hi
    while left is None:
        for i in range(1, 65):
            x = scan_from + (scan_to - scan_from) * i / 64.0
            if best(x) >= 0.0:
                left, right = prev, x
                break
            prev = x
        else:
            if scan_to >= bracket_max:
                raise BracketError(
                    f"squeezing persists through xi = {bracket_max:g}"
                )
            scan_from, scan_to = scan_to, min(2.0 * scan_to, bracket_max)
            continue
    iterations = 0
    while right - left > tol:
        mid = 0.5 * (left + right)
        iterations += 1
        if best(mid) < 0.0:
            left = mid
        else:
            right = mid
    return CriticalAmplitude(xi_c=0.5 * (left + right), iterations=iterations,
                             bracket_lo=left, bracket_hi=right)


CLOSED_FORM_VARIANTS = ("k1n2", "k2n4")


def closed_form_squeezing(variant: str, x: float, phi: float) -> float:
    """Closed-form S for the two worked special cases, as a function of
    x = xi^2 and the direction phi.

    "k1n2" is the k=1, N=2 case; "k2n4" is the k=2, N=4 case.  Both use the
    convention in which the normalization block reads cosh x + cos x (k=1)
    and cosh x + cos x + 2 cosh(x/sqrt2) cos(x/sqrt2) (k=2); the series
    engine, which carries an extra factor 2k per lobe sum, is the arbiter of
    these forms and agrees with them (see the conformance tests).
    """
    if x < 0.0:
        raise ValueError("x must be non-negative")
    if variant == "k1n2":
        d1 = math.cosh(x) + math.cos(x)
        num = x * x * (math.cosh(x) - math.cos(x) + d1 * math.cos(4.0 * phi))
        den = 2.0 * x * (math.sinh(x) - math.sin(x)) + d1
        return num / den
    if variant == "k2n4":
        r = x / math.sqrt(2.0)
        d2 = math.cosh(x) + math.cos(x) + 2.0 * math.cosh(r) * math.cos(r)
        e = math.cosh(x) - math.cos(x) - 2.0 * math.sinh(r) * math.sin(r)
        a = 2.0 * x ** 3 * (math.sinh(x) + math.sin(x) - math.sqrt(2.0)
                            * (math.sinh(r) * math.cos(r) + math.sin(r) * math.cosh(r)))
        c = x * (math.sinh(x) - math.sin(x) + math.sqrt(2.0)
                 * (math.sinh(r) * math.cos(r) - math.sin(r) * math.cosh(r)))
        b = 3.0 * x * x * e + 6.0 * c + 2.0 * d2
        num = 0.25 * x ** 4 * (math.cosh(x) + math.cos(x)
                               - 2.0 * math.cosh(r) * math.cos(r)
                               + d2 * math.cos(8.0 * phi))
        den = 3.0 * x * x * e + a + 2.0 * b - d2
        return num / den
    raise ValueError(f"unknown closed-form variant {variant!r}")


def closed_form_threshold(x: float) -> float:
    """Threshold h(x) of the k=1, N=2 squeezing condition cos(4 phi) < h(x).

    Zero at x = 0, decreasing, and exactly -1 at x = pi/2, beyond which no
    direction can satisfy the condition.
    """
    if x < 0.0:
        raise ValueError("x must be non-negative")
    return (math.cos(x) - math.cosh(x)) / (math.cosh(x) + math.cos(x))
