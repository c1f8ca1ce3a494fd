"""Level-dependent nonlinearities and the trapped-ion drive map.

A fan state is built around a real function f of the Fock level.  This module
evaluates the supported models, the chained products f(p) f(p-2k) f(p-4k) ...
that enter the state amplitudes, and the map from ion-trap laser parameters to
the complex state amplitude.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from typing import Union

from .errors import LaguerreZeroError

#: |L^0_degree| values below this floor count as a pole of the ion-trap f.
LAGUERRE_FLOOR = 1e-12


@dataclass(frozen=True)
class Unity:
    """f(n) = 1 at every level: the plain light-field case."""


@dataclass(frozen=True)
class IonTrap:
    """Phonon nonlinearity of a trapped ion; eta2 is the squared Lamb-Dicke
    parameter."""

    eta2: float

    def __post_init__(self):
        if not (self.eta2 > 0.0 and math.isfinite(self.eta2)):
            raise ValueError("eta2 must be positive and finite")


@dataclass(frozen=True)
class QDeformed:
    """q-oscillator nonlinearity f(n) = sqrt(sinh(n lam) / (n sinh lam))."""

    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise ValueError("lam must be finite")


@dataclass(frozen=True)
class PhotonAdded:
    """Photon-added-state nonlinearity f(n) = 1 - m_add / (1 + n)."""

    m_add: int

    def __post_init__(self):
        if self.m_add < 1:
            raise ValueError("m_add must be a positive integer")


NonlinearityModel = Union[Unity, IonTrap, QDeformed, PhotonAdded]

UNITY = Unity()


def laguerre(alpha: int, degree: int, x: float) -> float:
    """Generalized Laguerre polynomial L^alpha_degree(x).

    Uses the three-term recurrence
    (j+1) L_{j+1} = (2j+1+alpha-x) L_j - (j+alpha) L_{j-1},
    seeded with L_0 = 1 and L_1 = 1 + alpha - x.
    """
    if alpha < 0 or degree < 0:
        raise ValueError("alpha and degree must be non-negative")
    if degree == 0:
        return 1.0
    prev = 1.0
    cur = 1.0 + alpha - x
    for j in range(1, degree):
        prev, cur = cur, ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
    return cur


def f_value(model: NonlinearityModel, n: int, k: int) -> float:
    """Nonlinearity value f(n) for fan order k."""
    if n < 0:
        raise ValueError("level must be non-negative")
    if k < 1:
        raise ValueError("k must be a positive integer")
    if isinstance(model, Unity):
        return 1.0
    if isinstance(model, IonTrap):
        two_k = 2 * k
        if n < two_k:
            # the amplitude chains terminate below 2k; pinning f to 1 there
            # keeps this model structurally interchangeable with unity
            return 1.0
        degree = n - two_k
        den = laguerre(0, degree, model.eta2)
        if abs(den) < LAGUERRE_FLOOR:
            raise LaguerreZeroError(
                f"L^0_{degree}({model.eta2}) = {den} lies inside the pole floor"
            )
        num = laguerre(two_k, degree, model.eta2)
        ratio = 1.0
        for i in range(degree + 1, n + 1):
            # (n-2k)!/n! as a running product; two separate factorials would
            # overflow past n of about 170
            ratio /= i
        return ratio * num / den
    if isinstance(model, QDeformed):
        if n == 0 or model.lam == 0.0:
            return 1.0
        return math.exp(_qdeformed_log(model.lam, n))
    if isinstance(model, PhotonAdded):
        return 1.0 - model.m_add / (1.0 + n)
    raise TypeError(f"unknown nonlinearity model: {model!r}")


def _log_sinh(z: float) -> float:
    # log(sinh z) = z + log1p(-exp(-2z)) - log 2, stable for large z > 0
    return z + math.log1p(-math.exp(-2.0 * z)) - math.log(2.0)


def _qdeformed_log(lam: float, n: int) -> float:
    # sinh(n lam)/(n sinh lam) is even in lam and positive; the n = 0 limit
    # is handled by the caller
    a = abs(lam)
    return 0.5 * (_log_sinh(n * a) - math.log(n) - _log_sinh(a))


def _signed_log_f(model: NonlinearityModel, n: int, k: int):
    """(sign, log|f(n)|) with sign in {-1, 0, 1}."""
    if isinstance(model, Unity):
        return 1, 0.0
    if isinstance(model, QDeformed):
        if n == 0 or model.lam == 0.0:
            return 1, 0.0
        return 1, _qdeformed_log(model.lam, n)
    v = f_value(model, n, k)
    if v == 0.0:
        return 0, -math.inf
    return (1 if v > 0.0 else -1), math.log(abs(v))


_chain_cache: dict = {}
_chain_lock = threading.Lock()


def _chain_signed_log(model: NonlinearityModel, p: int, k: int):
    """(sign, log|f(p) f(p-2k) ... f(q)|) of the chained product, including
    the terminal factor at the first argument q below 2k; equal to 1 when p
    itself is below 2k.

    Cached per (model, k); concurrent callers are serialized on a lock so the
    table only ever holds finished entries.
    """
    step = 2 * k
    if p < step or isinstance(model, Unity):
        return 1, 0.0
    key = (model, k)
    with _chain_lock:
        table = _chain_cache.setdefault(key, {})
        got = table.get(p)
        if got is not None:
            return got
        pending = []
        t = p
        while t >= step and t not in table:
            pending.append(t)
            t -= step
        if t >= step:
            sign, log_abs = table[t]
        else:
            # terminal factor of the product, f(q) with 0 <= q < 2k
            sign, log_abs = _signed_log_f(model, t, k)
        for t in reversed(pending):
            fs, fl = _signed_log_f(model, t, k)
            sign = sign * fs
            log_abs = log_abs + fl
            table[t] = (sign, log_abs)
        return table[p]


def f_chain(model: NonlinearityModel, p: int, k: int) -> float:
    """Chained product f(p) f(p-2k) ... down to the first argument below 2k.

    Returns exactly 1 for 0 <= p < 2k and 0.0 when some factor vanishes.
    """
    if p < 0:
        raise ValueError("p must be non-negative")
    sign, log_abs = _chain_signed_log(model, p, k)
    if sign == 0:
        return 0.0
    return sign * math.exp(log_abs)


@dataclass(frozen=True)
class IonTrapDrive:
    """Laser drive configuration that fixes the fan-state amplitude.

    Only the ratio of the Rabi frequencies matters for the magnitude; the
    phases enter through phi1 - phi0.
    """

    eta: float
    omega0: float
    omega1: float
    phi0: float = 0.0
    phi1: float = 0.0
    k: int = 1

    def __post_init__(self):
        if not (self.eta > 0.0 and self.omega0 > 0.0 and self.omega1 > 0.0):
            raise ValueError("eta and both Rabi frequencies must be positive")
        if self.k < 1:
            raise ValueError("k must be a positive integer")


@dataclass(frozen=True)
class DriveAmplitude:
    """Principal amplitude induced by a drive, plus the rotation that brings
    it onto the positive real axis."""

    xi: complex
    magnitude: float
    rotation: float


def drive_amplitude(drive: IonTrapDrive) -> DriveAmplitude:
    """Solve xi^(2k) = -exp(i(phi1 - phi0)) W0 / ((i eta)^(2k) W1) for the
    principal 2k-th root.

    The returned rotation angle is the one to multiply into xi (as exp(i r))
    to land on the positive real axis, which is where the rest of the package
    operates.
    """
    two_k = 2 * drive.k
    ratio = drive.omega0 / (drive.eta ** two_k * drive.omega1)
    # (i eta)^(2k) = (-1)^k eta^(2k), so the right-hand side carries the
    # phase phi1 - phi0 + pi (k + 1) up to whole turns
    raw = drive.phi1 - drive.phi0 + math.pi * (drive.k + 1)
    arg = math.atan2(math.sin(raw), math.cos(raw))
    magnitude = ratio ** (1.0 / two_k)
    xi = magnitude * cmath.exp(1j * arg / two_k)
    return DriveAmplitude(xi=xi, magnitude=magnitude, rotation=-arg / two_k)
