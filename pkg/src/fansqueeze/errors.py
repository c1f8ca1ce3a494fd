"""Exception types shared across the package."""


class FansqueezeError(Exception):
    """Base class for all package-specific failures."""


class NonConvergenceError(FansqueezeError):
    """A series hit its hard index cutoff before the stopping rule fired."""


class LaguerreZeroError(FansqueezeError):
    """A denominator Laguerre value is inside the pole floor."""


class NonlinearitySingularError(FansqueezeError):
    """A nonlinearity chain product vanished, leaving amplitudes undefined."""


class CutoffTooSmallError(FansqueezeError):
    """The Fock cutoff leaves too much norm in the top band of levels."""


class GuardBandError(FansqueezeError):
    """Requested ladder powers are too large for the state's cutoff."""


class BracketError(FansqueezeError):
    """Root bracketing failed: no sign change inside the search interval."""
