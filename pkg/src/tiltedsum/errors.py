"""Exception types shared across the package."""


class RegimeError(ValueError):
    """Distortion level outside the interior regime 0 < D < min(pi0, pi1)."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget."""
