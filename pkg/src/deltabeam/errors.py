"""Exception types shared across the package.

Plain ``ValueError`` is raised for invalid inputs (bad parameter ranges,
malformed data); the classes here mark numerical outcomes that callers may
want to handle individually.
"""

from __future__ import annotations


class FrequencyShortfallError(RuntimeError):
    """Fewer characteristic frequencies than requested below the scan cap."""

    def __init__(self, found: list, requested: int, alpha_max: float):
        self.found = list(found)
        self.requested = requested
        self.alpha_max = alpha_max
        super().__init__(
            f"found only {len(self.found)} of {requested} frequencies "
            f"below alpha_max={alpha_max:g}"
        )


class NotAFrequencyError(RuntimeError):
    """The characteristic system is numerically nonsingular at the given alpha."""

    def __init__(self, alpha: float, det: float, sigma_min: float):
        self.alpha = alpha
        self.det = det
        self.sigma_min = sigma_min
        super().__init__(
            f"alpha={alpha:.12g} is not a characteristic frequency: "
            f"|det|={abs(det):.3e}, smallest singular value={sigma_min:.3e}"
        )


class PreconditionError(RuntimeError):
    """A stated precondition of an operation failed; message carries a diagnostic."""
