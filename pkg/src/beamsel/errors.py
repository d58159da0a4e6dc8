"""Exception types raised by beamsel."""

import numpy as np


class BeamselError(Exception):
    """Base class for all package errors."""


class SingularGram(BeamselError, np.linalg.LinAlgError):
    """A Gram matrix is (numerically) singular.

    ``pivot`` is the zero-based index of the Cholesky pivot that fell
    below the singularity tolerance, or ``None`` if unknown.
    """

    def __init__(self, message: str, pivot: int | None = None):
        super().__init__(message)
        self.pivot = pivot


class NumericalFailure(BeamselError):
    """An iterative numerical routine did not converge."""


class InfeasibleSelection(BeamselError):
    """Every remaining beam removal would make the channel rank deficient."""
