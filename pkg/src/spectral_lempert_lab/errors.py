# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Errors used by the lab."""
from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:  # pragma: no cover
    from spectral_lempert_lab.discontinuity_lab import Certificate


class SpectralLabError(Exception):
    """Generic lab error as base exception."""


class InvalidInputError(SpectralLabError, ValueError):
    """Represents an input that violates the precondition of an operation."""


class InterpolationError(InvalidInputError):
    """Represents an analytic disc whose endpoint values do not match the requested points."""


class NumericalError(SpectralLabError):
    """Base class for numerical failures."""


class NonConvergenceError(NumericalError):
    """Represents a root finder that missed its residual target within the iteration budget."""

    def __init__(self, message: str, residual: float):
        """Construct the error.

        Args:
            message: The error message.
            residual: The worst residual reached before giving up.
        """
        super().__init__(message)
        self.residual = residual


class AmbiguousClusteringError(NumericalError):
    """Represents eigenvalue clusters too close to assign reliable multiplicities."""


class SingularMatrixError(NumericalError):
    """Represents a matrix that is numerically singular where an inverse is required."""


class DegenerateDenominatorError(NumericalError):
    """Represents a vanishing denominator of a Caratheodory test function."""


class OutsideBallError(NumericalError):
    """Represents a point or matrix outside the region a bound is valid on."""


class NoFeasibleDiscError(NumericalError):
    """Represents a disc search in which no restart reached feasibility."""


class LiftVerificationError(NumericalError):
    """Represents a constructed lift that fails its numerical re-check."""


class NotCyclicError(InvalidInputError):
    """Represents a derogatory matrix where a cyclic one is required."""


class NotSingleEigenvalueError(InvalidInputError):
    """Represents a matrix with more than one eigenvalue cluster where one is required."""


class ThetaViolatedError(InvalidInputError):
    """Represents a disc that violates the vanishing conditions for lifting."""


class InconsistentSandwichError(SpectralLabError):
    """Represents a lower bound exceeding an upper bound on comparable spaces."""

    def __init__(self, message: str, lower: str, upper: str):
        """Construct the error.

        Args:
            message: The error message.
            lower: Name of the offending lower bound.
            upper: Name of the offending upper bound.
        """
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class InconclusiveError(SpectralLabError):
    """Base class for certificates that do not reach their conclusion."""


class CertificateFailedError(InconclusiveError):
    """Represents a discontinuity certificate whose strict inequality was not established."""

    def __init__(self, message: str, certificate: "Certificate | None" = None):
        """Construct the error.

        Args:
            message: The error message.
            certificate: The certificate computed before the failure, if any.
        """
        super().__init__(message)
        self.certificate = certificate


class ChainInconclusiveError(InconclusiveError):
    """Represents a Green/Lempert chain whose numeric gap is below the margin."""

    def __init__(self, message: str, report: dict[str, Any]):
        """Construct the error.

        Args:
            message: The error message.
            report: The chain report computed before the failure.
        """
        super().__init__(message)
        self.report = report
