# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Domain types shared by the matrix, geometry and bound modules."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
import numpy.typing as npt
from numpy.polynomial import polynomial as P

from spectral_lempert_lab.errors import InvalidInputError

logger = logging.getLogger(__name__)

# Dense n×n complex matrix.
CMatrix = npt.NDArray[np.complex128]
# Declared eigenvalue structure: (value, algebraic multiplicity) pairs.
ClusterHint = Sequence[tuple[complex, int]]


def as_cmatrix(data: Any) -> CMatrix:
    """Convert the input into a square complex matrix.

    Args:
        data: Anything numpy can turn into a 2-D array.

    Raises:
        InvalidInputError: If the data is not a non-empty square grid.

    Returns:
        The matrix as a complex128 array.
    """
    matrix = np.array(data, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise InvalidInputError(f"Expected a non-empty square matrix, got shape {matrix.shape}")
    return matrix


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with complex coefficients, constant term first.

    Attributes:
        coeffs: The coefficients, leading coefficient last.
        degree: The degree; the zero polynomial has degree 0.
        array: The coefficients as a complex array.
    """

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        """Trim trailing zero coefficients."""
        trimmed = P.polytrim(np.asarray(self.coeffs, dtype=np.complex128), tol=0)
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in trimmed))

    @classmethod
    def from_array(cls, coeffs: Any) -> "Polynomial":
        """Build a polynomial from an array-like of coefficients.

        Args:
            coeffs: Coefficients, constant term first.

        Returns:
            The polynomial.
        """
        return cls(tuple(complex(c) for c in np.atleast_1d(np.asarray(coeffs))))

    @property
    def degree(self) -> int:
        """The degree of the polynomial."""
        return len(self.coeffs) - 1

    @property
    def array(self) -> npt.NDArray[np.complex128]:
        """The coefficients as a complex array."""
        return np.asarray(self.coeffs, dtype=np.complex128)

    def __call__(self, zeta: Any) -> Any:
        """Evaluate the polynomial.

        Args:
            zeta: Scalar or array of evaluation points.

        Returns:
            The values at the given points.
        """
        return P.polyval(zeta, self.array)

    def derivative_at_zero(self, order: int) -> complex:
        """Return the derivative of the given order at the origin.

        Args:
            order: Order of the derivative.

        Returns:
            order! times the matching coefficient.
        """
        if order > self.degree:
            return 0j
        return math.factorial(order) * self.coeffs[order]

    def padded(self, length: int) -> npt.NDArray[np.complex128]:
        """Return the coefficients zero-padded to the given length.

        Args:
            length: Number of coefficients wanted.

        Returns:
            Coefficient array of exactly that length.
        """
        out = np.zeros(length, dtype=np.complex128)
        out[: min(length, len(self.coeffs))] = self.array[:length]
        return out


@dataclass(eq=True, frozen=True)
class EigenInfo:
    """One eigenvalue cluster with its multiplicities.

    Attributes:
        value: The eigenvalue.
        alg_mult: Multiplicity as a root of the characteristic polynomial.
        geo_mult: Dimension of the eigenspace.
        min_mult: Multiplicity as a root of the minimal polynomial.
    """

    value: complex
    alg_mult: int
    geo_mult: int
    min_mult: int

    def __post_init__(self) -> None:
        """Validate the multiplicities.

        Raises:
            InvalidInputError: If they do not describe Jordan blocks of total size alg_mult.
        """
        if not 1 <= self.geo_mult <= self.alg_mult or not 1 <= self.min_mult <= self.alg_mult:
            raise InvalidInputError(
                f"Need 1 <= geo, min <= alg, got alg={self.alg_mult}, geo={self.geo_mult}, "
                f"min={self.min_mult}"
            )
        # One Jordan block exactly when its size is the whole algebraic multiplicity.
        if (self.min_mult == self.alg_mult) != (self.geo_mult == 1):
            raise InvalidInputError(
                f"min = alg must coincide with geo = 1, got alg={self.alg_mult}, "
                f"geo={self.geo_mult}, min={self.min_mult}"
            )
        if self.geo_mult + self.min_mult - 1 > self.alg_mult:
            raise InvalidInputError(
                f"{self.geo_mult} blocks with the largest of size {self.min_mult} exceed "
                f"alg={self.alg_mult}"
            )


@dataclass(frozen=True)
class SpectralData:
    """Spectrum of a matrix with multiplicities.

    Attributes:
        eigen: The eigenvalue clusters.
        tol: The clustering tolerance used.
        n: Dimension of the underlying matrix.
        spectral_radius: Largest eigenvalue modulus.
    """

    eigen: tuple[EigenInfo, ...]
    tol: float

    @property
    def n(self) -> int:
        """Dimension of the underlying matrix."""
        return sum(info.alg_mult for info in self.eigen)

    @property
    def spectral_radius(self) -> float:
        """Largest eigenvalue modulus."""
        return max(abs(info.value) for info in self.eigen)


@dataclass(frozen=True)
class SigmaPoint:
    """A point (s_1, ..., s_n) of C^n, the image of a matrix under sigma.

    Attributes:
        coords: The coordinates.
        n: Number of coordinates.
        array: The coordinates as a complex array.
    """

    coords: tuple[complex, ...]

    def __post_init__(self) -> None:
        """Validate the point.

        Raises:
            InvalidInputError: If the point has no coordinates.
        """
        if len(self.coords) < 1:
            raise InvalidInputError("A sigma point needs at least one coordinate")
        object.__setattr__(self, "coords", tuple(complex(c) for c in self.coords))

    @classmethod
    def from_array(cls, coords: Any) -> "SigmaPoint":
        """Build a point from an array-like.

        Args:
            coords: The coordinates.

        Returns:
            The point.
        """
        return cls(tuple(np.atleast_1d(np.asarray(coords, dtype=np.complex128))))

    @classmethod
    def zero(cls, n: int) -> "SigmaPoint":
        """Return the origin of C^n.

        Args:
            n: Dimension.

        Returns:
            The origin.
        """
        return cls((0j,) * n)

    @property
    def n(self) -> int:
        """Number of coordinates."""
        return len(self.coords)

    @property
    def array(self) -> npt.NDArray[np.complex128]:
        """The coordinates as a complex array."""
        return np.asarray(self.coords, dtype=np.complex128)

    def norm(self) -> float:
        """Return the Euclidean norm of the point.

        Returns:
            The norm.
        """
        return float(np.linalg.norm(self.array))


@dataclass(frozen=True)
class AnalyticDisc:
    """Analytic disc into C^n with polynomial coordinates.

    Attributes:
        coords: One polynomial per coordinate.
        degree_cap: Largest degree a coordinate may have.
        n: Number of coordinates.
        coefficients: The (n, degree_cap + 1) coefficient table.
    """

    coords: tuple[Polynomial, ...]
    degree_cap: int

    def __post_init__(self) -> None:
        """Validate the disc.

        Raises:
            InvalidInputError: If a coordinate exceeds the degree cap.
        """
        if not self.coords:
            raise InvalidInputError("A disc needs at least one coordinate")
        if any(poly.degree > self.degree_cap for poly in self.coords):
            raise InvalidInputError(f"A coordinate exceeds the degree cap {self.degree_cap}")

    @classmethod
    def from_coefficients(cls, table: Any, degree_cap: int | None = None) -> "AnalyticDisc":
        """Build a disc from a coefficient table.

        Args:
            table: Array of shape (n, d + 1); row i holds coordinate i, constant term first.
            degree_cap: Degree cap; defaults to d.

        Returns:
            The disc.
        """
        rows = np.atleast_2d(np.asarray(table, dtype=np.complex128))
        cap = rows.shape[1] - 1 if degree_cap is None else degree_cap
        return cls(tuple(Polynomial.from_array(row) for row in rows), cap)

    @classmethod
    def constant(cls, point: SigmaPoint, degree_cap: int = 0) -> "AnalyticDisc":
        """Return the constant disc at a point.

        Args:
            point: The value of the disc.
            degree_cap: Degree cap recorded on the disc.

        Returns:
            The constant disc.
        """
        return cls(tuple(Polynomial((c,)) for c in point.coords), degree_cap)

    @property
    def n(self) -> int:
        """Number of coordinates."""
        return len(self.coords)

    @property
    def coefficients(self) -> npt.NDArray[np.complex128]:
        """The (n, degree_cap + 1) coefficient table."""
        return np.stack([poly.padded(self.degree_cap + 1) for poly in self.coords])

    def __call__(self, zeta: Any) -> npt.NDArray[np.complex128]:
        """Evaluate the disc.

        Args:
            zeta: Scalar or 1-D array of points of the unit disc.

        Returns:
            Array of shape (n,) for a scalar, (len(zeta), n) for an array.
        """
        values = P.polyval(np.asarray(zeta), self.coefficients.T)
        return np.asarray(values).T

    def at(self, zeta: complex) -> SigmaPoint:
        """Evaluate the disc at one point.

        Args:
            zeta: Point of the unit disc.

        Returns:
            The value as a sigma point.
        """
        return SigmaPoint.from_array(self(zeta))

    def residual(self, zeta: complex, target: SigmaPoint) -> float:
        """Return the interpolation residual at a point.

        Args:
            zeta: Point of the unit disc.
            target: Value the disc should take.

        Returns:
            Euclidean distance between the disc value and the target.
        """
        return float(np.linalg.norm(self(zeta) - target.array))
