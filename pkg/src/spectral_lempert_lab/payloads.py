# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""JSON wire models for matrices, points and discs."""

import json
import logging
from typing import Any, TextIO

import numpy as np
from pydantic import BaseModel, ValidationError, root_validator

from spectral_lempert_lab.errors import InvalidInputError
from spectral_lempert_lab.models import AnalyticDisc, CMatrix, SigmaPoint, as_cmatrix

logger = logging.getLogger(__name__)


class MatrixPayload(BaseModel):
    """Row-major complex matrix.

    Attributes:
        n: Dimension.
        re: Real parts, n rows of n entries.
        im: Imaginary parts, n rows of n entries.
    """

    n: int
    re: list[list[float]]
    im: list[list[float]]

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_shape(cls, values: dict) -> dict:
        """Validate that both parts are n×n.

        Args:
            values: Values in the pydantic model.

        Raises:
            ValueError: If a part does not have n rows of n entries.

        Returns:
            Values in the pydantic model.
        """
        n = values["n"]
        for part in ("re", "im"):
            rows = values[part]
            if n < 1 or len(rows) != n or any(len(row) != n for row in rows):
                raise ValueError(f"{part} must have {n} rows of {n} entries")
        return values

    def to_matrix(self) -> CMatrix:
        """Return the complex matrix.

        Returns:
            The matrix.
        """
        return as_cmatrix(np.array(self.re) + 1j * np.array(self.im))

    @classmethod
    def from_matrix(cls, matrix: Any) -> "MatrixPayload":
        """Build the payload of a matrix.

        Args:
            matrix: Square matrix.

        Returns:
            The payload.
        """
        array = as_cmatrix(matrix)
        return cls(n=array.shape[0], re=array.real.tolist(), im=array.imag.tolist())


class PointPayload(BaseModel):
    """Point of C^n.

    Attributes:
        n: Dimension.
        re: Real parts.
        im: Imaginary parts.
    """

    n: int
    re: list[float]
    im: list[float]

    @root_validator(skip_on_failure=True)
    @classmethod
    def check_shape(cls, values: dict) -> dict:
        """Validate that both parts have n entries.

        Args:
            values: Values in the pydantic model.

        Raises:
            ValueError: If a part does not have n entries.

        Returns:
            Values in the pydantic model.
        """
        n = values["n"]
        if n < 1 or len(values["re"]) != n or len(values["im"]) != n:
            raise ValueError(f"re and im must have {n} entries")
        return values

    def to_point(self) -> SigmaPoint:
        """Return the point.

        Returns:
            The point.
        """
        return SigmaPoint.from_array(np.array(self.re) + 1j * np.array(self.im))

    @classmethod
    def from_point(cls, point: SigmaPoint) -> "PointPayload":
        """Build the payload of a point.

        Args:
            point: The point.

        Returns:
            The payload.
        """
        array = point.array
        return cls(n=point.n, re=array.real.tolist(), im=array.imag.tolist())


class DiscPayload(BaseModel):
    """Polynomial analytic disc, one coefficient row per coordinate.

    Attributes:
        n: Number of coordinates.
        degree_cap: Degree cap of the coordinates.
        re: Real parts of the coefficients, constant term first.
        im: Imaginary parts of the coefficients, constant term first.
    """

    n: int
    degree_cap: int
    re: list[list[float]]
    im: list[list[float]]

    def to_disc(self) -> AnalyticDisc:
        """Return the disc.

        Returns:
            The disc.
        """
        return AnalyticDisc.from_coefficients(
            np.array(self.re) + 1j * np.array(self.im), degree_cap=self.degree_cap
        )

    @classmethod
    def from_disc(cls, disc: AnalyticDisc) -> "DiscPayload":
        """Build the payload of a disc.

        Args:
            disc: The disc.

        Returns:
            The payload.
        """
        table = disc.coefficients
        return cls(
            n=disc.n,
            degree_cap=disc.degree_cap,
            re=table.real.tolist(),
            im=table.imag.tolist(),
        )


def load_matrix(file: TextIO) -> CMatrix:
    """Parse a matrix JSON document.

    Args:
        file: The file object to parse the matrix from.

    Raises:
        InvalidInputError: If the document is not a valid matrix payload.

    Returns:
        The matrix.
    """
    try:
        return MatrixPayload.parse_obj(json.load(file)).to_matrix()
    except (ValidationError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"Invalid matrix document: {exc}") from exc


def load_point(file: TextIO) -> SigmaPoint:
    """Parse a point JSON document.

    Args:
        file: The file object to parse the point from.

    Raises:
        InvalidInputError: If the document is not a valid point payload.

    Returns:
        The point.
    """
    try:
        return PointPayload.parse_obj(json.load(file)).to_point()
    except (ValidationError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"Invalid point document: {exc}") from exc


def complex_payload(value: complex) -> dict[str, float]:
    """Return the {re, im} payload of a complex number.

    Args:
        value: The number.

    Returns:
        The payload.
    """
    return {"re": float(np.real(value)), "im": float(np.imag(value))}


def load_disc(file: TextIO) -> AnalyticDisc:
    """Parse a disc JSON document.

    Args:
        file: The file object to parse the disc from.

    Raises:
        InvalidInputError: If the document is not a valid disc payload.

    Returns:
        The disc.
    """
    try:
        return DiscPayload.parse_obj(json.load(file)).to_disc()
    except (ValidationError, json.JSONDecodeError, ValueError) as exc:
        raise InvalidInputError(f"Invalid disc document: {exc}") from exc
