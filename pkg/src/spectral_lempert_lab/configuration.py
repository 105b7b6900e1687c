# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Run configuration shared by the report pipelines and the CLI."""

import logging
import os
from enum import Enum
from typing import Optional, TextIO

import yaml
from pydantic import BaseModel, Extra, validator

from spectral_lempert_lab.constants import (
    DEFAULT_BOUNDARY_GRID,
    DEFAULT_DIRECTIONS,
    DEFAULT_GRID,
    DEFAULT_MARGIN,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_TOL,
    MEMBERSHIP_MARGIN,
    SEED_ENV_VAR,
)
from spectral_lempert_lab.errors import InvalidInputError

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    """Rendering of command results.

    Attributes:
        JSON: Canonical JSON with sorted keys.
        TABLE: Two-column plain text table.
    """

    JSON = "json"
    TABLE = "table"


class RunConfig(BaseModel):
    """Numerical knobs of a run.

    Attributes:
        tol: Clustering tolerance and root residual target.
        grid: Number of unit-circle nodes of the Carathéodory scan.
        degree: Degree cap of searched discs; None means 2n.
        restarts: Number of disc search restarts.
        seed: Seed for every randomised step.
        margin: Minimum margin a discontinuity certificate must reach.
        output: Rendering of CLI results.
        directions: Number of sampled directions for the inscribed ball radius.
        boundary_grid: Number of unit-circle nodes used to check disc membership.
        membership_margin: Margin used by G_n membership tests.
    """

    tol: float = DEFAULT_TOL
    grid: int = DEFAULT_GRID
    degree: Optional[int] = None
    restarts: int = DEFAULT_RESTARTS
    seed: int = DEFAULT_SEED
    margin: float = DEFAULT_MARGIN
    output: OutputFormat = OutputFormat.JSON
    directions: int = DEFAULT_DIRECTIONS
    boundary_grid: int = DEFAULT_BOUNDARY_GRID
    membership_margin: float = MEMBERSHIP_MARGIN

    class Config:  # pylint: disable=too-few-public-methods
        """Pydantic model configuration.

        Attributes:
            extra: Reject unknown keys.
            allow_mutation: Freeze instances.
        """

        extra = Extra.forbid
        allow_mutation = False

    @validator("tol", "margin", "membership_margin")
    @classmethod
    def check_positive_float(cls, value: float) -> float:
        """Validate the tolerances.

        Args:
            value: The value to check.

        Raises:
            ValueError: If the value is not positive.

        Returns:
            The value.
        """
        if value <= 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @validator("restarts", "directions", "boundary_grid")
    @classmethod
    def check_positive_int(cls, value: int) -> int:
        """Validate the counts.

        Args:
            value: The value to check.

        Raises:
            ValueError: If the value is not positive.

        Returns:
            The value.
        """
        if value < 1:
            raise ValueError(f"must be at least 1, got {value}")
        return value

    @validator("grid")
    @classmethod
    def check_grid(cls, grid: int) -> int:
        """Validate the Carathéodory grid.

        Args:
            grid: The number of nodes.

        Raises:
            ValueError: If the grid is not a power of two of at least 64.

        Returns:
            The grid.
        """
        if grid < 64 or grid & (grid - 1):
            raise ValueError(f"must be a power of two of at least 64, got {grid}")
        return grid

    @validator("degree")
    @classmethod
    def check_degree(cls, degree: Optional[int]) -> Optional[int]:
        """Validate the disc degree cap.

        Args:
            degree: The degree cap.

        Raises:
            ValueError: If the degree is not positive.

        Returns:
            The degree.
        """
        if degree is not None and degree < 1:
            raise ValueError(f"must be at least 1, got {degree}")
        return degree

    def disc_degree(self, n: int) -> int:
        """Return the disc degree cap for dimension n.

        Args:
            n: Dimension.

        Returns:
            The configured degree, or 2n.
        """
        return 2 * n if self.degree is None else self.degree

    def with_env_overrides(self) -> "RunConfig":
        """Apply the seed override from the environment.

        Raises:
            InvalidInputError: If the environment seed is not an integer.

        Returns:
            The configuration, with the seed replaced if the variable is set.
        """
        if (raw := os.environ.get(SEED_ENV_VAR)) is None:
            return self
        try:
            seed = int(raw)
        except ValueError as exc:
            raise InvalidInputError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from exc
        logger.debug("Seed overridden from %s: %s", SEED_ENV_VAR, seed)
        return self.copy(update={"seed": seed})

    @staticmethod
    def from_yaml_file(file: TextIO) -> "RunConfig":
        """Initialize configuration from a YAML formatted file.

        Args:
            file: The file object to parse the configuration from.

        Returns:
            The configuration.
        """
        config = yaml.safe_load(file) or {}
        return RunConfig.validate(config)
