# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test setups and configurations."""

import json
from pathlib import Path

import numpy as np
import pytest

from spectral_lempert_lab.configuration import RunConfig
from spectral_lempert_lab.constants import SEED_ENV_VAR
from tests.unit.factories.lab_factory import RunConfigFactory

GOLDEN_PATH = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def clear_seed_override(monkeypatch: pytest.MonkeyPatch):
    """Keep the environment seed override out of the tests."""
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)


@pytest.fixture(name="fast_config")
def fast_config_fixture() -> RunConfig:
    """Run configuration sized for unit tests."""
    return RunConfigFactory()


@pytest.fixture(name="golden")
def golden_fixture():
    """Loader of golden data files."""

    def load(name: str) -> dict:
        """Load a golden JSON file.

        Args:
            name: File name without extension.

        Returns:
            The parsed document.
        """
        return json.loads((GOLDEN_PATH / f"{name}.json").read_text(encoding="utf-8"))

    return load


@pytest.fixture(name="nilpotent_rank_one")
def nilpotent_rank_one_fixture() -> np.ndarray:
    """The 3×3 nilpotent matrix with a single 1 at row 2, column 3."""
    matrix = np.zeros((3, 3), dtype=np.complex128)
    matrix[1, 2] = 1.0
    return matrix


@pytest.fixture(name="rng")
def rng_fixture() -> np.random.Generator:
    """Seeded random generator."""
    return np.random.default_rng(7)
