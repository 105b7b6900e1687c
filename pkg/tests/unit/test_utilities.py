# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Test the utilities module."""

import pytest

from spectral_lempert_lab.errors import CertificateFailedError
from spectral_lempert_lab.utilities import shrink_on_failure


class _Recorder:
    """Callable failing until its parameter drops below a threshold.

    Attributes:
        threshold: Largest parameter that succeeds.
        calls: Parameters seen so far.
    """

    def __init__(self, threshold: float):
        """Construct the recorder.

        Args:
            threshold: Largest parameter that succeeds.
        """
        self.threshold = threshold
        self.calls: list[float] = []

    def __call__(self, value: float, label: str) -> str:
        """Record the call.

        Args:
            value: The shrinkable parameter.
            label: Passed through to the result.

        Raises:
            CertificateFailedError: If the value is above the threshold.

        Returns:
            The label and the accepted value.
        """
        self.calls.append(value)
        if value > self.threshold:
            raise CertificateFailedError(f"{value} too large")
        return f"{label}:{value}"


def test_shrink_on_failure_succeeds_first_time():
    """
    arrange: A function that accepts the initial value.
    act: Call it through the decorator.
    assert: It runs once with the initial value.
    """
    recorder = _Recorder(1.0)

    result = shrink_on_failure(CertificateFailedError, 5)(recorder)(0.5, "run")

    assert result == "run:0.5"
    assert recorder.calls == [0.5]


def test_shrink_on_failure_shrinks_until_success():
    """
    arrange: A function that fails above 0.1.
    act: Call it with 0.8 and factor 0.5.
    assert: The value is halved until it passes.
    """
    recorder = _Recorder(0.1)

    result = shrink_on_failure(CertificateFailedError, 5, 0.5)(recorder)(0.8, "run")

    assert result == "run:0.1"
    assert recorder.calls == [0.8, 0.4, 0.2, 0.1]


def test_shrink_on_failure_reraises_at_limit():
    """
    arrange: A function that never succeeds.
    act: Call it with two shrinks allowed.
    assert: The error is re-raised after three attempts.
    """
    recorder = _Recorder(-1.0)

    with pytest.raises(CertificateFailedError):
        shrink_on_failure(CertificateFailedError, 2)(recorder)(1.0, "run")

    assert recorder.calls == [1.0, 0.5, 0.25]


def test_shrink_on_failure_ignores_other_errors():
    """
    arrange: A function raising an unrelated error.
    act: Call it through the decorator.
    assert: The error propagates without a retry.
    """
    calls = []

    def failing(value: float) -> None:
        """Fail with a value error.

        Args:
            value: The shrinkable parameter.

        Raises:
            ValueError: Always.
        """
        calls.append(value)
        raise ValueError("unrelated")

    with pytest.raises(ValueError):
        shrink_on_failure(CertificateFailedError, 3)(failing)(1.0)

    assert calls == [1.0]
