# Copyright 2025 Canonical Ltd.
# See LICENSE file for licensing details.

"""Utilities used by the certificate pipelines."""

import functools
import logging
from typing import Callable, Type, TypeVar

from typing_extensions import Concatenate, ParamSpec

logger = logging.getLogger(__name__)


# Parameters of the function decorated with shrink_on_failure, after the shrunk parameter
ParamT = ParamSpec("ParamT")
# Return type of the function decorated with shrink_on_failure
ReturnT = TypeVar("ReturnT")


def shrink_on_failure(
    exception: Type[Exception] = Exception,
    steps: int = 1,
    factor: float = 0.5,
    local_logger: logging.Logger = logger,
) -> Callable[
    [Callable[Concatenate[float, ParamT], ReturnT]],
    Callable[Concatenate[float, ParamT], ReturnT],
]:
    """Parameterize the decorator for retrying with a smaller first argument.

    The decorated function takes the shrinkable parameter first. On failure the parameter is
    multiplied by the factor and the call repeated.

    Args:
        exception: Exception type that triggers a shrink.
        steps: Maximum number of shrinks after the first attempt.
        factor: Multiplier applied to the parameter on each shrink.
        local_logger: Logger for logging.

    Returns:
        The function decorator.
    """

    def shrink_decorator(
        func: Callable[Concatenate[float, ParamT], ReturnT],
    ) -> Callable[Concatenate[float, ParamT], ReturnT]:
        """Decorate function with shrinking retries.

        Args:
            func: The function to decorate.

        Returns:
            The resulting function with shrinking retries added.
        """

        @functools.wraps(func)
        def fn_with_shrink(value: float, *args: ParamT.args, **kwargs: ParamT.kwargs) -> ReturnT:
            """Wrap the function with shrinking retries.

            Args:
                value: The shrinkable parameter.
                args: The placeholder for decorated function's positional arguments.
                kwargs: The placeholder for decorated function's key word arguments.

            Raises:
                RuntimeError: Should be unreachable.

            Returns:
                Original return type of the decorated function.
            """
            current = value
            for attempt in range(steps + 1):
                try:
                    return func(current, *args, **kwargs)
                # Error caught is set by the input of the function.
                except exception as err:  # pylint: disable=broad-exception-caught
                    if attempt == steps:
                        local_logger.warning("Shrink limit of %s reached: %s", steps, err)
                        raise
                    local_logger.debug(
                        "Shrinking %s to %s after: %s", current, current * factor, err
                    )
                    current *= factor

            raise RuntimeError("Unreachable code of shrink logic.")

        return fn_with_shrink

    return shrink_decorator
