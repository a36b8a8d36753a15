"""Shared exception hierarchy.

The CLI maps InputError to exit code 1 and ComputeError (or any other
package error) to exit code 2; the HTTP layer maps InputError to 422 and
ComputeError to 500.
"""


class PdeiError(Exception):
    """Base class for all package errors."""


class InputError(PdeiError, ValueError):
    """Caller-supplied data or configuration is invalid."""


class ComputeError(PdeiError):
    """A computation failed despite valid inputs."""
