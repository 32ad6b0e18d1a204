"""Exception types shared across the package."""

from __future__ import annotations


class InvariantError(AssertionError):
    """An internal exact identity failed.

    Raised when a computation that must reproduce a closed form (torus
    averages, Parseval sums, exponential-sum bounds) does not. The CLI maps
    this to exit code 4; seeing one in the wild means the build is broken,
    not that the input was bad.
    """
