"""Shared base class for all errors raised by this package.

The CLI maps any MicroforError to exit code 2 (bad input); everything
else is treated as an internal error (exit code 1).
"""


class MicroforError(Exception):
    pass
