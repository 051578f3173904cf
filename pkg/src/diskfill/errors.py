"""Shared exception types.

Every user-triggerable failure derives from DiskfillError so the CLI can
map it to an exit code; programming errors stay as plain exceptions.
"""


class DiskfillError(Exception):
    """Base class for all expected failures."""


class InputError(DiskfillError):
    """Malformed or invalid input data (files, words, diagrams)."""


class BudgetError(DiskfillError):
    """An enumeration or recursion budget would be exceeded."""


class CertificateError(DiskfillError):
    """A filling certificate failed to replay.

    ``step`` is the 0-based index of the failing step, or None when the
    failure is not tied to a single step (e.g. a non-empty final word).
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
