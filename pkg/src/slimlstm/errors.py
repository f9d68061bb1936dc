"""Exception hierarchy shared by all modules.

Each class maps to one CLI exit code; see `slimlstm.cli`.
"""


class SlimLstmError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SlimLstmError):
    """Invalid configuration: bad shapes, unknown keys, inconsistent specs."""


class DataError(SlimLstmError):
    """Invalid data or I/O failure: unreadable files, malformed corpora."""


class NumericDivergenceError(SlimLstmError):
    """A computation produced non-finite values.

    Carries enough context (where, which quantity) to locate the step that
    diverged.  Training loops catch this at the per-example boundary; it never
    propagates silently.
    """

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = context or {}
