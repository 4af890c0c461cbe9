"""Exception hierarchy shared by every module.

Each error carries the name used in reports so the CLI can surface it
verbatim (``error.code``).
"""

from __future__ import annotations


class AnnularFloerError(Exception):
    """Base class. ``code`` is the stable name printed in reports."""

    code = "Error"
    exit_status = 1

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class InputError(AnnularFloerError):
    """Raised for malformed user input (exit status 1)."""


class NotPermutation(InputError):
    code = "NotPermutation"


class CellCollision(InputError):
    code = "CellCollision"


class NoAxisComponent(InputError):
    code = "NoAxisComponent"


class AxisNotUnknot(InputError):
    code = "AxisNotUnknot"


class StateSizeMismatch(InputError):
    code = "StateSizeMismatch"


class UnknownComponent(InputError):
    code = "UnknownComponent"


class IllegalMove(InputError):
    code = "IllegalMove"

    def __init__(self, site, reason: str):
        super().__init__(f"illegal move at {site}: {reason}", site=site, reason=reason)
        self.site = site
        self.reason = reason


class AxisTouched(InputError):
    code = "AxisTouched"


class BadGenerator(InputError):
    code = "BadGenerator"


class BadWord(InputError):
    code = "BadWord"


class BadPosition(InputError):
    code = "BadPosition"


class BadParameters(InputError):
    code = "BadParameters"


class DimensionMismatch(InputError):
    code = "DimensionMismatch"


class WindowEmpty(InputError):
    code = "WindowEmpty"


class NoAxis(InputError):
    code = "NoAxis"


class NotAnnular(InputError):
    code = "NotAnnular"


class AuditFailure(AnnularFloerError):
    """An internal consistency check failed (exit status 2)."""

    code = "AuditFailure"
    exit_status = 2


class InconsistentInterpolation(AuditFailure):
    code = "InconsistentInterpolation"


class TruncationUnstable(AnnularFloerError):
    """A truncated V-module answer changed when the truncation grew."""

    code = "TruncationUnstable"
    exit_status = 3

    def __init__(self, truncation: int, message: str = ""):
        super().__init__(message or f"answer changed when truncation was raised from D={truncation}",
                         truncation=truncation)
        self.truncation = truncation


class TruncationTooSmall(TruncationUnstable):
    code = "TruncationTooSmall"
