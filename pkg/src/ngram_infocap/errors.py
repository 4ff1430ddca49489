"""Exception types shared across the package.

``InputError`` subclasses signal bad user input (files, parameters) and map
to CLI exit code 2.  ``InternalError`` subclasses signal a violated internal
invariant and map to exit code 3.  ``EmptySelection`` is neither: the CLI
treats it as a warning.
"""


class NgramInfocapError(Exception):
    """Base class for all package exceptions."""


class InputError(NgramInfocapError):
    """Invalid input data or parameters."""


class InternalError(NgramInfocapError):
    """A computed result violated an internal invariant."""


# --- ingestion ---

class MissingColumn(InputError):
    pass


class NonNumericPrice(InputError):
    pass


class NonPositivePrice(InputError):
    pass


class DuplicateDate(InputError):
    pass


class InvalidDate(InputError):
    pass


class TooShort(InputError):
    pass


# --- quantization ---

class NonMonotoneThresholds(InputError):
    pass


class DegenerateReturns(InputError):
    pass


# --- dictionaries ---

class TextTooShort(InputError):
    pass


class SupportMismatch(InternalError):
    pass


# --- analysis ---

class ZeroVariance(InputError):
    pass


class NoDates(InputError):
    pass


class EmptySelection(NgramInfocapError):
    pass


# --- cli ---

class EmptyWindow(InputError):
    pass
