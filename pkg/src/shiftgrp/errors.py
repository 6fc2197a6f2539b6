"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: malformed input is distinct from a
mathematical "no" and from hitting a configured resource cap, and none of
them may be silently converted into a wrong answer.
"""


class ShiftgrpError(Exception):
    """Base class for all library errors."""


class InputError(ShiftgrpError, ValueError):
    """Malformed or out-of-domain input (bad letter, bad file, bad flag)."""


class ResourceLimitError(ShiftgrpError, RuntimeError):
    """A configured cap (word length, iterations, enumeration size) was hit.

    Raised instead of returning a possibly wrong answer.
    """


class StructuralError(ShiftgrpError, RuntimeError):
    """A mathematical hypothesis or internal invariant failed to hold."""


class FactorizationError(StructuralError):
    """A word admits no factorization over the given code."""
