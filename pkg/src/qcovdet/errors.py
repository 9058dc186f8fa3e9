"""Exception types shared across the package.

Domain errors (bad numeric input to a mathematical function) raise plain
ValueError.  The classes below mark failures with more structure: malformed
user-supplied data, internal cross-checks that should never fire, and
requests for a difference kernel whose dominance premise is false.
"""


class ValidationError(ValueError):
    """User-supplied matrix or instance data violates a stated invariant."""


class InstanceFormatError(ValidationError):
    """An instance file or JSON object does not match the expected schema.

    The message names the offending field path, e.g. ``density[0][1]``.
    """


class DominanceViolationError(ValueError):
    """A difference kernel g1 - g2 was requested where g1 >= g2 fails.

    Carries the witness point so callers can report where the ordering
    breaks down.
    """

    def __init__(self, message, x=None, y=None, value=None):
        super().__init__(message)
        self.x = x
        self.y = y
        self.value = value


class InternalConsistencyError(RuntimeError):
    """A redundant internal cross-check failed.

    Raised when two evaluation paths that must agree do not, or when a
    quantity that is real or positive semidefinite by construction comes
    out otherwise beyond numerical slack.  Indicates a bug or severe
    ill-conditioning, not bad user input.
    """
