"""Exception hierarchy.

Every error carries a short ``kind`` tag (for example ``"zero-input"``) so
callers and the CLI can react without parsing messages.
"""


class CertfunError(Exception):
    """Base class. ``exit_code`` is what the CLI returns for it."""

    exit_code = 1

    def __init__(self, kind, message=None):
        self.kind = kind
        super().__init__(message or kind)


class DomainError(CertfunError, ValueError):
    """The input lies outside the function's domain."""

    exit_code = 3


class ParameterError(CertfunError, ValueError):
    """A magnitude parameter or precondition on the arguments fails."""

    exit_code = 3


class PrecisionError(CertfunError, ValueError):
    """A precision or truncation exceeds the configured ceiling."""

    exit_code = 4


class ParseError(CertfunError, ValueError):
    """Malformed textual input; ``offset`` is the failing byte position."""

    exit_code = 2

    def __init__(self, message, offset):
        self.offset = offset
        self.reason = message
        super().__init__("parse-error", f"{message} at byte {offset}")
