"""Exception hierarchy shared by the library modules and the CLI."""

from typing import Optional


class WplError(Exception):
    """Base class for every error the library raises on purpose"""

    exit_code = 1


class DomainError(WplError):
    """A mathematical precondition does not hold"""

    exit_code = 1


class MarkerMismatch(DomainError):
    pass


class InvalidSegment(DomainError):
    pass


class NotAnX3Multiple(DomainError):
    pass


class DomainViolation(DomainError):
    pass


class NoPositiveIntersection(DomainError):
    pass


class DegeneratePoint(DomainError):
    pass


class NotExtensionBundle(DomainError):
    pass


class ContextMismatch(DomainError):
    pass


class NegativeHom(DomainError):
    """Euler form plus Ext came out negative; signals an internal inconsistency"""


class ParseError(WplError):
    """A literal could not be parsed"""

    exit_code = 2

    def __init__(self, message: str, text: str = "", position: Optional[int] = None) -> None:
        self.message = message
        self.text = text
        self.position = position
        if position is None:
            super().__init__(f"{message}: {text}")
        else:
            super().__init__(f"{message} at position {position}: {text}")


class VerificationFailure(WplError):
    exit_code = 3
