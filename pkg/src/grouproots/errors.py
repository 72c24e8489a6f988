"""Exception types shared across the toolkit."""


class GroupRootsError(Exception):
    """Base class for all toolkit errors."""


class NotAPrimePower(GroupRootsError):
    """Requested field order has at least two distinct prime divisors."""


class DivisionByZero(GroupRootsError):
    """Field inversion or division with a zero operand."""


class CapExceeded(GroupRootsError):
    """A construction would exceed the configured element cap."""


class NotNormal(GroupRootsError):
    """Quotient requested by a subgroup that is not normal."""


class SearchFailed(GroupRootsError):
    """An element search that is guaranteed to succeed did not."""


class ParseError(GroupRootsError):
    """Group description failed to parse.

    Carries the byte offset of the failure and the set of tokens that
    would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = tuple(sorted(expected))


class SemanticError(GroupRootsError):
    """Group description parsed but a parameter is out of range."""


class InvalidTarget(GroupRootsError):
    """Density target outside the open interval (0, 1)."""


class NonPrime(GroupRootsError):
    """An argument that must be prime is not."""
