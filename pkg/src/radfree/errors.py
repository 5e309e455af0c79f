"""Exception hierarchy shared by every module."""


class RadfreeError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RadfreeError):
    """An argument is outside the mathematical domain of the operation."""


class DegenerateExtensionError(DomainError):
    """The radicand is a p-th power, so x^p - a does not define a degree-p field."""


class PreconditionError(RadfreeError):
    """A documented precondition was violated (e.g. radicand not normalized)."""


class UnsupportedScopeError(RadfreeError):
    """The request is valid mathematics but outside the supported base fields."""


class ResourceLimitError(RadfreeError):
    """A configured resource bound would be exceeded; carries the bound."""

    def __init__(self, message: str, bound: int):
        super().__init__(f"{message} (bound: {bound})")
        self.bound = bound


class SchemaError(RadfreeError):
    """A serialized report does not match the expected schema."""
