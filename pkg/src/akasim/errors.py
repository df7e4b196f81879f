"""Exception hierarchy shared by every module."""


class AkaError(Exception):
    """Base class for all errors raised by akasim."""


class MalformedInputError(AkaError, ValueError):
    """An argument has the wrong width, format or size."""


class DomainError(AkaError, ValueError):
    """An argument is well formed but not valid for this operation."""


class IntegrityError(AkaError):
    """A MAC or authentication tag failed to verify."""


class UnsupportedSchemeError(AkaError):
    pass


class ConflictError(AkaError):
    pass


class NotFoundError(AkaError, KeyError):
    pass


class ExhaustionError(AkaError):
    """The 48-bit sequence number space is used up."""


class ConfigurationError(AkaError):
    """A party was constructed without the material its role requires."""


class UnavailableError(AkaError):
    """Session keys were requested from a party that did not succeed."""
