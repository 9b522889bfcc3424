"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: usage -> 1, domain -> 2, resource -> 3.
"""


class WittkError(Exception):
    pass


class UsageError(WittkError, ValueError):
    """Caller combined incompatible arguments (mismatched sets, bad syntax)."""


class DomainError(WittkError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(WittkError, RuntimeError):
    """A configured enumeration or size bound would be exceeded."""


class NotWellDefinedError(DomainError):
    """A matrix does not descend to the quotient groups.

    ``column`` is the index of a source relator whose image escapes the
    target relation lattice, ``image`` that image vector.
    """

    def __init__(self, message, column=None, image=None):
        super().__init__(message)
        self.column = column
        self.image = image
