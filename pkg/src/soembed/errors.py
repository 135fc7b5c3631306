"""Exception types shared across the package."""


class SOEmbedError(Exception):
    pass


class EmptyCodeError(SOEmbedError, ValueError):
    """A generator matrix with no nonzero rows."""


class FormatError(SOEmbedError, ValueError):
    """Malformed code file or hex block."""


class DomainError(SOEmbedError, ValueError):
    """An input outside the domain an operation is defined on."""


class CapabilityError(SOEmbedError):
    """A configured enumeration or search bound would be exceeded."""

    def __init__(self, message: str, bound: int | None = None):
        super().__init__(message)
        self.bound = bound


class InfeasibleEmbedding(SOEmbedError):
    """Search exhausted without finding an embedding at the requested length."""


class StructureViolation(SOEmbedError):
    """An embedding failed one of its certificate checks."""

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class EquivalenceUndecided(SOEmbedError):
    """The equivalence test ran out of its backtracking budget."""
