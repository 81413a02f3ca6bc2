"""Exception types raised across the package."""


class BurattiError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BurattiError, ValueError):
    """A vertex label or length lies outside its allowed range."""


class InvalidEdgeError(DomainError):
    """An edge joins a vertex to itself."""


class NonInvertibleMultiplierError(DomainError):
    """A multiplier k shares a factor with the modulus."""


class MultisetSyntaxError(BurattiError, ValueError):
    pass


class PrimalityRequiredError(BurattiError):
    """The operation relies on the modulus being prime."""


class InvalidRealizationError(BurattiError):
    """A candidate tree or path violates its structural invariants."""


class UsageError(BurattiError, ValueError):
    """An argument is inconsistent with the operation's preconditions."""


class NoProgressError(BurattiError):
    """An improvement step was asked to run where it cannot apply."""


class SizeRefusedError(BurattiError):
    """The instance is too large for exhaustive enumeration."""


class BudgetExhausted(BurattiError):
    """A search ran out of nodes or time before reaching a verdict.

    This is deliberately distinct from a search that completes and finds
    nothing: only the latter certifies nonexistence.
    """

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class NotFoundError(BurattiError):
    """A construction exhausted every option without success."""
