"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Malformed or out-of-range input: bad permutation data, sizes, parse failures."""


class ContractError(ValueError):
    """An operation's input contract is violated (e.g. a non-Hermitian matrix)."""


class PreconditionError(ValueError):
    """A construction's mathematical precondition fails for the given parameters."""
