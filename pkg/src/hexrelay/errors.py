"""Exception types shared across the package."""


class HexRelayError(Exception):
    """Base class for package errors."""


class ConfigError(HexRelayError):
    """Invalid user-supplied configuration (bad geometry, bad arguments)."""


class BudgetExceededError(HexRelayError):
    """Exhaustive search ran out of its combination budget before finding an answer."""

    def __init__(self, message, kappa=None, combos_tested=0):
        super().__init__(message)
        self.kappa = kappa
        self.combos_tested = combos_tested


class InternalInvariantError(HexRelayError):
    """A structural invariant (tree validity, sorted edge order) was violated."""
