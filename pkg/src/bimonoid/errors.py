"""Exception types shared across the package."""


class BimonoidError(Exception):
    """Base class for every error raised by this package."""


class TermSyntaxError(BimonoidError, SyntaxError):
    """Malformed term text. `position` is the 0-based character offset."""

    def __init__(self, position: int, message: str):
        self.position = position
        self.message = message
        super().__init__(f"{message} (at offset {position})")

    def __str__(self):
        return f"{self.message} (at offset {self.position})"


class InvalidPosition(BimonoidError, IndexError):
    pass


class NotSimple(BimonoidError, ValueError):
    pass


class NotASumTerm(BimonoidError, ValueError):
    pass


class NotAProductTerm(BimonoidError, ValueError):
    pass


class NotAProduct(BimonoidError, ValueError):
    pass


class NotAPolynomial(BimonoidError, ValueError):
    pass


class ZeroOperand(BimonoidError, ValueError):
    pass


class InvalidOperand(BimonoidError, ValueError):
    pass


class UnboundVariable(BimonoidError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"unbound variable {self.name!r}"


class ModelError(BimonoidError, ValueError):
    """A bimonoid model failed its registration spot checks."""


class BudgetExceeded(BimonoidError, RuntimeError):
    """Common parent of the resource-cap errors (CLI exit code 3)."""


class StepBudgetExceeded(BudgetExceeded):
    pass


class TermSizeExceeded(BudgetExceeded):
    pass


class IterationBudgetExceeded(BudgetExceeded):
    pass


class ConfigError(BimonoidError, ValueError):
    pass
