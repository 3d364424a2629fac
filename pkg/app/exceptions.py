class WrightError(Exception):
    """Base class for every error raised by the evaluation and verification services."""


class InvalidParametersError(WrightError, ValueError):
    """Parameters fail the validity predicate of a function kind or bound."""

    def __init__(self, message: str, predicate: str = ""):
        super().__init__(message)
        self.predicate = predicate


class DomainError(WrightError, ValueError):
    """Argument outside the domain of an operation (log_gamma(x <= 0), |z| > 1)."""


class NonConvergenceError(WrightError, ArithmeticError):
    """The tail majorant did not drop below the tolerance within the term cap."""

    def __init__(self, message: str, term_cap: int):
        super().__init__(message)
        self.term_cap = term_cap
