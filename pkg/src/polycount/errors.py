"""Exception types shared across the package."""


class GraphParseError(ValueError):
    """Malformed graph text. Carries the 1-based line number of the offense."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BudgetError(RuntimeError):
    """An enumeration was asked to exceed its configured size budget.

    Raised loudly instead of silently grinding for hours; callers can raise
    the budget explicitly if they really mean it.
    """
