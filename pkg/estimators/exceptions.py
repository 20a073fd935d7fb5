class AnalysisError(ValueError):
    """Base class for every domain error raised by the analysis toolkit."""


class PreconditionError(AnalysisError):
    """An operation was called outside its documented domain."""


class InconsistentSystemError(AnalysisError):
    """A linear system has no solution; ``row`` is the 1-based offending row."""

    def __init__(self, row, message=None):
        self.row = row
        super().__init__(message or f"Inconsistent linear system at row {row}.")


class InfeasibleProgramError(AnalysisError):
    pass


class UnboundedProgramError(AnalysisError):
    pass


class EnumerationLimitError(AnalysisError):
    """Explicit subset enumeration would exceed the configured cap."""

    def __init__(self, count, limit):
        self.count = count
        self.limit = limit
        super().__init__(
            f"Enumeration of {count} subsets exceeds the limit of {limit}; "
            "use the order-statistics path instead."
        )


class BudgetExceededError(AnalysisError):
    def __init__(self, requested, budget, what="points"):
        self.requested = requested
        self.budget = budget
        super().__init__(f"Requested {requested} {what}, budget is {budget}.")


class CoefficientCheckError(AnalysisError):
    """A closed-form coefficient vector failed its own error-profile check."""

    def __init__(self, profile, expected):
        self.profile = tuple(profile)
        self.expected = expected
        rendered = ", ".join(str(v) for v in self.profile)
        super().__init__(
            f"Coefficient check failed: profile ({rendered}) does not reach "
            f"max-abs error {expected}."
        )
