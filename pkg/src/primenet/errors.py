class ResourceBudgetError(MemoryError):
    """Raised when an operation would need more memory than its budget allows."""

    def __init__(self, required: int, budget: int, what: str = "operation"):
        self.required = int(required)
        self.budget = int(budget)
        super().__init__(
            f"{what} needs about {self.required / 2**20:.1f} MiB, "
            f"budget is {self.budget / 2**20:.1f} MiB"
        )


class TruncationWarning(UserWarning):
    """A truncated distribution dropped more mass than the allowed tolerance."""


class AccuracyWarning(UserWarning):
    """Two integration resolutions disagree by more than the tolerance."""


class StatisticsWarning(UserWarning):
    """Too few samples for the requested statistic to be reliable."""
