"""Shared exception types and enumeration budgets."""

# Default cap on the number of evaluation points an exhaustive routine may
# visit before it must refuse.  Overridable per call.
DEFAULT_BUDGET = 10**8


class ParameterError(ValueError):
    """Invalid construction parameters (composite characteristic, bad N, ...)."""


class MixedFieldError(TypeError):
    """Operands or arguments belong to incompatible fields."""


class ZeroFormError(ValueError):
    """A quadratic form that is identically zero (rank 0) was supplied."""


class BudgetError(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"{what} needs {required} steps, exceeding the budget of {budget}"
        )


class ConfigError(ValueError):
    """Malformed experiment configuration; carries the offending field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"config field '{path}': {message}")
