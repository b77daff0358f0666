class HardyException(Exception):
    pass


class TreeException(HardyException):
    pass


class OverflowAtDepth(HardyException):
    def __init__(self, depth: int):
        self.depth = depth
        super().__init__(
            f"Exact sphere count overflows the wide-integer range at depth {depth}; "
            f"use the log-space operations instead."
        )


class BudgetExceeded(HardyException):
    def __init__(self, requested, budget):
        self.requested = requested
        self.budget = budget
        super().__init__(f"Requested {requested} exceeds the budget of {budget}.")


class DomainError(HardyException):
    pass


class NonpositiveFunction(HardyException):
    pass


class InvalidParams(HardyException):
    def __init__(self, bound: str, message: str = ""):
        self.bound = bound
        super().__init__(message or f"Parameter bound violated: {bound}")


class NonpositiveWeight(HardyException):
    pass


class NonnegativityViolated(HardyException):
    def __init__(self, window: int, value: float):
        self.window = window
        self.value = value
        super().__init__(
            f"Smallest eigenvalue {value:.3e} on the window ending at {window} is negative, "
            f"which no valid Hardy weight allows."
        )


class SupportTouchesBoundary(HardyException):
    pass


class DescriptorException(HardyException):
    pass
