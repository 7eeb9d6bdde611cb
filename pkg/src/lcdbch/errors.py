class Uncovered(ValueError):
    """No proven or conjectured closed form applies to these parameters."""


class DeskScaleExceeded(RuntimeError):
    """The extension field needed for explicit construction is too large."""


class BudgetExceeded(RuntimeError):
    """Exhaustive search stopped at its codeword budget.

    ``upper_bound`` is the smallest weight seen so far: an upper bound on the
    minimum distance, never the exact value.
    """

    def __init__(self, upper_bound, enumerated, budget):
        super().__init__(f"budget of {budget} codewords exceeded after {enumerated}; "
                         f"minimum distance upper bound {upper_bound}")
        self.upper_bound = upper_bound
        self.enumerated = enumerated
        self.budget = budget
