class HypothesisViolated(ValueError):
    """Input outside the range where the degree formula is stated (p_g = 0)."""


class ParityFailure(ArithmeticError):
    """An odd skew rank or a parity mismatch. Both are theorems, so this is a bug."""


class CrossCheckFailure(ArithmeticError):
    """Two independent rank computations disagree."""
