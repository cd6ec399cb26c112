"""Exception types shared across the package."""


class SmdcError(Exception):
    """Base class for every error raised by this package."""


class MismatchedModulus(SmdcError, ValueError):
    """Two field elements (or matrices) over different primes were combined."""


class DivisionByZero(SmdcError, ZeroDivisionError):
    pass


class SingularMatrix(SmdcError, ArithmeticError):
    pass


class NotPrime(SmdcError, ValueError):
    pass


class FieldTooSmall(SmdcError, ValueError):
    """The prime is too small for the requested Cauchy construction (needs p >= n + k)."""


class LengthMismatch(SmdcError, ValueError):
    pass


class FullRankSearchFailed(SmdcError, RuntimeError):
    """No seed within the retry bound produced columns satisfying the full-rank condition."""


class InvalidSpec(SmdcError, ValueError):
    pass


class ConditionNotMet(SmdcError, ValueError):
    """The pair (alpha, beta) does not satisfy the condition required by a pairwise construction."""


class ProfileNotDS(SmdcError, ValueError):
    """The security profile is not differential-constant for the requested r."""


class NonIntegralLayout(SmdcError, ValueError):
    pass


class NonIntegralSplit(SmdcError, ValueError):
    pass


class InsufficientShares(SmdcError, ValueError):
    pass


class BudgetExceeded(SmdcError, RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} states, budget is {budget}")
        self.required = required
        self.budget = budget


class FormatError(SmdcError, ValueError):
    """Malformed descriptor, share file or message file."""
