"""Exception types shared across the package."""


class CrossedCodesError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(CrossedCodesError, ValueError):
    pass


class TooLarge(CrossedCodesError, ValueError):
    """An input exceeds the configured desk-scale bound."""


class ZeroInput(CrossedCodesError, ValueError):
    pass


class InvalidAction(CrossedCodesError, ValueError):
    """Frobenius exponent k violates k | r and (r/k) | n."""


class InvalidParams(InvalidAction):
    pass


class Unsupported(CrossedCodesError, NotImplementedError):
    pass


class NotInvariant(CrossedCodesError, ValueError):
    """A scalar that must be fixed by the group action is not."""


class NotCyclic(CrossedCodesError, ValueError):
    pass


class Incompatible(CrossedCodesError, ValueError):
    """An automorphism does not preserve the coefficient action."""


class ActionMismatch(CrossedCodesError, ValueError):
    pass


class NotAlternating(CrossedCodesError, ValueError):
    pass


class IndexOutOfRange(CrossedCodesError, ValueError):
    pass
