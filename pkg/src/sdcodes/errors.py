"""Exception types shared across the package."""


class CodeError(ValueError):
    """Base class for invalid-input errors on codes."""


class NotSelfDual(CodeError):
    pass


class NotSinglyEven(CodeError):
    """Raised where a singly even self-dual code is required."""


class OddWeight(CodeError):
    pass


class EvenWeight(CodeError):
    pass


class NotANeighbor(CodeError):
    pass


class NotApplicable(CodeError):
    pass


class Unclassifiable(CodeError):
    pass


class PreconditionFailed(CodeError):
    pass


class TooLarge(RuntimeError):
    """An enumeration or memory budget would be exceeded."""
