"""Exception types raised across the package."""


class CayleyGkError(Exception):
    """Base class for every error raised by this package."""


class GroupConstructionError(CayleyGkError, ValueError):
    pass


class NotAbelian(GroupConstructionError):
    pass


class NoUniqueInvolution(GroupConstructionError):
    pass


class TooSmall(GroupConstructionError):
    pass


class NotAutomorphism(GroupConstructionError):
    pass


class ActionInconsistent(GroupConstructionError):
    pass


class UnknownName(GroupConstructionError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ClosureExceedsCap(GroupConstructionError):
    pass


class CapExceeded(CayleyGkError, ValueError):
    pass


class NotNormal(CayleyGkError, ValueError):
    pass


class NonAbelianSubgroup(CayleyGkError, ValueError):
    pass


class EvenOrderSubgroup(CayleyGkError, ValueError):
    pass


class PinnedCollision(CayleyGkError, ValueError):
    pass


class AsymmetricInput(CayleyGkError, ValueError):
    pass


class InvalidConnectionSet(CayleyGkError, ValueError):
    pass


class AtomCapExceeded(CayleyGkError, ValueError):
    pass


class NotTwoGroup(CayleyGkError, ValueError):
    pass


class UnknownLabel(CayleyGkError, KeyError):
    """An element word could not be resolved; ``suggestions`` holds close labels."""

    def __init__(self, text, suggestions=()):
        self.text = text
        self.suggestions = list(suggestions)
        msg = f"unknown element {text!r}"
        if self.suggestions:
            msg += f" (did you mean: {', '.join(self.suggestions)})"
        super().__init__(msg)

    def __str__(self):
        return self.args[0]


class InvariantViolation(CayleyGkError, AssertionError):
    """An internal cross-check disagreed; this always indicates a bug."""
