"""Exception types shared across the package."""


class NotInStarDomain(ArithmeticError):
    """Star applied to an element outside the domain of a partial star."""


class OutOfWindow(LookupError):
    """Coefficient requested for a word longer than the truncation bound."""


class NotAMorphismExtension(ValueError):
    """Coefficient images do not commute with letter images."""


class SearchBudgetExceeded(RuntimeError):
    pass


class PremiseViolated(ValueError):
    """A side condition required by a construction does not hold."""


class TermSyntaxError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position
