"""Exception types shared across the package."""


class GroupDistError(Exception):
    """Base class for all package errors."""


class InvalidSpec(GroupDistError):
    pass


class ActionNotHomomorphism(InvalidSpec):
    pass


class ActionNotAutomorphism(InvalidSpec):
    pass


class MapNotTotal(GroupDistError):
    pass


class MapNotBijective(GroupDistError):
    pass


class SizeMismatch(GroupDistError):
    pass


class UnsupportedOrder(GroupDistError):
    pass


class InvalidOrder(GroupDistError):
    pass


class PreconditionFailed(GroupDistError):
    """A construction or operation was called outside its domain.

    ``clause`` names the violated condition.
    """

    def __init__(self, clause, message=None):
        super().__init__(message or clause)
        self.clause = clause


class NotAbelian(PreconditionFailed):
    def __init__(self, message="base group is not abelian"):
        super().__init__("abelian", message)


class EvenOrder(PreconditionFailed):
    def __init__(self, message="base group has even order"):
        super().__init__("odd-order", message)


class EvenA(PreconditionFailed):
    def __init__(self, message="parameter a must be odd and at least 3"):
        super().__init__("odd-a", message)


class BudgetExceeded(GroupDistError):
    """Raised by callers that insist on a proven value."""

    def __init__(self, best=None, witness=None):
        super().__init__(f"search budget exhausted (best incumbent {best})")
        self.best = best
        self.witness = witness


class MissingMu(GroupDistError):
    pass


class TooLarge(GroupDistError):
    pass


class ParseError(GroupDistError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class NotAGroup(GroupDistError):
    def __init__(self, violations):
        first = violations[0] if violations else None
        super().__init__(f"table is not a group: {first}")
        self.violations = violations
