"""Exception hierarchy. Every domain error is a ``SForestError``."""


class SForestError(ValueError):
    pass


class DomainOverlap(SForestError):
    pass


class NotInDomain(SForestError):
    pass


class NotFTP(SForestError):
    pass


class NotPartialOrder(SForestError):
    pass


class PairConflict(SForestError):
    pass


class BudgetExceeded(SForestError):
    pass


class NotDiversified(SForestError):
    pass


class ParseError(SForestError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotInGraph(SForestError):
    pass


class MalformedForestSet(SForestError):
    pass


class NotAForestOf(SForestError):
    pass


class DomainMismatch(SForestError):
    pass
